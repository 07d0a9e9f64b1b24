"""Smoke test for the josephus_nim extension module.

Build and install first, e.g. `maturin develop -m crates/py/Cargo.toml`,
then run `python crates/py/python/smoke_test.py`.
"""

import josephus_nim as jn


def main():
    assert jn.total_weight(2, 3) == -4
    assert jn.removal_bound(2, 3) == -2
    assert jn.legal_moves(4, 1) == [("p1", 1), ("p2", 1)]
    assert jn.legal_moves(0, 5) == [("p2", 3), ("p2", 4), ("p2", 5)]
    assert jn.apply_move(2, 3, "p2", 2) == (2, 1)
    try:
        jn.apply_move(1, 0, "p1", 1)
    except ValueError as e:
        assert "exceeds" in str(e)
    else:
        raise AssertionError("illegal move accepted")
    assert jn.is_terminal(1, 0)

    assert jn.mex([2, 0, 1, 5]) == 3
    assert jn.grundy(2, 3) == 3 and jn.grundy_closed(2, 3) == 3
    assert jn.is_p_position(2, 1)
    assert jn.winning_moves(2, 3) == [("p2", 2)]
    assert jn.best_move(4, 0) == ("p1", 1)

    c = jn.classify(5, 4)
    assert (c.s, c.family, c.params, c.position()) == (4, "B", (2, 4), (5, 4))
    assert jn.GrundyClass(2, "N", 0, 2).position() == (6, 2)
    assert jn.odd_part(12) == (3, 2)
    assert jn.enumerate_class(1, 3, 2) == [(0, 1), (1, 1), (2, 0), (3, 1)]

    assert jn.elimination_order(5) == [2, 4, 1, 5, 3]
    assert jn.f_s_simulated(3, 7) == jn.f_s_closed(3, 7) == jn.f_s_recursive(3, 7) == 1
    assert jn.survivor(7) == 7
    try:
        jn.f_s_closed(5, 5)
    except ValueError:
        pass
    else:
        raise AssertionError("s >= v accepted")

    table = jn.GrundyTable(30, 30)
    for x in range(31):
        for y in range(31):
            assert table.get(x, y) == jn.grundy_closed(x, y)
    assert table.check_equivalence()["passed"]
    table.set(7, 3, table.get(7, 3) + 1)
    report = table.check_equivalence()
    assert not report["passed"]
    assert report["first_counterexample"]["inputs"] == [["x", 7], ["y", 3]]

    reports = jn.run_verification("grundy", xmax=40, ymax=40)
    assert reports[0]["passed"] and reports[0]["cases_checked"] == 41 * 41
    assert jn.run_verification("josephus", vmax=64)[0]["passed"]

    print("smoke test passed")


if __name__ == "__main__":
    main()
