//! Exhaustive finite-range checks.
//!
//! Every check sweeps a declared parameter box, counts the cases it looked
//! at, and records the least failing case in lexicographic order of its
//! inputs. Sweeps run over rows in parallel; merging keeps the least
//! counterexample, so reports do not depend on scheduling.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classes::{classify, enumerate_classes, grundy_closed, Family, GrundyClass};
use crate::engine::GrundyTable;
use crate::game::Position;
use crate::josephus::{elimination_order, f_s_closed, f_s_recursive, FsQuery};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RangeAxis {
    pub name: String,
    pub lo: u64,
    pub hi: u64,
}

impl RangeAxis {
    fn new(name: &str, lo: u64, hi: u64) -> Self {
        RangeAxis {
            name: name.to_string(),
            lo,
            hi,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    /// Named inputs; ordering between counterexamples compares the values in turn.
    pub inputs: Vec<(String, u64)>,
    pub expected: String,
    pub actual: String,
}

impl Counterexample {
    fn new(inputs: &[(&str, u64)], expected: impl ToString, actual: impl ToString) -> Self {
        Counterexample {
            inputs: inputs.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }

    fn key(&self) -> Vec<u64> {
        self.inputs.iter().map(|(_, v)| *v).collect()
    }
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inputs: Vec<String> = self
            .inputs
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        write!(
            f,
            "{}: expected {}, got {}",
            inputs.join(" "),
            self.expected,
            self.actual
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check_name: String,
    pub range: Vec<RangeAxis>,
    pub cases_checked: u64,
    pub passed: bool,
    pub first_counterexample: Option<Counterexample>,
    #[serde(rename = "elapsed_seconds", with = "seconds")]
    pub elapsed: Duration,
    /// Per-case-kind counts, e.g. which lemma branch a case exercised.
    pub coverage: BTreeMap<String, u64>,
}

mod seconds {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        let secs = f64::deserialize(d)?;
        Duration::try_from_secs_f64(secs).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let range: Vec<String> = self
            .range
            .iter()
            .map(|a| format!("{}=[{},{}]", a.name, a.lo, a.hi))
            .collect();
        write!(
            f,
            "{} {} {} cases={} elapsed={:.3}s",
            if self.passed { "PASS" } else { "FAIL" },
            self.check_name,
            range.join(" "),
            self.cases_checked,
            self.elapsed.as_secs_f64()
        )?;
        if let Some(c) = &self.first_counterexample {
            write!(f, "\n  counterexample: {c}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Default)]
struct Tally {
    cases: u64,
    failure: Option<Counterexample>,
    coverage: BTreeMap<String, u64>,
}

impl Tally {
    fn fail(&mut self, c: Counterexample) {
        match &self.failure {
            Some(old) if old.key() <= c.key() => {}
            _ => self.failure = Some(c),
        }
    }

    fn note(&mut self, key: impl Into<String>) {
        *self.coverage.entry(key.into()).or_insert(0) += 1;
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.cases += other.cases;
        if let Some(c) = other.failure {
            self.fail(c);
        }
        for (k, v) in other.coverage {
            *self.coverage.entry(k).or_insert(0) += v;
        }
        self
    }

    fn into_report(
        self,
        name: &str,
        range: Vec<RangeAxis>,
        started: Instant,
    ) -> VerificationReport {
        VerificationReport {
            check_name: name.to_string(),
            range,
            cases_checked: self.cases,
            passed: self.failure.is_none(),
            first_counterexample: self.failure,
            elapsed: started.elapsed(),
            coverage: self.coverage,
        }
    }
}

/// Runs `row` for every value in `lo..=hi` in parallel and merges the tallies.
fn sweep<F>(lo: u64, hi: u64, row: F) -> Tally
where
    F: Fn(u64, &mut Tally) + Sync + Send,
{
    if lo > hi {
        return Tally::default();
    }
    (lo..=hi)
        .into_par_iter()
        .map(|r| {
            let mut t = Tally::default();
            row(r, &mut t);
            t
        })
        .reduce(Tally::default, Tally::merge)
}

/// Closed-form Grundy values against the brute-force table on the whole box.
pub fn verify_grundy_equivalence(x_max: u64, y_max: u64) -> VerificationReport {
    let started = Instant::now();
    let table = GrundyTable::build(x_max, y_max);
    check_grundy_equivalence_since(&table, started)
}

/// Same as [`verify_grundy_equivalence`] against a caller-supplied table.
pub fn check_grundy_equivalence(table: &GrundyTable) -> VerificationReport {
    check_grundy_equivalence_since(table, Instant::now())
}

fn check_grundy_equivalence_since(table: &GrundyTable, started: Instant) -> VerificationReport {
    let tally = sweep(0, table.x_max(), |x, t| {
        for y in 0..=table.y_max() {
            let p = Position::new(x, y);
            let oracle = table.get(p).expect("in table") as u64;
            let class = classify(p);
            t.cases += 1;
            t.note(format!("family_{}", class.family().letter()));
            if class.s() != oracle {
                t.fail(Counterexample::new(
                    &[("x", x), ("y", y)],
                    oracle,
                    class.s(),
                ));
            }
        }
    });
    tally.into_report(
        "grundy_equivalence",
        vec![
            RangeAxis::new("x", 0, table.x_max()),
            RangeAxis::new("y", 0, table.y_max()),
        ],
        started,
    )
}

/// Families of Grundy value `s ≤ s_max` are disjoint and, within the box,
/// cover exactly the positions classified with such an `s`; `classify` and
/// `class_position` invert each other.
pub fn verify_partition(x_max: u64, y_max: u64, s_max: u64) -> VerificationReport {
    let started = Instant::now();
    let width = (y_max + 1) as usize;
    let cells = (x_max as usize + 1) * width;

    let per_s: Vec<(u64, Vec<GrundyClass>)> = (0..=s_max)
        .into_par_iter()
        .map(|s| (s, enumerate_classes(s, x_max, y_max)))
        .collect();

    let mut enum_tally = Tally::default();
    // hits[cell] = (times enumerated, value of s seen last)
    let mut hits = vec![(0u32, 0u64); cells];
    for (s, classes) in &per_s {
        for c in classes {
            let p = c.position().expect("enumerated class is valid");
            if classify(p) != *c {
                enum_tally.fail(Counterexample::new(
                    &[("x", p.x), ("y", p.y), ("s", *s)],
                    c,
                    classify(p),
                ));
            }
            let cell = &mut hits[p.x as usize * width + p.y as usize];
            cell.0 += 1;
            cell.1 = *s;
        }
        enum_tally.note(format!("enumerated_s{s}"));
    }

    let tally = sweep(0, x_max, |x, t| {
        for y in 0..=y_max {
            let p = Position::new(x, y);
            t.cases += 1;
            let c = classify(p);
            let s = c.s();
            if GrundyClass::new(s, c.family()) != Ok(c) || c.position() != Ok(p) {
                t.fail(Counterexample::new(
                    &[("x", x), ("y", y), ("s", s)],
                    format!("class denoting {p}"),
                    c,
                ));
                continue;
            }
            let (count, seen_s) = hits[x as usize * width + y as usize];
            let expected = u32::from(s <= s_max);
            if count != expected || (count == 1 && seen_s != s) {
                t.fail(Counterexample::new(
                    &[("x", x), ("y", y), ("s", s)],
                    format!("{expected} family membership(s)"),
                    format!("{count} (last in s={seen_s})"),
                ));
            }
            if s <= s_max {
                t.note("covered");
            } else {
                t.note("above_s_max");
            }
        }
    });
    let tally = enum_tally.merge(tally);
    tally.into_report(
        "partition",
        vec![
            RangeAxis::new("x", 0, x_max),
            RangeAxis::new("y", 0, y_max),
            RangeAxis::new("s", 0, s_max),
        ],
        started,
    )
}

/// No successor shares a position's Grundy value, and every smaller value is
/// reached by some successor.
pub fn verify_move_lemmas(x_max: u64, y_max: u64) -> VerificationReport {
    let started = Instant::now();
    let table = GrundyTable::build(x_max, y_max);
    check_move_lemmas_since(&table, started)
}

pub fn check_move_lemmas(table: &GrundyTable) -> VerificationReport {
    check_move_lemmas_since(table, Instant::now())
}

fn check_move_lemmas_since(table: &GrundyTable, started: Instant) -> VerificationReport {
    let tally = sweep(0, table.x_max(), |x, t| {
        let mut reached = Vec::new();
        for y in 0..=table.y_max() {
            let p = Position::new(x, y);
            let s = table.get(p).expect("in table") as u64;
            t.cases += 1;
            reached.clear();
            reached.resize(s as usize + 1, false);
            let mut clash = None;
            for q in p.successors() {
                let g = table.get(q).expect("successors stay in the box") as u64;
                if g == s {
                    clash.get_or_insert(q);
                }
                if g < s {
                    reached[g as usize] = true;
                }
            }
            if let Some(q) = clash {
                t.fail(Counterexample::new(
                    &[("x", x), ("y", y), ("s", s)],
                    format!("no successor with value {s}"),
                    format!("successor {q} has value {s}"),
                ));
            }
            for (target, hit) in reached.iter().take(s as usize).enumerate() {
                let target = target as u64;
                if !hit {
                    t.fail(Counterexample::new(
                        &[("x", x), ("y", y), ("s", target)],
                        format!("a successor with value {target}"),
                        "none",
                    ));
                }
                t.note(if x >= 2 * target {
                    "reach_x_ge_2s"
                } else {
                    "reach_x_le_2s_minus_1"
                });
            }
            t.note(if s == 0 { "p_positions" } else { "n_positions" });
        }
    });
    tally.into_report(
        "move_lemmas",
        vec![
            RangeAxis::new("x", 0, table.x_max()),
            RangeAxis::new("y", 0, table.y_max()),
        ],
        started,
    )
}

/// For every `N`-family position `(x, y)` of value `s` with `x ≤ x_max`,
/// `F_s(x + 1) = 2y + 1`. These are exactly the positions with `2y ≤ x`.
pub fn verify_correspondence(x_max: u64) -> VerificationReport {
    let started = Instant::now();
    let tally = sweep(0, x_max, |x, t| {
        let order = elimination_order(x + 1).expect("v >= 1");
        for y in 0..=x / 2 {
            t.cases += 1;
            let c = classify(Position::new(x, y));
            if !matches!(c.family(), Family::N { .. }) {
                t.fail(Counterexample::new(
                    &[("x", x), ("y", y), ("s", c.s())],
                    "family N",
                    c,
                ));
                continue;
            }
            let f = order.f_s(c.s()).expect("s < x + 1");
            if f != 2 * y + 1 {
                t.fail(Counterexample::new(
                    &[("x", x), ("y", y), ("s", c.s())],
                    2 * y + 1,
                    f,
                ));
            }
            if let Family::N { n, .. } = c.family() {
                t.note(if n == 0 { "n_eq_0" } else { "n_ge_1" });
            }
        }
    });
    tally.into_report(
        "correspondence",
        vec![
            RangeAxis::new("x", 0, x_max),
            RangeAxis::new("y", 0, x_max / 2),
        ],
        started,
    )
}

/// Simulation, closed form and recursion agree for `1 ≤ v ≤ v_max`,
/// `0 ≤ s < v`; the doubling identities hold for `1 ≤ v ≤ v_max / 2`.
/// Each simulated circle is reused for every `s`.
pub fn verify_josephus_forms(v_max: u64) -> VerificationReport {
    let started = Instant::now();
    let forms = sweep(1, v_max, |v, t| {
        let order = elimination_order(v).expect("v >= 1");
        for s in 0..v {
            t.cases += 1;
            let q = FsQuery::new(s, v).expect("s < v");
            let sim = order.f_s(s).expect("s < v");
            let closed = f_s_closed(q);
            let rec = f_s_recursive(q);
            if sim != closed || sim != rec {
                t.fail(Counterexample::new(
                    &[("v", v), ("s", s)],
                    format!("simulated={sim}"),
                    format!("closed={closed} recursive={rec}"),
                ));
            }
            t.note(if v <= 2 * s {
                "short_circle"
            } else if v == 2 * s + 1 {
                "v_eq_2s_plus_1"
            } else {
                "decomposed"
            });
        }
    });
    let residuals = sweep(1, v_max / 2, |v, t| {
        let half = elimination_order(v).expect("v >= 1");
        let even = elimination_order(2 * v).expect("v >= 1");
        let odd = elimination_order(2 * v + 1).expect("v >= 1");
        for s in 0..v {
            t.cases += 1;
            let base = half.f_s(s).expect("s < v");
            let e = even.f_s(s).expect("s < 2v");
            let o = odd.f_s(s).expect("s < 2v + 1");
            if e != 2 * base - 1 {
                t.fail(Counterexample::new(
                    &[("v", 2 * v), ("s", s)],
                    format!("2F_s({v}) - 1 = {}", 2 * base - 1),
                    e,
                ));
            }
            if o != 2 * base + 1 {
                t.fail(Counterexample::new(
                    &[("v", 2 * v + 1), ("s", s)],
                    format!("2F_s({v}) + 1 = {}", 2 * base + 1),
                    o,
                ));
            }
            t.note("doubling_residual");
        }
    });
    forms.merge(residuals).into_report(
        "josephus_forms",
        vec![
            RangeAxis::new("v", 1, v_max),
            RangeAxis::new("residual_v", 1, v_max / 2),
        ],
        started,
    )
}

/// Structural inclusions between the families:
///
/// * (a) for `2 ≤ s ≤ s_max`, `h ≤ s − 2`, `h+1 ≤ j ≤ 2^{s−h−1}+h−1`: `(2h, j)` is in
///   some `A` family and `(2h+1, j)` in some `B` family with `h+1 ≤ s' ≤ s−1`;
/// * (b) for `h ≤ s_max` and `j ≤ h`: `(2h, j)` and `(2h+1, j)` are in `N`
///   families with `s' ≤ h`;
/// * (c) every `A`/`B` position of value `s ≤ s_max` has `x ≤ 2s − 1` and `2y > x`.
pub fn verify_lemma_inclusions(s_max: u64) -> VerificationReport {
    let started = Instant::now();
    let a = sweep(2, s_max, |s, t| {
        for h in 0..=s - 2 {
            let hi = (1u64 << (s - h - 1)) + h - 1;
            for j in h + 1..=hi {
                for (x, want_a) in [(2 * h, true), (2 * h + 1, false)] {
                    t.cases += 1;
                    let c = classify(Position::new(x, j));
                    let family_ok = match c.family() {
                        Family::A { k, .. } => want_a && k == h,
                        Family::B { k, .. } => !want_a && k == h,
                        Family::N { .. } => false,
                    };
                    if !family_ok || c.s() < h + 1 || c.s() > s - 1 {
                        t.fail(Counterexample::new(
                            &[("s", s), ("x", x), ("y", j)],
                            format!(
                                "{} family with s' in [{}, {}]",
                                if want_a { "A" } else { "B" },
                                h + 1,
                                s - 1
                            ),
                            c,
                        ));
                    }
                    t.note("upper_window");
                }
            }
        }
    });
    let b = sweep(0, s_max, |h, t| {
        for j in 0..=h {
            for x in [2 * h, 2 * h + 1] {
                t.cases += 1;
                let c = classify(Position::new(x, j));
                if !matches!(c.family(), Family::N { .. }) || c.s() > h {
                    t.fail(Counterexample::new(
                        &[("s", h), ("x", x), ("y", j)],
                        format!("N family with s' <= {h}"),
                        c,
                    ));
                }
                t.note("lower_strip");
            }
        }
    });
    let c = sweep(1, s_max, |s, t| {
        for k in 0..s {
            let lo = (1u64 << (s - k - 1)) + k;
            let hi = (1u64 << (s - k)) + k - 1;
            for j in lo..=hi {
                for family in [Family::A { k, j }, Family::B { k, j }] {
                    t.cases += 1;
                    let p = GrundyClass::new(s, family)
                        .and_then(|c| c.position())
                        .expect("window parameters are valid");
                    if p.x > 2 * s - 1 || 2 * p.y <= p.x || grundy_closed(p) != s {
                        t.fail(Counterexample::new(
                            &[("s", s), ("x", p.x), ("y", p.y)],
                            format!("x <= {} and 2y > x", 2 * s - 1),
                            p,
                        ));
                    }
                    t.note("ab_bounds");
                }
            }
        }
    });
    a.merge(b).merge(c).into_report(
        "lemma_inclusions",
        vec![RangeAxis::new("s", 0, s_max)],
        started,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grundy_equivalence_small_boxes() {
        let r = verify_grundy_equivalence(0, 0);
        assert!(r.passed);
        assert_eq!(r.cases_checked, 1);
        let r = verify_grundy_equivalence(10, 10);
        assert!(r.passed, "{r}");
        assert_eq!(r.cases_checked, 121);
    }

    #[test]
    fn fault_injection_is_detected() {
        let mut table = GrundyTable::build(30, 30);
        let target = Position::new(17, 4);
        let original = table.get(target).unwrap();
        table.set(target, original + 1);
        table.set(Position::new(25, 3), 99);
        let r = check_grundy_equivalence(&table);
        assert!(!r.passed);
        let c = r.first_counterexample.unwrap();
        assert_eq!(c.inputs, vec![("x".to_string(), 17), ("y".to_string(), 4)]);
        assert_eq!(c.expected, (original + 1).to_string());
        assert_eq!(c.actual, original.to_string());

        let r = check_move_lemmas(&table);
        assert!(!r.passed);
    }

    #[test]
    fn partition_small_boxes() {
        assert!(verify_partition(3, 3, 4).passed);
        let r = verify_partition(0, 0, 0);
        assert!(r.passed);
        assert_eq!(r.cases_checked, 1);
        let r = verify_partition(60, 60, 8);
        assert!(r.passed, "{r}");
        assert!(r.coverage["above_s_max"] > 0);
    }

    #[test]
    fn move_lemmas_small_boxes() {
        let r = verify_move_lemmas(1, 0);
        assert!(r.passed);
        assert_eq!(r.cases_checked, 2);
        let r = verify_move_lemmas(64, 64);
        assert!(r.passed, "{r}");
        assert!(r.coverage["reach_x_ge_2s"] > 0);
        assert!(r.coverage["reach_x_le_2s_minus_1"] > 0);
    }

    #[test]
    fn correspondence_small() {
        let r = verify_correspondence(6);
        assert!(r.passed, "{r}");
        // sum over x of floor(x/2) + 1
        assert_eq!(r.cases_checked, (0..=6u64).map(|x| x / 2 + 1).sum::<u64>());
    }

    #[test]
    fn josephus_forms_small() {
        let r = verify_josephus_forms(1);
        assert!(r.passed);
        assert_eq!(r.cases_checked, 1);
        let r = verify_josephus_forms(7);
        assert!(r.passed, "{r}");
        assert_eq!(r.cases_checked, 28 + 6);
    }

    #[test]
    fn lemma_inclusions_small() {
        assert!(verify_lemma_inclusions(1).passed);
        let r = verify_lemma_inclusions(8);
        assert!(r.passed, "{r}");
        assert!(r.coverage["upper_window"] > 0);
    }

    #[test]
    fn counterexample_merge_keeps_least() {
        let mut t = Tally::default();
        t.fail(Counterexample::new(&[("x", 5), ("y", 1)], 0, 1));
        t.fail(Counterexample::new(&[("x", 2), ("y", 9)], 0, 1));
        t.fail(Counterexample::new(&[("x", 2), ("y", 10)], 0, 1));
        assert_eq!(t.failure.unwrap().key(), vec![2, 9]);
    }

    #[test]
    fn report_serializes_to_stable_fields() {
        let r = verify_grundy_equivalence(2, 2);
        let v = serde_json::to_value(&r).unwrap();
        for field in [
            "check_name",
            "range",
            "cases_checked",
            "passed",
            "first_counterexample",
            "elapsed_seconds",
        ] {
            assert!(v.get(field).is_some(), "missing {field}");
        }
        let back: VerificationReport = serde_json::from_value(v).unwrap();
        assert_eq!(back.cases_checked, 9);
    }
}
