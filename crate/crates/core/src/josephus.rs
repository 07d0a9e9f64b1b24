//! The step-2 Josephus process on `1..=v`: starting with 2, every second
//! remaining number is removed until one is left.
//!
//! `F_s(v)` is the number removed `s` places from the end, so `F_0(v)` is the
//! survivor. It is available three ways: by simulation, by the closed form,
//! and by the halving recursion.

use serde::{Deserialize, Serialize};

use crate::error::GameError;

/// Full elimination order for a circle of `v` numbers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EliminationOrder {
    v: u64,
    order: Vec<u64>,
}

impl EliminationOrder {
    pub fn v(&self) -> u64 {
        self.v
    }

    /// `e_1, …, e_v`; the last entry is the survivor.
    pub fn as_slice(&self) -> &[u64] {
        &self.order
    }

    /// The 1-based entry `e_i`.
    pub fn get(&self, i: u64) -> Option<u64> {
        i.checked_sub(1)
            .and_then(|i| self.order.get(i as usize).copied())
    }

    pub fn survivor(&self) -> u64 {
        *self.order.last().expect("v >= 1")
    }

    /// `F_s(v) = e_{v−s}`.
    pub fn f_s(&self, s: u64) -> Result<u64, GameError> {
        FsQuery::new(s, self.v)?;
        Ok(self.order[(self.v - s - 1) as usize])
    }
}

/// A query for `F_s(v)`, valid when `0 ≤ s ≤ v − 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FsQuery {
    s: u64,
    v: u64,
}

impl FsQuery {
    pub fn new(s: u64, v: u64) -> Result<Self, GameError> {
        if s >= v {
            return Err(GameError::domain(format!(
                "F_s(v) needs s <= v - 1, got s={s}, v={v}"
            )));
        }
        Ok(FsQuery { s, v })
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn v(&self) -> u64 {
        self.v
    }
}

/// Simulates the circle with a successor array; linear in `v`.
pub fn elimination_order(v: u64) -> Result<EliminationOrder, GameError> {
    if v == 0 {
        return Err(GameError::domain("circle size must be at least 1"));
    }
    let n = usize::try_from(v).map_err(|_| GameError::domain("circle size too large"))?;
    // next[i] is the slot after slot i; slot i holds the number i + 1
    let mut next: Vec<usize> = (1..=n).collect();
    next[n - 1] = 0;
    let mut order = Vec::with_capacity(n);
    let mut cur = 0;
    for _ in 1..n {
        let victim = next[cur];
        order.push(victim as u64 + 1);
        next[cur] = next[victim];
        cur = next[cur];
    }
    order.push(cur as u64 + 1);
    Ok(EliminationOrder { v, order })
}

/// Quadratic ring scan over a `Vec`; a second, independent simulation.
pub fn elimination_order_reference(v: u64) -> Result<EliminationOrder, GameError> {
    if v == 0 {
        return Err(GameError::domain("circle size must be at least 1"));
    }
    let mut ring: Vec<u64> = (1..=v).collect();
    let mut order = Vec::with_capacity(ring.len());
    let mut idx = 1 % ring.len();
    while ring.len() > 1 {
        order.push(ring.remove(idx));
        // the element after the removed one now sits at idx; skip it
        idx = (idx + 1) % ring.len();
    }
    order.push(ring[0]);
    Ok(EliminationOrder { v, order })
}

pub fn f_s_simulated(q: FsQuery) -> u64 {
    elimination_order(q.v)
        .and_then(|e| e.f_s(q.s))
        .expect("validated query")
}

/// `2(v − s)` when `v ≤ 2s`; otherwise `2m + 1` where `v = (2s+1)·2ⁿ + m`
/// with `0 ≤ m < (2s+1)·2ⁿ`.
pub fn f_s_closed(q: FsQuery) -> u64 {
    let FsQuery { s, v } = q;
    if v <= 2 * s {
        return 2 * (v - s);
    }
    let (_, m) = josephus_decomposition(s, v).expect("v >= 2s + 1");
    2 * m + 1
}

/// The unique `(n, m)` with `v = (2s+1)·2ⁿ + m` and `0 ≤ m ≤ (2s+1)·2ⁿ − 1`,
/// or `None` when `v < 2s + 1`.
pub fn josephus_decomposition(s: u64, v: u64) -> Option<(u32, u64)> {
    let odd = s.checked_mul(2)?.checked_add(1)?;
    if v < odd {
        return None;
    }
    let n = u64::BITS - 1 - (v / odd).leading_zeros();
    Some((n, v - (odd << n)))
}

/// Halving recursion `F_s(2v) = 2F_s(v) − 1`, `F_s(2v+1) = 2F_s(v) + 1`, with
/// base cases `F_s(s+k) = 2k` for `1 ≤ k ≤ s` and `F_s(2s+1) = 1`.
pub fn f_s_recursive(q: FsQuery) -> u64 {
    let s = q.s;
    let mut v = q.v;
    // F_s(v) = 2^depth · F_s(base) + offset, unwound from the parity bits
    let mut bits = Vec::new();
    while v > 2 * s + 1 {
        bits.push(v & 1);
        v >>= 1;
    }
    let mut f = if v == 2 * s + 1 { 1 } else { 2 * (v - s) };
    for bit in bits.into_iter().rev() {
        f = if bit == 0 { 2 * f - 1 } else { 2 * f + 1 };
    }
    f
}

/// Last number left, `F_0(v)`.
pub fn survivor(v: u64) -> Result<u64, GameError> {
    Ok(f_s_closed(FsQuery::new(0, v)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: u64, v: u64) -> FsQuery {
        FsQuery::new(s, v).unwrap()
    }

    #[test]
    fn order_examples() {
        assert_eq!(elimination_order(1).unwrap().as_slice(), &[1]);
        assert_eq!(elimination_order(3).unwrap().as_slice(), &[2, 1, 3]);
        assert_eq!(elimination_order(5).unwrap().as_slice(), &[2, 4, 1, 5, 3]);
        assert_eq!(
            elimination_order(7).unwrap().as_slice(),
            &[2, 4, 6, 1, 5, 3, 7]
        );
        assert!(elimination_order(0).is_err());
        assert!(elimination_order_reference(0).is_err());
    }

    #[test]
    fn one_based_access() {
        let e = elimination_order(5).unwrap();
        assert_eq!(e.get(0), None);
        assert_eq!(e.get(1), Some(2));
        assert_eq!(e.get(5), Some(3));
        assert_eq!(e.get(6), None);
        assert_eq!(e.survivor(), 3);
    }

    #[test]
    fn reference_simulation_agrees() {
        for v in 1..=300 {
            assert_eq!(
                elimination_order(v),
                elimination_order_reference(v),
                "v={v}"
            );
        }
    }

    #[test]
    fn fs_examples() {
        assert_eq!(f_s_simulated(q(0, 1)), 1);
        assert_eq!(f_s_simulated(q(0, 5)), 3);
        assert_eq!(f_s_simulated(q(3, 7)), 1);
        assert_eq!(f_s_simulated(q(3, 5)), 4);

        assert_eq!(f_s_closed(q(0, 5)), 3);
        assert_eq!(f_s_closed(q(3, 7)), 1);
        assert_eq!(f_s_closed(q(2, 7)), 5);
        assert_eq!(f_s_closed(q(3, 5)), 4);

        assert_eq!(f_s_recursive(q(1, 6)), 1);
        assert_eq!(f_s_recursive(q(1, 7)), 3);
        assert_eq!(f_s_recursive(q(0, 2)), 1);
    }

    #[test]
    fn fs_rejects_s_at_least_v() {
        assert!(FsQuery::new(5, 5).is_err());
        assert!(FsQuery::new(0, 0).is_err());
        assert!(elimination_order(4).unwrap().f_s(4).is_err());
    }

    #[test]
    fn survivor_examples() {
        assert_eq!(survivor(1).unwrap(), 1);
        assert_eq!(survivor(5).unwrap(), 3);
        assert_eq!(survivor(7).unwrap(), 7);
        assert!(survivor(0).is_err());
        // classical 2L + 1 with v = 2^n + L
        for v in 1u64..=1000 {
            let top = 1u64 << (63 - v.leading_zeros());
            assert_eq!(survivor(v).unwrap(), 2 * (v - top) + 1);
        }
    }

    #[test]
    fn three_routes_agree() {
        for v in 1..=400 {
            let e = elimination_order(v).unwrap();
            for s in 0..v {
                let sim = e.f_s(s).unwrap();
                assert_eq!(f_s_closed(q(s, v)), sim, "s={s} v={v}");
                assert_eq!(f_s_recursive(q(s, v)), sim, "s={s} v={v}");
            }
        }
    }

    #[test]
    fn first_half_removes_evens() {
        for v in 2..=200u64 {
            let e = elimination_order(v).unwrap();
            let evens: Vec<u64> = (1..=v / 2).map(|i| 2 * i).collect();
            assert_eq!(&e.as_slice()[..(v / 2) as usize], evens.as_slice());
            let mut sorted = e.as_slice().to_vec();
            sorted.sort_unstable();
            assert_eq!(sorted, (1..=v).collect::<Vec<_>>());
        }
    }

    proptest! {
        #[test]
        fn decomposition_is_unique(s in 0u64..1 << 20, extra in 0u64..1 << 40) {
            let v = 2 * s + 1 + extra;
            let (n, m) = josephus_decomposition(s, v).unwrap();
            let base = (2 * s + 1) << n;
            prop_assert_eq!(base + m, v);
            prop_assert!(m < base);
            prop_assert_eq!(f_s_closed(q(s, v)), f_s_recursive(q(s, v)));
        }
    }
}
