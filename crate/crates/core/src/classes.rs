//! Closed-form description of the positions with a given Grundy value.
//!
//! The positions with Grundy value `s` split into three families:
//!
//! * `N(n, m)`: `((2s+1)·2ⁿ − 1 + m, m)` for `n ≥ 0` and `0 ≤ m ≤ (2s+1)·2ⁿ − 1`,
//! * `A(k, j)`: `(2k, j)` for `0 ≤ k ≤ s−1` and `2^{s−k−1} + k ≤ j ≤ 2^{s−k} + k − 1`,
//! * `B(k, j)`: `(2k+1, j)` with the same ranges as `A`.
//!
//! `A` and `B` are empty when `s = 0`. A position with `x ≥ 2y` always lies in
//! an `N` family, and one with `x < 2y` in an `A` or `B` family, which makes
//! [`classify`] a direct computation.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::engine::GrundySource;
use crate::error::GameError;
use crate::game::Position;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    N { n: u32, m: u64 },
    A { k: u64, j: u64 },
    B { k: u64, j: u64 },
}

impl Family {
    pub fn letter(&self) -> &'static str {
        match self {
            Family::N { .. } => "N",
            Family::A { .. } => "A",
            Family::B { .. } => "B",
        }
    }

    /// `(n, m)` for `N`, `(k, j)` for `A` and `B`.
    pub fn params(&self) -> (u64, u64) {
        match *self {
            Family::N { n, m } => (n as u64, m),
            Family::A { k, j } | Family::B { k, j } => (k, j),
        }
    }
}

/// A Grundy value together with the family (and its parameters) holding a position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GrundyClass {
    s: u64,
    family: Family,
}

impl GrundyClass {
    /// Builds a class, rejecting parameters outside their ranges or whose
    /// position would not fit in `u64`.
    pub fn new(s: u64, family: Family) -> Result<Self, GameError> {
        let class = GrundyClass { s, family };
        class.position()?;
        Ok(class)
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// The position this class denotes.
    pub fn position(&self) -> Result<Position, GameError> {
        let s = self.s;
        match self.family {
            Family::N { n, m } => {
                let base = n_family_base(s, n).ok_or_else(|| {
                    GameError::domain(format!("(2s+1)·2^n overflows for s={s}, n={n}"))
                })?;
                if m > base - 1 {
                    return Err(GameError::domain(format!(
                        "m={m} exceeds (2s+1)·2^n − 1 = {} for s={s}, n={n}",
                        base - 1
                    )));
                }
                let x = (base - 1)
                    .checked_add(m)
                    .ok_or_else(|| GameError::domain("position overflows u64"))?;
                Ok(Position::new(x, m))
            }
            Family::A { k, j } | Family::B { k, j } => {
                if k >= s {
                    return Err(GameError::domain(format!(
                        "k={k} must be at most s−1 for s={s}"
                    )));
                }
                let (lo, hi) = window(s, k).ok_or_else(|| {
                    GameError::domain(format!("window for s={s}, k={k} overflows u64"))
                })?;
                if j < lo || j > hi {
                    return Err(GameError::domain(format!(
                        "j={j} outside [{lo}, {hi}] for s={s}, k={k}"
                    )));
                }
                let x = if matches!(self.family, Family::A { .. }) {
                    2 * k
                } else {
                    2 * k + 1
                };
                Ok(Position::new(x, j))
            }
        }
    }
}

impl fmt::Display for GrundyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::N { n, m } => write!(f, "s={} N(n={n}, m={m})", self.s),
            Family::A { k, j } => write!(f, "s={} A(k={k}, j={j})", self.s),
            Family::B { k, j } => write!(f, "s={} B(k={k}, j={j})", self.s),
        }
    }
}

/// `(2s+1)·2ⁿ`, if it fits.
fn n_family_base(s: u64, n: u32) -> Option<u64> {
    let odd = s.checked_mul(2)?.checked_add(1)?;
    let scale = 1u64.checked_shl(n)?;
    odd.checked_mul(scale)
}

/// `[2^{s−k−1} + k, 2^{s−k} + k − 1]` for `k < s`, if it fits.
fn window(s: u64, k: u64) -> Option<(u64, u64)> {
    let e = u32::try_from(s - k).ok()?;
    let hi_pow = 1u64.checked_shl(e)?;
    let lo = (hi_pow / 2).checked_add(k)?;
    let hi = hi_pow.checked_add(k)? - 1;
    Some((lo, hi))
}

/// Splits `d ≥ 1` as `odd · 2ⁿ`.
pub fn odd_part(d: u64) -> Result<(u64, u32), GameError> {
    if d == 0 {
        return Err(GameError::domain("odd part of 0 is undefined"));
    }
    let n = d.trailing_zeros();
    Ok((d >> n, n))
}

fn floor_log2(v: u64) -> u64 {
    debug_assert!(v > 0);
    (u64::BITS - 1 - v.leading_zeros()) as u64
}

/// The unique class containing `p`.
pub fn classify(p: Position) -> GrundyClass {
    let Position { x, y } = p;
    if x / 2 >= y {
        // x ≥ 2y: x − y + 1 = (2s+1)·2ⁿ with m = y
        let (odd, n) = odd_part(x - y + 1).expect("x - y + 1 >= 1");
        GrundyClass {
            s: (odd - 1) / 2,
            family: Family::N { n, m: y },
        }
    } else {
        // x < 2y, so y > k and 2^{s−k−1} ≤ y − k < 2^{s−k}
        let k = x / 2;
        let s = k + floor_log2(y - k) + 1;
        let family = if x % 2 == 0 {
            Family::A { k, j: y }
        } else {
            Family::B { k, j: y }
        };
        GrundyClass { s, family }
    }
}

pub fn grundy_closed(p: Position) -> u64 {
    classify(p).s
}

pub fn class_position(c: &GrundyClass) -> Result<Position, GameError> {
    c.position()
}

/// Every class of Grundy value `s` whose position lies in the box, sorted by position.
pub fn enumerate_classes(s: u64, x_max: u64, y_max: u64) -> Vec<GrundyClass> {
    let mut out = Vec::new();
    let mut n = 0u32;
    while let Some(base) = n_family_base(s, n) {
        if base - 1 > x_max {
            break;
        }
        let m_max = (base - 1).min(y_max).min(x_max - (base - 1));
        out.extend((0..=m_max).map(|m| GrundyClass {
            s,
            family: Family::N { n, m },
        }));
        n += 1;
    }
    for k in 0..s {
        if 2 * k > x_max {
            break;
        }
        let Some((lo, hi)) = window(s, k) else {
            continue;
        };
        if lo > y_max {
            continue;
        }
        for j in lo..=hi.min(y_max) {
            out.push(GrundyClass {
                s,
                family: Family::A { k, j },
            });
            if 2 * k < x_max {
                out.push(GrundyClass {
                    s,
                    family: Family::B { k, j },
                });
            }
        }
    }
    out.sort_by_key(|c| c.position().expect("enumerated classes are valid"));
    out
}

/// All positions with Grundy value `s` inside the box, sorted by `(x, y)`.
pub fn enumerate_class(s: u64, x_max: u64, y_max: u64) -> Vec<Position> {
    enumerate_classes(s, x_max, y_max)
        .iter()
        .map(|c| c.position().expect("enumerated classes are valid"))
        .collect()
}

/// Grundy values from the closed form.
#[derive(Debug, Default, Clone, Copy)]
pub struct ClosedForm;

impl GrundySource for ClosedForm {
    fn grundy(&mut self, p: Position) -> u32 {
        u32::try_from(grundy_closed(p)).expect("grundy value fits in u32")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::GrundyTable;
    use proptest::prelude::*;

    fn p(x: u64, y: u64) -> Position {
        Position::new(x, y)
    }

    fn class(s: u64, family: Family) -> GrundyClass {
        GrundyClass::new(s, family).unwrap()
    }

    #[test]
    fn odd_part_examples() {
        assert_eq!(odd_part(1).unwrap(), (1, 0));
        assert_eq!(odd_part(12).unwrap(), (3, 2));
        assert_eq!(odd_part(8).unwrap(), (1, 3));
        assert!(odd_part(0).is_err());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(p(0, 0)), class(0, Family::N { n: 0, m: 0 }));
        assert_eq!(classify(p(2, 1)), class(0, Family::N { n: 1, m: 1 }));
        assert_eq!(classify(p(6, 2)), class(2, Family::N { n: 0, m: 2 }));
        assert_eq!(classify(p(2, 3)), class(3, Family::A { k: 1, j: 3 }));
        assert_eq!(classify(p(5, 4)), class(4, Family::B { k: 2, j: 4 }));
    }

    #[test]
    fn grundy_closed_examples() {
        assert_eq!(grundy_closed(p(0, 0)), 0);
        assert_eq!(grundy_closed(p(4, 0)), 2);
        assert_eq!(grundy_closed(p(2, 2)), 2);
    }

    #[test]
    fn class_position_examples() {
        assert_eq!(class(0, Family::N { n: 0, m: 0 }).position(), Ok(p(0, 0)));
        assert_eq!(class(2, Family::N { n: 0, m: 2 }).position(), Ok(p(6, 2)));
        assert_eq!(class(3, Family::A { k: 1, j: 3 }).position(), Ok(p(2, 3)));
    }

    #[test]
    fn class_construction_rejects_bad_params() {
        assert!(GrundyClass::new(0, Family::N { n: 0, m: 1 }).is_err());
        assert!(GrundyClass::new(2, Family::N { n: 1, m: 10 }).is_err());
        assert!(GrundyClass::new(3, Family::A { k: 1, j: 2 }).is_err());
        assert!(GrundyClass::new(3, Family::A { k: 1, j: 5 }).is_err());
        assert!(GrundyClass::new(3, Family::B { k: 3, j: 3 }).is_err());
        assert!(GrundyClass::new(0, Family::A { k: 0, j: 0 }).is_err());
        assert!(GrundyClass::new(1, Family::N { n: 70, m: 0 }).is_err());
        assert!(GrundyClass::new(200, Family::A { k: 0, j: 1 }).is_err());
    }

    #[test]
    fn enumerate_examples() {
        // (3, 2) has x < 2y and value 2; (3, 0) = N(n=2, m=0) is the fourth member
        assert_eq!(
            enumerate_class(0, 3, 3),
            vec![p(0, 0), p(1, 0), p(2, 1), p(3, 0)]
        );
        assert_eq!(crate::engine::grundy(p(3, 0)), 0);
        assert_ne!(crate::engine::grundy(p(3, 2)), 0);
        assert_eq!(
            enumerate_class(1, 3, 2),
            vec![p(0, 1), p(1, 1), p(2, 0), p(3, 1)]
        );
        assert_eq!(enumerate_class(0, 0, 5), vec![p(0, 0)]);
    }

    #[test]
    fn enumerate_matches_classify_filter() {
        let (xm, ym) = (60, 45);
        for s in 0..=35 {
            let mut expected = Vec::new();
            for x in 0..=xm {
                for y in 0..=ym {
                    if grundy_closed(p(x, y)) == s {
                        expected.push(p(x, y));
                    }
                }
            }
            assert_eq!(enumerate_class(s, xm, ym), expected, "s={s}");
        }
    }

    #[test]
    fn closed_form_matches_oracle_small_box() {
        let table = GrundyTable::build(80, 80);
        for (pos, g) in table.iter() {
            assert_eq!(grundy_closed(pos), g as u64, "at {pos}");
        }
    }

    proptest! {
        #[test]
        fn classify_round_trips(x in 0u64..u64::MAX / 2, y in 0u64..u64::MAX / 2) {
            let c = classify(p(x, y));
            prop_assert_eq!(GrundyClass::new(c.s(), c.family()), Ok(c));
            prop_assert_eq!(class_position(&c), Ok(p(x, y)));
        }

        #[test]
        fn ab_families_lie_above_the_diagonal(s in 1u64..40, k_off in 0u64..40, j_off in 0u64..1 << 20) {
            let k = k_off % s;
            let (lo, hi) = window(s, k).unwrap();
            let j = lo + j_off % (hi - lo + 1);
            for fam in [Family::A { k, j }, Family::B { k, j }] {
                let c = class(s, fam);
                let pos = c.position().unwrap();
                prop_assert!(pos.x < 2 * s);
                prop_assert!(2 * pos.y > pos.x);
                prop_assert_eq!(classify(pos), c);
            }
        }
    }
}
