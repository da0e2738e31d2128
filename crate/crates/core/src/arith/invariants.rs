//! Classification of a rational g and its derived constants: the power index
//! h, the squarefree part g1, the cofactor g2 and the discriminant of the
//! quadratic field generated by a square root of g.

use num_traits::{One, Signed, Zero};

use crate::arith::rational::{power_index, squarefree_decompose, Rational};
use crate::error::{Error, Result};

/// Where g sits relative to G, the set of rationals that can have infinitely
/// many primes with g as a primitive root: everything except 0, ±1 and the
/// perfect squares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GClass {
    Zero,
    PlusOne,
    MinusOne,
    PerfectSquare,
    InG,
}

impl std::fmt::Display for GClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            GClass::Zero => "zero",
            GClass::PlusOne => "+1",
            GClass::MinusOne => "-1",
            GClass::PerfectSquare => "a perfect square",
            GClass::InG => "in G",
        })
    }
}

pub fn classify(g: &Rational) -> GClass {
    if g.is_zero() {
        return GClass::Zero;
    }
    if g.is_one() {
        return GClass::PlusOne;
    }
    if (-g).is_one() {
        return GClass::MinusOne;
    }
    if !g.is_negative() {
        let square = |n: &num_bigint::BigInt| {
            let r = n.sqrt();
            &r * &r == *n
        };
        if square(g.numer()) && square(g.denom()) {
            return GClass::PerfectSquare;
        }
    }
    GClass::InG
}

/// Derived constants of g.
///
/// `h` and the decomposition are meaningful for the `InG` and
/// `PerfectSquare` classes; for g = ±1 the power index is unbounded and `h`
/// is stored as 1.
#[derive(Debug, Clone, PartialEq)]
pub struct GInvariants {
    pub g: Rational,
    pub class: GClass,
    /// Largest h with g an h-th rational power; odd whenever g is in G.
    pub h: u64,
    /// Squarefree part: g = g1 * g2^2, sign carried by g1.
    pub g1: i64,
    pub g2: Rational,
    /// Discriminant of Q(sqrt(g)): g1 if g1 = 1 (mod 4), else 4*g1.
    pub delta: i64,
}

impl GInvariants {
    pub fn require_in_g(&self) -> Result<()> {
        if self.class == GClass::InG {
            Ok(())
        } else {
            Err(Error::NotInG(self.class))
        }
    }
}

pub fn compute_g_invariants(g: &Rational) -> Result<GInvariants> {
    let class = classify(g);
    if class == GClass::Zero {
        return Err(Error::ZeroArgument("compute_g_invariants"));
    }
    let (g1, g2) = squarefree_decompose(g)?;
    let h = match class {
        GClass::PlusOne | GClass::MinusOne => 1,
        _ => power_index(g)?,
    };
    let delta = if g1.rem_euclid(4) == 1 {
        g1
    } else {
        g1.checked_mul(4)
            .ok_or_else(|| Error::FactorBound(g1.to_string()))?
    };
    debug_assert!(class != GClass::InG || h % 2 == 1);
    debug_assert!(matches!(delta.rem_euclid(4), 0 | 1));
    Ok(GInvariants {
        g: g.clone(),
        class,
        h,
        g1,
        g2,
        delta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::{rational_frac, rational_int};

    #[test]
    fn classify_cases() {
        assert_eq!(classify(&Rational::zero()), GClass::Zero);
        assert_eq!(classify(&rational_int(1)), GClass::PlusOne);
        assert_eq!(classify(&rational_int(-1)), GClass::MinusOne);
        assert_eq!(classify(&rational_int(4)), GClass::PerfectSquare);
        assert_eq!(classify(&rational_frac(9, 4)), GClass::PerfectSquare);
        assert_eq!(classify(&rational_int(2)), GClass::InG);
        assert_eq!(classify(&rational_frac(-9, 4)), GClass::InG);
        assert_eq!(classify(&rational_frac(1, 2)), GClass::InG);
    }

    #[test]
    fn invariants_fixed_cases() {
        let five = compute_g_invariants(&rational_int(5)).unwrap();
        assert_eq!((five.h, five.g1, five.delta), (1, 5, 5));

        let two = compute_g_invariants(&rational_int(2)).unwrap();
        assert_eq!((two.h, two.g1, two.delta), (1, 2, 8));

        let minus_two = compute_g_invariants(&rational_int(-2)).unwrap();
        assert_eq!((minus_two.h, minus_two.g1, minus_two.delta), (1, -2, -8));

        let minus_seven = compute_g_invariants(&rational_int(-7)).unwrap();
        assert_eq!((minus_seven.h, minus_seven.g1, minus_seven.delta), (1, -7, -7));

        let big = compute_g_invariants(&rational_int(1_801_088_541)).unwrap();
        assert_eq!((big.h, big.g1, big.delta), (7, 21, 21));
        assert_eq!(big.g2, rational_int(9261)); // 21^3

        let eight = compute_g_invariants(&rational_int(8)).unwrap();
        assert_eq!((eight.h, eight.g1, eight.delta), (3, 2, 8));

        assert!(compute_g_invariants(&Rational::zero()).is_err());
    }

    #[test]
    fn invariants_outside_g_are_classified() {
        let sq = compute_g_invariants(&rational_int(4)).unwrap();
        assert_eq!(sq.class, GClass::PerfectSquare);
        assert_eq!((sq.h, sq.g1, sq.delta), (2, 1, 1));
        assert_eq!(
            sq.require_in_g(),
            Err(Error::NotInG(GClass::PerfectSquare))
        );

        let minus_one = compute_g_invariants(&rational_int(-1)).unwrap();
        assert_eq!(minus_one.class, GClass::MinusOne);
        assert_eq!((minus_one.g1, minus_one.delta), (-1, -4));
    }

    #[test]
    fn delta_is_a_discriminant() {
        for n in -60..=60i64 {
            if n == 0 {
                continue;
            }
            let inv = compute_g_invariants(&rational_int(n)).unwrap();
            assert!(matches!(inv.delta.rem_euclid(4), 0 | 1), "delta({n})");
            let back = rational_int(inv.g1) * &inv.g2 * &inv.g2;
            assert_eq!(back, rational_int(n));
        }
    }
}
