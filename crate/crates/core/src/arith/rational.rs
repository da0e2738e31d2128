//! Exact rationals and the two decompositions of g this crate lives on:
//! g = g1 * g2^2 with g1 a squarefree integer, and the largest h with g a
//! rational h-th power.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::factor::factorize;
use crate::error::{Error, Result};

/// Reduced fraction over arbitrary-precision integers. The denominator is
/// always positive, gcd(|num|, den) = 1 and zero is canonically 0/1 — all
/// maintained by `num_rational`.
pub type Rational = num_rational::BigRational;

pub fn rational_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rational_frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parse an integer or a `num/den` string into a reduced rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::ParseRational(s.to_string());
    let t = s.trim();
    match t.split_once('/') {
        None => {
            let n: BigInt = t.parse().map_err(|_| bad())?;
            Ok(Rational::from_integer(n))
        }
        Some((num, den)) => {
            let n: BigInt = num.trim().parse().map_err(|_| bad())?;
            let d: BigInt = den.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// Serialize as `num/den`, denominator always present: `7/82`, `-2/1`.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Numerator and denominator as machine integers, the factorization domain.
pub fn rational_parts_i64(g: &Rational) -> Result<(i64, u64)> {
    let num = g
        .numer()
        .to_i64()
        .filter(|&n| n != i64::MIN)
        .ok_or_else(|| Error::FactorBound(g.numer().to_string()))?;
    let den = g
        .denom()
        .to_u64()
        .filter(|&d| d <= i64::MAX as u64)
        .ok_or_else(|| Error::FactorBound(g.denom().to_string()))?;
    Ok((num, den))
}

/// Write g = g1 * g2^2 with g1 a squarefree integer carrying the sign of g
/// and g2 rational.
pub fn squarefree_decompose(g: &Rational) -> Result<(i64, Rational)> {
    if g.is_zero() {
        return Err(Error::ZeroArgument("squarefree_decompose"));
    }
    let (num, den) = rational_parts_i64(g)?;
    let num_factors = factorize(num)?;
    let den_factors = factorize(den as i64)?;

    let mut g1: i128 = num_factors.sign() as i128;
    let mut g2_num = BigInt::from(1);
    let mut g2_den = BigInt::from(1);
    for &(p, e) in num_factors.factors() {
        if e % 2 == 1 {
            g1 *= p as i128;
        }
        g2_num *= BigInt::from(p).pow(e / 2);
    }
    for &(p, e) in den_factors.factors() {
        if e % 2 == 1 {
            g1 *= p as i128;
        }
        // the leftover p^(-e mod 2) joins g1, so g2 absorbs ceil(e/2) from the denominator
        g2_den *= BigInt::from(p).pow(e / 2 + e % 2);
    }
    let g1 = i64::try_from(g1).map_err(|_| Error::FactorBound(g1.to_string()))?;
    Ok((g1, Rational::new(g2_num, g2_den)))
}

/// Largest h such that g is an h-th power of a rational.
///
/// h is the gcd of all exponents in the factorization of numerator and
/// denominator; a negative g admits no even-order roots, so the gcd is
/// replaced by its largest odd divisor.
pub fn power_index(g: &Rational) -> Result<u64> {
    if g.is_zero() {
        return Err(Error::PowerIndexUndefined);
    }
    let (num, den) = rational_parts_i64(g)?;
    let num_factors = factorize(num)?;
    let den_factors = factorize(den as i64)?;
    let mut h = 0u64;
    for &(_, e) in num_factors.factors().iter().chain(den_factors.factors()) {
        h = num_integer::gcd(h, e as u64);
    }
    if h == 0 {
        // no prime factors at all: g is 1 or -1
        return Err(Error::PowerIndexUndefined);
    }
    if g.is_negative() {
        while h % 2 == 0 {
            h /= 2;
        }
    }
    Ok(h)
}
