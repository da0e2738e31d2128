//! Jacobi and Kronecker symbols.
//!
//! The Kronecker symbol (c/d) is taken with the upper argument restricted to
//! c = 0 or 1 (mod 4), which is what makes it completely multiplicative and
//! periodic with period |c| in the lower argument. For a perfect-square upper
//! argument it degenerates to the principal character: 1 when gcd(c, d) = 1
//! and 0 otherwise, which the prime-by-prime definition below produces
//! without special casing.

use crate::error::{Error, Result};

/// Jacobi symbol (a/m) for odd m >= 1, by binary reciprocity.
fn jacobi_odd(a: i64, m: u64) -> i8 {
    debug_assert!(m % 2 == 1);
    let mut a = (a as i128).rem_euclid(m as i128) as u64;
    let mut m = m;
    let mut t = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if m % 8 == 3 || m % 8 == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut m);
        if a % 4 == 3 && m % 4 == 3 {
            t = -t;
        }
        a %= m;
    }
    if m == 1 {
        t
    } else {
        0
    }
}

/// Jacobi symbol extended multiplicatively to even lower arguments via
/// (a/2) = (-1)^((a^2-1)/8), which requires a to be odd.
pub fn jacobi_extended(a: i64, m: u64) -> Result<i8> {
    if m == 0 {
        return Err(Error::ZeroArgument("jacobi_extended"));
    }
    if m % 2 == 1 {
        return Ok(jacobi_odd(a, m));
    }
    if a % 2 == 0 {
        return Err(Error::JacobiEvenEven { a, m });
    }
    let e = m.trailing_zeros();
    let s2: i8 = match a.rem_euclid(8) {
        1 | 7 => 1,
        _ => -1,
    };
    let part2 = if e % 2 == 0 { 1 } else { s2 };
    Ok(part2 * jacobi_odd(a, m >> e))
}

/// Kronecker symbol (c/d) for c = 0 or 1 (mod 4) and d >= 1.
///
/// Splits d into its 2-part and odd part: the odd part contributes a Jacobi
/// symbol, and each factor of 2 contributes (c/2), which is 0 for even c and
/// equals the Jacobi symbol (2/|c|) for odd c.
pub fn kronecker(c: i64, d: u64) -> Result<i8> {
    if d == 0 {
        return Err(Error::ZeroArgument("kronecker"));
    }
    if !matches!(c.rem_euclid(4), 0 | 1) {
        return Err(Error::KroneckerUpperArgument(c));
    }
    let e = d.trailing_zeros();
    let part2: i8 = if e == 0 {
        1
    } else if c % 2 == 0 {
        0
    } else {
        let s2: i8 = match c.rem_euclid(8) {
            1 | 7 => 1,
            _ => -1,
        };
        if e % 2 == 0 {
            1
        } else {
            s2
        }
    };
    if part2 == 0 {
        return Ok(0);
    }
    Ok(part2 * jacobi_odd(c, d >> e))
}
