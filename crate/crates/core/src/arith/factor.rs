//! 64-bit integer factorization and the multiplicative functions built on it.
//!
//! Factorization is deterministic: trial division by every prime candidate up
//! to 10^6, then Miller-Rabin (with a base set proven complete for u64) and
//! Pollard rho for whatever survives. Reproducibility is preferred over raw
//! speed; every input this crate meets is small.

use num_integer::Integer;

use crate::error::{Error, Result};

/// Upper bound for the trial-division phase of [`factorize`].
const TRIAL_DIVISION_BOUND: u64 = 1_000_000;

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    // 128-bit intermediate keeps the product exact for any modulus below 2^64.
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin primality test for u64.
///
/// The witness set {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37} is known to be
/// exact for all inputs below 3.3 * 10^24, which covers u64.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    match n {
        0 | 1 => return false,
        2 | 3 => return true,
        _ if n % 2 == 0 => return false,
        _ => {}
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'outer: for &w in &WITNESSES {
        if w % n == 0 {
            continue;
        }
        let mut x = pow_mod(w, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Pollard rho with batched gcds. Deterministic: the polynomial offset
/// starts at 1 and increments until a split is found. Caller guarantees n is
/// odd, composite and has no factor <= 10^6.
fn pollard_rho(n: u64) -> u64 {
    debug_assert!(n % 2 == 1 && !is_prime(n));
    for c in 1u64.. {
        let f = |x: u64| ((mul_mod(x, x, n) as u128 + c as u128) % n as u128) as u64;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        let mut q = 1u64;
        let mut count = 0u32;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            q = mul_mod(q, x.abs_diff(y), n);
            count += 1;
            if count == 64 {
                d = q.gcd(&n);
                q = 1;
                count = 0;
            }
        }
        if d == 0 || d == n {
            // Batch gcd overshot a cycle; replay one step at a time.
            let (mut x, mut y) = (2u64, 2u64);
            d = 1;
            while d == 1 {
                x = f(x);
                y = f(f(y));
                d = x.abs_diff(y).gcd(&n);
            }
        }
        if d != n {
            return d;
        }
    }
    unreachable!()
}

fn push_prime_factors(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
    } else {
        let d = pollard_rho(n);
        push_prime_factors(d, out);
        push_prime_factors(n / d, out);
    }
}

fn factor_magnitude(mut n: u64) -> Vec<(u64, u32)> {
    let mut primes = Vec::new();
    let mut d = 2u64;
    while d <= TRIAL_DIVISION_BOUND && d * d <= n {
        while n % d == 0 {
            primes.push(d);
            n /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    push_prime_factors(n, &mut primes);
    primes.sort_unstable();
    let mut factors: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    factors
}

/// Signed prime factorization: a sign and a strictly increasing list of
/// (prime, exponent) pairs whose product reconstructs the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorMap {
    sign: i8,
    factors: Vec<(u64, u32)>,
}

impl FactorMap {
    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// Multiply the factorization back together.
    pub fn reconstruct(&self) -> i64 {
        let mut n = 1i64;
        for &(p, e) in &self.factors {
            for _ in 0..e {
                n *= p as i64;
            }
        }
        n * self.sign as i64
    }

    /// Mobius function of the magnitude.
    pub fn mobius(&self) -> i8 {
        if !self.is_squarefree() {
            0
        } else if self.factors.len() % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Euler totient of the magnitude.
    pub fn phi(&self) -> u64 {
        let mut acc = 1u64;
        for &(p, e) in &self.factors {
            acc *= p - 1;
            for _ in 1..e {
                acc *= p;
            }
        }
        acc
    }
}

impl std::fmt::Display for FactorMap {
    /// Sorted `p^e` list, e.g. `2^2 7^1`; the units render as `1` and `-1`.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.sign < 0 {
            write!(f, "-")?;
        }
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{p}^{e}")?;
        }
        Ok(())
    }
}

/// Exact prime factorization of a nonzero signed 64-bit integer.
pub fn factorize(n: i64) -> Result<FactorMap> {
    if n == 0 {
        return Err(Error::ZeroArgument("factorize"));
    }
    if n == i64::MIN {
        return Err(Error::FactorBound(n.to_string()));
    }
    Ok(FactorMap {
        sign: if n < 0 { -1 } else { 1 },
        factors: factor_magnitude(n.unsigned_abs()),
    })
}

/// Factorization of an unsigned magnitude; used where values may exceed i64.
pub fn factorize_u64(n: u64) -> Result<FactorMap> {
    if n == 0 {
        return Err(Error::ZeroArgument("factorize"));
    }
    Ok(FactorMap {
        sign: 1,
        factors: factor_magnitude(n),
    })
}

/// Mobius function.
pub fn mobius(n: u64) -> Result<i8> {
    Ok(factorize_u64(n)?.mobius())
}

/// Euler totient.
pub fn euler_phi(n: u64) -> Result<u64> {
    Ok(factorize_u64(n)?.phi())
}

/// Ascending primes up to `limit` inclusive, by plain sieve of Eratosthenes.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for p in 2..=n {
        if !composite[p] {
            primes.push(p as u64);
            let mut q = p * p;
            while q <= n {
                composite[q] = true;
                q += p;
            }
        }
    }
    primes
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Brute-force Mobius: independent of FactorMap.
    fn brute_mobius(n: u64) -> i8 {
        let mut m = n;
        let mut k = 0;
        let mut d = 2;
        while d * d <= m {
            if m % d == 0 {
                m /= d;
                if m % d == 0 {
                    return 0;
                }
                k += 1;
            }
            d += 1;
        }
        if m > 1 {
            k += 1;
        }
        if k % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Brute-force totient: count of units.
    fn brute_phi(n: u64) -> u64 {
        (1..=n).filter(|&k| k.gcd(&n) == 1).count() as u64
    }

    #[test]
    fn factorize_fixed_cases() {
        let m = factorize(28).unwrap();
        assert_eq!(m.factors(), &[(2, 2), (7, 1)]);
        assert_eq!(m.sign(), 1);

        let one = factorize(1).unwrap();
        assert!(one.factors().is_empty());
        assert_eq!(one.sign(), 1);

        // 21^7, checked by repeated division in reconstruct().
        let big = factorize(1_801_088_541).unwrap();
        assert_eq!(big.factors(), &[(3, 7), (7, 7)]);
        assert_eq!(big.reconstruct(), 1_801_088_541);

        let neg = factorize(-60).unwrap();
        assert_eq!(neg.sign(), -1);
        assert_eq!(neg.factors(), &[(2, 2), (3, 1), (5, 1)]);
        assert_eq!(neg.reconstruct(), -60);

        assert_eq!(factorize(0), Err(Error::ZeroArgument("factorize")));
        assert!(matches!(factorize(i64::MIN), Err(Error::FactorBound(_))));
    }

    #[test]
    fn factorize_large_semiprime() {
        // Forces the rho path: both factors exceed the trial bound.
        let n: u64 = 1_000_003 * 1_000_033;
        let m = factorize_u64(n).unwrap();
        assert_eq!(m.factors(), &[(1_000_003, 1), (1_000_033, 1)]);
    }

    #[test]
    fn display_format() {
        assert_eq!(factorize(28).unwrap().to_string(), "2^2 7^1");
        assert_eq!(factorize(-28).unwrap().to_string(), "-2^2 7^1");
        assert_eq!(factorize(1).unwrap().to_string(), "1");
        assert_eq!(factorize(-1).unwrap().to_string(), "-1");
    }

    #[test]
    fn mobius_and_phi_match_brute_force() {
        for n in 1..=10_000u64 {
            assert_eq!(mobius(n).unwrap(), brute_mobius(n), "mu({n})");
            assert_eq!(euler_phi(n).unwrap(), brute_phi(n), "phi({n})");
        }
        assert_eq!(mobius(1).unwrap(), 1);
        assert_eq!(mobius(10).unwrap(), 1);
        assert_eq!(mobius(12).unwrap(), 0);
        assert_eq!(euler_phi(1).unwrap(), 1);
        assert_eq!(euler_phi(28).unwrap(), 12);
        assert_eq!(euler_phi(8).unwrap(), 4);
        assert_eq!(mobius(0), Err(Error::ZeroArgument("factorize")));
        assert_eq!(euler_phi(0), Err(Error::ZeroArgument("factorize")));
    }

    #[test]
    fn primes_up_to_counts() {
        assert_eq!(primes_up_to(1).len(), 0);
        assert_eq!(primes_up_to(10), vec![2, 3, 5, 7]);
        assert_eq!(primes_up_to(100_000).len(), 9592);
    }

    #[test]
    fn is_prime_agrees_with_sieve() {
        let primes = primes_up_to(2000);
        for n in 0..=2000u64 {
            assert_eq!(is_prime(n), primes.binary_search(&n).is_ok(), "n = {n}");
        }
        assert!(is_prime(u64::MAX - 58)); // 2^64 - 59 is prime
        assert!(!is_prime(u64::MAX));
    }

    proptest! {
        #[test]
        fn reconstruct_is_identity(n in prop::num::i64::ANY) {
            prop_assume!(n != 0 && n != i64::MIN);
            let m = factorize(n).unwrap();
            prop_assert_eq!(m.reconstruct(), n);
            // listed primes are strictly increasing and actually prime
            for w in m.factors().windows(2) {
                prop_assert!(w[0].0 < w[1].0);
            }
            for p in m.primes() {
                prop_assert!(is_prime(p));
            }
        }
    }
}
