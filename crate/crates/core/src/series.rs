//! Independent oracle: the density evaluated by truncating its defining
//! series over splitting conditions in cyclotomic-Kummer extensions,
//! `delta(a, f, g) = sum_n mu(n) c_a(n) / [Q(zeta_f, zeta_n, g^(1/n)) : Q]`,
//! together with the per-term weight w(k), the extension degrees, and the
//! auxiliary sum S(b) in closed form. No field is ever represented
//! symbolically: the Galois-theoretic conditions compile down to gcd,
//! divisibility and Kronecker-symbol predicates.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::arith::{
    compute_g_invariants, euler_phi, factorize_u64, kronecker, mobius, GInvariants, Rational,
};
use crate::density::{artin_coefficient, Progression};
use crate::error::{Error, Result};

/// Mobius and totient tables up to a fixed cutoff, built by linear sieve.
/// Costs five bytes per integer: 10^6 is instant, 10^7 takes ~50 MB of
/// transient smallest-prime-factor workspace.
pub struct SeriesTables {
    n_max: u64,
    mu: Vec<i8>,
    phi: Vec<u32>,
}

impl SeriesTables {
    pub fn new(n_max: u64) -> Self {
        assert!(n_max >= 1, "series tables need a positive cutoff");
        assert!(n_max <= u32::MAX as u64, "cutoff exceeds table range");
        let n = n_max as usize;
        let mut lpf = vec![0u32; n + 1];
        let mut primes: Vec<u32> = Vec::new();
        let mut mu = vec![0i8; n + 1];
        let mut phi = vec![0u32; n + 1];
        if n >= 1 {
            mu[1] = 1;
            phi[1] = 1;
        }
        for i in 2..=n {
            if lpf[i] == 0 {
                lpf[i] = i as u32;
                primes.push(i as u32);
                mu[i] = -1;
                phi[i] = (i - 1) as u32;
            }
            for &p in &primes {
                let p = p as usize;
                if p > lpf[i] as usize || i * p > n {
                    break;
                }
                lpf[i * p] = p as u32;
                if i % p == 0 {
                    mu[i * p] = 0;
                    phi[i * p] = phi[i] * p as u32;
                    break;
                } else {
                    mu[i * p] = -mu[i];
                    phi[i * p] = phi[i] * (p as u32 - 1);
                }
            }
        }
        SeriesTables { n_max, mu, phi }
    }

    pub fn n_max(&self) -> u64 {
        self.n_max
    }

    #[inline]
    pub fn mobius(&self, n: u64) -> i8 {
        self.mu[n as usize]
    }

    #[inline]
    pub fn phi(&self, n: u64) -> u64 {
        self.phi[n as usize] as u64
    }
}

/// The multiplicative weight w(k) = k phi(lcm(k, f)) / ((k, h) phi(f)).
///
/// Both k/(k, h) and phi(lcm(k, f))/phi(f) are integers, so the quotient is
/// computed exactly.
pub fn term_weight(k: u64, f: u64, h: u64) -> u64 {
    assert!(k >= 1 && f >= 1 && h >= 1);
    let l = k.lcm(&f);
    let phi_l = euler_phi(l).expect("lcm is positive");
    let phi_f = euler_phi(f).expect("f is positive");
    debug_assert_eq!(phi_l % phi_f, 0);
    (k / k.gcd(&h)) * (phi_l / phi_f)
}

/// Degree [Q(zeta_r, g^(1/k)) : Q] for squarefree k dividing r: with
/// k1 = k/(k, h) it is k1 phi(r), halved exactly when k is even and the
/// discriminant of Q(sqrt(g)) divides r.
pub fn kummer_degree(k: u64, r: u64, inv: &GInvariants) -> Result<u64> {
    if k == 0 || r % k != 0 {
        return Err(Error::NotADivisor { k, r });
    }
    if mobius(k)? == 0 {
        return Err(Error::NotSquarefree(k));
    }
    let k1 = k / k.gcd(&inv.h);
    let mut d = k1 * euler_phi(r)?;
    if k % 2 == 0 && r % inv.delta.unsigned_abs() == 0 {
        debug_assert_eq!(d % 2, 0);
        d /= 2;
    }
    Ok(d)
}

/// Per-progression context for evaluating individual series terms: all the
/// data that does not depend on n, precomputed once.
pub struct TermContext<'t> {
    a: u64,
    f: u64,
    h: u64,
    b_odd: bool,
    /// kronecker(gamma, a) when b is odd.
    gamma_symbol: i8,
    abs_delta: u64,
    /// delta | lcm(f, n) iff this divides n; None when no squarefree n works.
    lcm_requirement: Option<u64>,
    phi_f: u64,
    /// phi(d) for every divisor d of f.
    phi_divisors: HashMap<u64, u64>,
    tables: &'t SeriesTables,
}

impl<'t> TermContext<'t> {
    pub fn new(prog: Progression, inv: &GInvariants, tables: &'t SeriesTables) -> Result<Self> {
        inv.require_in_g()?;
        let (a, f) = (prog.a(), prog.f());
        let abs_delta = inv.delta.unsigned_abs();
        let fd = abs_delta.gcd(&f) as i64;
        let b = inv.delta / fd;
        let b_odd = b % 2 != 0;
        let gamma_symbol = if b_odd {
            let gamma = if ((b - 1) / 2) % 2 == 0 { fd } else { -fd };
            kronecker(gamma, a)?
        } else {
            0
        };
        // delta | lcm(f, n) reduces to a single divisibility on squarefree n:
        // primes p^e || delta with p^e | f impose nothing; leftover primes with
        // e = 1 must divide n; a leftover p^e with e >= 2 can never divide
        // lcm(f, n) because n contributes at most one factor of p.
        let mut requirement = Some(1u64);
        for &(p, e) in factorize_u64(abs_delta)?.factors() {
            let mut fp = 0u32;
            let mut m = f;
            while m % p == 0 {
                fp += 1;
                m /= p;
            }
            if fp >= e {
                continue;
            }
            if e == 1 {
                requirement = requirement.map(|q| q * p);
            } else {
                requirement = None;
                break;
            }
        }
        let phi_f = euler_phi(f)?;
        let mut divisors = vec![1u64];
        for &(p, e) in factorize_u64(f)?.factors() {
            let base = divisors.clone();
            let mut pe = 1u64;
            for _ in 0..e {
                pe *= p;
                divisors.extend(base.iter().map(|d| d * pe));
            }
        }
        let mut phi_divisors = HashMap::new();
        for d in divisors {
            phi_divisors.insert(d, euler_phi(d)?);
        }
        Ok(TermContext {
            a,
            f,
            h: inv.h,
            b_odd,
            gamma_symbol,
            abs_delta,
            lcm_requirement: requirement,
            phi_f,
            phi_divisors,
            tables,
        })
    }

    #[inline]
    fn delta_divides_lcm(&self, n: u64) -> bool {
        match self.lcm_requirement {
            Some(q) => n % q == 0,
            None => false,
        }
    }

    #[inline]
    fn indicator_squarefree(&self, n: u64) -> bool {
        let d = self.f.gcd(&n);
        if (self.a - 1) % d != 0 {
            return false;
        }
        // the one case where the intersection field grows beyond Q(zeta_(f,n)):
        // b odd, n even, delta does not divide n but does divide lcm(f, n)
        if self.b_odd && n % 2 == 0 && n % self.abs_delta != 0 && self.delta_divides_lcm(n) {
            return self.gamma_symbol == 1;
        }
        true
    }

    #[inline]
    fn degree_squarefree(&self, n: u64) -> u128 {
        let d = self.f.gcd(&n);
        let k1 = (n / n.gcd(&self.h)) as u128;
        let phi_r = self.phi_f as u128 * self.tables.phi(n) as u128 / self.phi_divisors[&d] as u128;
        let mut deg = k1 * phi_r;
        if n % 2 == 0 && self.delta_divides_lcm(n) {
            debug_assert_eq!(deg % 2, 0);
            deg /= 2;
        }
        deg
    }

    /// Does the automorphism a (mod f) fix Q(zeta_f) intersected with
    /// Q(zeta_n, g^(1/n))? This is the indicator c_a(n) of the series.
    pub fn indicator(&self, n: u64) -> Result<bool> {
        if n == 0 || self.tables.mobius(n) == 0 {
            return Err(Error::NotSquarefree(n));
        }
        Ok(self.indicator_squarefree(n))
    }

    /// Degree of the full compositum Q(zeta_f, zeta_n, g^(1/n)) over Q, equal
    /// to the Kummer degree at r = lcm(f, n) since the two cyclotomic parts
    /// merge into Q(zeta_lcm(f,n)).
    pub fn term_degree(&self, n: u64) -> Result<u64> {
        if n == 0 || self.tables.mobius(n) == 0 {
            return Err(Error::NotSquarefree(n));
        }
        u64::try_from(self.degree_squarefree(n)).map_err(|_| Error::FactorBound(n.to_string()))
    }
}

/// A truncated evaluation of the density series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncatedDensity {
    /// Partial sum over squarefree n up to the cutoff, in fixed ascending
    /// order (bit-reproducible).
    pub value: f64,
    /// Bound on the absolute error of the truncation: 4h/sqrt(N).
    pub tail_bound: f64,
    pub cutoff: u64,
}

/// Truncate the density series at `n_max`, building tables on the fly.
pub fn delta_truncated(prog: Progression, g: &Rational, n_max: u64) -> Result<TruncatedDensity> {
    if n_max < 2 {
        return Err(Error::SeriesCutoff(n_max));
    }
    let inv = compute_g_invariants(g)?;
    let tables = SeriesTables::new(n_max);
    delta_truncated_with(prog, &inv, &tables)
}

/// Truncate the density series at the table cutoff.
///
/// Tail bound: each term is bounded by 1/D_n with D_n >= n phi(n) / (2h),
/// and phi(n) > sqrt(n) for n > 6, so the tail past N is at most
/// 2h sum_{n > N} n^(-3/2) <= 4h / sqrt(N).
pub fn delta_truncated_with(
    prog: Progression,
    inv: &GInvariants,
    tables: &SeriesTables,
) -> Result<TruncatedDensity> {
    let n_max = tables.n_max();
    if n_max < 2 {
        return Err(Error::SeriesCutoff(n_max));
    }
    let ctx = TermContext::new(prog, inv, tables)?;
    let mut sum = 0.0f64;
    for n in 1..=n_max {
        let mu = tables.mobius(n);
        if mu == 0 || !ctx.indicator_squarefree(n) {
            continue;
        }
        sum += mu as f64 / ctx.degree_squarefree(n) as f64;
    }
    Ok(TruncatedDensity {
        value: sum,
        tail_bound: 4.0 * inv.h as f64 / (n_max as f64).sqrt(),
        cutoff: n_max,
    })
}

/// Closed form of the auxiliary sum S(b) = sum mu(n)/w(n) over n with
/// delta | lcm(n, f) and a = 1 (mod (f, n)), as a coefficient of the Artin
/// constant: 0 for even b, else mu(|b|) A(a,f,h) / prod_{p | b} (w(p) - 1).
///
/// `b` must arise as delta/(f, delta) for a quadratic discriminant delta;
/// that shape guarantees odd b is squarefree and coprime to f.
pub fn s_closed(b: i64, prog: Progression, h: u64) -> Result<Rational> {
    if b % 2 == 0 {
        return Ok(Rational::zero());
    }
    let mu = mobius(b.unsigned_abs())?;
    let ca = artin_coefficient(prog, h)?;
    let mut denom = 1u64;
    for p in factorize_u64(b.unsigned_abs())?.primes() {
        let w = term_weight(p, prog.f(), h);
        assert!(w > 1, "prime {p} of b divides both f and h");
        denom *= w - 1;
    }
    Ok(ca * Rational::new(BigInt::from(mu), BigInt::from(denom)))
}

/// The same sum restricted to even n; identically -S(b).
pub fn s2_closed(b: i64, prog: Progression, h: u64) -> Result<Rational> {
    Ok(-s_closed(b, prog, h)?)
}
