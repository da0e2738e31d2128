//! Closed-form density of primes p = a (mod f) having g as a primitive root.
//!
//! All densities are carried as exact rational coefficients of the Artin
//! constant A; floating-point values are derived only at the boundary. Two
//! independent closed forms are provided (one through the Kronecker symbol
//! attached to the discriminant, one through Jacobi symbols and explicit
//! reciprocity signs) together with the vanishing criterion and the
//! weak-uniform-distribution classification.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{
    classify, compute_g_invariants, euler_phi, factorize_u64, jacobi_extended, kronecker, mobius,
    GClass, GInvariants, Rational,
};
use crate::error::{Error, Result};

/// The Artin constant, prod_p (1 - 1/(p(p-1))) over all primes.
/// Written with the full 24-place reference expansion; f64 keeps what it can.
#[allow(clippy::excessive_precision)]
pub const ARTIN_CONSTANT: f64 = 0.373955813619202288054728;

/// Reference decimal expansion of the Artin constant to 24 places.
pub const ARTIN_CONSTANT_DECIMAL: &str = "0.373955813619202288054728";

/// What the reference value is: the Euler product over all primes.
pub const ARTIN_CONSTANT_PROVENANCE: &str = "prod_p (1 - 1/(p(p-1)))";

/// A reduced residue class a (mod f) with 1 <= a <= f and gcd(a, f) = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Progression {
    a: u64,
    f: u64,
}

impl Progression {
    pub fn new(a: u64, f: u64) -> Result<Self> {
        if f == 0 || a == 0 || a > f || a.gcd(&f) != 1 {
            return Err(Error::InvalidProgression { a, f });
        }
        Ok(Progression { a, f })
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn f(&self) -> u64 {
        self.f
    }

    /// All reduced residue classes modulo f, in ascending order.
    pub fn all_mod(f: u64) -> Vec<Progression> {
        (1..=f)
            .filter(|a| a.gcd(&f) == 1)
            .map(|a| Progression { a, f })
            .collect()
    }
}

impl std::fmt::Display for Progression {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} (mod {})", self.a, self.f)
    }
}

/// Parity split of b = delta / (f, delta); the correction term exists only
/// for odd b.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BParity {
    BOdd,
    BEven,
}

/// Which branch of the closed form was taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Branch {
    /// b = delta / (f, delta), sign carried by delta.
    pub b: i64,
    /// gamma = (-1)^((b-1)/2) (f, delta), defined when b is odd.
    pub gamma: Option<i64>,
    pub parity: BParity,
    /// Sign of the additive correction to 1, in {-1, 0, 1}.
    pub correction_sign: i8,
}

/// Exact density delta(a, f, g) = coeff * A with evaluation trace.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityResult {
    /// Exact nonnegative coefficient of the Artin constant.
    pub coeff: Rational,
    /// coeff * A as a float, for display and empirical comparison.
    pub value: f64,
    pub vanishes: bool,
    pub branch: Branch,
}

#[derive(Serialize)]
struct DensityJson<'a> {
    coeff: String,
    value: String,
    b: i64,
    case: &'a BParity,
    #[serde(skip_serializing_if = "Option::is_none")]
    gamma: Option<i64>,
    correction_sign: i8,
    vanishes: bool,
}

impl DensityResult {
    fn from_coeff(coeff: Rational, branch: Branch) -> Self {
        let value = coeff.to_f64().unwrap_or(f64::NAN) * ARTIN_CONSTANT;
        DensityResult {
            vanishes: coeff.is_zero(),
            coeff,
            value,
            branch,
        }
    }

    /// Canonical JSON with fixed field order; `value` rendered to 12
    /// significant digits, `coeff` as `num/den`.
    pub fn to_json_string(&self) -> String {
        let json = DensityJson {
            coeff: crate::arith::format_rational(&self.coeff),
            value: format_significant(self.value, 12),
            b: self.branch.b,
            case: &self.branch.parity,
            gamma: self.branch.gamma,
            correction_sign: self.branch.correction_sign,
            vanishes: self.vanishes,
        };
        serde_json::to_string(&json).expect("density serializes")
    }
}

/// Render with the given number of significant digits in plain decimal.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    let decimals = digits as i32 - 1 - exp;
    if decimals <= 0 {
        format!("{x:.0}")
    } else {
        format!("{x:.*}", decimals as usize)
    }
}

/// Coefficient c with A(a, f, h) = c * A: the Euler product over primes
/// dividing (a-1, f), h and f, normalized by the full Artin product.
///
/// Zero exactly when gcd(a-1, f, h) > 1. Requires odd h (even h would mean g
/// is a square).
pub fn artin_coefficient(prog: Progression, h: u64) -> Result<Rational> {
    if h == 0 {
        return Err(Error::ZeroArgument("artin_coefficient"));
    }
    if h % 2 == 0 {
        return Err(Error::EvenPowerIndex(h));
    }
    let a1f = (prog.a - 1).gcd(&prog.f);
    if a1f.gcd(&h) > 1 {
        return Ok(Rational::zero());
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for p in factorize_u64(a1f)?.primes() {
        num *= p - 1;
        den *= p;
    }
    for p in factorize_u64(h)?.primes() {
        if prog.f % p != 0 {
            num *= p - 2;
            den *= p - 1;
        }
    }
    // divide out the factors of the Artin product at primes p | f*h
    let f_primes = factorize_u64(prog.f)?;
    let h_primes = factorize_u64(h)?;
    let mut seen: Vec<u64> = f_primes.primes().chain(h_primes.primes()).collect();
    seen.sort_unstable();
    seen.dedup();
    for p in seen {
        num *= p * (p - 1);
        den *= p * p - p - 1;
    }
    Ok(Rational::new(num, den))
}

/// b = delta/(f, delta) with delta's sign, and gamma when b is odd.
fn branch_data(f: u64, delta: i64) -> (i64, Option<i64>) {
    let fd = delta.unsigned_abs().gcd(&f) as i64;
    let b = delta / fd;
    if b % 2 != 0 {
        let gamma = if ((b - 1) / 2) % 2 == 0 { fd } else { -fd };
        (b, Some(gamma))
    } else {
        (b, None)
    }
}

/// prod_{p | |b|, p | h} (p-2) * prod_{p | |b|, p not| h} (p^2-p-1).
fn correction_denominator(b_abs: u64, h: u64) -> Result<BigInt> {
    let mut den = BigInt::one();
    for p in factorize_u64(b_abs)?.primes() {
        if h % p == 0 {
            den *= p - 2;
        } else {
            den *= p * p - p - 1;
        }
    }
    Ok(den)
}

fn require_in_g(g: &Rational) -> Result<GInvariants> {
    let class = classify(g);
    if class != GClass::InG {
        return Err(Error::NotInG(class));
    }
    compute_g_invariants(g)
}

/// Density via the Kronecker-symbol closed form.
pub fn delta_closed(prog: Progression, g: &Rational) -> Result<DensityResult> {
    delta_closed_from(prog, &require_in_g(g)?)
}

pub fn delta_closed_from(prog: Progression, inv: &GInvariants) -> Result<DensityResult> {
    inv.require_in_g()?;
    let base = artin_coefficient(prog, inv.h)? / BigInt::from(euler_phi(prog.f)?);
    let (b, gamma) = branch_data(prog.f, inv.delta);
    if b % 2 == 0 {
        // mu(2|b|) = 0: the correction term is absent
        return Ok(DensityResult::from_coeff(
            base,
            Branch {
                b,
                gamma: None,
                parity: BParity::BEven,
                correction_sign: 0,
            },
        ));
    }
    let gamma = gamma.expect("odd b has gamma");
    let chi = kronecker(gamma, prog.a)? as i64;
    let mu2b = mobius(2 * b.unsigned_abs())? as i64;
    let numer = chi * mu2b;
    let corr = Rational::new(BigInt::from(numer), correction_denominator(b.unsigned_abs(), inv.h)?);
    let coeff = base * (Rational::one() + corr);
    Ok(DensityResult::from_coeff(
        coeff,
        Branch {
            b,
            gamma: Some(gamma),
            parity: BParity::BOdd,
            correction_sign: numer.signum() as i8,
        },
    ))
}

/// Density via the Jacobi-symbol closed form; must agree exactly with
/// [`delta_closed`].
pub fn delta_jacobi_form(prog: Progression, g: &Rational) -> Result<DensityResult> {
    delta_jacobi_form_from(prog, &require_in_g(g)?)
}

pub fn delta_jacobi_form_from(prog: Progression, inv: &GInvariants) -> Result<DensityResult> {
    inv.require_in_g()?;
    let base = artin_coefficient(prog, inv.h)? / BigInt::from(euler_phi(prog.f)?);
    let (b, gamma) = branch_data(prog.f, inv.delta);
    let g1 = inv.g1;
    let active = match g1.rem_euclid(4) {
        1 => true,
        2 => prog.f % 8 == 0,
        3 => prog.f % 4 == 0,
        _ => unreachable!("g1 is squarefree"),
    };
    debug_assert_eq!(active, b % 2 != 0);
    if !active {
        return Ok(DensityResult::from_coeff(
            base,
            Branch {
                b,
                gamma: None,
                parity: BParity::BEven,
                correction_sign: 0,
            },
        ));
    }
    let m = g1.unsigned_abs().gcd(&prog.f);
    let jac = jacobi_extended(prog.a as i64, m)? as i64;
    let beta = g1 / m as i64;
    // reciprocity sign (-1)^(((g1~-1)/2) ((a~-1)/2)) over the odd parts, by parity
    let g1_odd = g1 >> g1.trailing_zeros();
    let a_odd = (prog.a >> prog.a.trailing_zeros()) as i64;
    let flip = ((g1_odd - 1) / 2) % 2 != 0 && ((a_odd - 1) / 2) % 2 != 0;
    let reciprocity: i64 = if flip { -1 } else { 1 };
    let mu_beta = mobius(beta.unsigned_abs())? as i64;
    let numer = -(jac * reciprocity * mu_beta);
    let corr = Rational::new(
        BigInt::from(numer),
        correction_denominator(beta.unsigned_abs(), inv.h)?,
    );
    let coeff = base * (Rational::one() + corr);
    Ok(DensityResult::from_coeff(
        coeff,
        Branch {
            b,
            gamma,
            parity: BParity::BOdd,
            correction_sign: numer.signum() as i8,
        },
    ))
}

/// Why a density vanishes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Obstruction {
    /// gcd(a-1, f, h) > 1: every prime in the class forces g to be a proper
    /// power obstruction.
    Power,
    /// delta | f and (delta/a) = 1: g is a square modulo every prime of the
    /// class.
    Quadratic,
    /// delta | 3f, 3 | delta, 3 | h and (-delta/3 / a) = -1.
    Cubic,
}

impl Obstruction {
    pub fn as_str(self) -> &'static str {
        match self {
            Obstruction::Power => "power",
            Obstruction::Quadratic => "quadratic",
            Obstruction::Cubic => "cubic",
        }
    }
}

/// The three-case vanishing criterion, evaluated literally and independently
/// of the closed form. Returns the first obstruction that applies.
pub fn vanishing_criterion(prog: Progression, g: &Rational) -> Result<Option<Obstruction>> {
    vanishing_criterion_from(prog, &require_in_g(g)?)
}

pub fn vanishing_criterion_from(
    prog: Progression,
    inv: &GInvariants,
) -> Result<Option<Obstruction>> {
    inv.require_in_g()?;
    let (a, f, h) = (prog.a, prog.f, inv.h);
    if (a - 1).gcd(&f).gcd(&h) > 1 {
        return Ok(Some(Obstruction::Power));
    }
    let d_abs = inv.delta.unsigned_abs();
    if f % d_abs == 0 && kronecker(inv.delta, a)? == 1 {
        return Ok(Some(Obstruction::Quadratic));
    }
    if (3 * f) % d_abs == 0
        && inv.delta % 3 == 0
        && h % 3 == 0
        && kronecker(-inv.delta / 3, a)? == -1
    {
        return Ok(Some(Obstruction::Cubic));
    }
    Ok(None)
}

/// Symbolic classification of the moduli f where the primes with primitive
/// root g are weakly uniformly distributed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WudSet {
    /// {2^n for n >= 0}: squarefree part 1 (mod 4).
    PowersOfTwo,
    /// {1, 2, 4}: squarefree part 2 (mod 4).
    OneTwoFour,
    /// {1, 2}: squarefree part 3 (mod 4).
    OneTwo,
    /// {2^n 3^m}: the exceptional g1 = 21 with (h, 21) = 7.
    PowersOfTwoTimesPowersOfThree,
}

impl WudSet {
    pub fn contains(self, f: u64) -> bool {
        if f == 0 {
            return false;
        }
        match self {
            WudSet::PowersOfTwo => f.is_power_of_two(),
            WudSet::OneTwoFour => matches!(f, 1 | 2 | 4),
            WudSet::OneTwo => matches!(f, 1 | 2),
            WudSet::PowersOfTwoTimesPowersOfThree => {
                let mut m = f;
                while m % 2 == 0 {
                    m /= 2;
                }
                while m % 3 == 0 {
                    m /= 3;
                }
                m == 1
            }
        }
    }
}

impl std::fmt::Display for WudSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            WudSet::PowersOfTwo => "{2^n}",
            WudSet::OneTwoFour => "{1, 2, 4}",
            WudSet::OneTwo => "{1, 2}",
            WudSet::PowersOfTwoTimesPowersOfThree => "{2^n 3^m}",
        })
    }
}

/// Does every reduced class mod f receive the same density? Computed from
/// first principles by comparing the exact coefficients of all classes.
pub fn is_wud(f: u64, g: &Rational) -> Result<bool> {
    is_wud_from(f, &require_in_g(g)?)
}

pub fn is_wud_from(f: u64, inv: &GInvariants) -> Result<bool> {
    inv.require_in_g()?;
    if f == 0 {
        return Err(Error::InvalidProgression { a: 0, f });
    }
    let mut first: Option<Rational> = None;
    for prog in Progression::all_mod(f) {
        let coeff = delta_closed_from(prog, inv)?.coeff;
        match &first {
            None => first = Some(coeff),
            Some(c) if *c != coeff => return Ok(false),
            _ => {}
        }
    }
    Ok(true)
}

/// The classification of all WUD moduli for g.
pub fn wud_set(g: &Rational) -> Result<WudSet> {
    wud_set_from(&require_in_g(g)?)
}

pub fn wud_set_from(inv: &GInvariants) -> Result<WudSet> {
    inv.require_in_g()?;
    if inv.g1 == 21 && inv.h.gcd(&21) == 7 {
        return Ok(WudSet::PowersOfTwoTimesPowersOfThree);
    }
    Ok(match inv.g1.rem_euclid(4) {
        1 => WudSet::PowersOfTwo,
        2 => WudSet::OneTwoFour,
        3 => WudSet::OneTwo,
        _ => unreachable!("g1 is squarefree"),
    })
}

/// Fixed g sweep shared by the test suites: mixed signs, power indices
/// h in {1, 3, 7} and both discriminant shapes.
#[cfg(test)]
pub(crate) const SWEEP_G: [i64; 11] = [2, 3, 5, 6, -2, -3, -7, 8, 12, 27, 1_801_088_541];

/// Partial Euler product prod_{p <= cutoff} (1 - 1/(p(p-1))) and an error
/// bound for the distance to the full product.
///
/// Bound: with x_p = 1/(p(p-1)) <= 1/2 we have -log(1-x_p) <= 2 x_p, so
/// 0 <= partial - A <= partial * (1 - exp(-2 sum_{p>P} x_p)) and
/// sum_{p>P} x_p <= sum_{n>P} 1/(n(n-1)) = 1/P, giving |partial - A| <= 2/P.
pub fn artin_constant_partial(cutoff: u64) -> (f64, f64) {
    let mut value = 1.0f64;
    for p in crate::arith::primes_up_to(cutoff) {
        let pf = p as f64;
        value *= 1.0 - 1.0 / (pf * (pf - 1.0));
    }
    (value, 2.0 / cutoff as f64)
}
