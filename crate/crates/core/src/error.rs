use thiserror::Error;

use crate::arith::GClass;

/// Errors for domain violations and invalid configuration.
///
/// Every operation in this crate is a pure function; an `Err` means the
/// arguments were outside the documented domain, never that a computation
/// failed transiently.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is undefined for zero")]
    ZeroArgument(&'static str),

    #[error("{0} exceeds the 64-bit factorization bound")]
    FactorBound(String),

    #[error("power index is undefined for g in {{0, 1, -1}}")]
    PowerIndexUndefined,

    #[error("g is {0} (not in G)")]
    NotInG(GClass),

    #[error("Kronecker symbol requires an upper argument c = 0 or 1 (mod 4), got {0}")]
    KroneckerUpperArgument(i64),

    #[error("Jacobi symbol ({a}/{m}) is undefined: even numerator over even denominator")]
    JacobiEvenEven { a: i64, m: u64 },

    #[error("invalid progression {a} (mod {f}): need 1 <= a <= f and gcd(a, f) = 1")]
    InvalidProgression { a: u64, f: u64 },

    #[error("power index h = {0} is even, so g would be a perfect square")]
    EvenPowerIndex(u64),

    #[error("{0} is not squarefree")]
    NotSquarefree(u64),

    #[error("k = {k} does not divide r = {r}")]
    NotADivisor { k: u64, r: u64 },

    #[error("series cutoff {0} is too small (need at least 2)")]
    SeriesCutoff(u64),

    #[error("sieve limit {0} is out of range [2, {max}]", max = crate::census::SIEVE_LIMIT_MAX)]
    SieveLimit(u64),

    #[error("prime {p} divides the numerator or denominator of g")]
    PrimeDividesG { p: u64 },

    #[error("g must be an integer outside {{-1, 0, 1}}")]
    NonIntegerBase,

    #[error("cannot parse {0:?} as a rational (expected an integer or \"num/den\")")]
    ParseRational(String),

    #[error("sieve cache is unusable: {0}")]
    SieveCache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
