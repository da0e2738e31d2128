//! Exact integer and rational arithmetic: factorization, the multiplicative
//! functions mu and phi, quadratic symbols, and the derived invariants of g.
//!
//! Everything here is a pure function of its arguments and safe to call from
//! any number of threads.

pub mod factor;
pub mod invariants;
pub mod rational;
pub mod symbols;

pub use factor::{
    euler_phi, factorize, factorize_u64, is_prime, mobius, mul_mod, pow_mod, primes_up_to,
    FactorMap,
};
pub use invariants::{classify, compute_g_invariants, GClass, GInvariants};
pub use rational::{
    format_rational, parse_rational, power_index, rational_frac, rational_int, rational_parts_i64,
    squarefree_decompose, Rational,
};
pub use symbols::{jacobi_extended, kronecker};
