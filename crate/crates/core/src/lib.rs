//! Exact densities of primes with a prescribed primitive root, restricted to
//! arithmetic progressions.
//!
//! For a rational g that is neither -1 nor a square, the primes p with g a
//! primitive root mod p and p = a (mod f) have (conditionally on GRH) a
//! natural density. This crate evaluates that density exactly, as a rational
//! multiple of the Artin constant, through two independent closed forms; it
//! cross-checks them against a truncation of the defining series over
//! cyclotomic-Kummer splitting conditions; and it verifies the predictions
//! empirically by sieving primes and tallying primitive-root counts per
//! residue class.
//!
//! Module map:
//! - [`arith`]: factorization, mu/phi, Jacobi and Kronecker symbols, and the
//!   invariants of g (power index h, squarefree part g1, discriminant).
//! - [`density`]: the closed forms, the vanishing criterion, the
//!   weak-uniform-distribution classification and the Artin constant.
//! - [`series`]: the truncated-series oracle and the auxiliary sums behind
//!   the closed forms.
//! - [`census`]: prime sieving, primitive-root census and heuristic sums.

// `n % 2 == 0` and friends are the house style for parity and divisibility.
#![allow(clippy::manual_is_multiple_of)]

pub mod arith;
pub mod census;
pub mod density;
pub mod error;
pub mod series;

pub use arith::{
    compute_g_invariants, format_rational, parse_rational, GClass, GInvariants, Rational,
};
pub use census::{
    heuristic_sum, is_primitive_root, naive_artin_sum, run_census, CensusReport, SieveTables,
};
pub use density::{
    artin_constant_partial, delta_closed, delta_jacobi_form, is_wud, vanishing_criterion, wud_set,
    DensityResult, Obstruction, Progression, WudSet, ARTIN_CONSTANT,
};
pub use error::{Error, Result};
pub use series::{delta_truncated, SeriesTables, TruncatedDensity};
