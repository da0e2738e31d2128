//! Python bindings for the primroot library.
//!
//! Exposes the closed-form densities, the series oracle, the WUD
//! classification, the census engine and the underlying arithmetic
//! primitives. The base g can be passed as a Python int or as a
//! "num/den" string.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use primroot::arith::{self, format_rational, parse_rational, Rational};
use primroot::census as census_mod;
use primroot::census::SieveTables;
use primroot::density as density_mod;
use primroot::density::{BParity, Progression};
use primroot::series;

fn domain_err(e: primroot::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// An integer or a "num/den" string.
#[derive(FromPyObject)]
enum GArg {
    Int(i64),
    Str(String),
}

impl GArg {
    fn into_rational(self) -> PyResult<Rational> {
        match self {
            GArg::Int(n) => Ok(arith::rational_int(n)),
            GArg::Str(s) => parse_rational(&s).map_err(domain_err),
        }
    }
}

#[pyclass(name = "DensityResult", frozen)]
struct PyDensityResult {
    #[pyo3(get)]
    coeff: String,
    #[pyo3(get)]
    value: f64,
    #[pyo3(get)]
    vanishes: bool,
    #[pyo3(get)]
    b: i64,
    #[pyo3(get)]
    gamma: Option<i64>,
    #[pyo3(get)]
    case: String,
    #[pyo3(get)]
    correction_sign: i8,
}

impl From<density_mod::DensityResult> for PyDensityResult {
    fn from(r: density_mod::DensityResult) -> Self {
        PyDensityResult {
            coeff: format_rational(&r.coeff),
            value: r.value,
            vanishes: r.vanishes,
            b: r.branch.b,
            gamma: r.branch.gamma,
            case: match r.branch.parity {
                BParity::BOdd => "b_odd".to_string(),
                BParity::BEven => "b_even".to_string(),
            },
            correction_sign: r.branch.correction_sign,
        }
    }
}

#[pymethods]
impl PyDensityResult {
    fn __repr__(&self) -> String {
        format!(
            "DensityResult(coeff='{}', value={}, vanishes={})",
            self.coeff, self.value, self.vanishes
        )
    }
}

#[pyclass(name = "CensusReport", frozen)]
struct PyCensusReport {
    #[pyo3(get)]
    g: String,
    #[pyo3(get)]
    f: u64,
    #[pyo3(get)]
    x: u64,
    #[pyo3(get)]
    pi_x: u64,
    #[pyo3(get)]
    excluded_primes: Vec<u64>,
    /// Rows as (a, count, predicted_coeff, predicted) tuples.
    #[pyo3(get)]
    rows: Vec<(u64, u64, String, f64)>,
    json: String,
}

#[pymethods]
impl PyCensusReport {
    fn to_json(&self) -> &str {
        &self.json
    }

    fn __repr__(&self) -> String {
        format!(
            "CensusReport(g='{}', f={}, x={}, pi_x={}, {} rows)",
            self.g,
            self.f,
            self.x,
            self.pi_x,
            self.rows.len()
        )
    }
}

/// The Artin constant A.
#[pyfunction]
fn artin_constant() -> f64 {
    density_mod::ARTIN_CONSTANT
}

/// Partial Euler product over primes up to `cutoff` and its error bound.
#[pyfunction]
fn artin_constant_partial(cutoff: u64) -> (f64, f64) {
    density_mod::artin_constant_partial(cutoff)
}

/// Exact density of primes p = a (mod f) with g a primitive root.
#[pyfunction]
#[pyo3(signature = (g, f=1, a=1))]
fn density(g: GArg, f: u64, a: u64) -> PyResult<PyDensityResult> {
    let g = g.into_rational()?;
    let prog = Progression::new(a, f).map_err(domain_err)?;
    Ok(density_mod::delta_closed(prog, &g).map_err(domain_err)?.into())
}

/// The same density through the Jacobi-symbol closed form.
#[pyfunction]
#[pyo3(signature = (g, f=1, a=1))]
fn density_jacobi(g: GArg, f: u64, a: u64) -> PyResult<PyDensityResult> {
    let g = g.into_rational()?;
    let prog = Progression::new(a, f).map_err(domain_err)?;
    Ok(density_mod::delta_jacobi_form(prog, &g)
        .map_err(domain_err)?
        .into())
}

/// Why the density vanishes: 'power', 'quadratic', 'cubic', or None.
#[pyfunction]
#[pyo3(signature = (g, f=1, a=1))]
fn vanishing_case(g: GArg, f: u64, a: u64) -> PyResult<Option<&'static str>> {
    let g = g.into_rational()?;
    let prog = Progression::new(a, f).map_err(domain_err)?;
    Ok(density_mod::vanishing_criterion(prog, &g)
        .map_err(domain_err)?
        .map(|o| o.as_str()))
}

/// Do all reduced classes mod f receive the same density?
#[pyfunction]
fn is_wud(g: GArg, f: u64) -> PyResult<bool> {
    density_mod::is_wud(f, &g.into_rational()?).map_err(domain_err)
}

/// Classification of all WUD moduli, e.g. '{2^n}' or '{2^n 3^m}'.
#[pyfunction]
fn wud_set(g: GArg) -> PyResult<String> {
    Ok(density_mod::wud_set(&g.into_rational()?)
        .map_err(domain_err)?
        .to_string())
}

/// Truncated series evaluation: returns (value, tail_bound).
#[pyfunction]
#[pyo3(signature = (g, f=1, a=1, cutoff=1_000_000))]
fn oracle(g: GArg, f: u64, a: u64, cutoff: u64) -> PyResult<(f64, f64)> {
    let g = g.into_rational()?;
    let prog = Progression::new(a, f).map_err(domain_err)?;
    let t = series::delta_truncated(prog, &g, cutoff).map_err(domain_err)?;
    Ok((t.value, t.tail_bound))
}

/// Sieve to x and count primes with g a primitive root per class mod f.
#[pyfunction]
#[pyo3(signature = (g, f=1, x=100_000))]
fn census(g: GArg, f: u64, x: u64) -> PyResult<PyCensusReport> {
    let g = g.into_rational()?;
    let tables = SieveTables::build(x).map_err(domain_err)?;
    let report = census_mod::run_census(&g, f, x, &tables).map_err(domain_err)?;
    Ok(PyCensusReport {
        g: format_rational(&report.g),
        f: report.f,
        x: report.x,
        pi_x: report.pi_x,
        excluded_primes: report.excluded_primes.clone(),
        rows: report
            .rows
            .iter()
            .map(|r| {
                (
                    r.a,
                    r.count,
                    format_rational(&r.predicted_coeff),
                    r.predicted,
                )
            })
            .collect(),
        json: report.to_json_string(),
    })
}

/// 2 sum phi(p-1)/(p-1) over p <= x with (g/p) = -1, p = a (mod f),
/// gcd(p-1, h) = 1.
#[pyfunction]
#[pyo3(signature = (g, f=1, a=1, x=100_000))]
fn heuristic_sum(g: GArg, f: u64, a: u64, x: u64) -> PyResult<f64> {
    let g = g.into_rational()?;
    let tables = SieveTables::build(x).map_err(domain_err)?;
    census_mod::heuristic_sum(&g, f, a, x, &tables).map_err(domain_err)
}

/// sum phi(p-1)/(p-1) over all primes p <= x.
#[pyfunction]
fn naive_artin_sum(x: u64) -> PyResult<f64> {
    let tables = SieveTables::build(x).map_err(domain_err)?;
    Ok(census_mod::naive_artin_sum(x, &tables))
}

/// Is g a primitive root mod the prime p?
#[pyfunction]
fn is_primitive_root(g: GArg, p: u64) -> PyResult<bool> {
    let g = g.into_rational()?;
    if !arith::is_prime(p) {
        return Err(PyValueError::new_err(format!("{p} is not prime")));
    }
    let tables = SieveTables::build(p.max(2)).map_err(domain_err)?;
    census_mod::is_primitive_root(&g, p, &tables).map_err(domain_err)
}

/// Signed prime factorization as (sign, [(p, e), ...]).
#[pyfunction]
fn factorize(n: i64) -> PyResult<(i8, Vec<(u64, u32)>)> {
    let m = arith::factorize(n).map_err(domain_err)?;
    Ok((m.sign(), m.factors().to_vec()))
}

/// Mobius function.
#[pyfunction]
fn mobius(n: u64) -> PyResult<i8> {
    arith::mobius(n).map_err(domain_err)
}

/// Euler totient.
#[pyfunction]
fn euler_phi(n: u64) -> PyResult<u64> {
    arith::euler_phi(n).map_err(domain_err)
}

/// Kronecker symbol (c/d) for c = 0 or 1 (mod 4).
#[pyfunction]
fn kronecker(c: i64, d: u64) -> PyResult<i8> {
    arith::kronecker(c, d).map_err(domain_err)
}

/// Jacobi symbol, extended to even m via (a/2) = (-1)^((a^2-1)/8).
#[pyfunction]
fn jacobi(a: i64, m: u64) -> PyResult<i8> {
    arith::jacobi_extended(a, m).map_err(domain_err)
}

/// Largest h with g an h-th rational power.
#[pyfunction]
fn power_index(g: GArg) -> PyResult<u64> {
    arith::power_index(&g.into_rational()?).map_err(domain_err)
}

/// g = g1 * g2^2 with g1 squarefree: returns (g1, "num/den" of g2).
#[pyfunction]
fn squarefree_decompose(g: GArg) -> PyResult<(i64, String)> {
    let (g1, g2) = arith::squarefree_decompose(&g.into_rational()?).map_err(domain_err)?;
    Ok((g1, format_rational(&g2)))
}

#[pymodule]
fn primroot_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("ARTIN_CONSTANT", density_mod::ARTIN_CONSTANT)?;
    m.add("ARTIN_CONSTANT_DECIMAL", density_mod::ARTIN_CONSTANT_DECIMAL)?;
    m.add_class::<PyDensityResult>()?;
    m.add_class::<PyCensusReport>()?;
    m.add_function(wrap_pyfunction!(artin_constant, m)?)?;
    m.add_function(wrap_pyfunction!(artin_constant_partial, m)?)?;
    m.add_function(wrap_pyfunction!(density, m)?)?;
    m.add_function(wrap_pyfunction!(density_jacobi, m)?)?;
    m.add_function(wrap_pyfunction!(vanishing_case, m)?)?;
    m.add_function(wrap_pyfunction!(is_wud, m)?)?;
    m.add_function(wrap_pyfunction!(wud_set, m)?)?;
    m.add_function(wrap_pyfunction!(oracle, m)?)?;
    m.add_function(wrap_pyfunction!(census, m)?)?;
    m.add_function(wrap_pyfunction!(heuristic_sum, m)?)?;
    m.add_function(wrap_pyfunction!(naive_artin_sum, m)?)?;
    m.add_function(wrap_pyfunction!(is_primitive_root, m)?)?;
    m.add_function(wrap_pyfunction!(factorize, m)?)?;
    m.add_function(wrap_pyfunction!(mobius, m)?)?;
    m.add_function(wrap_pyfunction!(euler_phi, m)?)?;
    m.add_function(wrap_pyfunction!(kronecker, m)?)?;
    m.add_function(wrap_pyfunction!(jacobi, m)?)?;
    m.add_function(wrap_pyfunction!(power_index, m)?)?;
    m.add_function(wrap_pyfunction!(squarefree_decompose, m)?)?;
    Ok(())
}
