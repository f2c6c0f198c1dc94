//! Python module `fourprimes`: thin bindings over fourprimes-core.
//!
//! Long computations release the interpreter lock. Core errors surface as `ValueError`.

use std::sync::OnceLock;

use fourprimes_core::asymptotics::{compute_constants, BuchstabTable, Constant};
use fourprimes_core::circle::{self, ArcKind};
use fourprimes_core::exceptional::{self, build_two_square_index};
use fourprimes_core::sieve::{build_decomposition, make_params, verify_identities, Sampling};
use fourprimes_core::{Error, DEFAULT_SIGMA};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyComplex, PyDict};

fn value_error(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn omega_table() -> &'static BuchstabTable {
    static TABLE: OnceLock<BuchstabTable> = OnceLock::new();
    TABLE.get_or_init(BuchstabTable::new)
}

/// Buchstab function ω(u).
#[pyfunction]
fn omega(u: f64) -> f64 {
    omega_table().omega(u)
}

/// Density constants at σ: dict with c1, c2, c3 as (value, err) pairs and margin.
#[pyfunction]
#[pyo3(signature = (sigma = DEFAULT_SIGMA, tol = 2e-3))]
fn constants(py: Python<'_>, sigma: f64, tol: f64) -> PyResult<Bound<'_, PyDict>> {
    let r = py
        .detach(|| compute_constants(&make_params(sigma, 1e6)?, tol, omega_table()))
        .map_err(value_error)?;
    let pair = |c: Constant| (c.value, c.err_estimate);
    let d = PyDict::new(py);
    d.set_item("sigma", r.sigma)?;
    d.set_item("c1", pair(r.c1))?;
    d.set_item("c2", pair(r.c2))?;
    d.set_item("c3", pair(r.c3))?;
    d.set_item("margin", r.margin)?;
    d.set_item("converged", r.converged)?;
    Ok(d)
}

/// Check the exact sieve identities for every m in [lo, hi) at scale P; returns
/// (checked, violating m).
#[pyfunction]
#[pyo3(signature = (p, lo, hi, sigma = DEFAULT_SIGMA))]
fn verify_decomposition(py: Python<'_>, p: f64, lo: u64, hi: u64, sigma: f64) -> PyResult<(u64, Vec<u64>)> {
    let r = py
        .detach(|| {
            let d = build_decomposition(&make_params(sigma, p)?);
            verify_identities(&d, lo..hi, Sampling::Full)
        })
        .map_err(value_error)?;
    Ok((r.checked, r.violations.iter().map(|v| v.m).collect()))
}

/// n ≡ 4 (mod 24), n ≤ n_max, that are not sums of four prime squares.
#[pyfunction]
fn scan_exceptions(py: Python<'_>, n_max: u64) -> PyResult<Vec<u64>> {
    let r = py.detach(|| exceptional::scan_exceptions(n_max)).map_err(value_error)?;
    Ok(r.exceptions)
}

/// Ordered count of n = p₁² + p₂² + p₃² + p₄² and one sorted witness.
#[pyfunction]
fn count_representations(py: Python<'_>, n: u64) -> PyResult<(u64, Option<[u64; 4]>)> {
    let r = py
        .detach(|| exceptional::count_representations(&build_two_square_index(n.max(2))?, n))
        .map_err(value_error)?;
    Ok((r.r, r.witness))
}

/// Quadratic Gauss sum S(q, a) = Σ_{x mod q} e(a x²/q).
#[pyfunction]
fn gauss_sum(py: Python<'_>, q: u64, a: i64) -> PyResult<Bound<'_, PyComplex>> {
    let v = circle::gauss_sum(q, a).map_err(value_error)?.value;
    Ok(PyComplex::from_doubles(py, v.re, v.im))
}

/// Singular series by Euler product and q-sum: dict with euler, qsum, gap.
#[pyfunction]
#[pyo3(signature = (n, p_max = 500, q_max = 500))]
fn singular_series(py: Python<'_>, n: u64, p_max: u64, q_max: u64) -> PyResult<Bound<'_, PyDict>> {
    let s = py.detach(|| circle::singular_series(n, p_max, q_max)).map_err(value_error)?;
    let d = PyDict::new(py);
    d.set_item("n", s.n)?;
    d.set_item("euler", s.euler_value)?;
    d.set_item("qsum", s.qsum_value)?;
    d.set_item("gap", s.agreement_gap)?;
    d.set_item("admissible", s.admissible)?;
    Ok(d)
}

/// Singular integral ℑ(t) by convolution.
#[pyfunction]
fn singular_integral(t: f64) -> f64 {
    circle::singular_integral(t)
}

/// Major-arc fraction (a, q) with q ≤ Q containing α at scale P, or None on the minor arcs.
#[pyfunction]
fn classify_arc(alpha: f64, p: f64, q: f64) -> PyResult<Option<(i64, u64)>> {
    let c = circle::classify_arc(alpha, p, q).map_err(value_error)?;
    Ok(match c.kind {
        ArcKind::Major { a, q } => Some((a, q)),
        ArcKind::Minor => None,
    })
}

#[pymodule]
fn fourprimes(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("DEFAULT_SIGMA", DEFAULT_SIGMA)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_function(wrap_pyfunction!(omega, m)?)?;
    m.add_function(wrap_pyfunction!(constants, m)?)?;
    m.add_function(wrap_pyfunction!(verify_decomposition, m)?)?;
    m.add_function(wrap_pyfunction!(scan_exceptions, m)?)?;
    m.add_function(wrap_pyfunction!(count_representations, m)?)?;
    m.add_function(wrap_pyfunction!(gauss_sum, m)?)?;
    m.add_function(wrap_pyfunction!(singular_series, m)?)?;
    m.add_function(wrap_pyfunction!(singular_integral, m)?)?;
    m.add_function(wrap_pyfunction!(classify_arc, m)?)?;
    Ok(())
}
