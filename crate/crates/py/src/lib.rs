//! Python bindings. Polynomials are lists of integer coefficients, highest
//! degree first; rationals are strings such as `"-2/3"`.

use fibercensus::bounds::{self, CoverCase};
use fibercensus::classifier::{self, default_k_test};
use fibercensus::harness::{self, HeightMode, ScanConfig};
use fibercensus::hyperelliptic::{self, FamilySpec};
use fibercensus::symplectic::{self, SympModule};
use fibercensus::{igusa, Error, GenusTwoCurve, IntPoly, Rat};
use num_bigint::{BigInt, BigUint};
use pyo3::exceptions::{PyMemoryError, PyOSError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn err(e: Error) -> PyErr {
    match e {
        Error::Resource(_) => PyMemoryError::new_err(e.to_string()),
        Error::Io { .. } => PyOSError::new_err(e.to_string()),
        Error::Internal(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn poly(coeffs: Vec<BigInt>) -> IntPoly {
    IntPoly::from_descending(coeffs)
}

fn curve(coeffs: Vec<BigInt>) -> PyResult<GenusTwoCurve> {
    GenusTwoCurve::new(poly(coeffs)).map_err(err)
}

fn family(f: Vec<BigInt>) -> PyResult<FamilySpec> {
    let f = poly(f);
    let label = f.to_string();
    FamilySpec::new(f, label).map_err(err)
}

fn rat(t: &str) -> PyResult<Rat> {
    t.parse().map_err(err)
}

/// Multiplicative height max(|a|, b) of a rational given as a string.
#[pyfunction]
fn mult_height(t: &str) -> PyResult<BigUint> {
    Ok(fibercensus::mult_height(&rat(t)?))
}

/// Every rational of height at most `bound`, in scan order.
#[pyfunction]
fn enumerate_rationals(bound: u64) -> PyResult<Vec<String>> {
    let ts = fibercensus::enumerate_rationals(bound).map_err(err)?;
    Ok(ts.iter().map(Rat::to_string).collect())
}

/// Points on the smooth model of `y^2 = F(x)` over F_{p^k}.
#[pyfunction]
#[pyo3(signature = (coeffs, p, k = 1))]
fn count_points(coeffs: Vec<BigInt>, p: u64, k: u32) -> PyResult<u64> {
    hyperelliptic::count_points(&curve(coeffs)?, p, k).map_err(err)
}

/// `(n1, n2, c1, c2)` for a genus-2 curve at a good prime.
#[pyfunction]
fn frobenius(coeffs: Vec<BigInt>, p: u64) -> PyResult<(u64, u64, i64, i64)> {
    let r = hyperelliptic::frobenius_record(&curve(coeffs)?, p).map_err(err)?;
    Ok((r.n1, r.n2, r.c1, r.c2))
}

/// Classifies the fiber `y^2 = f(x)(x - t)`.
#[pyfunction]
#[pyo3(signature = (f, t, p_max, k_test = None))]
fn classify<'py>(
    py: Python<'py>,
    f: Vec<BigInt>,
    t: &str,
    p_max: u64,
    k_test: Option<Vec<u32>>,
) -> PyResult<Bound<'py, PyDict>> {
    let ks = k_test.unwrap_or_else(default_k_test);
    let (class, tested) =
        classifier::classify_parameter_counted(&family(f)?, &rat(t)?, p_max, &ks).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("status", class.status().as_str())?;
    d.set_item("certifying_prime", class.certifying_prime())?;
    d.set_item("primes_tested", tested)?;
    Ok(d)
}

/// Igusa-Clebsch invariants and j-coordinates, as rational strings.
#[pyfunction]
fn invariants<'py>(py: Python<'py>, coeffs: Vec<BigInt>) -> PyResult<Bound<'py, PyDict>> {
    let inv = igusa::igusa_invariants(&curve(coeffs)?).map_err(err)?;
    let d = PyDict::new(py);
    for (k, v) in [
        ("I2", &inv.i2),
        ("I4", &inv.i4),
        ("I6", &inv.i6),
        ("I10", &inv.i10),
        ("I6_prime", &inv.i6_prime),
        ("I12", &inv.i12),
        ("j1", &inv.j1),
        ("j2", &inv.j2),
        ("j3", &inv.j3),
    ] {
        d.set_item(k, v.to_string())?;
    }
    d.set_item("H_j", igusa::j_height_of(&inv).map_err(err)?)?;
    Ok(d)
}

#[pyfunction]
fn sp_order(g: usize, ell: u64) -> BigUint {
    symplectic::sp_order(g, ell)
}

/// Number of maximal isotropic subgroups of `(Z/l^m)^{2g}`, by enumeration.
#[pyfunction]
fn count_lagrangians(g: usize, ell: u64, m: u32) -> PyResult<u64> {
    let module = SympModule::new(g, ell, m).map_err(err)?;
    symplectic::count_maximal_isotropic(&module).map_err(err)
}

/// Runs the kernel-lemma check and returns its branch counts.
#[pyfunction]
fn verify_kernel_lemma<'py>(
    py: Python<'py>,
    g: usize,
    ell: u64,
    m: u32,
) -> PyResult<Bound<'py, PyDict>> {
    let module = SympModule::new(g, ell, m).map_err(err)?;
    let r = symplectic::verify_kernel_lemma(&module).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("subgroups", r.subgroups)?;
    d.set_item("full_torsion", r.full_torsion)?;
    d.set_item("isotropic_layer", r.isotropic_layer)?;
    d.set_item("violations", r.violations.len())?;
    d.set_item("report", r.to_string())?;
    Ok(d)
}

#[pyclass(name = "BoundParams", get_all, set_all)]
struct PyBoundParams {
    g: usize,
    g_b: usize,
    d: u64,
    d_k: u64,
    c: f64,
    kappa: f64,
    c_iota: f64,
    c_prime: f64,
    ell0: u64,
}

#[pymethods]
impl PyBoundParams {
    #[new]
    #[pyo3(signature = (g = 2, g_b = 1, d = 1, d_k = 1, c = 1.0, kappa = 4.0, c_iota = 1.0, c_prime = 1.0, ell0 = 5))]
    #[allow(clippy::too_many_arguments)]
    fn new(
        g: usize,
        g_b: usize,
        d: u64,
        d_k: u64,
        c: f64,
        kappa: f64,
        c_iota: f64,
        c_prime: f64,
        ell0: u64,
    ) -> PyResult<Self> {
        let p = PyBoundParams {
            g,
            g_b,
            d,
            d_k,
            c,
            kappa,
            c_iota,
            c_prime,
            ell0,
        };
        p.inner()?;
        Ok(p)
    }

    fn __repr__(&self) -> String {
        format!(
            "BoundParams(g={}, g_b={}, d={}, d_k={}, c={}, kappa={}, c_iota={}, c_prime={}, ell0={})",
            self.g, self.g_b, self.d, self.d_k, self.c, self.kappa, self.c_iota, self.c_prime, self.ell0
        )
    }
}

impl PyBoundParams {
    fn inner(&self) -> PyResult<bounds::BoundParams> {
        let p = bounds::BoundParams {
            g: self.g,
            g_b: self.g_b,
            g_c: self.g.saturating_sub(self.g_b),
            d: self.d,
            d_k: self.d_k,
            c: self.c,
            kappa: self.kappa,
            c_iota: self.c_iota,
            c_prime: self.c_prime,
            ell0: self.ell0,
        };
        p.validate().map_err(err)?;
        Ok(p)
    }
}

fn case(name: &str, p: &bounds::BoundParams) -> PyResult<CoverCase> {
    match name {
        "diagonal" => Ok(CoverCase::diagonal_from(p)),
        "parabolic" => Ok(CoverCase::Parabolic),
        "fourth" => Ok(CoverCase::FourthPower),
        _ => Err(PyValueError::new_err(format!("unknown case {name:?}"))),
    }
}

/// Optimized prime level for `ln B` in one case.
#[pyfunction]
fn optimize_level(ln_b: f64, case_name: &str, params: &PyBoundParams) -> PyResult<u64> {
    let p = params.inner()?;
    bounds::optimize_level(ln_b, case(case_name, &p)?, &p).map_err(err)
}

#[pyfunction]
fn s_bound_log(ln_b: f64, case_name: &str, params: &PyBoundParams) -> PyResult<f64> {
    let p = params.inner()?;
    bounds::s_bound_log(ln_b, case(case_name, &p)?, &p).map_err(err)
}

#[pyfunction]
fn total_bound_log(ln_b: f64, params: &PyBoundParams) -> PyResult<f64> {
    bounds::total_bound_log(ln_b, &params.inner()?).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (ln_b, g = 2, c = 1.0, d = 1.0))]
fn eehk_bound_log(ln_b: f64, g: usize, c: f64, d: f64) -> PyResult<f64> {
    bounds::eehk_bound_log(ln_b, g, c, d).map_err(err)
}

/// Scans a family and returns the CSV text; also writes `out` if given.
#[pyfunction]
#[pyo3(signature = (f, height_bound, p_max, workers = 1, height_mode = "parameter", cache = None, out = None))]
#[allow(clippy::too_many_arguments)]
fn scan(
    f: Vec<BigInt>,
    height_bound: u64,
    p_max: u64,
    workers: usize,
    height_mode: &str,
    cache: Option<String>,
    out: Option<String>,
) -> PyResult<String> {
    let mut config = ScanConfig::new(family(f)?, height_bound, p_max);
    config.workers = workers;
    config.height_mode = height_mode.parse::<HeightMode>().map_err(err)?;
    config.cache_path = cache.map(Into::into);
    config.out_path = out.map(Into::into);
    let outcome = harness::run_scan(&config).map_err(err)?;
    harness::records_to_csv(&outcome.records).map_err(err)
}

pub fn register(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyBoundParams>()?;
    m.add_function(wrap_pyfunction!(mult_height, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_rationals, m)?)?;
    m.add_function(wrap_pyfunction!(count_points, m)?)?;
    m.add_function(wrap_pyfunction!(frobenius, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(invariants, m)?)?;
    m.add_function(wrap_pyfunction!(sp_order, m)?)?;
    m.add_function(wrap_pyfunction!(count_lagrangians, m)?)?;
    m.add_function(wrap_pyfunction!(verify_kernel_lemma, m)?)?;
    m.add_function(wrap_pyfunction!(optimize_level, m)?)?;
    m.add_function(wrap_pyfunction!(s_bound_log, m)?)?;
    m.add_function(wrap_pyfunction!(total_bound_log, m)?)?;
    m.add_function(wrap_pyfunction!(eehk_bound_log, m)?)?;
    m.add_function(wrap_pyfunction!(scan, m)?)?;
    Ok(())
}

#[pymodule]
fn fibercensus_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    register(m)
}
