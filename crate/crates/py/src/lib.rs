//! Python bindings. Rationals cross the boundary as `fractions.Fraction`
//! (any object whose `str()` parses as a rational is accepted on input);
//! structured reports come back as plain dicts.

use std::convert::Infallible;
use std::hash::{DefaultHasher, Hash, Hasher};

use num_bigint::BigInt;
use pyo3::exceptions::{PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;
use pyo3::pyclass::CompareOp;
use pyo3::types::PyList;
use serde::Serialize;

use ehrhart_core::arith::{parse_rational, ArithError};
use ehrhart_core::counting::{count_axis_simplex, count_rational_params, count_triangle, count_triangle_interior};
use ehrhart_core::criteria::{
    check_collapse_criterion, check_pseudo_integral_criterion, check_reciprocal_criterion, classify_admissible,
};
use ehrhart_core::precursive::guess_recurrence as guess;
use ehrhart_core::quasipoly::{fit_quasipolynomial as fit, minimal_period as period_of, Fit, PeriodicCount};
use ehrhart_core::search::{run_search, SearchBounds, SearchRecord};
use ehrhart_core::sequences;
use ehrhart_core::verify::{run_verify, Suite};
use ehrhart_core::{polytopes, Rational};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn arith_error(e: ArithError) -> PyErr {
    match e {
        ArithError::DivisionByZero => PyZeroDivisionError::new_err(e.to_string()),
        other => value_error(other),
    }
}

fn fraction<'py>(py: Python<'py>, x: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((x.numer().clone(), x.denom().clone()))
}

fn rational_arg(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    parse_rational(&obj.str()?.to_cow()?).map_err(value_error)
}

fn to_py<'py>(py: Python<'py>, value: &impl Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(value_error)?;
    py.import("json")?.getattr("loads")?.call1((text,))
}

#[pyclass(name = "QuadNumber", module = "ehrhart", frozen, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyQuadNumber(ehrhart_core::QuadNumber);

#[pymethods]
impl PyQuadNumber {
    /// Parses `"3/2"`, `"a,b,d"` or `"a + b*sqrt(d)"`.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(Self).map_err(arith_error)
    }

    #[getter]
    fn a<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, self.0.a())
    }

    #[getter]
    fn b<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, self.0.b())
    }

    #[getter]
    fn radicand(&self) -> u64 {
        self.0.radicand()
    }

    fn is_rational(&self) -> bool {
        self.0.is_rational()
    }

    fn conjugate(&self) -> Self {
        Self(self.0.conjugate())
    }

    fn norm<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.norm())
    }

    fn floor(&self) -> BigInt {
        self.0.floor()
    }

    fn ceil(&self) -> BigInt {
        self.0.ceil()
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        self.0.checked_add(&other.0).map(Self).map_err(arith_error)
    }

    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        self.0.checked_sub(&other.0).map(Self).map_err(arith_error)
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        self.0.checked_mul(&other.0).map(Self).map_err(arith_error)
    }

    fn __truediv__(&self, other: &Self) -> PyResult<Self> {
        self.0.checked_div(&other.0).map(Self).map_err(arith_error)
    }

    fn __richcmp__(&self, other: &Self, op: CompareOp) -> PyResult<bool> {
        match op {
            CompareOp::Eq => return Ok(self.0 == other.0),
            CompareOp::Ne => return Ok(self.0 != other.0),
            _ => {}
        }
        Ok(op.matches(self.0.cmp_exact(&other.0).map_err(arith_error)?))
    }

    fn __hash__(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.0.hash(&mut h);
        h.finish()
    }

    fn __float__(&self) -> f64 {
        self.0.to_f64()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("QuadNumber('{}')", self.0)
    }
}

/// The triangle with vertices `(0,0)`, `(1/u, 0)`, `(0, 1/v)`.
#[pyclass(name = "Triangle", module = "ehrhart", frozen)]
struct PyTriangle(polytopes::TrianglePair);

#[pymethods]
impl PyTriangle {
    #[new]
    fn new(u: &PyQuadNumber, v: &PyQuadNumber) -> PyResult<Self> {
        polytopes::TrianglePair::new(u.0.clone(), v.0.clone()).map(Self).map_err(value_error)
    }

    #[getter]
    fn u(&self) -> PyQuadNumber {
        PyQuadNumber(self.0.u().clone())
    }

    #[getter]
    fn v(&self) -> PyQuadNumber {
        PyQuadNumber(self.0.v().clone())
    }

    /// `"rational"`, `"admissible"` or `"other"`.
    #[getter]
    fn class_<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.0.class())
    }

    fn count(&self, t: u64) -> u64 {
        count_triangle(&self.0, t)
    }

    fn count_interior(&self, t: u64) -> u64 {
        count_triangle_interior(&self.0, t)
    }

    fn __repr__(&self) -> String {
        format!("Triangle(u={}, v={})", self.0.u(), self.0.v())
    }
}

/// Rational triangle with `u = q/p`, `v = s/r` in lowest terms.
#[pyclass(name = "RationalTriangle", module = "ehrhart", frozen)]
struct PyRationalTriangle(polytopes::RationalTriangleParams);

#[pymethods]
impl PyRationalTriangle {
    #[new]
    fn new(p: BigInt, q: BigInt, r: BigInt, s: BigInt) -> PyResult<Self> {
        polytopes::RationalTriangleParams::new(p, q, r, s).map(Self).map_err(value_error)
    }

    #[getter]
    fn params(&self) -> (BigInt, BigInt, BigInt, BigInt) {
        (self.0.p().clone(), self.0.q().clone(), self.0.r().clone(), self.0.s().clone())
    }

    #[getter]
    fn denominator(&self) -> BigInt {
        self.0.denominator()
    }

    fn triangle(&self) -> PyTriangle {
        PyTriangle(polytopes::TrianglePair::from_params(&self.0))
    }

    fn count(&self, t: u64) -> u64 {
        count_rational_params(&self.0, t)
    }

    /// Fits the counts with the denominator as period and reduces to the
    /// smallest period that still fits.
    #[pyo3(signature = (degree = 2))]
    fn minimal_period(&self, py: Python<'_>, degree: usize) -> PyResult<PyPeriodResult> {
        py.detach(|| period_of(&self.0, degree)).map(PyPeriodResult).map_err(value_error)
    }

    fn collapse_criterion<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &check_collapse_criterion(&self.0))
    }

    fn pseudo_integral_criterion<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &check_pseudo_integral_criterion(&self.0))
    }

    fn __repr__(&self) -> String {
        format!("RationalTriangle({}, {}, {}, {})", self.0.p(), self.0.q(), self.0.r(), self.0.s())
    }
}

/// Irrational pair with `u + v = alpha` and `1/u + 1/v = beta`.
#[pyclass(name = "AdmissiblePair", module = "ehrhart", frozen)]
struct PyAdmissiblePair(polytopes::AdmissiblePair);

#[pymethods]
impl PyAdmissiblePair {
    #[new]
    fn new(alpha: u64, beta: u64) -> PyResult<Self> {
        polytopes::AdmissiblePair::from_alpha_beta(alpha, beta).map(Self).map_err(value_error)
    }

    #[getter]
    fn alpha(&self) -> u64 {
        self.0.alpha()
    }

    #[getter]
    fn beta(&self) -> u64 {
        self.0.beta()
    }

    fn triangle(&self) -> PyTriangle {
        PyTriangle(self.0.triangle())
    }

    fn count(&self, t: u64) -> u64 {
        self.0.count(t)
    }

    #[pyo3(signature = (degree = 2))]
    fn minimal_period(&self, py: Python<'_>, degree: usize) -> PyResult<PyPeriodResult> {
        py.detach(|| period_of(&self.0, degree)).map(PyPeriodResult).map_err(value_error)
    }

    /// `"pseudo-integral"`, `"pseudo-rational-only"` or `"not-admissible"`.
    fn classify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &classify_admissible(self.0.alpha(), self.0.beta()))
    }

    fn __repr__(&self) -> String {
        format!("AdmissiblePair(alpha={}, beta={})", self.0.alpha(), self.0.beta())
    }
}

/// Count of lattice points in dilates of the simplex with the given legs on
/// the coordinate axes.
#[pyfunction]
fn count_simplex(legs: Vec<PyQuadNumber>, t: u64) -> PyResult<u64> {
    let simplex = polytopes::AxisSimplex::new(legs.into_iter().map(|l| l.0).collect()).map_err(value_error)?;
    Ok(count_axis_simplex(&simplex, t))
}

#[pyclass(name = "Quasipolynomial", module = "ehrhart", frozen, eq)]
#[derive(PartialEq)]
struct PyQuasipolynomial(ehrhart_core::Quasipolynomial);

#[pymethods]
impl PyQuasipolynomial {
    #[getter]
    fn period(&self) -> u64 {
        self.0.period()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    /// One list per residue class, lowest degree first.
    #[getter]
    fn coeffs<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyList>> {
        let rows = self
            .0
            .coeffs()
            .iter()
            .map(|row| row.iter().map(|c| fraction(py, c)).collect::<PyResult<Vec<_>>>())
            .collect::<PyResult<Vec<_>>>()?;
        PyList::new(py, rows)
    }

    fn minimal_period(&self) -> u64 {
        self.0.minimal_period()
    }

    fn reduced(&self) -> Self {
        Self(self.0.reduced())
    }

    fn __call__<'py>(&self, py: Python<'py>, t: i64) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.0.evaluate(t))
    }

    fn to_dict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &self.0)
    }

    fn __repr__(&self) -> String {
        format!("Quasipolynomial(period={}, degree={})", self.0.period(), self.0.degree())
    }
}

#[pyclass(name = "PeriodResult", module = "ehrhart", frozen)]
struct PyPeriodResult(ehrhart_core::quasipoly::PeriodResult);

#[pymethods]
impl PyPeriodResult {
    #[getter]
    fn quasipolynomial(&self) -> PyQuasipolynomial {
        PyQuasipolynomial(self.0.quasipolynomial.clone())
    }

    #[getter]
    fn guaranteed_period(&self) -> u64 {
        self.0.guaranteed_period
    }

    #[getter]
    fn minimal_period(&self) -> u64 {
        self.0.minimal_period
    }

    fn __repr__(&self) -> String {
        format!(
            "PeriodResult(guaranteed_period={}, minimal_period={})",
            self.0.guaranteed_period, self.0.minimal_period
        )
    }
}

/// Fits `values[t]` for `t = 0, 1, ...`. Returns the quasipolynomial, or
/// raises `ValueError` naming the first sample it cannot reproduce.
#[pyfunction]
#[pyo3(signature = (values, period, degree = 2))]
fn fit_quasipolynomial(values: Vec<Bound<'_, PyAny>>, period: u64, degree: usize) -> PyResult<PyQuasipolynomial> {
    let samples = values
        .iter()
        .enumerate()
        .map(|(t, v)| Ok((t as i64, rational_arg(v)?)))
        .collect::<PyResult<Vec<_>>>()?;
    match fit(&samples, period, degree).map_err(value_error)? {
        Fit::Found(qp) => Ok(PyQuasipolynomial(qp)),
        Fit::NoFit(m) => Err(value_error(format!("no fit: {m}"))),
    }
}

#[pyfunction]
fn reciprocal_criterion<'py>(py: Python<'py>, p: BigInt, q: BigInt) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &check_reciprocal_criterion(&p, &q).map_err(value_error)?)
}

/// Searches for a recurrence `sum_i P_i(n) f(n+i) = 0` within the bounds.
/// Returns `None` when there is none, otherwise a dict with `order`,
/// `degree` and the coefficient polynomials.
#[pyfunction]
#[pyo3(signature = (values, max_order, max_degree = 0))]
fn guess_recurrence<'py>(
    py: Python<'py>,
    values: Vec<BigInt>,
    max_order: usize,
    max_degree: usize,
) -> PyResult<Option<Bound<'py, PyAny>>> {
    match py.detach(|| guess(&values, max_order, max_degree)).map_err(value_error)? {
        Some(rec) => to_py(py, &rec).map(Some),
        None => Ok(None),
    }
}

#[pyfunction]
fn k_fib(k: u64, n: u64) -> BigInt {
    sequences::k_fib(k, n)
}

#[pyfunction]
fn fib_triangle(k: u64, n: u64) -> Option<PyRationalTriangle> {
    sequences::fib_triangle(k, n).map(PyRationalTriangle)
}

#[pyfunction]
fn a_sequence(n: u64) -> PyResult<BigInt> {
    if n == 0 {
        return Err(value_error("the sequence starts at n = 1"));
    }
    Ok(sequences::a_sequence(n))
}

/// Records for every lowest-terms `(p, q, r, s)` with entries up to `bound`.
#[pyfunction]
fn search<'py>(py: Python<'py>, bound: u64) -> PyResult<Bound<'py, PyAny>> {
    let records = py.detach(|| {
        let mut out: Vec<SearchRecord> = Vec::new();
        run_search::<Infallible>(&SearchBounds::uniform(bound), |r| {
            out.push(r.clone());
            Ok(())
        })
        .map(|_| out)
    });
    to_py(py, &records.map_err(value_error)?)
}

/// Runs a named check suite (`"all"` for every one).
#[pyfunction]
#[pyo3(signature = (suite = "all"))]
fn verify<'py>(py: Python<'py>, suite: &str) -> PyResult<Bound<'py, PyAny>> {
    let suite: Suite = suite.parse().map_err(value_error)?;
    let results = py.detach(|| run_verify(suite));
    to_py(py, &results)
}

#[pymodule]
fn ehrhart(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyQuadNumber>()?;
    m.add_class::<PyTriangle>()?;
    m.add_class::<PyRationalTriangle>()?;
    m.add_class::<PyAdmissiblePair>()?;
    m.add_class::<PyQuasipolynomial>()?;
    m.add_class::<PyPeriodResult>()?;
    m.add_function(wrap_pyfunction!(count_simplex, m)?)?;
    m.add_function(wrap_pyfunction!(fit_quasipolynomial, m)?)?;
    m.add_function(wrap_pyfunction!(reciprocal_criterion, m)?)?;
    m.add_function(wrap_pyfunction!(guess_recurrence, m)?)?;
    m.add_function(wrap_pyfunction!(k_fib, m)?)?;
    m.add_function(wrap_pyfunction!(fib_triangle, m)?)?;
    m.add_function(wrap_pyfunction!(a_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(search, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
