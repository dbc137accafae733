//! Python bindings for exact Grothendieck-Witt computations.

use std::str::FromStr;

use gw_euler_core::enumerative::{euler_lines, euler_o_n_over, euler_o_n_stacky, PlaneConfig};
use gw_euler_core::fp_verifier::verify_lines_class;
use gw_euler_core::poly::{parse_scalar, parse_system_with_vars};
use gw_euler_core::{
    global_degree, make_extension, parse_system, rng, ss_class, trace_form, Error, FieldCtx, FieldElem, FieldSpec,
    GWClass, MonomialOrder, MultiPoly, TransferMode,
};
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::PyModule;

create_exception!(gw_euler, GWEulerError, PyException, "Raised with (kind, message) for domain errors.");

fn to_py(e: Error) -> PyErr {
    GWEulerError::new_err((e.kind(), e.to_string()))
}

fn field(spec: &str) -> PyResult<FieldCtx> {
    FieldSpec::from_str(spec).and_then(|s| s.build()).map_err(to_py)
}

fn order(s: &str) -> PyResult<MonomialOrder> {
    s.parse().map_err(to_py)
}

fn mode(s: &str) -> PyResult<TransferMode> {
    s.parse().map_err(to_py)
}

fn system(ctx: &FieldCtx, text: &str, vars: Option<Vec<String>>) -> PyResult<Vec<MultiPoly>> {
    match vars {
        Some(v) => parse_system_with_vars(ctx, text, &v),
        None => parse_system(ctx, text),
    }
    .map_err(to_py)
}

fn json_to_py<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    let json = PyModule::import(py, "json")?;
    json.call_method1("loads", (v.to_string(),))
}

/// An element of the Grothendieck-Witt group of Q or a finite field.
#[pyclass(name = "GWClass", module = "gw_euler", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyGWClass {
    inner: GWClass,
}

impl From<GWClass> for PyGWClass {
    fn from(inner: GWClass) -> Self {
        PyGWClass { inner }
    }
}

#[pymethods]
impl PyGWClass {
    /// Parses text such as "2H + 3<1> + <-3>".
    #[staticmethod]
    #[pyo3(signature = (text, field = "Q"))]
    fn parse(text: &str, field: &str) -> PyResult<Self> {
        let ctx = self::field(field)?;
        GWClass::parse(&ctx, text).map(Into::into).map_err(to_py)
    }

    #[staticmethod]
    #[pyo3(signature = (entries, hyperbolic = 0, field = "Q"))]
    fn from_diagonal(entries: Vec<i64>, hyperbolic: u64, field: &str) -> PyResult<Self> {
        let ctx = self::field(field)?;
        GWClass::from_ints(&ctx, hyperbolic, &entries).map(Into::into).map_err(to_py)
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    #[getter]
    fn hyperbolic_count(&self) -> u64 {
        self.inner.hyperbolic_count()
    }

    #[getter]
    fn signature(&self) -> Option<i64> {
        self.inner.signature()
    }

    #[getter]
    fn disc(&self) -> PyResult<String> {
        self.inner.disc().map(|d| d.to_string()).map_err(to_py)
    }

    fn invariants<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let inv = self.inner.invariants().map_err(to_py)?;
        json_to_py(py, &serde_json::to_value(inv).expect("invariants serialize"))
    }

    fn anisotropic_rank(&self) -> PyResult<usize> {
        self.inner.anisotropic_rank().map_err(to_py)
    }

    fn gw_equal(&self, other: &PyGWClass) -> PyResult<bool> {
        self.inner.gw_equal(&other.inner).map_err(to_py)
    }

    fn to_json<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        json_to_py(py, &self.inner.to_json())
    }

    fn __add__(&self, other: &PyGWClass) -> PyResult<Self> {
        self.inner.add(&other.inner).map(Into::into).map_err(to_py)
    }

    fn __eq__(&self, other: &PyGWClass) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("GWClass('{}')", self.inner)
    }
}

/// Scheja-Storch form of a zero-dimensional complete intersection.
#[pyfunction]
#[pyo3(signature = (text, field = "Q", order = "degrevlex", vars = None))]
fn scheja_storch<'py>(py: Python<'py>, text: &str, field: &str, order: &str, vars: Option<Vec<String>>) -> PyResult<Bound<'py, PyAny>> {
    let ctx = self::field(field)?;
    let g = system(&ctx, text, vars)?;
    let r = ss_class(&g, self::order(order)?).map_err(to_py)?;
    json_to_py(py, &r.to_json())
}

/// The class of g - value; `value` defaults to the origin.
#[pyfunction]
#[pyo3(signature = (text, value = None, field = "Q", order = "degrevlex", vars = None))]
fn degree(text: &str, value: Option<Vec<String>>, field: &str, order: &str, vars: Option<Vec<String>>) -> PyResult<PyGWClass> {
    let ctx = self::field(field)?;
    let g = system(&ctx, text, vars)?;
    let v: Vec<FieldElem> = match value {
        Some(v) => v.iter().map(|s| parse_scalar(&ctx, s)).collect::<Result<_, _>>().map_err(to_py)?,
        None => vec![ctx.zero(); g.len()],
    };
    global_degree(&g, &v, self::order(order)?).map(Into::into).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (n, sign = 1, mode = "scharlau", field = "Q"))]
fn euler_o_n(n: u64, sign: i64, mode: &str, field: &str) -> PyResult<PyGWClass> {
    let ctx = self::field(field)?;
    euler_o_n_over(&ctx, n, sign, self::mode(mode)?).map(|r| r.class.into()).map_err(to_py)
}

/// Classes for the pulled-back sections x^n and -x^n.
#[pyfunction]
#[pyo3(signature = (n, mode = "scharlau"))]
fn euler_o_n_stacky_classes(n: u64, mode: &str) -> PyResult<(PyGWClass, PyGWClass)> {
    let r = euler_o_n_stacky(n, self::mode(mode)?).map_err(to_py)?;
    Ok((r.class.into(), r.class_opposite.into()))
}

/// Lines meeting six planes in P^4, from a JSON configuration or a seed.
#[pyfunction]
#[pyo3(signature = (config = None, seed = 0, field = "Q", swap_first_pair = false, order = "degrevlex"))]
fn lines_p4<'py>(
    py: Python<'py>,
    config: Option<&str>,
    seed: u64,
    field: &str,
    swap_first_pair: bool,
    order: &str,
) -> PyResult<Bound<'py, PyAny>> {
    let ctx = self::field(field)?;
    let planes = match config {
        Some(text) => {
            let v: serde_json::Value = serde_json::from_str(text).map_err(|e| to_py(Error::Parse(e.to_string())))?;
            PlaneConfig::from_json(&ctx, &v)
        }
        None => PlaneConfig::random(&ctx, 4, &mut rng::seeded(seed)),
    }
    .map_err(to_py)?;
    let planes = if swap_first_pair { planes.swap_first_pair() } else { planes };
    let r = euler_lines(&planes, self::order(order)?).map_err(to_py)?;
    let mut j = r.to_json();
    j["configuration"] = planes.to_json();
    json_to_py(py, &j)
}

#[pyfunction]
#[pyo3(signature = (p, seed = 0, trials = 5))]
fn verify_lines<'py>(py: Python<'py>, p: u64, seed: u64, trials: usize) -> PyResult<Bound<'py, PyAny>> {
    let r = verify_lines_class(p, seed, trials).map_err(to_py)?;
    json_to_py(py, &r.to_json())
}

/// Gram matrix (as strings) and class of Tr(a x y) on base[t]/(modulus).
/// Coefficient lists start with the constant term.
#[pyfunction]
#[pyo3(signature = (modulus, element, field = "Q"))]
fn trace_form_of(modulus: Vec<i64>, element: Vec<i64>, field: &str) -> PyResult<(Vec<Vec<String>>, PyGWClass)> {
    let ctx = self::field(field)?;
    let m: Vec<FieldElem> = modulus.iter().map(|&c| ctx.from_int(c)).collect();
    let alg = make_extension(&ctx, &m).map_err(to_py)?;
    let k = alg.ctx();
    let t = alg.generator();
    let a = element
        .iter()
        .enumerate()
        .fold(k.zero(), |acc, (i, &c)| k.add(&acc, &k.mul(&k.lift_base(ctx.from_int(c)), &k.pow(&t, i as u64))));
    let form = trace_form(&alg, &a).map_err(to_py)?;
    let gram = form.matrix().iter().map(|r| r.iter().map(|x| ctx.format_elem(x)).collect()).collect();
    let class = form.class().map_err(to_py)?;
    Ok((gram, class.into()))
}

#[pymodule]
fn gw_euler(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add("GWEulerError", m.py().get_type::<GWEulerError>())?;
    m.add_class::<PyGWClass>()?;
    m.add_function(wrap_pyfunction!(scheja_storch, m)?)?;
    m.add_function(wrap_pyfunction!(degree, m)?)?;
    m.add_function(wrap_pyfunction!(euler_o_n, m)?)?;
    m.add_function(wrap_pyfunction!(euler_o_n_stacky_classes, m)?)?;
    m.add_function(wrap_pyfunction!(lines_p4, m)?)?;
    m.add_function(wrap_pyfunction!(verify_lines, m)?)?;
    m.add_function(wrap_pyfunction!(trace_form_of, m)?)?;
    Ok(())
}
