use num_bigint::BigInt;
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyList;

use qgrass::gwcalc;
use qgrass::numeric::{self, Precision, C64};
use qgrass::partitions::{self, BoxShape, Partition};
use qgrass::qring::{self, RingElement};
use qgrass::rootdata::IndexTuple;
use qgrass::toeplitz::{self, ToeplitzPoint};
use qgrass::totalpos::{self, TnnMethod};
use qgrass::verify::{self, Orthogonality};
use qgrass::Error;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::PrecisionFailure { .. } | Error::SingularMinor { .. } => PyArithmeticError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn json_to_py<'py>(py: Python<'py>, value: &impl ToString) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (value.to_string(),))
}

/// A `d x c` box, written `(d, n)` with `c = n - d`.
#[pyclass(name = "BoxShape", module = "qgrass", skip_from_py_object, frozen, eq, hash)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyBox(BoxShape);

#[pymethods]
impl PyBox {
    #[new]
    fn new(d: usize, n: usize) -> PyResult<Self> {
        BoxShape::new(d, n).map(PyBox).map_err(py_err)
    }

    #[getter]
    fn d(&self) -> usize {
        self.0.d()
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn c(&self) -> usize {
        self.0.c()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    /// Partitions in the box, in enumeration order.
    fn classes(&self) -> Vec<PyPartition> {
        partitions::enumerate_box(self.0).into_iter().map(PyPartition).collect()
    }

    fn __repr__(&self) -> String {
        format!("BoxShape(d={}, n={})", self.0.d(), self.0.n())
    }
}

#[pyclass(name = "Partition", module = "qgrass", skip_from_py_object, frozen, eq, hash, ord)]
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct PyPartition(Partition);

#[pymethods]
impl PyPartition {
    #[new]
    #[pyo3(signature = (parts = Vec::new()))]
    fn new(parts: Vec<usize>) -> PyResult<Self> {
        Partition::new(parts).map(PyPartition).map_err(py_err)
    }

    #[getter]
    fn parts(&self) -> Vec<usize> {
        self.0.parts().to_vec()
    }

    #[getter]
    fn size(&self) -> usize {
        self.0.size()
    }

    fn conjugate(&self) -> PyPartition {
        PyPartition(self.0.conjugate())
    }

    fn fits(&self, shape: &PyBox) -> bool {
        self.0.fits(shape.0)
    }

    fn poincare_dual(&self, shape: &PyBox) -> PyResult<PyPartition> {
        partitions::poincare_dual(&self.0, shape.0).map(PyPartition).map_err(py_err)
    }

    /// `{(row, col): hook}`, 1-based.
    fn hook_lengths(&self) -> Vec<((usize, usize), usize)> {
        self.0.hook_lengths().into_iter().collect()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Partition({:?})", self.0.parts())
    }
}

/// Accepts a `Partition`, a list of parts or a string like `"2,1"`.
fn partition_arg(obj: &Bound<'_, PyAny>) -> PyResult<Partition> {
    if let Ok(p) = obj.extract::<PyRef<'_, PyPartition>>() {
        return Ok(p.0.clone());
    }
    if let Ok(s) = obj.extract::<String>() {
        return s.parse().map_err(py_err);
    }
    let parts: Vec<usize> = obj.extract()?;
    Partition::new(parts).map_err(py_err)
}

fn index_arg(obj: Option<&Bound<'_, PyAny>>, shape: BoxShape) -> PyResult<IndexTuple> {
    let Some(obj) = obj else {
        return Ok(IndexTuple::i0(shape));
    };
    if let Ok(s) = obj.extract::<String>() {
        return IndexTuple::parse(&s, shape).map_err(py_err);
    }
    let entries: Vec<f64> = obj.extract()?;
    let doubled = entries
        .iter()
        .map(|v| {
            let twice = 2.0 * v;
            if (twice - twice.round()).abs() > 1e-9 {
                Err(PyValueError::new_err(format!("{v} is not a half-integer")))
            } else {
                Ok(twice.round() as i64)
            }
        })
        .collect::<PyResult<Vec<_>>>()?;
    IndexTuple::new(doubled, shape).map_err(py_err)
}

/// Element of the quantum cohomology ring, in the basis `q^k s_lambda`.
#[pyclass(name = "RingElement", module = "qgrass", skip_from_py_object, frozen, eq)]
#[derive(Clone, PartialEq)]
struct PyRing(RingElement);

#[pymethods]
impl PyRing {
    #[staticmethod]
    fn schubert(lambda: &Bound<'_, PyAny>, shape: &PyBox) -> PyResult<Self> {
        RingElement::schubert(&partition_arg(lambda)?, shape.0).map(PyRing).map_err(py_err)
    }

    #[staticmethod]
    fn one(shape: &PyBox) -> Self {
        PyRing(RingElement::one(shape.0))
    }

    #[staticmethod]
    #[pyo3(signature = (shape, k = 1))]
    fn q(shape: &PyBox, k: usize) -> Self {
        PyRing(RingElement::q_power(shape.0, k))
    }

    #[staticmethod]
    fn x(shape: &PyBox, j: usize) -> PyResult<Self> {
        RingElement::x_generator(shape.0, j).map(PyRing).map_err(py_err)
    }

    #[staticmethod]
    fn from_json(text: &str, shape: &PyBox) -> PyResult<Self> {
        let value = text.parse().map_err(|e| PyValueError::new_err(format!("{e}")))?;
        RingElement::from_json(&value, shape.0).map(PyRing).map_err(py_err)
    }

    #[getter]
    fn shape(&self) -> PyBox {
        PyBox(self.0.shape())
    }

    fn coeff(&self, k: usize, lambda: &Bound<'_, PyAny>) -> PyResult<BigInt> {
        Ok(self.0.coeff(k, &partition_arg(lambda)?))
    }

    /// `[(k, parts, coeff)]` in canonical order.
    fn terms(&self) -> Vec<(usize, Vec<usize>, BigInt)> {
        self.0.terms().map(|(k, l, c)| (k, l.parts().to_vec(), c.clone())).collect()
    }

    /// `X_k * self` by the Pieri rule.
    fn pieri(&self, k: usize) -> PyResult<Self> {
        qring::pieri_multiply(&self.0, k).map(PyRing).map_err(py_err)
    }

    fn to_json(&self) -> String {
        self.0.to_json().to_string()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn __add__(&self, other: &PyRing) -> PyResult<Self> {
        self.0.add(&other.0).map(PyRing).map_err(py_err)
    }

    fn __sub__(&self, other: &PyRing) -> PyResult<Self> {
        self.0.sub(&other.0).map(PyRing).map_err(py_err)
    }

    fn __mul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        if let Ok(r) = other.extract::<PyRef<'_, PyRing>>() {
            return qring::multiply(&self.0, &r.0).map(PyRing).map_err(py_err);
        }
        let factor: BigInt = other.extract()?;
        Ok(PyRing(self.0.scale(&factor)))
    }

    fn __rmul__(&self, other: BigInt) -> Self {
        PyRing(self.0.scale(&other))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("RingElement({})", self.0)
    }
}

/// Unipotent upper-triangular Toeplitz matrix, stored by its bands.
#[pyclass(name = "ToeplitzPoint", module = "qgrass", skip_from_py_object, frozen)]
#[derive(Clone)]
struct PyPoint(ToeplitzPoint);

#[pymethods]
impl PyPoint {
    #[staticmethod]
    fn from_bands(bands: Vec<C64>, shape: &PyBox) -> PyResult<Self> {
        ToeplitzPoint::from_bands(bands, shape.0).map(PyPoint).map_err(py_err)
    }

    #[getter]
    fn shape(&self) -> PyBox {
        PyBox(self.0.shape())
    }

    fn bands(&self) -> Vec<C64> {
        self.0.bands().to_vec()
    }

    fn dense(&self) -> Vec<Vec<C64>> {
        self.0.dense()
    }

    fn q_value(&self) -> C64 {
        self.0.q_value()
    }

    fn schubert_value(&self, lambda: &Bound<'_, PyAny>) -> PyResult<C64> {
        self.0.schubert_value(&partition_arg(lambda)?).map_err(py_err)
    }

    fn evaluate(&self, el: &PyRing) -> PyResult<C64> {
        self.0.evaluate(&el.0).map_err(py_err)
    }

    fn membership_residual(&self) -> f64 {
        self.0.membership_residual()
    }

    fn in_variety(&self) -> bool {
        self.0.in_variety()
    }

    fn inverse(&self) -> Self {
        PyPoint(self.0.inverse())
    }

    /// Minor on 1-based rows and columns.
    fn minor(&self, rows: Vec<usize>, cols: Vec<usize>) -> PyResult<C64> {
        let n = self.0.n();
        if rows.len() != cols.len() || rows.iter().chain(&cols).any(|&i| i == 0 || i > n) {
            return Err(PyValueError::new_err("rows and cols must be equal-length lists in 1..=n"));
        }
        Ok(self.0.minor(&rows, &cols))
    }

    fn to_json(&self) -> String {
        self.0.to_json().to_string()
    }

    fn __repr__(&self) -> String {
        format!("ToeplitzPoint(d={}, n={}, x={:?})", self.0.shape().d(), self.0.n(), self.0.bands())
    }
}

/// `<lambda, mu, nu>_k` from the Pieri engine.
#[pyfunction]
fn structure_constant(
    lambda: &Bound<'_, PyAny>,
    mu: &Bound<'_, PyAny>,
    nu: &Bound<'_, PyAny>,
    k: usize,
    shape: &PyBox,
) -> PyResult<BigInt> {
    qring::structure_constant(&partition_arg(lambda)?, &partition_arg(mu)?, &partition_arg(nu)?, k, shape.0)
        .map_err(py_err)
}

/// `(value, residual)` of the rounded Vafa–Intriligator sum.
#[pyfunction]
fn vi_invariant(
    lambda: &Bound<'_, PyAny>,
    mu: &Bound<'_, PyAny>,
    nu: &Bound<'_, PyAny>,
    k: usize,
    shape: &PyBox,
) -> PyResult<(BigInt, f64)> {
    let v = gwcalc::vi_invariant(&partition_arg(lambda)?, &partition_arg(mu)?, &partition_arg(nu)?, k, shape.0)
        .map_err(py_err)?;
    Ok((v.value, v.residual))
}

/// Nonzero rows of the Gromov–Witten table as dicts.
#[pyfunction]
fn gw_table<'py>(py: Python<'py>, shape: &PyBox) -> PyResult<Bound<'py, PyList>> {
    let table = gwcalc::gw_table(shape.0).map_err(py_err)?;
    let mut buf = Vec::new();
    table.write_json_lines(&mut buf).map_err(py_err)?;
    let text = String::from_utf8(buf).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let rows = text.lines().map(|l| json_to_py(py, &l)).collect::<PyResult<Vec<_>>>()?;
    PyList::new(py, rows)
}

#[pyfunction]
fn lr_coefficient(lambda: &Bound<'_, PyAny>, mu: &Bound<'_, PyAny>, nu: &Bound<'_, PyAny>) -> PyResult<BigInt> {
    Ok(verify::lr_coefficient(&partition_arg(lambda)?, &partition_arg(mu)?, &partition_arg(nu)?))
}

/// `u_n(t zeta^I)`; `index` defaults to `I_0`.
#[pyfunction]
#[pyo3(signature = (t, shape, index = None))]
fn point_at(t: C64, shape: &PyBox, index: Option<&Bound<'_, PyAny>>) -> PyResult<PyPoint> {
    Ok(PyPoint(toeplitz::point_at(t, &index_arg(index, shape.0)?)))
}

#[pyfunction]
fn fiber_points(shape: &PyBox) -> Vec<PyPoint> {
    toeplitz::fiber_points(shape.0).into_iter().map(PyPoint).collect()
}

#[pyfunction]
fn positive_point(t: f64, shape: &PyBox) -> PyPoint {
    PyPoint(totalpos::positive_point(t, shape.0))
}

#[pyfunction]
fn hook_schur_value(lambda: &Bound<'_, PyAny>, t: f64, shape: &PyBox) -> PyResult<f64> {
    Ok(totalpos::hook_schur_value(&partition_arg(lambda)?, t, shape.0))
}

/// `{(i, j): a}` recovered from interval minors.
#[pyfunction]
#[pyo3(signature = (u, tol = 1e-12))]
fn factor_params(u: &PyPoint, tol: f64) -> PyResult<Vec<((usize, usize), f64)>> {
    let grid = totalpos::factor_params(&u.0, tol).map_err(py_err)?;
    Ok(grid.cells().collect())
}

/// Largest entrywise gap between `reconstruct(factor_params(u))` and `u`.
#[pyfunction]
fn factorization_error(u: &PyPoint) -> PyResult<f64> {
    let grid = totalpos::factor_params(&u.0, 1e-12).map_err(py_err)?;
    let dense = totalpos::reconstruct_dense(&grid, &totalpos::canonical_order(u.0.shape())).map_err(py_err)?;
    Ok(totalpos::dense_diff(&dense, &u.0))
}

#[pyfunction]
#[pyo3(signature = (u, all_minors = false, tol = 1e-9))]
fn is_totally_nonnegative(u: &PyPoint, all_minors: bool, tol: f64) -> PyResult<bool> {
    let method = if all_minors { TnnMethod::AllMinors } else { TnnMethod::ConnectedColumns };
    Ok(totalpos::is_totally_nonnegative(&u.0, method, tol).map_err(py_err)?.nonnegative)
}

#[pyfunction]
fn real_fiber_points(shape: &PyBox) -> Vec<PyPoint> {
    totalpos::real_fiber_points(shape.0).into_iter().map(PyPoint).collect()
}

/// Report dict for a named identity (`littlewood`, `orthogonality1`, ...).
#[pyfunction]
#[pyo3(signature = (check, shape, t = C64::new(1.0, 0.0), tol = 1e-9))]
fn check_orthogonality<'py>(
    py: Python<'py>,
    check: &str,
    shape: &PyBox,
    t: C64,
    tol: f64,
) -> PyResult<Bound<'py, PyAny>> {
    let which: Orthogonality = check.parse().map_err(py_err)?;
    let report = verify::check_orthogonality(shape.0, which, t, tol).map_err(py_err)?;
    json_to_py(py, &report.to_json())
}

#[pyfunction]
#[pyo3(signature = (shape, tol = 1e-9))]
fn inequality_scan<'py>(py: Python<'py>, shape: &PyBox, tol: f64) -> PyResult<Bound<'py, PyAny>> {
    let report = verify::inequality_scan(shape.0, tol).map_err(py_err)?;
    json_to_py(py, &format!("{{\"violations\":{},\"max_excess\":{}}}", report.violations, report.max_excess))
}

/// `"double"`, `"extended"` or `"extended:<bits>"`.
#[pyfunction]
fn set_precision(spec: &str) -> PyResult<()> {
    let p: Precision = spec.parse().map_err(py_err)?;
    numeric::set_precision(p);
    Ok(())
}

#[pymodule]
#[pyo3(name = "qgrass")]
fn qgrass_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyBox>()?;
    m.add_class::<PyPartition>()?;
    m.add_class::<PyRing>()?;
    m.add_class::<PyPoint>()?;
    m.add_function(wrap_pyfunction!(structure_constant, m)?)?;
    m.add_function(wrap_pyfunction!(vi_invariant, m)?)?;
    m.add_function(wrap_pyfunction!(gw_table, m)?)?;
    m.add_function(wrap_pyfunction!(lr_coefficient, m)?)?;
    m.add_function(wrap_pyfunction!(point_at, m)?)?;
    m.add_function(wrap_pyfunction!(fiber_points, m)?)?;
    m.add_function(wrap_pyfunction!(positive_point, m)?)?;
    m.add_function(wrap_pyfunction!(hook_schur_value, m)?)?;
    m.add_function(wrap_pyfunction!(factor_params, m)?)?;
    m.add_function(wrap_pyfunction!(factorization_error, m)?)?;
    m.add_function(wrap_pyfunction!(is_totally_nonnegative, m)?)?;
    m.add_function(wrap_pyfunction!(real_fiber_points, m)?)?;
    m.add_function(wrap_pyfunction!(check_orthogonality, m)?)?;
    m.add_function(wrap_pyfunction!(inequality_scan, m)?)?;
    m.add_function(wrap_pyfunction!(set_precision, m)?)?;
    Ok(())
}
