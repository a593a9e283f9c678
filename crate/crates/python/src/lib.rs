//! Python bindings. Matrices cross the boundary as nested lists of complex
//! numbers (numpy arrays work too); reports come back as plain dicts.

use negacap::entcap::{self, BoundOptions, LogBase};
use negacap::families::Family;
use negacap::gaussian::{self, BlockSpec, CovarianceMatrix, Measure, SymmetricParams};
use negacap::{BipartiteDims, Channel, Complex64, ComplexMatrix, KrausForm};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use pyo3::IntoPyObjectExt;
use serde::Serialize;
use serde_json::Value;

fn err(e: negacap::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn base(b: f64) -> PyResult<LogBase> {
    LogBase::new(b).map_err(err)
}

fn dims(d: (usize, usize)) -> PyResult<BipartiteDims> {
    BipartiteDims::new(d.0, d.1).map_err(err)
}

pub fn matrix_from_rows(rows: Vec<Vec<Complex64>>) -> negacap::Result<ComplexMatrix> {
    let n = rows.len();
    let m = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != m) {
        return Err(negacap::Error::Parse("ragged matrix rows".into()));
    }
    ComplexMatrix::new(n, m, rows.into_iter().flatten().collect())
}

pub fn matrix_to_rows(a: &ComplexMatrix) -> Vec<Vec<Complex64>> {
    a.data().chunks(a.cols().max(1)).map(<[Complex64]>::to_vec).collect()
}

fn json_to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    match v {
        Value::Null => Ok(py.None().into_bound(py)),
        Value::Bool(b) => b.into_bound_py_any(py),
        Value::Number(n) => match n.as_i64() {
            Some(i) => i.into_bound_py_any(py),
            None => n.as_f64().unwrap_or(f64::NAN).into_bound_py_any(py),
        },
        Value::String(s) => s.into_bound_py_any(py),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for x in items {
                list.append(json_to_py(py, x)?)?;
            }
            Ok(list.into_any())
        }
        Value::Object(map) => {
            let d = PyDict::new(py);
            for (k, x) in map {
                d.set_item(k, json_to_py(py, x)?)?;
            }
            Ok(d.into_any())
        }
    }
}

fn to_dict<'py, T: Serialize>(py: Python<'py>, x: &T) -> PyResult<Bound<'py, PyAny>> {
    let v = serde_json::to_value(x).map_err(|e| PyValueError::new_err(e.to_string()))?;
    json_to_py(py, &v)
}

/// A linear map between bipartite operator spaces.
#[pyclass(name = "Channel", module = "negacap_py", skip_from_py_object)]
#[derive(Clone)]
struct PyChannel(Channel);

#[pymethods]
impl PyChannel {
    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        Channel::from_json(s).map(Self).map_err(err)
    }

    #[staticmethod]
    fn unitary(u: Vec<Vec<Complex64>>, dims_in: (usize, usize)) -> PyResult<Self> {
        let u = matrix_from_rows(u).map_err(err)?;
        Channel::unitary(&u, dims(dims_in)?).map(Self).map_err(err)
    }

    /// S(ρ) = Σ c_i V_i ρ V_i†; all coefficients default to 1.
    #[staticmethod]
    #[pyo3(signature = (operators, dims_in, dims_out, coefficients=None))]
    fn from_kraus(
        operators: Vec<Vec<Vec<Complex64>>>,
        dims_in: (usize, usize),
        dims_out: (usize, usize),
        coefficients: Option<Vec<f64>>,
    ) -> PyResult<Self> {
        let ops = operators.into_iter().map(matrix_from_rows).collect::<negacap::Result<Vec<_>>>().map_err(err)?;
        let c = coefficients.unwrap_or_else(|| vec![1.0; ops.len()]);
        if c.len() != ops.len() {
            return Err(PyValueError::new_err("one coefficient per Kraus operator"));
        }
        Channel::from_kraus(&KrausForm::new(c, ops), dims(dims_in)?, dims(dims_out)?).map(Self).map_err(err)
    }

    /// One of the built-in two-parameter unitary families.
    #[staticmethod]
    #[pyo3(signature = (family, alpha, beta=0.0))]
    fn builtin(family: &str, alpha: f64, beta: f64) -> PyResult<Self> {
        let f: Family = family.parse().map_err(err)?;
        Ok(Self(f.channel(alpha, beta)))
    }

    #[staticmethod]
    fn mix(channels: Vec<PyRef<'_, PyChannel>>, weights: Vec<f64>) -> PyResult<Self> {
        let chs: Vec<Channel> = channels.iter().map(|c| c.0.clone()).collect();
        negacap::channel::mix(&chs, &weights).map(Self).map_err(err)
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    #[getter]
    fn dims_in(&self) -> (usize, usize) {
        let d = self.0.in_dims();
        (d.d_a(), d.d_b())
    }

    #[getter]
    fn dims_out(&self) -> (usize, usize) {
        let d = self.0.out_dims();
        (d.d_a(), d.d_b())
    }

    fn choi(&self) -> Vec<Vec<Complex64>> {
        matrix_to_rows(self.0.choi())
    }

    fn apply(&self, rho: Vec<Vec<Complex64>>) -> PyResult<Vec<Vec<Complex64>>> {
        let rho = matrix_from_rows(rho).map_err(err)?;
        self.0.apply(&rho).map(|o| matrix_to_rows(&o)).map_err(err)
    }

    #[pyo3(signature = (tol=1e-9))]
    fn is_cp(&self, tol: f64) -> bool {
        self.0.is_cp(tol)
    }

    #[pyo3(signature = (tol=1e-9))]
    fn is_tp(&self, tol: f64) -> bool {
        self.0.is_tp(tol)
    }

    fn partial_transpose(&self) -> Self {
        Self(self.0.partial_transpose())
    }

    /// M = S^Γ₋†(I) for the canonical split.
    fn negative_part_adjoint(&self) -> PyResult<Vec<Vec<Complex64>>> {
        entcap::negative_part_adjoint(&self.0).map(|m| matrix_to_rows(&m)).map_err(err)
    }

    /// Lower and upper capacity bounds; `p` is the Schatten index on M.
    #[pyo3(signature = (base=2.0, p=f64::INFINITY))]
    fn ec_bounds<'py>(&self, py: Python<'py>, base: f64, p: f64) -> PyResult<Bound<'py, PyAny>> {
        let q = if p.is_infinite() { 1.0 } else if p == 1.0 { f64::INFINITY } else { p / (p - 1.0) };
        let opts = BoundOptions { base: self::base(base)?, p, q, ..BoundOptions::default() };
        let b = entcap::ec_bounds_deterministic(&self.0, &opts).map_err(err)?;
        let d = to_dict(py, &b)?;
        let pe = b.is_perfect_entangler(self.0.in_dims(), 1e-9);
        d.set_item("perfect_entangler", pe)?;
        Ok(d)
    }

    fn saturation_check<'py>(&self, py: Python<'py>, rho: Vec<Vec<Complex64>>) -> PyResult<Bound<'py, PyAny>> {
        let rho = matrix_from_rows(rho).map_err(err)?;
        to_dict(py, &entcap::saturation_check(&self.0, &rho).map_err(err)?)
    }

    fn __repr__(&self) -> String {
        format!("Channel(dims_in={:?}, dims_out={:?})", self.dims_in(), self.dims_out())
    }
}

/// Real symmetric covariance matrix in (x₁, p₁, …) ordering.
#[pyclass(name = "CovarianceMatrix", module = "negacap_py", skip_from_py_object)]
#[derive(Clone)]
struct PyCovariance(CovarianceMatrix);

#[pymethods]
impl PyCovariance {
    #[new]
    #[pyo3(signature = (sigma, hbar=1.0))]
    fn new(sigma: Vec<Vec<f64>>, hbar: f64) -> PyResult<Self> {
        let d = sigma.len();
        if d % 2 != 0 || sigma.iter().any(|r| r.len() != d) {
            return Err(PyValueError::new_err("sigma must be square with even size"));
        }
        CovarianceMatrix::new(d / 2, sigma.into_iter().flatten().collect(), hbar).map(Self).map_err(err)
    }

    #[staticmethod]
    #[pyo3(signature = (n_modes, hbar=1.0))]
    fn vacuum(n_modes: usize, hbar: f64) -> PyResult<Self> {
        CovarianceMatrix::vacuum(n_modes, hbar).map(Self).map_err(err)
    }

    #[staticmethod]
    #[pyo3(signature = (a, b, n, hbar=1.0))]
    fn pure_state(a: f64, b: f64, n: usize, hbar: f64) -> PyResult<Self> {
        gaussian::pure_state_covariance(a, b, n, hbar).map(Self).map_err(err)
    }

    #[getter]
    fn n_modes(&self) -> usize {
        self.0.n_modes()
    }

    #[getter]
    fn hbar(&self) -> f64 {
        self.0.hbar()
    }

    fn sigma(&self) -> Vec<Vec<f64>> {
        self.0.sigma().chunks(self.0.dim()).map(<[f64]>::to_vec).collect()
    }

    fn symplectic_eigenvalues(&self) -> PyResult<Vec<f64>> {
        gaussian::symplectic_eigenvalues(&self.0).map_err(err)
    }

    fn is_valid_state(&self) -> bool {
        gaussian::is_valid_state(&self.0)
    }

    fn determinant(&self) -> f64 {
        self.0.determinant()
    }

    fn reduced(&self, modes: Vec<usize>) -> PyResult<Self> {
        self.0.reduced(&modes).map(Self).map_err(err)
    }

    fn partial_transpose(&self, modes: Vec<usize>) -> PyResult<Self> {
        gaussian::partial_transpose_cov(&self.0, &modes).map(Self).map_err(err)
    }

    /// Logarithmic negativity across the cut (`partition` | rest).
    #[pyo3(signature = (partition, base=2.0))]
    fn log_negativity(&self, partition: Vec<usize>, base: f64) -> PyResult<f64> {
        gaussian::log_negativity_gaussian(&self.0, &partition, self::base(base)?).map_err(err)
    }

    fn two_mode_invariants<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_dict(py, &gaussian::two_mode_invariants(&self.0).map_err(err)?)
    }
}

/// Fully symmetric N-mode state in (ν_D, γ, r) coordinates.
#[pyclass(name = "SymmetricParams", module = "negacap_py", skip_from_py_object)]
#[derive(Clone)]
struct PyParams(SymmetricParams);

#[pymethods]
impl PyParams {
    #[new]
    #[pyo3(signature = (n, nu_d, gamma, r, hbar=1.0))]
    fn new(n: usize, nu_d: f64, gamma: f64, r: f64, hbar: f64) -> PyResult<Self> {
        SymmetricParams::new(n, nu_d, gamma, r, hbar).map(Self).map_err(err)
    }

    /// From the standard form (a, b, c).
    #[staticmethod]
    #[pyo3(signature = (a, b, c, n, hbar=1.0))]
    fn from_standard(a: f64, b: f64, c: f64, n: usize, hbar: f64) -> PyResult<Self> {
        let sf = gaussian::StandardForm::new(a, b, c, n, hbar).map_err(err)?;
        gaussian::standard_to_params(&sf).map(Self).map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }
    #[getter]
    fn nu_d(&self) -> f64 {
        self.0.nu_d()
    }
    #[getter]
    fn nu_n(&self) -> f64 {
        self.0.nu_n()
    }
    #[getter]
    fn gamma(&self) -> f64 {
        self.0.gamma()
    }
    #[getter]
    fn r(&self) -> f64 {
        self.0.r()
    }
    #[getter]
    fn hbar(&self) -> f64 {
        self.0.hbar()
    }

    fn standard_form<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_dict(py, &gaussian::params_to_standard(&self.0).map_err(err)?)
    }

    fn covariance(&self) -> PyResult<PyCovariance> {
        let sf = gaussian::params_to_standard(&self.0).map_err(err)?;
        sf.covariance().map(PyCovariance).map_err(err)
    }

    fn purity<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_dict(py, &gaussian::purity(&self.0).map_err(err)?)
    }

    fn __repr__(&self) -> String {
        format!("SymmetricParams(n={}, nu_d={}, gamma={}, r={})", self.n(), self.nu_d(), self.gamma(), self.r())
    }
}

/// Two disjoint blocks of n1 and n2 modes out of N.
#[pyclass(name = "BlockSpec", module = "negacap_py", skip_from_py_object)]
#[derive(Clone)]
struct PyBlocks(BlockSpec);

#[pymethods]
impl PyBlocks {
    #[new]
    fn new(n: usize, n1: usize, n2: usize) -> PyResult<Self> {
        BlockSpec::new(n, n1, n2).map(Self).map_err(err)
    }
    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }
    #[getter]
    fn n1(&self) -> usize {
        self.0.n1()
    }
    #[getter]
    fn n2(&self) -> usize {
        self.0.n2()
    }
    #[getter]
    fn n_s(&self) -> usize {
        self.0.n_s()
    }
    #[getter]
    fn n_d(&self) -> usize {
        self.0.n_d()
    }
}

#[pyfunction]
fn density_from_vector(psi: Vec<Complex64>) -> Vec<Vec<Complex64>> {
    matrix_to_rows(&entcap::density_from_vector(&psi))
}

#[pyfunction]
fn negativity(rho: Vec<Vec<Complex64>>, dims: (usize, usize)) -> PyResult<f64> {
    let rho = matrix_from_rows(rho).map_err(err)?;
    entcap::negativity(&rho, self::dims(dims)?).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (rho, dims, base=2.0))]
fn log_negativity(rho: Vec<Vec<Complex64>>, dims: (usize, usize), base: f64) -> PyResult<f64> {
    let rho = matrix_from_rows(rho).map_err(err)?;
    entcap::log_negativity(&rho, self::dims(dims)?, self::base(base)?).map_err(err)
}

#[pyfunction]
fn f_block(p: &PyParams, blocks: &PyBlocks) -> PyResult<f64> {
    gaussian::f_block(&p.0, &blocks.0).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (p, blocks, base=2.0))]
fn block_log_negativity(p: &PyParams, blocks: &PyBlocks, base: f64) -> PyResult<f64> {
    gaussian::block_log_negativity(&p.0, &blocks.0, self::base(base)?).map_err(err)
}

#[pyfunction]
fn block_negativity(p: &PyParams, blocks: &PyBlocks) -> PyResult<f64> {
    gaussian::block_negativity(&p.0, &blocks.0).map_err(err)
}

#[pyfunction]
fn boundary_limit(nu_d: f64, blocks: &PyBlocks) -> f64 {
    gaussian::boundary_limit(nu_d, &blocks.0)
}

#[pyfunction]
fn critical_value(nu_d: f64, gamma: f64, blocks: &PyBlocks) -> f64 {
    gaussian::critical_value(nu_d, gamma, &blocks.0)
}

/// Supremum of block entanglement over symmetric states; `inf` when unbounded.
#[pyfunction]
#[pyo3(signature = (blocks, measure="logneg", base=2.0, nu_d=None, hbar=1.0))]
fn sup_block_entanglement(blocks: &PyBlocks, measure: &str, base: f64, nu_d: Option<f64>, hbar: f64) -> PyResult<f64> {
    let m: Measure = measure.parse().map_err(err)?;
    let s = gaussian::sup_block_entanglement(&blocks.0, m, self::base(base)?, nu_d, hbar).map_err(err)?;
    Ok(s.value().unwrap_or(f64::INFINITY))
}

#[pyfunction]
#[pyo3(signature = (a, b, n, base=2.0))]
fn pure_state_oracle(a: f64, b: f64, n: usize, base: f64) -> PyResult<f64> {
    gaussian::pure_state_oracle(a, b, n, self::base(base)?).map_err(err)
}

#[pymodule]
fn negacap_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyChannel>()?;
    m.add_class::<PyCovariance>()?;
    m.add_class::<PyParams>()?;
    m.add_class::<PyBlocks>()?;
    m.add_function(wrap_pyfunction!(density_from_vector, m)?)?;
    m.add_function(wrap_pyfunction!(negativity, m)?)?;
    m.add_function(wrap_pyfunction!(log_negativity, m)?)?;
    m.add_function(wrap_pyfunction!(f_block, m)?)?;
    m.add_function(wrap_pyfunction!(block_log_negativity, m)?)?;
    m.add_function(wrap_pyfunction!(block_negativity, m)?)?;
    m.add_function(wrap_pyfunction!(boundary_limit, m)?)?;
    m.add_function(wrap_pyfunction!(critical_value, m)?)?;
    m.add_function(wrap_pyfunction!(sup_block_entanglement, m)?)?;
    m.add_function(wrap_pyfunction!(pure_state_oracle, m)?)?;
    Ok(())
}
