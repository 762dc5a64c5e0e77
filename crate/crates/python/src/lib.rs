//! Python bindings for `oplax-core`.
//!
//! Indices are 0-based, matching the Rust API. Matrices are lists of rows.

use oplax_core::algebras::{
    builtin_by_name, check_anticommutative, check_isomorphism, check_jacobi, sl2_iso_matrix,
    IsoMatrix,
};
use oplax_core::integrator::{rk4_run as core_rk4_run, CoupledState, IntegrationConfig};
use oplax_core::lax::{
    classify_rigidity as core_classify, closed_form_mu as core_closed_form_mu,
    closed_form_on_trajectory as core_on_trajectory, representation_condition as core_condition,
    solve_params as core_solve_params,
};
use oplax_core::oscillator::{aux_functions as core_aux, lax_l as core_lax_l, lax_m as core_lax_m};
use oplax_core::{operad, AntiCommutativeCoords, Branch, ParamVector};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;
use rand::SeedableRng;

fn err(e: oplax_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn branch(sign: i32) -> PyResult<Branch> {
    match sign {
        1 => Ok(Branch::Plus),
        -1 => Ok(Branch::Minus),
        _ => Err(PyValueError::new_err("branch must be 1 or -1")),
    }
}

fn params(c: Vec<f64>) -> PyResult<ParamVector> {
    let arr: [f64; 9] = c
        .try_into()
        .map_err(|_| PyValueError::new_err("expected nine constants"))?;
    ParamVector::new(arr).map_err(err)
}

fn rows(m: &nalgebra::Matrix3<f64>) -> Vec<Vec<f64>> {
    (0..3)
        .map(|i| (0..3).map(|j| m[(i, j)]).collect())
        .collect()
}

fn coords_dict<'py>(py: Python<'py>, x: &AntiCommutativeCoords) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    for (name, v) in AntiCommutativeCoords::NAMES.iter().zip(x.to_array()) {
        d.set_item(*name, v)?;
    }
    Ok(d)
}

/// A multilinear map `V^{⊗n} → V` with dense coefficients.
#[pyclass(name = "Operation", module = "oplax", frozen)]
struct PyOperation(oplax_core::Operation);

#[pymethods]
impl PyOperation {
    #[new]
    fn new(dim: usize, degree: usize, coeffs: Vec<f64>) -> PyResult<Self> {
        oplax_core::Operation::from_coeffs(dim, degree, coeffs)
            .map(Self)
            .map_err(err)
    }

    #[staticmethod]
    fn zeros(dim: usize, degree: usize) -> PyResult<Self> {
        oplax_core::Operation::zeros(dim, degree)
            .map(Self)
            .map_err(err)
    }

    #[staticmethod]
    fn identity(dim: usize) -> PyResult<Self> {
        oplax_core::Operation::identity(dim).map(Self).map_err(err)
    }

    /// Coefficients uniform in `[-1, 1]` from a seeded generator.
    #[staticmethod]
    fn random(dim: usize, degree: usize, seed: u64) -> PyResult<Self> {
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        oplax_core::Operation::random(&mut rng, dim, degree)
            .map(Self)
            .map_err(err)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    #[getter]
    fn coeffs(&self) -> Vec<f64> {
        self.0.coeffs().to_vec()
    }

    fn get(&self, output: usize, inputs: Vec<usize>) -> PyResult<f64> {
        let d = self.0.dim();
        if inputs.len() != self.0.degree() || output >= d || inputs.iter().any(|&j| j >= d) {
            return Err(PyValueError::new_err("index out of range"));
        }
        Ok(self.0.get(output, &inputs))
    }

    fn evaluate(&self, args: Vec<Vec<f64>>) -> PyResult<Vec<f64>> {
        let args = args
            .into_iter()
            .map(oplax_core::Vector::new)
            .collect::<Result<Vec<_>, _>>()
            .map_err(err)?;
        Ok(self.0.evaluate(&args).map_err(err)?.into_entries())
    }

    fn scaled(&self, factor: f64) -> Self {
        Self(self.0.scaled(factor))
    }

    fn __repr__(&self) -> String {
        format!(
            "Operation(dim={}, degree={})",
            self.0.dim(),
            self.0.degree()
        )
    }
}

#[pyfunction]
fn partial_composition(f: &PyOperation, i: usize, g: &PyOperation) -> PyResult<PyOperation> {
    operad::partial_composition(&f.0, i, &g.0)
        .map(PyOperation)
        .map_err(err)
}

#[pyfunction]
fn total_composition(f: &PyOperation, g: &PyOperation) -> PyResult<PyOperation> {
    operad::total_composition(&f.0, &g.0)
        .map(PyOperation)
        .map_err(err)
}

#[pyfunction]
fn gerstenhaber_bracket(f: &PyOperation, g: &PyOperation) -> PyResult<PyOperation> {
    operad::gerstenhaber_bracket(&f.0, &g.0)
        .map(PyOperation)
        .map_err(err)
}

#[pyfunction]
fn graded_jacobiator(f: &PyOperation, g: &PyOperation, h: &PyOperation) -> PyResult<PyOperation> {
    operad::graded_jacobiator(&f.0, &g.0, &h.0)
        .map(PyOperation)
        .map_err(err)
}

#[pyfunction]
fn max_abs_diff(f: &PyOperation, g: &PyOperation) -> PyResult<f64> {
    oplax_core::Operation::max_abs_diff(&f.0, &g.0).map_err(err)
}

/// A phase point `(q, p)` of the oscillator with frequency `omega`.
#[pyclass(name = "OscState", module = "oplax", frozen)]
struct PyOscState(oplax_core::OscState);

#[pymethods]
impl PyOscState {
    #[new]
    fn new(q: f64, p: f64, omega: f64) -> PyResult<Self> {
        oplax_core::OscState::new(q, p, omega)
            .map(Self)
            .map_err(err)
    }

    #[getter]
    fn q(&self) -> f64 {
        self.0.q
    }

    #[getter]
    fn p(&self) -> f64 {
        self.0.p
    }

    #[getter]
    fn omega(&self) -> f64 {
        self.0.omega
    }

    fn hamiltonian(&self) -> f64 {
        self.0.hamiltonian()
    }

    fn evolve(&self, t: f64) -> Self {
        Self(self.0.evolve(t))
    }

    fn __repr__(&self) -> String {
        format!(
            "OscState(q={}, p={}, omega={})",
            self.0.q, self.0.p, self.0.omega
        )
    }
}

/// Structure constants `mu^i_jk` of a 3-dimensional binary algebra.
#[pyclass(name = "StructureConstants", module = "oplax", frozen)]
struct PyStructureConstants(oplax_core::StructureConstants);

#[pymethods]
impl PyStructureConstants {
    #[new]
    fn new(op: &PyOperation) -> PyResult<Self> {
        oplax_core::StructureConstants::new(op.0.clone())
            .map(Self)
            .map_err(err)
    }

    /// Builds anti-commutative constants from the nine chart coordinates.
    #[staticmethod]
    fn from_coords(coords: Vec<f64>) -> PyResult<Self> {
        let arr: [f64; 9] = coords
            .try_into()
            .map_err(|_| PyValueError::new_err("expected nine coordinates"))?;
        Ok(Self(AntiCommutativeCoords::from_array(arr).embed()))
    }

    fn get(&self, i: usize, j: usize, k: usize) -> PyResult<f64> {
        if i.max(j).max(k) >= 3 {
            return Err(PyValueError::new_err("index out of range"));
        }
        Ok(self.0.get(i, j, k))
    }

    fn coords<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        coords_dict(py, &self.0.to_coords().map_err(err)?)
    }

    fn as_operation(&self) -> PyOperation {
        PyOperation(self.0.as_operation().clone())
    }

    fn max_abs_diff(&self, other: &Self) -> f64 {
        self.0.max_abs_diff(&other.0)
    }
}

#[pyfunction]
#[pyo3(signature = (state, branch_sign = 1))]
fn aux_functions(state: &PyOscState, branch_sign: i32) -> PyResult<(f64, f64)> {
    let a = core_aux(&state.0, branch(branch_sign)?).map_err(err)?;
    Ok((a.a_plus, a.a_minus))
}

#[pyfunction]
fn lax_l(state: &PyOscState) -> Vec<Vec<f64>> {
    rows(&core_lax_l(&state.0))
}

#[pyfunction]
fn lax_m(omega: f64) -> Vec<Vec<f64>> {
    rows(&core_lax_m(omega))
}

#[pyfunction]
fn builtin(name: &str) -> PyResult<PyStructureConstants> {
    Ok(PyStructureConstants(
        builtin_by_name(name).map_err(err)?.constants,
    ))
}

#[pyfunction]
fn solve_params(mu0: &PyStructureConstants, p0: f64) -> PyResult<Vec<f64>> {
    Ok(core_solve_params(&mu0.0, p0).map_err(err)?.c.to_vec())
}

#[pyfunction]
fn representation_condition(c: Vec<f64>) -> PyResult<bool> {
    Ok(core_condition(&params(c)?))
}

#[pyfunction]
#[pyo3(signature = (c, state, branch_sign = 1))]
fn closed_form_mu(
    c: Vec<f64>,
    state: &PyOscState,
    branch_sign: i32,
) -> PyResult<PyStructureConstants> {
    core_closed_form_mu(&params(c)?, &state.0, branch(branch_sign)?)
        .map(PyStructureConstants)
        .map_err(err)
}

/// The family at time `t` along the trajectory from `s0`, continued past
/// the branch cut.
#[pyfunction]
fn closed_form_on_trajectory(
    c: Vec<f64>,
    s0: &PyOscState,
    t: f64,
) -> PyResult<PyStructureConstants> {
    core_on_trajectory(&params(c)?, &s0.0, t, Branch::Plus)
        .map(|x| PyStructureConstants(x.embed()))
        .map_err(err)
}

#[pyfunction]
fn classify_rigidity<'py>(
    py: Python<'py>,
    mu0: &PyStructureConstants,
    p0: f64,
    omega: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let r = core_classify(&mu0.0, p0, omega).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("verdict", r.verdict.to_string())?;
    d.set_item("params", r.params.c.to_vec())?;
    d.set_item("condition_satisfied", r.condition_satisfied)?;
    d.set_item("max_deviation", r.max_deviation)?;
    d.set_item("note", r.note)?;
    Ok(d)
}

#[pyfunction(name = "check_jacobi")]
fn py_check_jacobi(mu: &PyStructureConstants) -> f64 {
    check_jacobi(&mu.0)
}

#[pyfunction(name = "check_anticommutative")]
fn py_check_anticommutative(mu: &PyStructureConstants) -> f64 {
    check_anticommutative(&mu.0)
}

#[pyfunction(name = "check_isomorphism")]
fn py_check_isomorphism(
    mu: &PyStructureConstants,
    mu0: &PyStructureConstants,
    a: Vec<Vec<f64>>,
) -> PyResult<f64> {
    if a.len() != 3 || a.iter().any(|r| r.len() != 3) {
        return Err(PyValueError::new_err("expected a 3x3 matrix"));
    }
    let m = nalgebra::Matrix3::from_fn(|i, j| a[i][j]);
    Ok(check_isomorphism(
        &mu.0,
        &mu0.0,
        &IsoMatrix::new(m).map_err(err)?,
    ))
}

#[pyfunction(name = "sl2_iso_matrix")]
fn py_sl2_iso_matrix(state: &PyOscState, p0: f64) -> PyResult<Vec<Vec<f64>>> {
    Ok(rows(sl2_iso_matrix(&state.0, p0).map_err(err)?.matrix()))
}

type Record = (f64, f64, f64, Vec<f64>);

/// Integrates the coupled flow; returns `(t, q, p, coords)` records.
#[pyfunction]
#[pyo3(signature = (mu0, s0, dt, t_end, record_every = 1))]
fn rk4_run(
    mu0: &PyStructureConstants,
    s0: &PyOscState,
    dt: f64,
    t_end: f64,
    record_every: usize,
) -> PyResult<Vec<Record>> {
    let x0 = CoupledState {
        t: 0.0,
        osc: s0.0,
        mu: mu0.0.to_coords().map_err(err)?,
    };
    let cfg = IntegrationConfig::new(dt, t_end, record_every).map_err(err)?;
    Ok(core_rk4_run(&x0, &cfg)
        .map_err(err)?
        .into_iter()
        .map(|x| (x.t, x.osc.q, x.osc.p, x.mu.to_array().to_vec()))
        .collect())
}

#[pymodule]
fn oplax(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyOperation>()?;
    m.add_class::<PyOscState>()?;
    m.add_class::<PyStructureConstants>()?;
    m.add("COORD_NAMES", AntiCommutativeCoords::NAMES.to_vec())?;
    m.add_function(wrap_pyfunction!(partial_composition, m)?)?;
    m.add_function(wrap_pyfunction!(total_composition, m)?)?;
    m.add_function(wrap_pyfunction!(gerstenhaber_bracket, m)?)?;
    m.add_function(wrap_pyfunction!(graded_jacobiator, m)?)?;
    m.add_function(wrap_pyfunction!(max_abs_diff, m)?)?;
    m.add_function(wrap_pyfunction!(aux_functions, m)?)?;
    m.add_function(wrap_pyfunction!(lax_l, m)?)?;
    m.add_function(wrap_pyfunction!(lax_m, m)?)?;
    m.add_function(wrap_pyfunction!(builtin, m)?)?;
    m.add_function(wrap_pyfunction!(solve_params, m)?)?;
    m.add_function(wrap_pyfunction!(representation_condition, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form_mu, m)?)?;
    m.add_function(wrap_pyfunction!(closed_form_on_trajectory, m)?)?;
    m.add_function(wrap_pyfunction!(classify_rigidity, m)?)?;
    m.add_function(wrap_pyfunction!(py_check_jacobi, m)?)?;
    m.add_function(wrap_pyfunction!(py_check_anticommutative, m)?)?;
    m.add_function(wrap_pyfunction!(py_check_isomorphism, m)?)?;
    m.add_function(wrap_pyfunction!(py_sl2_iso_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(rk4_run, m)?)?;
    Ok(())
}
