//! Python bindings for `galmag-core`.
//!
//! Vectors cross the boundary as `(x1, x2, x3)` tuples and Killing fields as
//! `(v1, v2, v3)` tuples. Solver failures raise `ValueError` whose message
//! starts with the same reason code the CLI prints.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use galmag::cli::Failure;
use galmag::{C3Curve, ClosedFormCurve, GVector3, IsotropyClass, KillingField, MagneticIc, NMagneticIc};

type Vec3 = (f64, f64, f64);

fn gv(v: Vec3) -> GVector3 {
    GVector3::new(v.0, v.1, v.2)
}

fn tup(v: GVector3) -> Vec3 {
    (v.x1, v.x2, v.x3)
}

fn field(v: Vec3) -> KillingField {
    KillingField::new(v.0, v.1, v.2)
}

fn value_error(e: galmag::Error) -> PyErr {
    let f = Failure::from(e);
    PyValueError::new_err(format!("{}: {}", f.reason, f.detail))
}

#[pyfunction]
fn classify(x: Vec3) -> &'static str {
    match galmag::classify(&gv(x)) {
        IsotropyClass::NonIsotropic => "non-isotropic",
        IsotropyClass::Isotropic => "isotropic",
    }
}

#[pyfunction]
fn scalar_product(x: Vec3, y: Vec3) -> f64 {
    galmag::scalar_product(&gv(x), &gv(y))
}

#[pyfunction]
fn norm(x: Vec3) -> f64 {
    galmag::norm(&gv(x))
}

#[pyfunction]
fn cross(x: Vec3, y: Vec3) -> Vec3 {
    tup(galmag::cross(&gv(x), &gv(y)))
}

#[pyfunction]
fn lorentz_force(v: Vec3, x: Vec3) -> Vec3 {
    tup(galmag::lorentz_force(&field(v), &gv(x)))
}

/// Derivative of the state `(y, z, y', z')`.
#[pyfunction]
fn magnetic_rhs(v: Vec3, state: [f64; 4]) -> [f64; 4] {
    galmag::magnetic_rhs(&field(v), &state)
}

/// Derivative of `(y, z, y', z', y'', z'')` and the constraint value (None if v1 != 0).
#[pyfunction]
fn n_magnetic_rhs(v: Vec3, state: [f64; 6]) -> ([f64; 6], Option<f64>) {
    let r = galmag::n_magnetic_rhs(&field(v), &state);
    (r.derivative, r.constraint)
}

#[pyfunction]
fn b_magnetic_rhs(v: Vec3, state: [f64; 6]) -> ([f64; 6], Option<f64>) {
    let r = galmag::b_magnetic_rhs(&field(v), &state);
    (r.derivative, r.constraint)
}

/// A closed-form magnetic or N-magnetic trajectory `s -> (s, y(s), z(s))`.
#[pyclass(frozen, name = "Trajectory", module = "galmag")]
struct Trajectory {
    curve: ClosedFormCurve,
}

#[pymethods]
impl Trajectory {
    #[getter]
    fn case(&self) -> &'static str {
        self.curve.case.as_str()
    }

    #[getter]
    fn field(&self) -> Vec3 {
        let v = self.curve.field;
        (v.v1, v.v2, v.v3)
    }

    /// Derivative of the given order (0..=3) at `s`.
    #[pyo3(signature = (s, order = 0))]
    fn eval(&self, s: f64, order: usize) -> PyResult<Vec3> {
        if order > 3 {
            return Err(PyValueError::new_err(format!("order must be 0..=3, got {order}")));
        }
        Ok(tup(self.curve.eval(s, order)))
    }

    /// `(y, z, y', z', y'', z'')` at `s`.
    fn state(&self, s: f64) -> [f64; 6] {
        self.curve.state(s)
    }

    fn sample(&self, s_values: Vec<f64>) -> Vec<[f64; 4]> {
        s_values
            .into_iter()
            .map(|s| {
                let p = self.curve.eval(s, 0);
                [s, p.x1, p.x2, p.x3]
            })
            .collect()
    }

    fn curvature(&self, s: f64) -> f64 {
        galmag::curvature(&self.curve, s)
    }

    fn torsion(&self, s: f64) -> PyResult<f64> {
        galmag::torsion(&self.curve, s).map_err(value_error)
    }

    fn frenet_frame<'py>(&self, py: Python<'py>, s: f64) -> PyResult<Bound<'py, PyDict>> {
        let f = galmag::frenet_frame(&self.curve, s).map_err(value_error)?;
        let d = PyDict::new(py);
        d.set_item("T", tup(f.tangent))?;
        d.set_item("N", tup(f.normal))?;
        d.set_item("B", tup(f.binormal))?;
        d.set_item("kappa", f.kappa)?;
        d.set_item("tau", f.tau)?;
        Ok(d)
    }

    #[pyo3(signature = (s, h = galmag::frenet::DEFAULT_FD_STEP))]
    fn frenet_residual(&self, s: f64, h: f64) -> PyResult<[f64; 3]> {
        galmag::frenet_residual(&self.curve, s, h).map_err(value_error)
    }

    /// `{"r": .., "line": {"a", "b", "c", "d"}}` for helix cases, otherwise None.
    fn helix<'py>(&self, py: Python<'py>) -> PyResult<Option<Bound<'py, PyDict>>> {
        let Ok(h) = galmag::helix_decomposition(&self.curve) else {
            return Ok(None);
        };
        let line = PyDict::new(py);
        line.set_item("a", h.line.a)?;
        line.set_item("b", h.line.b)?;
        line.set_item("c", h.line.c)?;
        line.set_item("d", h.line.d)?;
        let d = PyDict::new(py);
        d.set_item("r", h.r)?;
        d.set_item("line", line)?;
        Ok(Some(d))
    }

    /// Residual of the defining equation at `s`.
    fn residual(&self, s: f64) -> f64 {
        galmag::n_magnetic_residual(&self.curve, s).unwrap_or_else(|| galmag::lorentz_residual(&self.curve, s))
    }

    /// RK4 cross-check on `[s_start, s_end]`; returns the report as a dict.
    #[pyo3(signature = (s_start, s_end, step = galmag::oracle::DEFAULT_STEP))]
    fn verify<'py>(&self, py: Python<'py>, s_start: f64, s_end: f64, step: f64) -> PyResult<Bound<'py, PyDict>> {
        let r = galmag::verify_curve(&self.curve, s_start, s_end, step).map_err(value_error)?;
        let d = PyDict::new(py);
        d.set_item("case", r.case)?;
        d.set_item("max_deviation", r.max_deviation)?;
        d.set_item("max_state_deviation", r.max_state_deviation)?;
        d.set_item("residual_max", r.residual_max)?;
        d.set_item("curvature_spread", r.curvature_spread)?;
        d.set_item("helix_distance_spread", r.helix_distance_spread)?;
        d.set_item("kappa", r.kappa)?;
        d.set_item("tau", r.tau)?;
        d.set_item("r", r.helix.map(|h| h.r))?;
        Ok(d)
    }

    fn __repr__(&self) -> String {
        let v = self.curve.field;
        format!("Trajectory(case='{}', field=({}, {}, {}))", self.curve.case, v.v1, v.v2, v.v3)
    }
}

#[pyfunction]
#[pyo3(signature = (v, y0 = 0.0, Y0 = 0.0, z0 = 0.0, Z0 = 0.0))]
#[allow(non_snake_case)]
fn solve_magnetic(v: Vec3, y0: f64, Y0: f64, z0: f64, Z0: f64) -> Trajectory {
    let ic = MagneticIc { y0, dy0: Y0, z0, dz0: Z0 };
    Trajectory { curve: galmag::solve_magnetic(&field(v), &ic) }
}

#[pyfunction]
#[pyo3(signature = (v, y0 = 0.0, Y0 = 0.0, T0 = 0.0, z0 = 0.0, Z0 = 0.0, U0 = 0.0, tol = galmag::magnetic::DEFAULT_CONSTRAINT_TOL))]
#[allow(non_snake_case, clippy::too_many_arguments)]
fn solve_n_magnetic(v: Vec3, y0: f64, Y0: f64, T0: f64, z0: f64, Z0: f64, U0: f64, tol: f64) -> PyResult<Trajectory> {
    let ic = NMagneticIc { y0, dy0: Y0, ddy0: T0, z0, dz0: Z0, ddz0: U0 };
    galmag::solve_n_magnetic_with_tolerance(&field(v), &ic, tol)
        .map(|curve| Trajectory { curve })
        .map_err(value_error)
}

/// RK4 integration of the magnetic system; returns `(grid, states)`.
#[pyfunction]
#[pyo3(signature = (v, initial, s_start, s_end, step = galmag::oracle::DEFAULT_STEP))]
fn integrate_magnetic(v: Vec3, initial: [f64; 4], s_start: f64, s_end: f64, step: f64) -> PyResult<(Vec<f64>, Vec<[f64; 4]>)> {
    let field = field(v);
    let cfg = galmag::IntegratorConfig::new(s_start, s_end).with_step(step);
    let run = galmag::integrate(|_, x| galmag::magnetic_rhs(&field, x), initial, &cfg).map_err(value_error)?;
    Ok((run.grid, run.states))
}

/// RK4 integration of the N-magnetic system; returns `(grid, states)`.
#[pyfunction]
#[pyo3(signature = (v, initial, s_start, s_end, step = galmag::oracle::DEFAULT_STEP))]
fn integrate_n_magnetic(v: Vec3, initial: [f64; 6], s_start: f64, s_end: f64, step: f64) -> PyResult<(Vec<f64>, Vec<[f64; 6]>)> {
    let field = field(v);
    let cfg = galmag::IntegratorConfig::new(s_start, s_end).with_step(step);
    let run = galmag::integrate(|_, x| galmag::n_magnetic_rhs(&field, x).derivative, initial, &cfg)
        .map_err(value_error)?;
    Ok((run.grid, run.states))
}

#[pymodule]
#[pyo3(name = "galmag")]
fn galmag_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<Trajectory>()?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(scalar_product, m)?)?;
    m.add_function(wrap_pyfunction!(norm, m)?)?;
    m.add_function(wrap_pyfunction!(cross, m)?)?;
    m.add_function(wrap_pyfunction!(lorentz_force, m)?)?;
    m.add_function(wrap_pyfunction!(magnetic_rhs, m)?)?;
    m.add_function(wrap_pyfunction!(n_magnetic_rhs, m)?)?;
    m.add_function(wrap_pyfunction!(b_magnetic_rhs, m)?)?;
    m.add_function(wrap_pyfunction!(solve_magnetic, m)?)?;
    m.add_function(wrap_pyfunction!(solve_n_magnetic, m)?)?;
    m.add_function(wrap_pyfunction!(integrate_magnetic, m)?)?;
    m.add_function(wrap_pyfunction!(integrate_n_magnetic, m)?)?;
    Ok(())
}
