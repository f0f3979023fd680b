//! End-to-end check of a closed-form trajectory: RK4 deviation, residual of
//! the defining equation, curvature spread and helix-distance spread.

use serde::Serialize;

use crate::error::Result;
use crate::frenet::{curvature, torsion, C3Curve};
use crate::magnetic::{
    helix_decomposition, lorentz_residual, magnetic_rhs, n_magnetic_residual, n_magnetic_rhs, ClosedFormCurve,
    HelixData, InitialData,
};
use crate::oracle::{integrate, max_deviation, Components, IntegratorConfig};

/// Number of equispaced probes used for residual and spread measurements.
pub const PROBE_COUNT: usize = 1000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub case: String,
    pub s_start: f64,
    pub s_end: f64,
    pub oracle_step: f64,
    /// Positions only.
    pub max_deviation: f64,
    pub max_state_deviation: f64,
    pub residual_max: f64,
    pub curvature_spread: f64,
    pub helix_distance_spread: Option<f64>,
    pub kappa: f64,
    pub tau: Option<f64>,
    pub helix: Option<HelixData>,
}

impl VerificationReport {
    /// Every measured quantity is strictly below its tolerance.
    pub fn passes(&self, deviation_tol: f64, residual_tol: f64) -> bool {
        self.max_deviation < deviation_tol
            && self.residual_max < residual_tol
            && self.curvature_spread < residual_tol
            && self.helix_distance_spread.is_none_or(|d| d < residual_tol)
    }
}

/// `n` equispaced points covering `[a, b]` inclusive.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => {
            let h = (b - a) / (n - 1) as f64;
            let mut v: Vec<f64> = (0..n - 1).map(|k| a + k as f64 * h).collect();
            v.push(b);
            v
        }
    }
}

/// Runs the oracle on `[s_start, s_end]` with RK4 step `step`.
///
/// Integration starts from the raw initial data when `s_start == 0` and from
/// the closed-form state at `s_start` otherwise.
pub fn verify_curve(curve: &ClosedFormCurve, s_start: f64, s_end: f64, step: f64) -> Result<VerificationReport> {
    let cfg = IntegratorConfig::new(s_start, s_end).with_step(step);
    let field = curve.field;
    let start = curve.state(s_start);

    let (max_dev, max_state_dev) = match curve.initial {
        InitialData::Magnetic(ic) => {
            let init = if s_start == 0.0 { [ic.y0, ic.z0, ic.dy0, ic.dz0] } else { [start[0], start[1], start[2], start[3]] };
            let run = integrate(|_, x| magnetic_rhs(&field, x), init, &cfg)?;
            (
                max_deviation(curve, &run, Components::Position)?,
                max_deviation(curve, &run, Components::FullState)?,
            )
        }
        InitialData::NMagnetic(ic) => {
            let init = if s_start == 0.0 { [ic.y0, ic.z0, ic.dy0, ic.dz0, ic.ddy0, ic.ddz0] } else { start };
            let run = integrate(|_, x| n_magnetic_rhs(&field, x).derivative, init, &cfg)?;
            (
                max_deviation(curve, &run, Components::Position)?,
                max_deviation(curve, &run, Components::FullState)?,
            )
        }
    };

    let probes = linspace(s_start, s_end, PROBE_COUNT);
    let helix = helix_decomposition(curve).ok();
    let mut residual_max: f64 = 0.0;
    let (mut k_min, mut k_max) = (f64::INFINITY, f64::NEG_INFINITY);
    let mut helix_spread: f64 = 0.0;
    for &s in &probes {
        let r = n_magnetic_residual(curve, s).unwrap_or_else(|| lorentz_residual(curve, s));
        residual_max = residual_max.max(r);
        let k = curvature(curve, s);
        k_min = k_min.min(k);
        k_max = k_max.max(k);
        if let Some(h) = &helix {
            helix_spread = helix_spread.max((h.distance(&curve.eval(s, 0), s) - h.r).abs());
        }
    }

    Ok(VerificationReport {
        case: curve.case.to_string(),
        s_start,
        s_end,
        oracle_step: step,
        max_deviation: max_dev,
        max_state_deviation: max_state_dev,
        residual_max,
        curvature_spread: k_max - k_min,
        helix_distance_spread: helix.map(|_| helix_spread),
        kappa: curvature(curve, s_start),
        tau: torsion(curve, s_start).ok(),
        helix,
    })
}
