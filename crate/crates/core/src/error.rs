use thiserror::Error;

use crate::magnetic::CaseTag;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The Frenet frame and torsion are undefined where κ = 0.
    #[error("curvature vanishes at s = {s}")]
    ZeroCurvature { s: f64 },

    #[error("finite-difference step must be positive and finite, got {0}")]
    InvalidStep(f64),

    #[error("curve case {0} is not a cylindrical helix")]
    WrongCase(CaseTag),

    /// The initial data violate the algebraic constraint of the isotropic N-magnetic system.
    #[error("initial conditions violate v2*U0 - v3*T0 = 0 (value {constraint:e})")]
    IncompatibleIc { constraint: f64 },

    #[error("invalid integrator configuration: {0}")]
    InvalidConfig(String),

    #[error("state became non-finite at s = {s}")]
    NonFiniteState { s: f64 },

    #[error("sample s = {s} lies outside the curve domain [{min}, {max}]")]
    DomainMismatch { s: f64, min: f64, max: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
