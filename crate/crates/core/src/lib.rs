//! Magnetic trajectories of constant Killing fields in the Galilean 3-space.
//!
//! [`galilean`] holds the vector algebra, [`frenet`] the differential
//! geometry of admissible curves, [`magnetic`] the Lorentz force and the
//! closed-form solvers, and [`oracle`] a fixed-step RK4 integrator that
//! checks the closed forms against the raw equations.

pub mod cli;
pub mod error;
pub mod frenet;
pub mod galilean;
pub mod magnetic;
pub mod oracle;
pub mod verify;

pub use error::{Error, Result};
pub use frenet::{curvature, frenet_frame, frenet_residual, torsion, C3Curve, FrenetFrame, Jet};
pub use galilean::{classify, cross, norm, scalar_product, GVector3, IsotropyClass};
pub use magnetic::{
    b_magnetic_rhs, helix_decomposition, lorentz_force, lorentz_residual, magnetic_rhs, n_magnetic_residual,
    n_magnetic_rhs, solve_magnetic, solve_n_magnetic, solve_n_magnetic_with_tolerance, AxisLine, CaseTag,
    ClosedFormCurve, HelixData, InitialData, KillingField, MagneticIc, NMagneticIc, ThirdOrderRate,
};
pub use oracle::{integrate, max_deviation, Components, IntegratorConfig, SampledCurve};
pub use verify::{linspace, verify_curve, VerificationReport};
