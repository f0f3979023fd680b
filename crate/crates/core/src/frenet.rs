//! Curvature, torsion and the Frenet trihedron of admissible curves
//! `s ↦ (s, y(s), z(s))` parametrized by Galilean arc length.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::galilean::{norm, GVector3};

/// Default central-difference step used by [`frenet_residual`].
pub const DEFAULT_FD_STEP: f64 = 1e-5;

/// Position and the first three derivatives at a single parameter value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub position: GVector3,
    pub velocity: GVector3,
    pub acceleration: GVector3,
    pub jerk: GVector3,
}

/// A curve that can be evaluated together with its first three derivatives.
///
/// Admissible arc-length curves have `velocity.x1 == 1` and isotropic
/// acceleration and jerk everywhere.
pub trait C3Curve {
    fn jet(&self, s: f64) -> Jet;

    fn domain(&self) -> (f64, f64) {
        (f64::NEG_INFINITY, f64::INFINITY)
    }

    /// Derivative of order `order` at `s`.
    ///
    /// Panics if `order > 3`.
    fn eval(&self, s: f64, order: usize) -> GVector3 {
        let j = self.jet(s);
        match order {
            0 => j.position,
            1 => j.velocity,
            2 => j.acceleration,
            3 => j.jerk,
            _ => panic!("derivative order {order} is not available (max 3)"),
        }
    }
}

impl<C: C3Curve + ?Sized> C3Curve for &C {
    fn jet(&self, s: f64) -> Jet {
        (**self).jet(s)
    }

    fn domain(&self) -> (f64, f64) {
        (**self).domain()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrenetFrame {
    pub tangent: GVector3,
    pub normal: GVector3,
    pub binormal: GVector3,
    pub kappa: f64,
    pub tau: f64,
}

fn curvature_of(j: &Jet) -> f64 {
    j.acceleration.x2.hypot(j.acceleration.x3)
}

fn torsion_of(j: &Jet, s: f64) -> Result<f64> {
    let kappa = curvature_of(j);
    if kappa == 0.0 {
        return Err(Error::ZeroCurvature { s });
    }
    let (a, b) = (j.acceleration, j.jerk);
    // det(γ', γ'', γ''') expanded along the first column; γ'' and γ''' are isotropic.
    Ok((a.x2 * b.x3 - a.x3 * b.x2) / (kappa * kappa))
}

/// `κ(s) = sqrt(ÿ² + z̈²)`.
pub fn curvature<C: C3Curve + ?Sized>(curve: &C, s: f64) -> f64 {
    curvature_of(&curve.jet(s))
}

/// `τ(s) = det(γ̇, γ̈, γ⃛) / κ²`.
pub fn torsion<C: C3Curve + ?Sized>(curve: &C, s: f64) -> Result<f64> {
    torsion_of(&curve.jet(s), s)
}

pub fn frenet_frame<C: C3Curve + ?Sized>(curve: &C, s: f64) -> Result<FrenetFrame> {
    let j = curve.jet(s);
    let kappa = curvature_of(&j);
    let tau = torsion_of(&j, s)?;
    let (ydd, zdd) = (j.acceleration.x2, j.acceleration.x3);
    Ok(FrenetFrame {
        tangent: GVector3::new(1.0, j.velocity.x2, j.velocity.x3),
        normal: GVector3::new(0.0, ydd / kappa, zdd / kappa),
        binormal: GVector3::new(0.0, -zdd / kappa, ydd / kappa),
        kappa,
        tau,
    })
}

/// Residuals of the Frenet equations at `s`.
///
/// Returns the Galilean norms of `T' - κN`, `N' - τB` and `B' + τN`, with the
/// frame derivatives estimated by central differences of step `h`.
pub fn frenet_residual<C: C3Curve + ?Sized>(curve: &C, s: f64, h: f64) -> Result<[f64; 3]> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::InvalidStep(h));
    }
    let here = frenet_frame(curve, s)?;
    let ahead = frenet_frame(curve, s + h)?;
    let behind = frenet_frame(curve, s - h)?;
    let d = |f: fn(&FrenetFrame) -> GVector3| (0.5 / h) * (f(&ahead) - f(&behind));

    let dt = d(|f| f.tangent);
    let dn = d(|f| f.normal);
    let db = d(|f| f.binormal);
    Ok([
        norm(&(dt - here.kappa * here.normal)),
        norm(&(dn - here.tau * here.binormal)),
        norm(&(db + here.tau * here.normal)),
    ])
}
