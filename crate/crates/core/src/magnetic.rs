//! Lorentz force of a constant Killing field and the closed-form magnetic and
//! N-magnetic trajectories it generates.
//!
//! A trajectory is an admissible arc-length curve `s ↦ (s, y(s), z(s))`. All
//! solutions are stored as coefficients of
//!
//! ```text
//! f(s) = c0 + c1 s + c2 s² + a (cos ωs − 1) + b sin ωs
//! ```
//!
//! for `f ∈ {y, z}` with a shared angular frequency `ω`, so that `f(0) = c0`
//! exactly and any derivative up to order three is available in closed form.

use std::fmt;

use log::warn;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frenet::{C3Curve, Jet};
use crate::galilean::{cross, norm, GVector3};

/// Relative tolerance for the isotropic N-magnetic compatibility constraint.
pub const DEFAULT_CONSTRAINT_TOL: f64 = 1e-12;

/// Below this magnitude a non-zero `v1` still selects the helix case, but the
/// helix radius grows like `1/v1²`.
pub const TINY_V1: f64 = 1e-12;

/// Constant Killing field `V = v1 ∂x + v2 ∂y + v3 ∂z`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct KillingField {
    pub v1: f64,
    pub v2: f64,
    pub v3: f64,
}

impl KillingField {
    pub const fn new(v1: f64, v2: f64, v3: f64) -> Self {
        Self { v1, v2, v3 }
    }

    pub fn as_vector(&self) -> GVector3 {
        GVector3::new(self.v1, self.v2, self.v3)
    }

    pub fn is_isotropic(&self) -> bool {
        self.v1 == 0.0
    }

    pub fn is_zero(&self) -> bool {
        self.v1 == 0.0 && self.v2 == 0.0 && self.v3 == 0.0
    }
}

/// Initial data `y(0), ẏ(0), z(0), ż(0)` of a magnetic trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct MagneticIc {
    pub y0: f64,
    pub dy0: f64,
    pub z0: f64,
    pub dz0: f64,
}

/// Initial data of an N-magnetic trajectory, including `ÿ(0)` and `z̈(0)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct NMagneticIc {
    pub y0: f64,
    pub dy0: f64,
    pub ddy0: f64,
    pub z0: f64,
    pub dz0: f64,
    pub ddz0: f64,
}

impl NMagneticIc {
    /// The constant curvature `κ0 = sqrt(T0² + U0²)` implied by the data.
    pub fn kappa0(&self) -> f64 {
        self.ddy0.hypot(self.ddz0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum InitialData {
    Magnetic(MagneticIc),
    NMagnetic(NMagneticIc),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    /// Isotropic field: planar parabola.
    #[serde(rename = "Magnetic-Isotropic")]
    MagneticIsotropic,
    /// Non-isotropic field: cylindrical helix.
    #[serde(rename = "Magnetic-NonIsotropic")]
    MagneticNonIsotropic,
    /// `V = 0`.
    #[serde(rename = "NMag-i")]
    NMagI,
    /// `v1 = v2 = 0`, `v3 ≠ 0`.
    #[serde(rename = "NMag-ii")]
    NMagII,
    /// `v1 = v3 = 0`, `v2 ≠ 0`.
    #[serde(rename = "NMag-iii")]
    NMagIII,
    /// `v1 = 0`, `v2 ≠ 0`, `v3 ≠ 0`.
    #[serde(rename = "NMag-iv")]
    NMagIV,
    /// `v1 ≠ 0`: cylindrical helix.
    #[serde(rename = "NMag-v")]
    NMagV,
}

impl CaseTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseTag::MagneticIsotropic => "Magnetic-Isotropic",
            CaseTag::MagneticNonIsotropic => "Magnetic-NonIsotropic",
            CaseTag::NMagI => "NMag-i",
            CaseTag::NMagII => "NMag-ii",
            CaseTag::NMagIII => "NMag-iii",
            CaseTag::NMagIV => "NMag-iv",
            CaseTag::NMagV => "NMag-v",
        }
    }

    pub fn is_helix(&self) -> bool {
        matches!(self, CaseTag::MagneticNonIsotropic | CaseTag::NMagV)
    }

    pub fn is_n_magnetic(&self) -> bool {
        !matches!(self, CaseTag::MagneticIsotropic | CaseTag::MagneticNonIsotropic)
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Coefficients of one coordinate function, see the module docs.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Component {
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
    pub cos_amp: f64,
    pub sin_amp: f64,
}

impl Component {
    fn polynomial(c0: f64, c1: f64, c2: f64) -> Self {
        Self { c0, c1, c2, cos_amp: 0.0, sin_amp: 0.0 }
    }

    /// Value and first three derivatives at `s`.
    pub fn derivatives(&self, s: f64, omega: f64) -> [f64; 4] {
        let Component { c0, c1, c2, cos_amp: a, sin_amp: b } = *self;
        let (sn, cs) = (omega * s).sin_cos();
        let half = (0.5 * omega * s).sin();
        // cos θ − 1 = −2 sin²(θ/2) keeps f(s) − c0 accurate near s = 0
        let cos_m1 = -2.0 * half * half;
        let w2 = omega * omega;
        [
            c0 + (c1 + c2 * s) * s + a * cos_m1 + b * sn,
            c1 + 2.0 * c2 * s + omega * (b * cs - a * sn),
            2.0 * c2 - w2 * (a * cs + b * sn),
            w2 * omega * (a * sn - b * cs),
        ]
    }
}

/// Analytic magnetic or N-magnetic trajectory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormCurve {
    pub case: CaseTag,
    pub field: KillingField,
    pub initial: InitialData,
    pub omega: f64,
    pub y: Component,
    pub z: Component,
    domain: (f64, f64),
}

impl ClosedFormCurve {
    fn new(case: CaseTag, field: KillingField, initial: InitialData, omega: f64, y: Component, z: Component) -> Self {
        Self { case, field, initial, omega, y, z, domain: (f64::NEG_INFINITY, f64::INFINITY) }
    }

    /// The same curve restricted to `[min, max]`.
    pub fn restricted(mut self, min: f64, max: f64) -> Self {
        self.domain = (min, max);
        self
    }

    /// State in oracle layout `(y, z, ẏ, ż, ÿ, z̈)`.
    pub fn state(&self, s: f64) -> [f64; 6] {
        let y = self.y.derivatives(s, self.omega);
        let z = self.z.derivatives(s, self.omega);
        [y[0], z[0], y[1], z[1], y[2], z[2]]
    }

    /// `κ0` for N-magnetic curves (from the initial data), `None` otherwise.
    pub fn kappa0(&self) -> Option<f64> {
        match self.initial {
            InitialData::NMagnetic(ic) => Some(ic.kappa0()),
            InitialData::Magnetic(_) => None,
        }
    }
}

impl C3Curve for ClosedFormCurve {
    fn jet(&self, s: f64) -> Jet {
        let y = self.y.derivatives(s, self.omega);
        let z = self.z.derivatives(s, self.omega);
        Jet {
            position: GVector3::new(s, y[0], z[0]),
            velocity: GVector3::new(1.0, y[1], z[1]),
            acceleration: GVector3::new(0.0, y[2], z[2]),
            jerk: GVector3::new(0.0, y[3], z[3]),
        }
    }

    fn domain(&self) -> (f64, f64) {
        self.domain
    }
}

/// Admissible straight line `s ↦ (s, a s + b, c s + d)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisLine {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl AxisLine {
    pub fn at(&self, s: f64) -> GVector3 {
        GVector3::new(s, self.a * s + self.b, self.c * s + self.d)
    }
}

/// A cylindrical helix wound around `S¹(r) × l`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HelixData {
    pub r: f64,
    pub line: AxisLine,
}

impl HelixData {
    /// `‖γ(s) − l(s)‖` for the given curve point, which equals `r` on the helix.
    pub fn distance(&self, point: &GVector3, s: f64) -> f64 {
        norm(&(*point - self.line.at(s)))
    }
}

/// Lorentz force `Φ(X) = V × X`.
pub fn lorentz_force(field: &KillingField, x: &GVector3) -> GVector3 {
    cross(&field.as_vector(), x)
}

/// Right-hand side of the Lorentz equation for the state `(y, z, ẏ, ż)`.
pub fn magnetic_rhs(field: &KillingField, state: &[f64; 4]) -> [f64; 4] {
    let [_, _, yd, zd] = *state;
    [yd, zd, field.v3 - field.v1 * zd, field.v1 * yd - field.v2]
}

/// Third-order rate of an N- or B-magnetic system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThirdOrderRate {
    /// `(ẏ, ż, ÿ, z̈, y⃛, z⃛)`.
    pub derivative: [f64; 6],
    /// Value of the algebraic equation that accompanies an isotropic field;
    /// a solution requires it to vanish. `None` when `v1 ≠ 0`.
    pub constraint: Option<f64>,
}

fn third_order(field: &KillingField, state: &[f64; 6], constraint: f64) -> ThirdOrderRate {
    let [_, _, yd, zd, ydd, zdd] = *state;
    if field.v1 != 0.0 {
        ThirdOrderRate { derivative: [yd, zd, ydd, zdd, -field.v1 * zdd, field.v1 * ydd], constraint: None }
    } else {
        ThirdOrderRate { derivative: [yd, zd, ydd, zdd, 0.0, 0.0], constraint: Some(constraint) }
    }
}

/// Right-hand side of `∇N = V × N` for the state `(y, z, ẏ, ż, ÿ, z̈)`.
///
/// The normalization `1/κ0` appears on both sides and cancels.
pub fn n_magnetic_rhs(field: &KillingField, state: &[f64; 6]) -> ThirdOrderRate {
    let (ydd, zdd) = (state[4], state[5]);
    third_order(field, state, field.v2 * zdd - field.v3 * ydd)
}

/// Right-hand side of `∇B = V × B` with `B = (0, −z̈, ÿ)/κ0`.
pub fn b_magnetic_rhs(field: &KillingField, state: &[f64; 6]) -> ThirdOrderRate {
    let (ydd, zdd) = (state[4], state[5]);
    third_order(field, state, field.v2 * ydd + field.v3 * zdd)
}

fn warn_tiny_v1(field: &KillingField) {
    if field.v1 != 0.0 && field.v1.abs() < TINY_V1 {
        warn!(
            "v1 = {:e} is non-zero but tiny; the helix radius scales like 1/v1^2",
            field.v1
        );
    }
}

/// Closed-form magnetic trajectory of `γ̈ = V × γ̇`.
pub fn solve_magnetic(field: &KillingField, ic: &MagneticIc) -> ClosedFormCurve {
    let &KillingField { v1, v2, v3 } = field;
    let initial = InitialData::Magnetic(*ic);
    if v1 == 0.0 {
        return ClosedFormCurve::new(
            CaseTag::MagneticIsotropic,
            *field,
            initial,
            0.0,
            Component::polynomial(ic.y0, ic.dy0, 0.5 * v3),
            Component::polynomial(ic.z0, ic.dz0, -0.5 * v2),
        );
    }
    warn_tiny_v1(field);
    let amp_a = (ic.dz0 - v3 / v1) / v1;
    let amp_b = (ic.dy0 - v2 / v1) / v1;
    ClosedFormCurve::new(
        CaseTag::MagneticNonIsotropic,
        *field,
        initial,
        v1,
        Component { c0: ic.y0, c1: v2 / v1, c2: 0.0, cos_amp: amp_a, sin_amp: amp_b },
        Component { c0: ic.z0, c1: v3 / v1, c2: 0.0, cos_amp: -amp_b, sin_amp: amp_a },
    )
}

pub fn solve_n_magnetic(field: &KillingField, ic: &NMagneticIc) -> Result<ClosedFormCurve> {
    solve_n_magnetic_with_tolerance(field, ic, DEFAULT_CONSTRAINT_TOL)
}

/// Closed-form N-magnetic trajectory with constant curvature `κ0 = sqrt(T0² + U0²)`.
///
/// For an isotropic field the data must satisfy `v2 U0 − v3 T0 = 0` up to
/// `tol · (1 + |v2 U0| + |v3 T0|)`.
pub fn solve_n_magnetic_with_tolerance(
    field: &KillingField,
    ic: &NMagneticIc,
    tol: f64,
) -> Result<ClosedFormCurve> {
    if ic.ddy0 == 0.0 && ic.ddz0 == 0.0 {
        return Err(Error::ZeroCurvature { s: 0.0 });
    }
    let &KillingField { v1, v2, v3 } = field;
    let initial = InitialData::NMagnetic(*ic);

    if v1 != 0.0 {
        warn_tiny_v1(field);
        let w2 = v1 * v1;
        return Ok(ClosedFormCurve::new(
            CaseTag::NMagV,
            *field,
            initial,
            v1,
            Component {
                c0: ic.y0,
                c1: ic.dy0 - ic.ddz0 / v1,
                c2: 0.0,
                cos_amp: -ic.ddy0 / w2,
                sin_amp: ic.ddz0 / w2,
            },
            Component {
                c0: ic.z0,
                c1: ic.dz0 + ic.ddy0 / v1,
                c2: 0.0,
                cos_amp: -ic.ddz0 / w2,
                sin_amp: -ic.ddy0 / w2,
            },
        ));
    }

    let (lhs, rhs) = (v2 * ic.ddz0, v3 * ic.ddy0);
    let constraint = lhs - rhs;
    if constraint.abs() > tol * (1.0 + lhs.abs() + rhs.abs()) {
        return Err(Error::IncompatibleIc { constraint });
    }
    let case = match (v2 != 0.0, v3 != 0.0) {
        (false, false) => CaseTag::NMagI,
        (false, true) => CaseTag::NMagII,
        (true, false) => CaseTag::NMagIII,
        (true, true) => CaseTag::NMagIV,
    };
    // With the constraint in force every isotropic case is the same pair of
    // quadratics; in cases ii and iii the constraint makes T0 resp. U0 vanish.
    Ok(ClosedFormCurve::new(
        case,
        *field,
        initial,
        0.0,
        Component::polynomial(ic.y0, ic.dy0, 0.5 * ic.ddy0),
        Component::polynomial(ic.z0, ic.dz0, 0.5 * ic.ddz0),
    ))
}

/// Radius and axis of a helix-case trajectory.
pub fn helix_decomposition(curve: &ClosedFormCurve) -> Result<HelixData> {
    let KillingField { v1, v2, v3 } = curve.field;
    match (curve.case, curve.initial) {
        (CaseTag::MagneticNonIsotropic, InitialData::Magnetic(ic)) => {
            let w2 = v1 * v1;
            Ok(HelixData {
                r: (ic.dz0 / v1 - v3 / w2).hypot(ic.dy0 / v1 - v2 / w2),
                line: AxisLine {
                    a: v2 / v1,
                    b: ic.y0 - ic.dz0 / v1 + v3 / w2,
                    c: v3 / v1,
                    d: ic.z0 + ic.dy0 / v1 - v2 / w2,
                },
            })
        }
        (CaseTag::NMagV, InitialData::NMagnetic(ic)) => {
            let w2 = v1 * v1;
            Ok(HelixData {
                r: (ic.ddy0 / w2).hypot(ic.ddz0 / w2),
                line: AxisLine {
                    a: ic.dy0 - ic.ddz0 / v1,
                    b: ic.y0 + ic.ddy0 / w2,
                    c: ic.dz0 + ic.ddy0 / v1,
                    d: ic.z0 + ic.ddz0 / w2,
                },
            })
        }
        (case, _) => Err(Error::WrongCase(case)),
    }
}

/// Galilean norm of `γ̈(s) − V × γ̇(s)`.
pub fn lorentz_residual(curve: &ClosedFormCurve, s: f64) -> f64 {
    let j = curve.jet(s);
    norm(&(j.acceleration - lorentz_force(&curve.field, &j.velocity)))
}

/// Galilean norm of `(0, y⃛, z⃛)/κ0 − V × N(s)` with `N = (0, ÿ, z̈)/κ0`.
///
/// Returns `None` for curves that are not N-magnetic.
pub fn n_magnetic_residual(curve: &ClosedFormCurve, s: f64) -> Option<f64> {
    let kappa0 = curve.kappa0()?;
    let j = curve.jet(s);
    let normal = (1.0 / kappa0) * j.acceleration;
    let lhs = (1.0 / kappa0) * j.jerk;
    Some(norm(&(lhs - lorentz_force(&curve.field, &normal))))
}
