//! Vector algebra of the Galilean 3-space.
//!
//! The first coordinate is the absolute (time-like) direction. A vector with
//! `x1 == 0` is isotropic and lives in the Euclidean `yz`-plane, where the
//! residual metric is the ordinary Euclidean one. Every branch selection below
//! compares the stored `x1` against zero exactly.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IsotropyClass {
    NonIsotropic,
    Isotropic,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct GVector3 {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl GVector3 {
    pub const ZERO: GVector3 = GVector3::new(0.0, 0.0, 0.0);

    pub const fn new(x1: f64, x2: f64, x3: f64) -> Self {
        Self { x1, x2, x3 }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x1, self.x2, self.x3]
    }

    pub fn classify(&self) -> IsotropyClass {
        classify(self)
    }

    pub fn is_isotropic(&self) -> bool {
        self.x1 == 0.0
    }

    pub fn dot(&self, other: &GVector3) -> f64 {
        scalar_product(self, other)
    }

    pub fn norm(&self) -> f64 {
        norm(self)
    }

    pub fn cross(&self, other: &GVector3) -> GVector3 {
        cross(self, other)
    }
}

impl From<[f64; 3]> for GVector3 {
    fn from(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }
}

impl Add for GVector3 {
    type Output = GVector3;
    fn add(self, rhs: GVector3) -> GVector3 {
        GVector3::new(self.x1 + rhs.x1, self.x2 + rhs.x2, self.x3 + rhs.x3)
    }
}

impl Sub for GVector3 {
    type Output = GVector3;
    fn sub(self, rhs: GVector3) -> GVector3 {
        GVector3::new(self.x1 - rhs.x1, self.x2 - rhs.x2, self.x3 - rhs.x3)
    }
}

impl Neg for GVector3 {
    type Output = GVector3;
    fn neg(self) -> GVector3 {
        GVector3::new(-self.x1, -self.x2, -self.x3)
    }
}

impl Mul<GVector3> for f64 {
    type Output = GVector3;
    fn mul(self, rhs: GVector3) -> GVector3 {
        GVector3::new(self * rhs.x1, self * rhs.x2, self * rhs.x3)
    }
}

/// Non-isotropic iff `x1 != 0`. The zero vector is isotropic.
pub fn classify(x: &GVector3) -> IsotropyClass {
    if x.x1 != 0.0 {
        IsotropyClass::NonIsotropic
    } else {
        IsotropyClass::Isotropic
    }
}

/// Galilean scalar product: `x1*y1` unless both arguments are isotropic,
/// in which case the Euclidean product of the remaining components.
pub fn scalar_product(x: &GVector3, y: &GVector3) -> f64 {
    if x.x1 != 0.0 || y.x1 != 0.0 {
        x.x1 * y.x1
    } else {
        x.x2 * y.x2 + x.x3 * y.x3
    }
}

/// `|x1|` for non-isotropic vectors, the Euclidean length of `(x2, x3)` otherwise.
pub fn norm(x: &GVector3) -> f64 {
    if x.x1 != 0.0 {
        x.x1.abs()
    } else {
        x.x2.hypot(x.x3)
    }
}

/// Galilean cross product.
///
/// If either factor is non-isotropic the result is the isotropic vector
/// `(0, -(x1*y3 - x3*y1), x1*y2 - x2*y1)`; if both are isotropic it is
/// `(x2*y3 - x3*y2, 0, 0)`.
pub fn cross(x: &GVector3, y: &GVector3) -> GVector3 {
    if x.x1 != 0.0 || y.x1 != 0.0 {
        GVector3::new(
            0.0,
            -(x.x1 * y.x3 - x.x3 * y.x1),
            x.x1 * y.x2 - x.x2 * y.x1,
        )
    } else {
        GVector3::new(x.x2 * y.x3 - x.x3 * y.x2, 0.0, 0.0)
    }
}
