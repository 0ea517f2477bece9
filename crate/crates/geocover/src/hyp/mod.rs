//! Hyperbolic-plane kernel: points in the upper half-plane and Poincaré disk
//! models, distances, and the trigonometric identities used by the group and
//! cover machinery.
//!
//! Conventions: all angles in radians, all distances in hyperbolic units. The
//! upper half-plane is the public model; disk points appear in polygon
//! construction.

mod isometry;

pub(crate) use isometry::int_mul;
pub use isometry::{distance_via_norms, Isometry};

use crate::error::{GeoError, Result};
use std::f64::consts::PI;

/// Stable `acosh(1 + t)` for `t >= 0`.
///
/// Distances cluster near zero in the statistics we compute, and the naive
/// `acosh` loses half its digits near argument 1, so every distance in the
/// crate goes through this.
pub fn acosh_1p(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else {
        (t + (t * (t + 2.0)).sqrt()).ln_1p()
    }
}

/// A point x + iy of the upper half-plane model, y > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UhpPoint {
    x: f64,
    y: f64,
}

impl UhpPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if !(y > 0.0) || !x.is_finite() || !y.is_finite() {
            return Err(GeoError::InvalidUhpPoint { x, y });
        }
        Ok(Self { x, y })
    }

    /// The base point (0, 1), center of the disk model.
    pub fn base() -> Self {
        Self { x: 0.0, y: 1.0 }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    /// Hyperbolic distance, computed as acosh(1 + |p−q|²/(2 y_p y_q)).
    pub fn distance(&self, other: &UhpPoint) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        acosh_1p((dx * dx + dy * dy) / (2.0 * self.y * other.y))
    }

    /// Cayley transform onto the Poincaré disk; (0, 1) maps to the origin and
    /// (0, 2) to (0, 1/3).
    pub fn to_disk(&self) -> DiskPoint {
        let (x, y) = (self.x, self.y);
        let denom = x * x + (y + 1.0) * (y + 1.0);
        DiskPoint {
            u: 2.0 * x / denom,
            v: (x * x + y * y - 1.0) / denom,
        }
    }
}

/// A point of the Poincaré disk model, u² + v² < 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskPoint {
    u: f64,
    v: f64,
}

impl DiskPoint {
    pub fn new(u: f64, v: f64) -> Result<Self> {
        if u * u + v * v >= 1.0 || !u.is_finite() || !v.is_finite() {
            return Err(GeoError::InvalidDiskPoint { u, v });
        }
        Ok(Self { u, v })
    }

    pub fn origin() -> Self {
        Self { u: 0.0, v: 0.0 }
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    pub fn v(&self) -> f64 {
        self.v
    }

    pub fn norm_sq(&self) -> f64 {
        self.u * self.u + self.v * self.v
    }

    /// Inverse Cayley transform back to the upper half-plane.
    pub fn to_uhp(&self) -> UhpPoint {
        let (u, v) = (self.u, self.v);
        let denom = u * u + (v - 1.0) * (v - 1.0);
        UhpPoint {
            x: 2.0 * u / denom,
            y: (1.0 - u * u - v * v) / denom,
        }
    }

    pub fn distance(&self, other: &DiskPoint) -> f64 {
        let du = self.u - other.u;
        let dv = self.v - other.v;
        let t = 2.0 * (du * du + dv * dv) / ((1.0 - self.norm_sq()) * (1.0 - other.norm_sq()));
        acosh_1p(t)
    }
}

/// Leg of the right triangle with acute angle `beta` at both ends of the
/// hypotenuse-side configuration used for regular polygons: acosh(cot β).
pub fn right_triangle_leg(beta: f64) -> Result<f64> {
    check_beta(beta)?;
    Ok(acosh_1p(1.0 / beta.tan() - 1.0))
}

/// Hypotenuse of the same triangle: acosh(cot² β). Satisfies hyp = 2·leg.
pub fn right_triangle_hyp(beta: f64) -> Result<f64> {
    check_beta(beta)?;
    let cot = 1.0 / beta.tan();
    Ok(acosh_1p(cot * cot - 1.0))
}

fn check_beta(beta: f64) -> Result<()> {
    if beta <= 0.0 || beta >= PI / 4.0 {
        Err(GeoError::Domain(format!("angle {beta} outside (0, pi/4)")))
    } else {
        Ok(())
    }
}

/// Area of a hyperbolic disk of radius r: 2π(cosh r − 1).
pub fn disk_area(r: f64) -> Result<f64> {
    if r < 0.0 {
        return Err(GeoError::Domain(format!("negative radius {r}")));
    }
    Ok(2.0 * PI * (r.cosh() - 1.0))
}

/// Angle subtended at the center by a chord of length `dist` on a circle of
/// radius `r`: α = 2·arcsin(sinh(dist/2)/sinh(r)).
pub fn chord_half_angle(dist: f64, r: f64) -> Result<f64> {
    if dist <= 0.0 || r <= 0.0 {
        return Err(GeoError::Domain(format!(
            "need positive chord and radius, got dist={dist}, r={r}"
        )));
    }
    let ratio = (dist / 2.0).sinh() / r.sinh();
    if ratio > 1.0 + 1e-12 {
        return Err(GeoError::Domain(format!(
            "chord {dist} not realizable on a circle of radius {r}"
        )));
    }
    Ok(2.0 * ratio.min(1.0).asin())
}

/// Point at fraction `t` of the way from `a` to `b` along their geodesic.
pub fn geodesic_point(a: &UhpPoint, b: &UhpPoint, t: f64) -> UhpPoint {
    let d = a.distance(b);
    if d < 1e-15 {
        return *a;
    }
    let top = UhpPoint::new(0.0, d.exp()).expect("exp(d) > 0");
    let m = Isometry::mapping_segment(a, b, &UhpPoint::base(), &top)
        .expect("congruent by construction");
    m.inverse()
        .apply(&UhpPoint::new(0.0, (t * d).exp()).expect("exp > 0"))
}
