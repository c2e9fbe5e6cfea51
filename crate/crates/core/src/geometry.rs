//! Points, regular polygons and point-to-vertex distance lists.
//!
//! Angles are counterclockwise from the positive x-axis. Vertices are
//! indexed from 0 here; user-facing output labels them A1..An.

use std::f64::consts::TAU;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::error::{Error, Result};

/// Absolute floor used by tolerance comparisons so that zeros compare equal.
pub const ABS_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    /// Point at `radius` from `self` in direction `angle`.
    pub fn polar_offset(self, radius: f64, angle: f64) -> Point2 {
        let (s, c) = angle.sin_cos();
        Point2::new(self.x + radius * c, self.y + radius * s)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Point2) -> f64 {
        (self - other).norm()
    }

    /// Direction of `other` as seen from `self`, in (-π, π].
    pub fn azimuth_to(self, other: Point2) -> f64 {
        let d = other - self;
        d.y.atan2(d.x)
    }

    pub fn dot(self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 2D cross product.
    pub fn cross(self, other: Point2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    /// Rotate `self` about `pivot` by `angle` (counterclockwise).
    pub fn rotate_about(self, pivot: Point2, angle: f64) -> Point2 {
        let (s, c) = angle.sin_cos();
        let d = self - pivot;
        Point2::new(pivot.x + c * d.x - s * d.y, pivot.y + s * d.x + c * d.y)
    }

    /// Mirror image of `self` across the line through `a` and `b`.
    pub fn reflect_across(self, a: Point2, b: Point2) -> Point2 {
        let u = b - a;
        let len2 = u.dot(u);
        if len2 == 0.0 {
            // a point reflection is the only sensible fallback
            return a * 2.0 - self;
        }
        let d = self - a;
        let foot = a + u * (d.dot(u) / len2);
        foot * 2.0 - self
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, rhs: Point2) -> Point2 {
        Point2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, rhs: Point2) -> Point2 {
        Point2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, rhs: f64) -> Point2 {
        Point2::new(self.x * rhs, self.y * rhs)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Normalize an angle to `[0, 2π)`.
pub fn normalize_angle(angle: f64) -> f64 {
    let a = angle.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if a >= TAU {
        0.0
    } else {
        a
    }
}

/// A regular n-gon given by its center, circumradius and the direction of
/// vertex 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RegularPolygon {
    pub n: usize,
    pub center: Point2,
    #[serde(rename = "r")]
    pub circumradius: f64,
    pub phase: f64,
}

impl RegularPolygon {
    /// Validates `n ≥ 3`, a finite center and a finite nonnegative radius;
    /// the phase is normalized to `[0, 2π)`.
    pub fn new(n: usize, center: Point2, circumradius: f64, phase: f64) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidInput(format!("polygon needs n >= 3, got {n}")));
        }
        if !center.is_finite() {
            return Err(Error::InvalidInput("polygon center must be finite".into()));
        }
        if !circumradius.is_finite() || circumradius < 0.0 {
            return Err(Error::InvalidInput(format!(
                "circumradius must be finite and >= 0, got {circumradius}"
            )));
        }
        if !phase.is_finite() {
            return Err(Error::InvalidInput("phase must be finite".into()));
        }
        Ok(RegularPolygon {
            n,
            center,
            circumradius,
            phase: normalize_angle(phase),
        })
    }

    /// Direction of vertex `i` as seen from the center.
    pub fn vertex_angle(&self, i: usize) -> f64 {
        self.phase + TAU * i as f64 / self.n as f64
    }

    pub fn vertex(&self, i: usize) -> Point2 {
        self.center.polar_offset(self.circumradius, self.vertex_angle(i))
    }

    /// All vertices, counterclockwise from vertex 0.
    pub fn vertices(&self) -> Vec<Point2> {
        (0..self.n).map(|i| self.vertex(i)).collect()
    }

    pub fn side_length(&self) -> f64 {
        2.0 * self.circumradius * (std::f64::consts::PI / self.n as f64).sin()
    }

    /// Distances from `point` to every vertex, in vertex order.
    pub fn distances_from(&self, point: Point2) -> Distances {
        Distances {
            values: self.vertices().into_iter().map(|v| v.distance(point)).collect(),
        }
    }
}

/// Vertex positions of `p` (free-function form).
pub fn vertices(p: &RegularPolygon) -> Vec<Point2> {
    p.vertices()
}

/// Distances from `point` to the vertices of `p`, computed by direct
/// coordinate subtraction.
pub fn distances_from(point: Point2, p: &RegularPolygon) -> Distances {
    p.distances_from(point)
}

/// An ordered list of point-to-vertex distances `d1..dn`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Distances {
    values: Vec<f64>,
}

impl Distances {
    /// Accepts any nonempty list of finite nonnegative values.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidInput("distance list is empty".into()));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(Error::InvalidInput(format!(
                "distances must be finite and >= 0, got {bad}"
            )));
        }
        Ok(Distances { values })
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// The multiset view: values in ascending order.
    pub fn sorted(&self) -> Vec<f64> {
        let mut v = self.values.clone();
        v.sort_by(f64::total_cmp);
        v
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }
}

fn within(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= ABS_FLOOR.max(tol * a.abs().max(b.abs()))
}

/// True iff the sorted lists agree elementwise within `tol` (relative, with
/// an absolute floor of [`ABS_FLOOR`]).
pub fn multiset_equal(a: &Distances, b: &Distances, tol: f64) -> Result<bool> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch { left: a.n(), right: b.n() });
    }
    Ok(a.sorted()
        .iter()
        .zip(b.sorted().iter())
        .all(|(x, y)| within(*x, *y, tol)))
}

/// Largest absolute difference between the sorted lists.
pub fn multiset_mismatch(a: &Distances, b: &Distances) -> Result<f64> {
    if a.n() != b.n() {
        return Err(Error::DimensionMismatch { left: a.n(), right: b.n() });
    }
    Ok(a.sorted()
        .iter()
        .zip(b.sorted().iter())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max))
}

pub(crate) fn approx_eq(a: f64, b: f64, tol: f64) -> bool {
    within(a, b, tol)
}
