//! The equilateral-triangle case.
//!
//! The three distances from any point to the vertices of an equilateral
//! triangle form a triangle themselves (the Pompeiu triangle), degenerate
//! exactly when the point is on the circumcircle. Its area `Δ` gives the two
//! solutions directly: `R² = (d₁² + d₂² + d₃² ± 4√3·Δ) / 6`.

use std::f64::consts::FRAC_PI_3;

use serde::Serialize;

use crate::dual::{DualSolution, DEGENERACY_EPS};
use crate::error::{Error, Result};
use crate::geometry::{Point2, RegularPolygon};

const SQRT_3: f64 = 1.732_050_807_568_877_2;

/// Triangle whose sides are the three point-to-vertex distances.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PompeiuTriangle {
    pub sides: [f64; 3],
    pub area: f64,
    /// The largest side equals the sum of the other two.
    pub degenerate: bool,
}

impl PompeiuTriangle {
    pub fn sum_of_squares(&self) -> f64 {
        self.sides.iter().map(|d| d * d).sum()
    }
}

/// Sides in descending order.
fn sorted_desc(sides: [f64; 3]) -> [f64; 3] {
    let mut s = sides;
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Heron's formula in Kahan's arrangement; needs `a ≥ b ≥ c` and a valid
/// triangle.
fn heron_sorted(a: f64, b: f64, c: f64) -> f64 {
    let p = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
    0.25 * p.max(0.0).sqrt()
}

pub fn pompeiu_from_distances(d1: f64, d2: f64, d3: f64, tol: f64) -> Result<PompeiuTriangle> {
    let sides = [d1, d2, d3];
    if sides.iter().any(|d| !d.is_finite() || *d < 0.0) {
        return Err(Error::InvalidInput(format!(
            "distances must be finite and >= 0, got {sides:?}"
        )));
    }
    let [a, b, c] = sorted_desc(sides);
    let excess = a - (b + c);
    if excess > tol * a {
        return Err(Error::TriangleInequality {
            largest: a,
            sum_of_others: b + c,
        });
    }
    let degenerate = excess >= -tol * a;
    let area = if degenerate { 0.0 } else { heron_sorted(a, b, c) };
    Ok(PompeiuTriangle { sides, area, degenerate })
}

/// `d₁² + d₂² + d₃² - 4√3·Δ`, never negative (Weitzenböck).
///
/// Evaluated as `2·Σ(dᵢ² - dⱼ²)² / (Σdᵢ² + 4√3·Δ)`, which is the same
/// quantity without the cancellation near equal sides.
pub fn weitzenbock_margin(t: &PompeiuTriangle) -> f64 {
    let [a, b, c] = t.sides.map(|d| d * d);
    let numerator = 2.0 * ((a - b).powi(2) + (b - c).powi(2) + (c - a).powi(2));
    let denominator = a + b + c + 4.0 * SQRT_3 * t.area;
    if denominator > 0.0 {
        numerator / denominator
    } else {
        0.0
    }
}

/// Closed-form solution together with the two side lengths.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EquilateralSolution {
    pub dual: DualSolution,
    pub larger_side: f64,
    pub smaller_side: f64,
}

pub fn solve_equilateral(t: &PompeiuTriangle) -> EquilateralSolution {
    let sum_sq = t.sum_of_squares();
    let boost = 4.0 * SQRT_3 * t.area;
    let margin = weitzenbock_margin(t);
    let r1_sq = (sum_sq + boost) / 6.0;
    let l1_sq = margin / 6.0;
    let s2 = sum_sq / 3.0;
    // 3·S(2)² - 2·S(4) = (16/3)·Δ²
    let discriminant = 16.0 * t.area * t.area / 3.0;
    let s4 = 0.5 * (3.0 * s2 * s2 - discriminant);
    let dual = DualSolution::from_moments(s2, s4, r1_sq * l1_sq, discriminant);
    EquilateralSolution {
        dual,
        larger_side: dual.larger.r * SQRT_3,
        smaller_side: dual.smaller.r * SQRT_3,
    }
}

/// Which side of `MC` the Pompeiu vertex `A₁` is placed on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    #[default]
    CounterClockwise,
    Clockwise,
}

/// Coordinates produced by the rotation construction from a Pompeiu triangle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TriangleConstruction {
    pub point: Point2,
    /// Second vertex of the Pompeiu triangle `M C A₁`.
    pub auxiliary: Point2,
    /// Apexes of the two equilateral triangles erected on `MC`.
    pub apexes: [Point2; 2],
    /// `[A₁, A₂, A₃]`.
    pub larger: [Point2; 3],
    /// `[A₁, B₂, B₃]`.
    pub smaller: [Point2; 3],
}

fn signed_angle(from: Point2, to: Point2) -> f64 {
    from.cross(to).atan2(from.dot(to))
}

/// Third vertex of the equilateral triangle on `apex`–`shared`, found as the
/// rotation about `apex` that carries `source` onto `target`.
fn third_vertex(apex: Point2, shared: Point2, source: Point2, target: Point2) -> Point2 {
    let angle = signed_angle(source - apex, target - apex);
    shared.rotate_about(apex, angle)
}

/// Builds both equilateral triangles from the distances `(d1, d2, d3)` with
/// `M` at the origin and `C` on the positive x-axis. The larger triangle's
/// vertices are at distances `d1, d2, d3` from `M` in order.
pub fn construct_both_triangles(d1: f64, d2: f64, d3: f64, tol: f64) -> Result<TriangleConstruction> {
    construct_both_triangles_oriented(d1, d2, d3, Orientation::CounterClockwise, tol)
}

pub fn construct_both_triangles_oriented(
    d1: f64,
    d2: f64,
    d3: f64,
    orientation: Orientation,
    tol: f64,
) -> Result<TriangleConstruction> {
    let t = pompeiu_from_distances(d1, d2, d3, tol)?;
    if t.degenerate {
        return Err(Error::Degenerate(
            "Pompeiu triangle is degenerate (point on the circumcircle)".into(),
        ));
    }
    let sign = match orientation {
        Orientation::CounterClockwise => 1.0,
        Orientation::Clockwise => -1.0,
    };
    let m = Point2::ORIGIN;
    let c = Point2::new(d2, 0.0);
    // height over MC from the area keeps A₁ accurate for flat triangles
    let x = (d1 * d1 + d2 * d2 - d3 * d3) / (2.0 * d2);
    let a1 = Point2::new(x, sign * 2.0 * t.area / d2);

    let apexes = [c.rotate_about(m, sign * FRAC_PI_3), c.rotate_about(m, -sign * FRAC_PI_3)];
    let triangles = apexes.map(|apex| [a1, apex, third_vertex(apex, a1, c, m)]);
    let side = |tri: &[Point2; 3]| tri[0].distance(tri[1]);
    let (larger, smaller) = if side(&triangles[0]) >= side(&triangles[1]) {
        (triangles[0], triangles[1])
    } else {
        (triangles[1], triangles[0])
    };
    Ok(TriangleConstruction {
        point: m,
        auxiliary: c,
        apexes,
        larger,
        smaller,
    })
}

/// The regular-polygon description of three triangle vertices, with vertex
/// 0 at `tri[0]`.
pub fn triangle_to_polygon(tri: &[Point2; 3]) -> Result<RegularPolygon> {
    let center = (tri[0] + tri[1] + tri[2]) * (1.0 / 3.0);
    let r = center.distance(tri[0]);
    let phase = if r > 0.0 { center.azimuth_to(tri[0]) } else { 0.0 };
    RegularPolygon::new(3, center, r, phase)
}

/// Given one equilateral triangle `A₁A₂A₃` and a point `M`, builds the other
/// triangle `A₁B₂B₃` with the same distances from `M`.
///
/// `C` is `M` rotated 60° about `A₂` (so `MA₂C` is equilateral and
/// `|CA₁| = |MA₃|`); `B₂` is the other apex over `MC`; `B₃` follows by the
/// rotation about `B₂` taking `C` to `M`.
pub fn construct_second_from_first(p: &RegularPolygon, m: Point2) -> Result<RegularPolygon> {
    if p.n != 3 {
        return Err(Error::InvalidInput(format!("expected a triangle, got n = {}", p.n)));
    }
    let r = p.circumradius;
    let l = m.distance(p.center);
    let s2 = r * r + l * l;
    if r <= 0.0 {
        return Err(Error::Degenerate("triangle has zero circumradius".into()));
    }
    if (r * r - l * l).powi(2) <= DEGENERACY_EPS * s2 * s2 {
        return Err(Error::Degenerate("point lies on the circumcircle".into()));
    }
    if l * l <= DEGENERACY_EPS * s2 {
        return Err(Error::Degenerate("point is the triangle center".into()));
    }
    let [a1, a2, a3] = [p.vertex(0), p.vertex(1), p.vertex(2)];
    let c = m.rotate_about(a2, signed_angle(a3 - a2, a1 - a2));
    let b2 = a2.reflect_across(m, c);
    let b3 = third_vertex(b2, a1, c, m);
    triangle_to_polygon(&[a1, b2, b3])
}
