//! Points seeing two regular polygons with one shared vertex under the same
//! distance multiset.
//!
//! For polygons with centers `O₁`, `O₂` and circumradii `R₁ ≠ R₂`, the
//! candidates are the intersections of the circle of radius `R₁` about `O₂`
//! with the circle of radius `R₂` about `O₁`. A shared vertex makes the
//! anchor distances agree, so both intersections qualify; when the shared
//! vertex lies on the line `O₁O₂` the circles touch and there is only one.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{Distances, Point2, RegularPolygon};
use crate::reconstruction::{verify_permutation, PermutationMatch};

/// Vertex coincidence tolerance, relative to the larger circumradius.
pub const SHARED_VERTEX_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", content = "points", rename_all = "snake_case")]
pub enum CircleIntersection {
    Empty,
    Tangent(Point2),
    Pair(Point2, Point2),
}

impl CircleIntersection {
    pub fn points(&self) -> Vec<Point2> {
        match *self {
            CircleIntersection::Empty => vec![],
            CircleIntersection::Tangent(p) => vec![p],
            CircleIntersection::Pair(p, q) => vec![p, q],
        }
    }
}

/// Foot of the radical line on `c1→c2` and the half-chord vector.
fn radical_chord(c1: Point2, r1: f64, c2: Point2, dist: f64, r2: f64) -> (Point2, Point2, f64) {
    let u = (c2 - c1) * (1.0 / dist);
    let a = (dist * dist + r1 * r1 - r2 * r2) / (2.0 * dist);
    let h_sq = (r1 - a) * (r1 + a);
    let base = c1 + u * a;
    let perp = Point2::new(-u.y, u.x);
    (base, perp, h_sq)
}

/// Intersections of two circles. Tangency is declared when the center
/// distance is within `tol·(r1 + r2)` of `r1 + r2` or `|r1 - r2|`; two
/// points are returned in increasing azimuth about `c1` (in `(-π, π]`).
pub fn circle_circle_intersect(c1: Point2, r1: f64, c2: Point2, r2: f64, tol: f64) -> Result<CircleIntersection> {
    if !(r1 >= 0.0 && r2 >= 0.0) {
        return Err(Error::InvalidInput(format!("radii must be >= 0, got ({r1}, {r2})")));
    }
    let dist = c1.distance(c2);
    let scale = r1 + r2;
    let band = tol * scale;
    if dist <= band {
        if (r1 - r2).abs() <= band {
            return Err(Error::Concentric);
        }
        return Ok(CircleIntersection::Empty);
    }
    let outer = (dist - scale).abs() <= band;
    let inner = (dist - (r1 - r2).abs()).abs() <= band;
    let (base, perp, h_sq) = radical_chord(c1, r1, c2, dist, r2);
    if outer || inner {
        return Ok(CircleIntersection::Tangent(base));
    }
    if dist > scale || dist < (r1 - r2).abs() || h_sq < 0.0 {
        return Ok(CircleIntersection::Empty);
    }
    let h = h_sq.sqrt();
    let (p, q) = (base + perp * h, base - perp * h);
    if c1.azimuth_to(p) <= c1.azimuth_to(q) {
        Ok(CircleIntersection::Pair(p, q))
    } else {
        Ok(CircleIntersection::Pair(q, p))
    }
}

/// Per-point evidence that the two distance lists coincide as multisets.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointMatch {
    pub point: Point2,
    pub distances_a: Distances,
    pub distances_b: Distances,
    /// `distances_b[permutation[i]] ≈ distances_a[i]`.
    pub permutation: PermutationMatch,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TwoPointsSolution {
    /// On the left of the oriented line `O₁ → O₂` (or the single point).
    pub m1: Point2,
    pub m2: Option<Point2>,
    pub matches: Vec<PointMatch>,
    pub collinear_degenerate: bool,
    /// Indices of the shared vertex in the first and second polygon.
    pub shared_vertex: (usize, usize),
    pub center_distance: f64,
    /// `|R₁ - R₂| ≤ |O₁O₂| ≤ R₁ + R₂` within tolerance.
    pub existence_condition: bool,
}

impl TwoPointsSolution {
    pub fn points(&self) -> Vec<Point2> {
        std::iter::once(self.m1).chain(self.m2).collect()
    }
}

/// Closest vertex pair between the polygons: `(i, j, gap)`.
fn closest_vertices(pa: &RegularPolygon, pb: &RegularPolygon) -> (usize, usize, f64) {
    let vb = pb.vertices();
    let mut best = (0, 0, f64::INFINITY);
    for (i, a) in pa.vertices().into_iter().enumerate() {
        for (j, b) in vb.iter().enumerate() {
            let gap = a.distance(*b);
            if gap < best.2 {
                best = (i, j, gap);
            }
        }
    }
    best
}

/// Finds the point(s) with equal distance multisets to the vertices of two
/// non-congruent regular polygons sharing a vertex.
pub fn two_points(pa: &RegularPolygon, pb: &RegularPolygon, tol: f64) -> Result<TwoPointsSolution> {
    if pa.n != pb.n {
        return Err(Error::InvalidInput(format!(
            "polygons must have the same vertex count ({} vs {})",
            pa.n, pb.n
        )));
    }
    let (ra, rb) = (pa.circumradius, pb.circumradius);
    let rmax = ra.max(rb);
    if (ra - rb).abs() <= tol * rmax {
        return Err(Error::Congruent { r1: ra, r2: rb });
    }
    let (ia, ib, gap) = closest_vertices(pa, pb);
    if gap > SHARED_VERTEX_TOL * rmax {
        return Err(Error::SharedVertex { gap });
    }
    let shared = (pa.vertex(ia) + pb.vertex(ib)) * 0.5;
    let (oa, ob) = (pa.center, pb.center);
    let center_distance = oa.distance(ob);
    let slack = tol * (ra + rb);
    let existence_condition =
        center_distance >= (ra - rb).abs() - slack && center_distance <= ra + rb + slack;
    if center_distance <= slack {
        // concentric with different radii cannot share a vertex
        return Err(Error::SharedVertex { gap });
    }

    // circle(O₂, R₁) ∩ circle(O₁, R₂)
    let (base, perp, h_sq) = radical_chord(ob, ra, oa, center_distance, rb);
    let h = h_sq.max(0.0).sqrt();
    let axis = ob - oa;
    let sine = axis.cross(shared - oa) / (center_distance * ra);
    let collinear_degenerate = sine.abs() <= tol || h <= tol * (ra + rb);

    let (m1, m2) = if collinear_degenerate {
        (base, None)
    } else {
        let (p, q) = (base + perp * h, base - perp * h);
        if axis.cross(p - oa) >= 0.0 {
            (p, Some(q))
        } else {
            (q, Some(p))
        }
    };

    let matches = std::iter::once(m1)
        .chain(m2)
        .map(|point| {
            let distances_a = pa.distances_from(point);
            let distances_b = pb.distances_from(point);
            let permutation = verify_permutation(&distances_a, &distances_b, tol.max(1e-9))?;
            Ok(PointMatch {
                point,
                distances_a,
                distances_b,
                permutation,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(TwoPointsSolution {
        m1,
        m2,
        matches,
        collinear_degenerate,
        shared_vertex: (ia, ib),
        center_distance,
        existence_condition,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::multiset_equal;
    use std::f64::consts::{FRAC_PI_4, PI, SQRT_2};

    #[test]
    fn external_tangency() {
        let r = circle_circle_intersect(Point2::ORIGIN, 1.0, Point2::new(2.0, 0.0), 1.0, 1e-9).unwrap();
        assert_eq!(r, CircleIntersection::Tangent(Point2::new(1.0, 0.0)));
    }

    #[test]
    fn internal_tangency() {
        let r = circle_circle_intersect(Point2::ORIGIN, 1.0, Point2::new(-1.0, 0.0), 2.0, 1e-9).unwrap();
        match r {
            CircleIntersection::Tangent(p) => assert!(p.distance(Point2::new(1.0, 0.0)) < 1e-15),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn symmetric_lens() {
        let r = circle_circle_intersect(Point2::ORIGIN, 1.0, Point2::new(1.0, 0.0), 1.0, 1e-9).unwrap();
        let h = 3f64.sqrt() / 2.0;
        match r {
            CircleIntersection::Pair(p, q) => {
                assert!(p.distance(Point2::new(0.5, -h)) < 1e-15);
                assert!(q.distance(Point2::new(0.5, h)) < 1e-15);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn separated_and_nested() {
        let far = circle_circle_intersect(Point2::ORIGIN, 1.0, Point2::new(3.0, 0.0), 1.0, 1e-9).unwrap();
        assert_eq!(far, CircleIntersection::Empty);
        let nested = circle_circle_intersect(Point2::ORIGIN, 3.0, Point2::new(0.5, 0.0), 1.0, 1e-9).unwrap();
        assert_eq!(nested, CircleIntersection::Empty);
        let conc = circle_circle_intersect(Point2::ORIGIN, 3.0, Point2::ORIGIN, 1.0, 1e-9).unwrap();
        assert_eq!(conc, CircleIntersection::Empty);
    }

    #[test]
    fn concentric_equal_is_error() {
        assert_eq!(
            circle_circle_intersect(Point2::new(1.0, 1.0), 2.0, Point2::new(1.0, 1.0), 2.0, 1e-9),
            Err(Error::Concentric)
        );
    }

    /// Square `A` of circumradius √2 about the origin and square `B` of
    /// circumradius 1 sharing the vertex `A₁ = B₁ = (1, 1)`.
    fn squares() -> (RegularPolygon, RegularPolygon) {
        let a = RegularPolygon::new(4, Point2::ORIGIN, SQRT_2, FRAC_PI_4).unwrap();
        let b = RegularPolygon::new(4, Point2::new(1.0, 2.0), 1.0, 1.5 * PI).unwrap();
        (a, b)
    }

    #[test]
    fn squares_with_shared_vertex() {
        let (a, b) = squares();
        assert!(b.vertex(0).distance(Point2::new(1.0, 1.0)) < 1e-15);
        let sol = two_points(&a, &b, 1e-9).unwrap();
        assert!(!sol.collinear_degenerate);
        assert_eq!(sol.shared_vertex, (0, 0));
        assert!(sol.existence_condition);
        let m2 = sol.m2.unwrap();
        for m in [sol.m1, m2] {
            assert!((m.distance(b.center) - SQRT_2).abs() < 1e-14);
            assert!((m.distance(a.center) - 1.0).abs() < 1e-14);
            assert!(multiset_equal(&a.distances_from(m), &b.distances_from(m), 1e-12).unwrap());
        }
        assert!(sol.matches.iter().all(|m| m.permutation.is_found()));

        // one point matches index by index, the other in reverse order
        let aligned = |m: Point2| {
            let (da, db) = (a.distances_from(m), b.distances_from(m));
            (0..4).all(|i| (da.values()[i] - db.values()[i]).abs() < 1e-12)
        };
        let reversed = |m: Point2| {
            let (da, db) = (a.distances_from(m), b.distances_from(m));
            (0..4).all(|i| (da.values()[i] - db.values()[(4 - i) % 4]).abs() < 1e-12)
        };
        assert!(aligned(sol.m1) != aligned(m2));
        assert!(reversed(sol.m1) || reversed(m2));
        let (al, rv) = if aligned(sol.m1) { (sol.m1, m2) } else { (m2, sol.m1) };
        assert!(aligned(al) && reversed(rv));
    }

    #[test]
    fn collinear_shared_vertex_gives_one_point() {
        let a = RegularPolygon::new(5, Point2::ORIGIN, 2.0, 0.0).unwrap();
        // B's center on the ray from O₁ through the shared vertex (2, 0)
        let b = RegularPolygon::new(5, Point2::new(3.0, 0.0), 1.0, PI).unwrap();
        let sol = two_points(&a, &b, 1e-9).unwrap();
        assert!(sol.collinear_degenerate);
        assert!(sol.m2.is_none());
        assert_eq!(sol.matches.len(), 1);
        assert!(multiset_equal(&a.distances_from(sol.m1), &b.distances_from(sol.m1), 1e-12).unwrap());
    }

    #[test]
    fn congruent_and_disjoint() {
        let a = RegularPolygon::new(4, Point2::ORIGIN, 1.0, 0.0).unwrap();
        let b = RegularPolygon::new(4, Point2::new(2.0, 0.0), 1.0, PI).unwrap();
        assert!(matches!(two_points(&a, &b, 1e-9), Err(Error::Congruent { .. })));
        let c = RegularPolygon::new(4, Point2::new(5.0, 0.0), 2.0, 0.0).unwrap();
        assert!(matches!(two_points(&a, &c, 1e-9), Err(Error::SharedVertex { .. })));
    }
}
