//! Coordinates of the second regular polygon.
//!
//! Given a polygon (circumradius `R`, center `O₁`) and a point `M` at
//! distance `L` from `O₁`, the dual polygon has circumradius `L` and its
//! center `O₂` lies anywhere on the circle of radius `R` about `M`. Once `O₂`
//! is chosen, intersecting the circle of radius `|M A₁|` about `M` with the
//! new circumcircle gives two admissible positions for the new vertex 0;
//! each one fixes a polygon whose distance multiset from `M` is the original.

use serde::Serialize;

use crate::dual::DEGENERACY_EPS;
use crate::error::{Error, Result};
use crate::geometry::{approx_eq, multiset_mismatch, normalize_angle, Distances, Point2, RegularPolygon};

/// Absolute slack allowed on the cosine before it is clamped to `[-1, 1]`.
pub const COSINE_CLAMP: f64 = 1e-9;

/// Result of [`construct_dual`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DualPolygonPair {
    pub primary: RegularPolygon,
    pub point: Point2,
    /// Vertex 0 sits at the `+` intersection.
    pub b_polygon: RegularPolygon,
    /// Mirror image of `b_polygon` across the line through the point and
    /// the shared center.
    pub c_polygon: RegularPolygon,
    /// Azimuth of the new center as seen from the point.
    pub center_direction: f64,
    pub anchor_index: usize,
    /// Radius of the auxiliary circle, `|M A_anchor|`.
    pub anchor_distance: f64,
    /// Largest sorted-distance mismatch over both constructed polygons.
    pub match_residual: f64,
}

impl DualPolygonPair {
    pub fn distances(&self) -> Distances {
        self.primary.distances_from(self.point)
    }

    pub fn b_distances(&self) -> Distances {
        self.b_polygon.distances_from(self.point)
    }

    pub fn c_distances(&self) -> Distances {
        self.c_polygon.distances_from(self.point)
    }
}

/// Phases placing vertex 0 of an n-gon (center `center`, circumradius
/// `radius`) at distance `anchor` from `point`, where `offset = |point - center|`.
///
/// Returns `[azimuth + α, azimuth - α]` normalized to `[0, 2π)`, with
/// `cos α = (radius² + offset² - anchor²) / (2·radius·offset)`. At tangency
/// both entries are identical.
pub fn solve_phase(point: Point2, center: Point2, radius: f64, offset: f64, anchor: f64) -> Result<[f64; 2]> {
    if !(radius > 0.0 && offset > 0.0) {
        return Err(Error::InvalidInput(format!(
            "phase solve needs positive radius and offset, got ({radius}, {offset})"
        )));
    }
    let cos_alpha = (radius * radius + offset * offset - anchor * anchor) / (2.0 * radius * offset);
    if !(-1.0 - COSINE_CLAMP..=1.0 + COSINE_CLAMP).contains(&cos_alpha) {
        return Err(Error::Range { value: cos_alpha });
    }
    let azimuth = center.azimuth_to(point);
    let cos_alpha = cos_alpha.clamp(-1.0, 1.0);
    if cos_alpha == 1.0 || cos_alpha == -1.0 {
        let phase = normalize_angle(azimuth + cos_alpha.acos());
        return Ok([phase, phase]);
    }
    let alpha = cos_alpha.acos();
    Ok([normalize_angle(azimuth + alpha), normalize_angle(azimuth - alpha)])
}

/// Builds both dual polygons with the auxiliary circle anchored at vertex 0.
pub fn construct_dual(p: &RegularPolygon, point: Point2, center_direction: f64, tol: f64) -> Result<DualPolygonPair> {
    construct_dual_with_anchor(p, point, center_direction, 0, tol)
}

/// Builds both dual polygons with the auxiliary circle through vertex
/// `anchor_index` of `p`.
pub fn construct_dual_with_anchor(
    p: &RegularPolygon,
    point: Point2,
    center_direction: f64,
    anchor_index: usize,
    tol: f64,
) -> Result<DualPolygonPair> {
    if anchor_index >= p.n {
        return Err(Error::InvalidInput(format!(
            "anchor index {anchor_index} out of range for n = {}",
            p.n
        )));
    }
    if !point.is_finite() || !center_direction.is_finite() {
        return Err(Error::InvalidInput("point and direction must be finite".into()));
    }
    let radius = p.circumradius;
    let offset = point.distance(p.center);
    let s2 = radius * radius + offset * offset;
    if radius <= 0.0 {
        return Err(Error::Degenerate("polygon has zero circumradius".into()));
    }
    let gap = radius * radius - offset * offset;
    if gap * gap <= DEGENERACY_EPS * s2 * s2 {
        return Err(Error::Degenerate(
            "point lies on the circumcircle; the dual polygon coincides with the original".into(),
        ));
    }
    if offset * offset <= DEGENERACY_EPS * s2 {
        return Err(Error::Degenerate("point is the polygon center; the dual has zero radius".into()));
    }

    // Swap: the dual has circumradius `offset` and its center sits `radius` away.
    let new_center = point.polar_offset(radius, center_direction);
    let new_radius = offset;
    let anchor = point.distance(p.vertex(anchor_index));

    let lower = (new_radius - radius).abs();
    let upper = new_radius + radius;
    if anchor < lower - tol * upper || anchor > upper + tol * upper {
        return Err(Error::NoIntersection { anchor, lower, upper });
    }
    let phases = solve_phase(point, new_center, new_radius, radius, anchor)?;
    let b_polygon = RegularPolygon::new(p.n, new_center, new_radius, phases[0])?;
    let c_polygon = RegularPolygon::new(p.n, new_center, new_radius, phases[1])?;

    let d = p.distances_from(point);
    let match_residual = multiset_mismatch(&d, &b_polygon.distances_from(point))?
        .max(multiset_mismatch(&d, &c_polygon.distances_from(point))?);

    Ok(DualPolygonPair {
        primary: *p,
        point,
        b_polygon,
        c_polygon,
        center_direction,
        anchor_index,
        anchor_distance: anchor,
        match_residual,
    })
}

/// Outcome of [`verify_permutation`].
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum PermutationMatch {
    /// `x[permutation[i]] ≈ d[i]` for every `i`.
    Found { permutation: Vec<usize>, residual: f64 },
    /// No permutation matches; `residual` is the best sorted-pairing mismatch.
    Failed { residual: f64 },
}

impl PermutationMatch {
    pub fn is_found(&self) -> bool {
        matches!(self, PermutationMatch::Found { .. })
    }

    pub fn permutation(&self) -> Option<&[usize]> {
        match self {
            PermutationMatch::Found { permutation, .. } => Some(permutation),
            PermutationMatch::Failed { .. } => None,
        }
    }

    pub fn residual(&self) -> f64 {
        match self {
            PermutationMatch::Found { residual, .. } | PermutationMatch::Failed { residual } => *residual,
        }
    }
}

fn sorted_indices(values: &[f64], subset: &[usize]) -> Vec<usize> {
    let mut idx = subset.to_vec();
    idx.sort_by(|a, b| values[*a].total_cmp(&values[*b]).then(a.cmp(b)));
    idx
}

fn pair_sorted(d: &[f64], x: &[f64], d_idx: &[usize], x_idx: &[usize], perm: &mut [usize]) {
    for (i, j) in sorted_indices(d, d_idx).into_iter().zip(sorted_indices(x, x_idx)) {
        perm[i] = j;
    }
}

fn residual_of(d: &[f64], x: &[f64], perm: &[usize]) -> f64 {
    perm.iter()
        .enumerate()
        .map(|(i, &j)| (x[j] - d[i]).abs())
        .fold(0.0, f64::max)
}

/// Finds an explicit index permutation carrying `x` onto `d`.
///
/// Indices where `x[i] ≈ d[i]` already are kept fixed when possible, so
/// index-aligned inputs report the identity.
pub fn verify_permutation(d: &Distances, x: &Distances, tol: f64) -> Result<PermutationMatch> {
    if d.n() != x.n() {
        return Err(Error::DimensionMismatch { left: d.n(), right: x.n() });
    }
    let (dv, xv) = (d.values(), x.values());
    let n = dv.len();
    let ok = |perm: &[usize]| perm.iter().enumerate().all(|(i, &j)| approx_eq(dv[i], xv[j], tol));

    let (fixed, free): (Vec<usize>, Vec<usize>) = (0..n).partition(|&i| approx_eq(dv[i], xv[i], tol));
    let mut perm = vec![0; n];
    for &i in &fixed {
        perm[i] = i;
    }
    pair_sorted(dv, xv, &free, &free, &mut perm);
    if ok(&perm) {
        return Ok(PermutationMatch::Found {
            residual: residual_of(dv, xv, &perm),
            permutation: perm,
        });
    }

    let all: Vec<usize> = (0..n).collect();
    pair_sorted(dv, xv, &all, &all, &mut perm);
    let residual = residual_of(dv, xv, &perm);
    if ok(&perm) {
        Ok(PermutationMatch::Found { permutation: perm, residual })
    } else {
        Ok(PermutationMatch::Failed { residual })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::multiset_equal;
    use std::f64::consts::{FRAC_PI_4, PI, SQRT_2};

    fn unit_square() -> RegularPolygon {
        RegularPolygon::new(4, Point2::ORIGIN, SQRT_2, FRAC_PI_4).unwrap()
    }

    #[test]
    fn square_dual_along_x() {
        let m = Point2::new(1.0, 0.0);
        let pair = construct_dual(&unit_square(), m, 0.0, 1e-9).unwrap();
        let b = pair.b_polygon;
        assert!(b.center.distance(Point2::new(1.0 + SQRT_2, 0.0)) < 1e-14);
        assert!((b.circumradius - 1.0).abs() < 1e-15);
        // one vertex at angle π/4 from the new center
        assert!(b.vertices().iter().any(|v| v.distance(b.center.polar_offset(1.0, FRAC_PI_4)) < 1e-12));
        let r5 = 5f64.sqrt();
        let want = Distances::new(vec![1.0, 1.0, r5, r5]).unwrap();
        assert!(multiset_equal(&pair.b_distances(), &want, 1e-12).unwrap());
        assert!(multiset_equal(&pair.c_distances(), &want, 1e-12).unwrap());
        assert!(pair.match_residual < 1e-12);
        assert!((pair.b_distances().values()[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn equilateral_dual_side() {
        // distances (3, 5, 7): R = 8/√3, L = √(19/3)
        let r = 8.0 / 3f64.sqrt();
        let l = (19.0f64 / 3.0).sqrt();
        let t = RegularPolygon::new(3, Point2::ORIGIN, r, 0.3).unwrap();
        let m = Point2::ORIGIN.polar_offset(l, 1.1);
        let pair = construct_dual(&t, m, 2.0, 1e-9).unwrap();
        assert!((pair.b_polygon.side_length() - 19f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn on_circumcircle_is_degenerate() {
        let m = Point2::new(SQRT_2, 0.0);
        assert!(matches!(construct_dual(&unit_square(), m, 0.0, 1e-9), Err(Error::Degenerate(_))));
    }

    #[test]
    fn center_is_degenerate() {
        assert!(matches!(
            construct_dual(&unit_square(), Point2::ORIGIN, 0.0, 1e-9),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn phase_square_example() {
        let m = Point2::new(1.0, 0.0);
        let c = Point2::new(1.0 + SQRT_2, 0.0);
        let [a, b] = solve_phase(m, c, 1.0, SQRT_2, 1.0).unwrap();
        assert!((a - 5.0 * FRAC_PI_4).abs() < 1e-12);
        assert!((b - 3.0 * FRAC_PI_4).abs() < 1e-12);
    }

    #[test]
    fn phase_tangent_cases() {
        let m = Point2::ORIGIN;
        let c = Point2::new(3.0, 0.0);
        // anchor = R + L: vertex opposite the point
        let [a, b] = solve_phase(m, c, 1.0, 3.0, 4.0).unwrap();
        assert_eq!(a, b);
        assert!(a.abs() < 1e-12 || (a - 2.0 * PI).abs() < 1e-12);
        // anchor = |R - L|: vertex facing the point
        let [a, b] = solve_phase(m, c, 1.0, 3.0, 2.0).unwrap();
        assert_eq!(a, b);
        assert!((a - PI).abs() < 1e-12);
    }

    #[test]
    fn phase_out_of_range() {
        assert!(matches!(
            solve_phase(Point2::ORIGIN, Point2::new(3.0, 0.0), 1.0, 3.0, 5.0),
            Err(Error::Range { .. })
        ));
    }

    #[test]
    fn permutation_examples() {
        let r5 = 5f64.sqrt();
        let d = Distances::new(vec![1.0, r5, r5, 1.0]).unwrap();
        let m = verify_permutation(&d, &d.clone(), 1e-9).unwrap();
        assert_eq!(m.permutation(), Some(&[0, 1, 2, 3][..]));

        let d = Distances::new(vec![1.0, 2.0, 3.0, 4.5]).unwrap();
        let rev = Distances::new(vec![4.5, 3.0, 2.0, 1.0]).unwrap();
        let m = verify_permutation(&d, &rev, 1e-9).unwrap();
        assert_eq!(m.permutation(), Some(&[3, 2, 1, 0][..]));

        let d = Distances::new(vec![1.0, 2.0, 3.0]).unwrap();
        let x = Distances::new(vec![1.0, 2.0, 4.0]).unwrap();
        let m = verify_permutation(&d, &x, 1e-9).unwrap();
        assert!(!m.is_found());
        assert!((m.residual() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn mirror_pair() {
        let p = RegularPolygon::new(5, Point2::new(0.5, -1.0), 2.0, 0.7).unwrap();
        let m = Point2::new(1.3, 0.4);
        let pair = construct_dual(&p, m, 0.9, 1e-9).unwrap();
        let o2 = pair.b_polygon.center;
        let reflected: Vec<Point2> = pair.b_polygon.vertices().iter().map(|v| v.reflect_across(m, o2)).collect();
        for v in pair.c_polygon.vertices() {
            assert!(reflected.iter().any(|r| r.distance(v) < 1e-12));
        }
    }

    #[test]
    fn other_anchor_is_also_a_dual() {
        let p = RegularPolygon::new(6, Point2::ORIGIN, 1.0, 0.2).unwrap();
        let m = Point2::new(0.3, 2.1);
        let pair = construct_dual_with_anchor(&p, m, -1.0, 3, 1e-9).unwrap();
        assert!(multiset_equal(&pair.distances(), &pair.b_distances(), 1e-10).unwrap());
        assert!((pair.b_distances().values()[0] - pair.distances().values()[3]).abs() < 1e-12);
        assert!(construct_dual_with_anchor(&p, m, 0.0, 6, 1e-9).is_err());
    }
}
