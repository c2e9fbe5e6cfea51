//! Recovering both regular polygons from a distance list.
//!
//! `S(2) = R² + L²` and `S(4) - S(2)² = 2R²L²`, so `R²` and `L²` are the two
//! roots of `X² - S(2)·X + (S(4) - S(2)²)/2 = 0`. Assigning the larger root to
//! `R²` gives the larger polygon (the point is inside its circumcircle);
//! the other assignment gives the smaller polygon (the point is outside).

use serde::Serialize;

use crate::averages::power_averages;
use crate::error::{Error, Result};
use crate::geometry::Distances;
use crate::numeric::CompensatedSum;

/// Relative threshold for the on-circumcircle and at-center degeneracies.
pub const DEGENERACY_EPS: f64 = 1e-10;

/// Circumradius and center offset of one regular polygon realizing the
/// distances.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadiusOffset {
    /// Circumradius.
    pub r: f64,
    /// Distance from the point to the polygon's center.
    pub l: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Degeneracy {
    None,
    /// The point is on the circumcircle; both solutions coincide.
    OnCircumcircle,
    /// The point is the center; the smaller solution has radius zero.
    AtCenter,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PointClass {
    /// The point is inside the larger circumcircle and outside the smaller.
    InsideLarger,
    OnCircle,
    CenterDegenerate,
}

/// Which of the two solutions a polygon corresponds to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Larger,
    Smaller,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DualSolution {
    pub s2: f64,
    pub s4: f64,
    /// `3·S(2)² - 2·S(4)`, which equals `(R² - L²)²`.
    pub discriminant: f64,
    pub larger: RadiusOffset,
    pub smaller: RadiusOffset,
    pub degeneracy: Degeneracy,
}

impl DualSolution {
    /// Builds the solution from `S(2)`, `R²L²` and the (clamped) discriminant.
    pub(crate) fn from_moments(s2: f64, s4: f64, product: f64, discriminant: f64) -> Self {
        let rl = product.max(0.0).sqrt();
        let on_circle = discriminant <= DEGENERACY_EPS * s2 * s2;
        let (r1, l1) = if on_circle {
            let v = (0.5 * s2).sqrt();
            (v, v)
        } else {
            let r1 = (0.5 * (s2 + discriminant.sqrt())).sqrt();
            // L₁² = R²L² / R₁² avoids the cancellation in (S(2) - √disc)/2
            let l1 = if r1 > 0.0 { rl / r1 } else { 0.0 };
            (r1, l1)
        };
        let degeneracy = if on_circle {
            Degeneracy::OnCircumcircle
        } else if l1 * l1 <= DEGENERACY_EPS * s2 {
            Degeneracy::AtCenter
        } else {
            Degeneracy::None
        };
        DualSolution {
            s2,
            s4,
            discriminant,
            larger: RadiusOffset { r: r1, l: l1 },
            smaller: RadiusOffset { r: l1, l: r1 },
            degeneracy,
        }
    }

    /// `R·L`, shared by both solutions.
    pub fn radius_offset_product(&self) -> f64 {
        self.larger.r * self.larger.l
    }

    pub fn pair(&self, role: Role) -> RadiusOffset {
        match role {
            Role::Larger => self.larger,
            Role::Smaller => self.smaller,
        }
    }

    /// The solution whose `(R, L)` is closest to the given pair, if it is
    /// within `tol` (relative) of it.
    pub fn matching_role(&self, r: f64, l: f64, tol: f64) -> Option<Role> {
        let scale = r.max(l).max(f64::MIN_POSITIVE);
        let err = |p: RadiusOffset| (p.r - r).abs().max((p.l - l).abs()) / scale;
        let (el, es) = (err(self.larger), err(self.smaller));
        let (role, e) = if el <= es { (Role::Larger, el) } else { (Role::Smaller, es) };
        (e <= tol).then_some(role)
    }
}

/// Where the point sits relative to the recovered circumcircles.
pub fn classify_point(sol: &DualSolution) -> PointClass {
    match sol.degeneracy {
        Degeneracy::OnCircumcircle => PointClass::OnCircle,
        Degeneracy::AtCenter => PointClass::CenterDegenerate,
        Degeneracy::None => PointClass::InsideLarger,
    }
}

/// Solves for both `(R, L)` pairs.
///
/// Does not check the higher-order consistency identities; see
/// [`crate::averages::check_consistency`].
pub fn solve(d: &Distances, tol: f64) -> Result<DualSolution> {
    let n = d.n();
    if n < 3 {
        return Err(Error::InvalidInput(format!("need at least 3 distances, got {n}")));
    }
    let moments = power_averages(d, 2);
    let (s2, s4) = (moments[0], moments[1]);

    if s4 < s2 * s2 * (1.0 - tol) {
        return Err(Error::Realizability {
            reason: "fourth-power average is below the squared second-power average".into(),
            value: s4 - s2 * s2,
        });
    }

    // S(4) - S(2)² as a centered moment of the squared distances: exact for
    // nearly equal distances where the raw difference cancels.
    let spread = d
        .values()
        .iter()
        .map(|v| {
            let c = v * v - s2;
            c * c
        })
        .collect::<CompensatedSum>()
        .total()
        / n as f64;
    let product = 0.5 * spread;
    let rl = product.sqrt();
    let discriminant = (s2 - 2.0 * rl) * (s2 + 2.0 * rl);

    if discriminant < -tol * s2 * s2 {
        return Err(Error::Realizability {
            reason: "negative discriminant 3·S(2)² - 2·S(4)".into(),
            value: discriminant,
        });
    }
    Ok(DualSolution::from_moments(s2, s4, product, discriminant.max(0.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
    }

    #[test]
    fn square_example() {
        let r5 = 5f64.sqrt();
        let d = Distances::new(vec![1.0, r5, r5, 1.0]).unwrap();
        let s = solve(&d, 1e-9).unwrap();
        assert!(rel(s.s2, 3.0) < 1e-14);
        assert!(rel(s.s4, 13.0) < 1e-14);
        assert!(rel(s.discriminant, 1.0) < 1e-14);
        assert!(rel(s.larger.r, SQRT_2) < 1e-14);
        assert!(rel(s.larger.l, 1.0) < 1e-14);
        assert!(rel(s.smaller.r, 1.0) < 1e-14);
        assert!(rel(s.smaller.l, SQRT_2) < 1e-14);
        assert_eq!(s.degeneracy, Degeneracy::None);
        assert_eq!(classify_point(&s), PointClass::InsideLarger);
    }

    #[test]
    fn all_equal_is_center() {
        let d = Distances::new(vec![2.5; 5]).unwrap();
        let s = solve(&d, 1e-9).unwrap();
        assert_eq!(s.degeneracy, Degeneracy::AtCenter);
        assert!(rel(s.larger.r, 2.5) < 1e-15);
        assert_eq!(s.larger.l, 0.0);
        assert_eq!(s.smaller.r, 0.0);
        assert_eq!(classify_point(&s), PointClass::CenterDegenerate);
    }

    #[test]
    fn on_circumcircle_square() {
        let lo = (4.0 - 2.0 * SQRT_2).sqrt();
        let hi = (4.0 + 2.0 * SQRT_2).sqrt();
        let d = Distances::new(vec![lo, hi, hi, lo]).unwrap();
        let s = solve(&d, 1e-9).unwrap();
        assert!(s.discriminant.abs() < 1e-12);
        assert_eq!(s.degeneracy, Degeneracy::OnCircumcircle);
        for v in [s.larger.r, s.larger.l, s.smaller.r, s.smaller.l] {
            assert!(rel(v, SQRT_2) < 1e-12);
        }
        assert_eq!(classify_point(&s), PointClass::OnCircle);
    }

    #[test]
    fn unrealizable_distances() {
        let d = Distances::new(vec![1.0, 1.0, 5.0]).unwrap();
        assert!(matches!(solve(&d, 1e-9), Err(Error::Realizability { .. })));
    }

    #[test]
    fn too_few_distances() {
        let d = Distances::new(vec![1.0, 2.0]).unwrap();
        assert!(matches!(solve(&d, 1e-9), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn swap_relations_are_exact() {
        let r5 = 5f64.sqrt();
        let s = solve(&Distances::new(vec![1.0, r5, r5, 1.0]).unwrap(), 1e-9).unwrap();
        assert_eq!(s.larger.r, s.smaller.l);
        assert_eq!(s.larger.l, s.smaller.r);
        assert_eq!(s.matching_role(SQRT_2, 1.0, 1e-12), Some(Role::Larger));
        assert_eq!(s.matching_role(1.0, SQRT_2, 1e-12), Some(Role::Smaller));
        assert_eq!(s.matching_role(3.0, 1.0, 1e-12), None);
    }
}
