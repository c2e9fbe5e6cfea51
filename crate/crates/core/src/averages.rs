//! Cyclic averages: means of the even powers of the point-to-vertex
//! distances, `S(2m) = (1/n) Σ d_i^(2m)` for `m = 1..n-1`.
//!
//! For a regular n-gon of circumradius `R` and a point at distance `L` from
//! its center these depend only on `R` and `L` (not on the rotation of the
//! polygon), which is what the dual-polygon construction rests on.

use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::Distances;
use crate::numeric::CompensatedSum;

/// Default cap on `n` for the closed form and consistency identities.
pub const DEFAULT_MAX_N: usize = 64;

/// Rows of Pascal's triangle are exact in `u128` up to this index.
pub const MAX_SUPPORTED_N: usize = 128;

/// Default relative tolerance for [`check_consistency`].
pub const CONSISTENCY_TOL: f64 = 1e-8;

/// Exact binomial coefficients from Pascal's triangle.
#[derive(Debug, Clone)]
pub struct BinomialTable {
    rows: Vec<Vec<u128>>,
}

impl BinomialTable {
    pub fn new(max_row: usize) -> Self {
        assert!(max_row <= MAX_SUPPORTED_N, "binomial rows beyond {MAX_SUPPORTED_N} overflow u128");
        let mut rows: Vec<Vec<u128>> = Vec::with_capacity(max_row + 1);
        for m in 0..=max_row {
            let mut row = vec![1u128; m + 1];
            for k in 1..m {
                row[k] = rows[m - 1][k - 1] + rows[m - 1][k];
            }
            rows.push(row);
        }
        BinomialTable { rows }
    }

    pub fn max_row(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn get(&self, m: usize, k: usize) -> u128 {
        if k > m {
            0
        } else {
            self.rows[m][k]
        }
    }

    /// `C(m, 2k) · C(2k, k)` as a float.
    fn weight(&self, m: usize, k: usize) -> f64 {
        self.get(m, 2 * k) as f64 * self.get(2 * k, k) as f64
    }
}

fn binomials() -> &'static BinomialTable {
    static TABLE: OnceLock<BinomialTable> = OnceLock::new();
    TABLE.get_or_init(|| BinomialTable::new(MAX_SUPPORTED_N))
}

fn check_n(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::InvalidInput(format!("need n >= 3, got {n}")));
    }
    if n > MAX_SUPPORTED_N {
        return Err(Error::InvalidInput(format!(
            "n = {n} exceeds the supported maximum {MAX_SUPPORTED_N}"
        )));
    }
    Ok(())
}

/// The values `S(2), S(4), …, S(2(n-1))`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CyclicAverages {
    n: usize,
    values: Vec<f64>,
}

impl CyclicAverages {
    /// Wraps precomputed averages; `values` must hold exactly `n - 1` entries.
    pub fn new(n: usize, values: Vec<f64>) -> Result<Self> {
        check_n(n)?;
        if values.len() != n - 1 {
            return Err(Error::InvalidInput(format!(
                "expected {} cyclic averages for n = {n}, got {}",
                n - 1,
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::InvalidInput("cyclic averages must be finite and >= 0".into()));
        }
        Ok(CyclicAverages { n, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `S(2m)` for `1 ≤ m ≤ n-1`.
    pub fn get(&self, m: usize) -> Option<f64> {
        m.checked_sub(1).and_then(|i| self.values.get(i).copied())
    }

    pub fn s2(&self) -> f64 {
        self.values[0]
    }

    pub fn s4(&self) -> f64 {
        self.values[1]
    }
}

/// Mean of `d_i^(2m)` for `m = 1..=max_m`, with compensated summation.
pub fn power_averages(d: &Distances, max_m: usize) -> Vec<f64> {
    let n = d.n() as f64;
    let mut sums = vec![CompensatedSum::default(); max_m];
    for &di in d.values() {
        let sq = di * di;
        let mut p = sq;
        for s in sums.iter_mut() {
            s.add(p);
            p *= sq;
        }
    }
    sums.into_iter().map(|s| s.total() / n).collect()
}

/// Cyclic averages straight from their definition.
pub fn averages_from_distances(d: &Distances) -> Result<CyclicAverages> {
    check_n(d.n())?;
    Ok(CyclicAverages {
        n: d.n(),
        values: power_averages(d, d.n() - 1),
    })
}

/// `S(2m)` from circumradius `r` and center offset `l`:
/// `Σ_k C(m,2k) C(2k,k) (r l)^(2k) (r² + l²)^(m-2k)`.
pub fn average_from_radius_offset(m: usize, r: f64, l: f64) -> f64 {
    let s = r * r + l * l;
    let p = (r * l) * (r * l);
    let table = binomials();
    let mut acc = CompensatedSum::default();
    for k in 0..=m / 2 {
        acc.add(table.weight(m, k) * p.powi(k as i32) * s.powi((m - 2 * k) as i32));
    }
    acc.total()
}

/// Closed-form cyclic averages for an n-gon of circumradius `r` seen from a
/// point at distance `l` from its center.
pub fn averages_from_radius_offset(n: usize, r: f64, l: f64) -> Result<CyclicAverages> {
    check_n(n)?;
    if !(r.is_finite() && l.is_finite() && r >= 0.0 && l >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "radius and offset must be finite and >= 0, got ({r}, {l})"
        )));
    }
    Ok(CyclicAverages {
        n,
        values: (1..n).map(|m| average_from_radius_offset(m, r, l)).collect(),
    })
}

/// One identity `S(2m) = f_m(S(2), S(4))` evaluated on a set of averages.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub m: usize,
    pub actual: f64,
    pub expected: f64,
    pub residual: f64,
    pub relative_residual: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConsistencyReport {
    pub tol: f64,
    /// `S(4) ≥ S(2)²` within `tol`.
    pub moment_bound: bool,
    pub checks: Vec<IdentityCheck>,
    pub pass: bool,
}

impl ConsistencyReport {
    /// The check with the largest relative residual, if any.
    pub fn worst(&self) -> Option<&IdentityCheck> {
        self.checks
            .iter()
            .max_by(|a, b| a.relative_residual.total_cmp(&b.relative_residual))
    }
}

/// Expected `S(2m)` given only `S(2)` and `S(4)`.
pub fn predicted_average(m: usize, s2: f64, s4: f64) -> f64 {
    let spread = s4 - s2 * s2;
    let table = binomials();
    let mut acc = CompensatedSum::default();
    for k in 0..=m / 2 {
        let scale = 0.5f64.powi(k as i32);
        acc.add(scale * table.weight(m, k) * spread.powi(k as i32) * s2.powi((m - 2 * k) as i32));
    }
    acc.total()
}

/// Tests the necessary conditions linking the higher averages to `S(2)` and
/// `S(4)`, for `m = 3..n-1`. Passing does not prove realizability.
pub fn check_consistency(avgs: &CyclicAverages, tol: f64) -> ConsistencyReport {
    let s2 = avgs.s2();
    let s4 = avgs.s4();
    let moment_bound = s4 >= s2 * s2 * (1.0 - tol);
    let checks: Vec<IdentityCheck> = (3..avgs.n())
        .map(|m| {
            let actual = avgs.values[m - 1];
            let expected = predicted_average(m, s2, s4);
            let residual = actual - expected;
            let scale = actual.abs().max(expected.abs());
            let relative_residual = if scale > 0.0 { residual.abs() / scale } else { 0.0 };
            IdentityCheck {
                m,
                actual,
                expected,
                residual,
                relative_residual,
                pass: relative_residual <= tol,
            }
        })
        .collect();
    let pass = moment_bound && checks.iter().all(|c| c.pass);
    ConsistencyReport {
        tol,
        moment_bound,
        checks,
        pass,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
    }

    #[test]
    fn pascal_rows() {
        let t = BinomialTable::new(10);
        assert_eq!(t.get(10, 5), 252);
        assert_eq!(t.get(4, 2), 6);
        assert_eq!(t.get(3, 4), 0);
        let b = binomials();
        assert_eq!(b.get(128, 64), b.get(127, 63) + b.get(127, 64));
        assert_eq!(b.get(128, 3), 128 * 127 * 126 / 6);
    }

    #[test]
    fn square_from_distances() {
        let r5 = 5f64.sqrt();
        let d = Distances::new(vec![1.0, r5, r5, 1.0]).unwrap();
        let a = averages_from_distances(&d).unwrap();
        for (got, want) in a.values().iter().zip([3.0, 13.0, 63.0]) {
            assert!(rel(*got, want) < 1e-14, "{got} vs {want}");
        }
    }

    #[test]
    fn constant_distances() {
        let d = Distances::new(vec![1.5; 6]).unwrap();
        let a = averages_from_distances(&d).unwrap();
        for (m, v) in a.values().iter().enumerate() {
            assert!(rel(*v, 1.5f64.powi(2 * (m as i32 + 1))) < 1e-14);
        }
    }

    #[test]
    fn three_five_seven() {
        let d = Distances::new(vec![3.0, 5.0, 7.0]).unwrap();
        let a = averages_from_distances(&d).unwrap();
        assert!(rel(a.s2(), 83.0 / 3.0) < 1e-14);
        assert!(rel(a.s4(), 3107.0 / 3.0) < 1e-14);
        let c = averages_from_radius_offset(3, (64.0f64 / 3.0).sqrt(), (19.0f64 / 3.0).sqrt()).unwrap();
        assert!(rel(c.s2(), 83.0 / 3.0) < 1e-14);
        assert!(rel(c.s4(), 3107.0 / 3.0) < 1e-14);
    }

    #[test]
    fn square_closed_form() {
        let a = averages_from_radius_offset(4, 2f64.sqrt(), 1.0).unwrap();
        for (got, want) in a.values().iter().zip([3.0, 13.0, 63.0]) {
            assert!(rel(*got, want) < 1e-14, "{got} vs {want}");
        }
    }

    #[test]
    fn zero_offset_gives_pure_powers() {
        let a = averages_from_radius_offset(9, 1.3, 0.0).unwrap();
        for (m, v) in a.values().iter().enumerate() {
            assert!(rel(*v, 1.3f64.powi(2 * (m as i32 + 1))) < 1e-14);
        }
    }

    #[test]
    fn consistency_detects_bad_sixth_moment() {
        let a = CyclicAverages::new(4, vec![3.0, 13.0, 64.0]).unwrap();
        let report = check_consistency(&a, CONSISTENCY_TOL);
        assert!(!report.pass);
        assert_eq!(report.checks.len(), 1);
        let c = &report.checks[0];
        assert_eq!(c.m, 3);
        assert!((c.expected - 63.0).abs() < 1e-12);
        assert!((c.residual - 1.0).abs() < 1e-12);
    }

    #[test]
    fn consistency_passes_on_genuine_square() {
        let a = CyclicAverages::new(4, vec![3.0, 13.0, 63.0]).unwrap();
        assert!(check_consistency(&a, CONSISTENCY_TOL).pass);
    }

    #[test]
    fn consistency_vacuous_for_triangles() {
        let d = Distances::new(vec![3.0, 5.0, 7.0]).unwrap();
        let report = check_consistency(&averages_from_distances(&d).unwrap(), CONSISTENCY_TOL);
        assert!(report.checks.is_empty());
        assert!(report.pass);
    }

    #[test]
    fn moment_bound_violation_fails() {
        let a = CyclicAverages::new(3, vec![3.0, 8.0]).unwrap();
        let report = check_consistency(&a, CONSISTENCY_TOL);
        assert!(!report.moment_bound);
        assert!(!report.pass);
    }

    #[test]
    fn wrong_length_rejected() {
        assert!(CyclicAverages::new(4, vec![1.0, 2.0]).is_err());
        assert!(averages_from_radius_offset(2, 1.0, 1.0).is_err());
    }
}
