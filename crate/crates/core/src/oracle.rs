//! Brute-force search for a second regular polygon.
//!
//! Nothing here uses the closed-form solver or the reconstruction: the
//! search only measures distances from candidate polygons and compares
//! sorted lists. It serves as an independent check of the closed forms.
//!
//! The sorted distance list from `M` is unchanged by rotations about `M`, so
//! candidates are parameterized by the center offset `ℓ` (center placed at
//! `M + (ℓ, 0)`), the circumradius `r`, and the phase `θ ∈ [0, 2π/n)`.

use std::f64::consts::TAU;
use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::geometry::{Point2, RegularPolygon};

/// Candidates with `|r - R| ≤ EXCLUSION·R` are treated as the input polygon.
pub const EXCLUSION: f64 = 1e-4;

/// Samples per radial dimension (`ℓ` and `r`) of the coarse grid.
const RADIAL_SAMPLES: usize = 24;

/// Best grid cells refined per half-domain.
const SEEDS_PER_DOMAIN: usize = 6;

const POLISH_ITERATIONS: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleConfig {
    /// Phase samples of the coarse grid.
    pub grid_resolution: usize,
    /// Coordinate-descent sweeps per seed.
    pub refine_iterations: usize,
    /// Nonzero seeds shift the coarse grid by a random sub-cell offset.
    pub seed: u64,
    /// Acceptance threshold on the relative residual.
    pub tol: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            grid_resolution: 64,
            refine_iterations: 3000,
            seed: 0,
            tol: 1e-9,
        }
    }
}

impl OracleConfig {
    fn validate(&self) -> Result<(), String> {
        if self.grid_resolution < 8 {
            return Err(format!("grid_resolution must be >= 8, got {}", self.grid_resolution));
        }
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(format!("tol must be positive, got {}", self.tol));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleResult {
    pub found: bool,
    pub polygon: Option<RegularPolygon>,
    /// Largest sorted-distance mismatch of the best candidate, relative to
    /// the largest input distance.
    pub residual: f64,
    /// Circumradius of the best candidate.
    pub radius: f64,
    /// Distance from the point to the best candidate's center.
    pub offset: f64,
    pub samples_evaluated: u64,
}

/// Objective evaluation over `(ℓ, r, θ)` with a sorted target list.
struct Objective<'a> {
    n: usize,
    target: &'a [f64],
    buf: Vec<f64>,
    evaluations: u64,
}

impl<'a> Objective<'a> {
    fn new(target: &'a [f64]) -> Self {
        Objective {
            n: target.len(),
            target,
            buf: vec![0.0; target.len()],
            evaluations: 0,
        }
    }

    fn fill(&mut self, [l, r, theta]: [f64; 3]) {
        let step = TAU / self.n as f64;
        for (k, slot) in self.buf.iter_mut().enumerate() {
            let (s, c) = (theta + step * k as f64).sin_cos();
            *slot = (l + r * c).hypot(r * s);
        }
        self.buf.sort_by(f64::total_cmp);
        self.evaluations += 1;
    }

    /// Sum of squared differences of the sorted lists.
    fn value(&mut self, p: [f64; 3]) -> f64 {
        self.fill(p);
        self.buf.iter().zip(self.target).map(|(a, b)| (a - b) * (a - b)).sum()
    }

    fn residuals(&mut self, p: [f64; 3], out: &mut [f64]) {
        self.fill(p);
        for ((o, a), b) in out.iter_mut().zip(&self.buf).zip(self.target) {
            *o = a - b;
        }
    }

    fn max_mismatch(&mut self, p: [f64; 3]) -> f64 {
        self.fill(p);
        self.buf.iter().zip(self.target).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }
}

/// Box constraints of one half-domain.
#[derive(Debug, Clone, Copy)]
struct Domain {
    lo: [f64; 3],
    hi: [f64; 3],
}

impl Domain {
    fn clamp(&self, mut p: [f64; 3]) -> [f64; 3] {
        for (x, (lo, hi)) in p.iter_mut().zip(self.lo.iter().zip(self.hi)).take(2) {
            *x = x.clamp(*lo, hi);
        }
        // the phase is periodic
        let period = self.hi[2];
        p[2] = p[2].rem_euclid(period);
        p
    }

    fn is_empty(&self) -> bool {
        self.lo[1] > self.hi[1]
    }
}

/// The best cells, skipping any within two grid steps in both `ℓ` and `r`
/// of one already taken, so a single basin cannot absorb every seed.
fn spread_seeds(cells: &[([f64; 3], f64)], spacing: [f64; 3]) -> Vec<([f64; 3], f64)> {
    let mut seeds: Vec<([f64; 3], f64)> = Vec::with_capacity(SEEDS_PER_DOMAIN);
    for &(q, f) in cells {
        if seeds.len() == SEEDS_PER_DOMAIN {
            break;
        }
        let near = seeds
            .iter()
            .any(|(s, _)| (s[0] - q[0]).abs() <= 2.0 * spacing[0] && (s[1] - q[1]).abs() <= 2.0 * spacing[1]);
        if !near {
            seeds.push((q, f));
        }
    }
    seeds
}

fn coordinate_descent(obj: &mut Objective, dom: &Domain, start: [f64; 3], steps: [f64; 3], sweeps: usize) -> ([f64; 3], f64) {
    let mut p = start;
    let mut f = obj.value(p);
    let mut steps = steps;
    let floor = steps.map(|s| s * 1e-13);
    for _ in 0..sweeps {
        let mut improved = false;
        for i in 0..3 {
            for dir in [1.0, -1.0] {
                let mut q = p;
                q[i] += dir * steps[i];
                let q = dom.clamp(q);
                let fq = obj.value(q);
                if fq < f {
                    p = q;
                    f = fq;
                    improved = true;
                    break;
                }
            }
        }
        if !improved {
            for (s, fl) in steps.iter_mut().zip(floor) {
                *s = (*s * 0.5).max(fl);
            }
            if steps.iter().zip(floor).all(|(s, fl)| *s <= fl) {
                break;
            }
        }
    }
    (p, f)
}

fn solve3(a: [[f64; 3]; 3], b: [f64; 3]) -> Option<[f64; 3]> {
    let det = |m: [[f64; 3]; 3]| {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let d = det(a);
    if !d.is_normal() {
        return None;
    }
    let mut x = [0.0; 3];
    for (col, xc) in x.iter_mut().enumerate() {
        let mut m = a;
        for row in 0..3 {
            m[row][col] = b[row];
        }
        *xc = det(m) / d;
    }
    Some(x)
}

/// Levenberg–Marquardt on the sorted residual vector with a finite
/// difference Jacobian.
fn polish(obj: &mut Objective, dom: &Domain, start: [f64; 3], scale: f64) -> ([f64; 3], f64) {
    let n = obj.n;
    let mut p = start;
    let mut f = obj.value(p);
    let mut lambda = 1e-3;
    let mut res = vec![0.0; n];
    let mut plus = vec![0.0; n];
    let mut minus = vec![0.0; n];
    let mut jac = vec![[0.0; 3]; n];
    let h = [scale * 1e-7, scale * 1e-7, 1e-7];
    for _ in 0..POLISH_ITERATIONS {
        obj.residuals(p, &mut res);
        for i in 0..3 {
            let mut a = p;
            let mut b = p;
            a[i] += h[i];
            b[i] -= h[i];
            obj.residuals(a, &mut plus);
            obj.residuals(b, &mut minus);
            for k in 0..n {
                jac[k][i] = (plus[k] - minus[k]) / (2.0 * h[i]);
            }
        }
        let mut jtj = [[0.0; 3]; 3];
        let mut jtr = [0.0; 3];
        for k in 0..n {
            for i in 0..3 {
                jtr[i] += jac[k][i] * res[k];
                for j in 0..3 {
                    jtj[i][j] += jac[k][i] * jac[k][j];
                }
            }
        }
        let mut accepted = false;
        while lambda < 1e12 {
            let mut a = jtj;
            for i in 0..3 {
                a[i][i] += lambda * jtj[i][i].max(1e-30);
            }
            let Some(step) = solve3(a, jtr.map(|v| -v)) else {
                lambda *= 10.0;
                continue;
            };
            let q = dom.clamp([p[0] + step[0], p[1] + step[1], p[2] + step[2]]);
            let fq = obj.value(q);
            if fq < f {
                let tiny = step.iter().all(|s| s.abs() <= 1e-15 * scale.max(1.0));
                p = q;
                f = fq;
                lambda = (lambda * 0.1).max(1e-12);
                accepted = !tiny;
                break;
            }
            lambda *= 10.0;
        }
        if !accepted || f == 0.0 {
            break;
        }
    }
    (p, f)
}

/// Searches for a regular polygon, not congruent to `p`, whose vertex
/// distances from `point` match those of `p`.
pub fn search_second_polygon(p: &RegularPolygon, point: Point2, cfg: &OracleConfig) -> OracleResult {
    if let Err(msg) = cfg.validate() {
        panic!("invalid oracle config: {msg}");
    }
    let target = p.distances_from(point).sorted();
    let dmax = target.last().copied().unwrap_or(0.0);
    let n = p.n;
    let period = TAU / n as f64;
    let radius = p.circumradius;
    let mut obj = Objective::new(&target);

    if dmax <= 0.0 {
        return OracleResult {
            found: false,
            polygon: None,
            residual: f64::INFINITY,
            radius: 0.0,
            offset: 0.0,
            samples_evaluated: 0,
        };
    }

    // every realizing polygon has r ≤ max d and ℓ ≤ max d
    let domains = [
        Domain {
            lo: [0.0, 0.0, 0.0],
            hi: [dmax, radius * (1.0 - EXCLUSION), period],
        },
        Domain {
            lo: [0.0, radius * (1.0 + EXCLUSION), 0.0],
            hi: [dmax, dmax, period],
        },
    ];

    // the seed only shifts the coarse grid by a fraction of a cell
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let jitter: [f64; 3] = if cfg.seed == 0 {
        [0.0; 3]
    } else {
        [rng.random(), rng.random(), rng.random()]
    };
    let mut best: Option<([f64; 3], f64)> = None;
    for dom in domains.iter().filter(|d| !d.is_empty()) {
        let spacing = [
            (dom.hi[0] - dom.lo[0]) / (RADIAL_SAMPLES - 1) as f64,
            (dom.hi[1] - dom.lo[1]) / (RADIAL_SAMPLES - 1) as f64,
            period / cfg.grid_resolution as f64,
        ];
        let mut cells: Vec<([f64; 3], f64)> = Vec::with_capacity(RADIAL_SAMPLES * RADIAL_SAMPLES * cfg.grid_resolution);
        for a in 0..RADIAL_SAMPLES {
            for b in 0..RADIAL_SAMPLES {
                for c in 0..cfg.grid_resolution {
                    let q = dom.clamp([
                        dom.lo[0] + spacing[0] * (a as f64 + jitter[0]),
                        dom.lo[1] + spacing[1] * (b as f64 + jitter[1]),
                        spacing[2] * (c as f64 + jitter[2]),
                    ]);
                    let f = obj.value(q);
                    cells.push((q, f));
                }
            }
        }
        cells.sort_by(|x, y| x.1.total_cmp(&y.1));
        for (start, f0) in spread_seeds(&cells, spacing) {
            let (q, f) = if cfg.refine_iterations > 0 {
                let (q, _) = coordinate_descent(&mut obj, dom, start, spacing, cfg.refine_iterations);
                polish(&mut obj, dom, q, dmax)
            } else {
                (start, f0)
            };
            if best.is_none_or(|(_, bf)| f < bf) {
                best = Some((q, f));
            }
        }
    }

    let Some((q, _)) = best else {
        return OracleResult {
            found: false,
            polygon: None,
            residual: f64::INFINITY,
            radius: 0.0,
            offset: 0.0,
            samples_evaluated: obj.evaluations,
        };
    };
    let residual = obj.max_mismatch(q) / dmax;
    let found = residual <= cfg.tol;
    let polygon = found
        .then(|| RegularPolygon::new(n, point + Point2::new(q[0], 0.0), q[1], q[2]).ok())
        .flatten();
    OracleResult {
        found,
        polygon,
        residual,
        radius: q[1],
        offset: q[0],
        samples_evaluated: obj.evaluations,
    }
}

/// Parameters of the random instance generator.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceOptions {
    pub n_range: RangeInclusive<usize>,
    /// Force the point onto the circumcircle (`L = R`).
    pub on_circle: bool,
    /// Half-width of the excluded band of `L/R` around 1.
    pub band: f64,
}

impl Default for InstanceOptions {
    fn default() -> Self {
        InstanceOptions {
            n_range: 3..=12,
            on_circle: false,
            band: 5e-4,
        }
    }
}

/// A deterministic stream of random polygon/point instances.
///
/// `n` is uniform in range, `R` log-uniform in `[0.1, 10]`, `L/R` uniform in
/// `[0, 3]` minus the band around 1, phase and point azimuth uniform, and the
/// center uniform in `[-5, 5]²`.
#[derive(Debug, Clone)]
pub struct InstanceStream {
    rng: ChaCha8Rng,
    options: InstanceOptions,
}

impl InstanceStream {
    pub fn new(seed: u64, options: InstanceOptions) -> Self {
        assert!(
            options.n_range.start() >= &3 && !options.n_range.is_empty(),
            "n range must be nonempty and start at 3 or more"
        );
        InstanceStream {
            rng: ChaCha8Rng::seed_from_u64(seed),
            options,
        }
    }

    pub fn next_instance(&mut self) -> (RegularPolygon, Point2) {
        let rng = &mut self.rng;
        let n = rng.random_range(self.options.n_range.clone());
        let radius = 10f64.powf(rng.random_range(-1.0..=1.0));
        let ratio = if self.options.on_circle {
            1.0
        } else {
            loop {
                let t: f64 = rng.random_range(0.0..=3.0);
                if (t - 1.0).abs() > self.options.band {
                    break t;
                }
            }
        };
        let phase = rng.random_range(0.0..TAU);
        let azimuth = rng.random_range(0.0..TAU);
        let center = Point2::new(rng.random_range(-5.0..=5.0), rng.random_range(-5.0..=5.0));
        let polygon = RegularPolygon::new(n, center, radius, phase).expect("generated polygon is valid");
        (polygon, center.polar_offset(ratio * radius, azimuth))
    }
}

impl Iterator for InstanceStream {
    type Item = (RegularPolygon, Point2);

    fn next(&mut self) -> Option<Self::Item> {
        Some(self.next_instance())
    }
}

/// The first instance of the stream seeded with `seed`.
pub fn random_instance(seed: u64, n_range: RangeInclusive<usize>) -> (RegularPolygon, Point2) {
    InstanceStream::new(
        seed,
        InstanceOptions {
            n_range,
            ..InstanceOptions::default()
        },
    )
    .next_instance()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, SQRT_2};

    #[test]
    fn deterministic_instances() {
        assert_eq!(random_instance(7, 3..=12), random_instance(7, 3..=12));
        assert_ne!(random_instance(7, 3..=12), random_instance(8, 3..=12));
    }

    #[test]
    fn band_is_excluded() {
        let stream = InstanceStream::new(11, InstanceOptions::default());
        for (p, m) in stream.take(10_000) {
            let ratio = m.distance(p.center) / p.circumradius;
            assert!((ratio - 1.0).abs() > 5e-4 * 0.999, "{ratio}");
        }
    }

    #[test]
    fn on_circle_mode() {
        let opts = InstanceOptions {
            on_circle: true,
            ..InstanceOptions::default()
        };
        for (p, m) in InstanceStream::new(3, opts).take(100) {
            assert!((m.distance(p.center) / p.circumradius - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn finds_square_dual() {
        let sq = RegularPolygon::new(4, Point2::ORIGIN, SQRT_2, FRAC_PI_4).unwrap();
        let res = search_second_polygon(&sq, Point2::new(1.0, 0.0), &OracleConfig::default());
        assert!(res.found, "{res:?}");
        assert!(res.residual < 1e-6);
        assert!((res.radius - 1.0).abs() < 1e-6);
        assert!((res.offset - SQRT_2).abs() < 1e-6);
        assert!(res.samples_evaluated <= 1_000_000);
    }

    #[test]
    fn nothing_on_circumcircle() {
        let sq = RegularPolygon::new(4, Point2::ORIGIN, SQRT_2, FRAC_PI_4).unwrap();
        let res = search_second_polygon(&sq, Point2::new(SQRT_2, 0.0), &OracleConfig::default());
        assert!(!res.found, "{res:?}");
    }

    #[test]
    fn finds_equilateral_dual() {
        let r = 8.0 / 3f64.sqrt();
        let l = (19.0f64 / 3.0).sqrt();
        let t = RegularPolygon::new(3, Point2::ORIGIN, r, 0.0).unwrap();
        let m = Point2::ORIGIN.polar_offset(l, 0.8);
        let res = search_second_polygon(&t, m, &OracleConfig::default());
        assert!(res.found, "{res:?}");
        let side = res.polygon.unwrap().side_length();
        assert!((side - 19f64.sqrt()).abs() < 1e-6, "{side}");
    }
}
