#![allow(dead_code)]

use std::f64::consts::{PI, TAU};

use polydual::{Point2, RegularPolygon};
use rand::Rng;

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

pub fn log_uniform<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    (rng.random_range(lo.ln()..=hi.ln())).exp()
}

/// Two regular n-gons sharing one vertex, with circumradii at least 1%
/// apart. `collinear` puts both centers on one line through the shared
/// vertex, on opposite sides.
pub fn shared_vertex_pair<R: Rng>(rng: &mut R, n: usize, collinear: bool) -> (RegularPolygon, RegularPolygon) {
    let ra = log_uniform(rng, 0.2, 5.0);
    let rb = loop {
        let r = log_uniform(rng, 0.2, 5.0);
        if (r / ra - 1.0).abs() > 0.01 {
            break r;
        }
    };
    let v = Point2::new(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0));
    let a = rng.random_range(0.0..TAU);
    let b = if collinear { a + PI } else { rng.random_range(0.0..TAU) };
    polygons_through(v, n, [(ra, a, rng.random_range(0..n)), (rb, b, rng.random_range(0..n))])
}

/// Polygons whose centers sit at `V + r·(cos t, sin t)` and which have `V`
/// as vertex `k`.
pub fn polygons_through(v: Point2, n: usize, specs: [(f64, f64, usize); 2]) -> (RegularPolygon, RegularPolygon) {
    let [pa, pb] = specs.map(|(r, t, k)| {
        let center = v.polar_offset(r, t);
        let phase = center.azimuth_to(v) - TAU * k as f64 / n as f64;
        RegularPolygon::new(n, center, r, phase).expect("valid polygon")
    });
    (pa, pb)
}

/// A point of an equilateral triangle's plane with the triangle itself.
pub fn equilateral_with_point<R: Rng>(rng: &mut R) -> (RegularPolygon, Point2) {
    let r = log_uniform(rng, 0.1, 10.0);
    let p = RegularPolygon::new(
        3,
        Point2::new(rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0)),
        r,
        rng.random_range(0.0..TAU),
    )
    .expect("valid triangle");
    let m = p.center.polar_offset(r * rng.random_range(0.0..3.0), rng.random_range(0.0..TAU));
    (p, m)
}
