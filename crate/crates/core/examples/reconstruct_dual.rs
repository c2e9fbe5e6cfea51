//! Builds the second polygon for several positions of its center. Every
//! choice reproduces the original distance multiset.

use std::f64::consts::TAU;

use polydual::geometry::multiset_equal;
use polydual::reconstruction::{construct_dual, verify_permutation};
use polydual::{Point2, RegularPolygon};

fn main() -> polydual::Result<()> {
    let p = RegularPolygon::new(7, Point2::new(1.0, -0.5), 2.0, 0.3)?;
    let m = Point2::new(1.8, 0.4);
    let d = p.distances_from(m);
    println!("R = {}, L = {:.6}", p.circumradius, m.distance(p.center));

    for k in 0..6 {
        let dir = TAU * k as f64 / 6.0;
        let pair = construct_dual(&p, m, dir, 1e-9)?;
        let b = &pair.b_polygon;
        let x = pair.b_distances();
        let perm = verify_permutation(&d, &x, 1e-9)?;
        println!(
            "direction {dir:.3}: center ({:.4}, {:.4}) radius {:.6} match {} permutation {:?}",
            b.center.x,
            b.center.y,
            b.circumradius,
            multiset_equal(&d, &x, 1e-9)?,
            perm.permutation().unwrap_or_default()
        );
    }
    Ok(())
}
