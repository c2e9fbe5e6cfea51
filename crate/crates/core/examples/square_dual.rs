//! The smallest worked example: a square, a point, and its dual square.

use std::f64::consts::{FRAC_PI_4, SQRT_2};

use polydual::dual::{classify_point, solve};
use polydual::{Point2, RegularPolygon};

fn main() -> polydual::Result<()> {
    let square = RegularPolygon::new(4, Point2::ORIGIN, SQRT_2, FRAC_PI_4)?;
    let m = Point2::new(1.0, 0.0);
    let d = square.distances_from(m);
    println!("distances from M: {:?}", d.values());

    let sol = solve(&d, 1e-9)?;
    println!("discriminant      {}", sol.discriminant);
    println!("(R1, L1)          ({}, {})", sol.larger.r, sol.larger.l);
    println!("(R2, L2)          ({}, {})", sol.smaller.r, sol.smaller.l);
    println!("point class       {:?}", classify_point(&sol));
    Ok(())
}
