//! Two squares sharing a vertex and the two points that see both alike.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, SQRT_2};

use polydual::two_points::two_points;
use polydual::{Point2, RegularPolygon};

fn main() -> polydual::Result<()> {
    let a = RegularPolygon::new(4, Point2::ORIGIN, SQRT_2, FRAC_PI_4)?;
    let b = RegularPolygon::new(4, Point2::new(1.0, 2.0), 1.0, 3.0 * FRAC_PI_2)?;
    let sol = two_points(&a, &b, 1e-9)?;
    println!("shared vertex: A{} = B{}", sol.shared_vertex.0 + 1, sol.shared_vertex.1 + 1);
    for m in &sol.matches {
        println!("point ({:.6}, {:.6})", m.point.x, m.point.y);
        println!("  to A: {:?}", m.distances_a.values());
        println!("  to B: {:?}", m.distances_b.values());
        println!("  permutation: {:?}", m.permutation.permutation().unwrap_or_default());
    }
    Ok(())
}
