//! Even-power averages of vertex distances do not depend on the polygon's
//! rotation until the power reaches 2n.

use polydual::averages::{averages_from_distances, averages_from_radius_offset, check_consistency, power_averages};
use polydual::{Distances, Point2, RegularPolygon};

fn main() -> polydual::Result<()> {
    let n = 5;
    let m = Point2::new(0.4, -0.3);
    println!("phase   S(2) .. S(2n-2) then S(2n)");
    for phase in [0.0, 0.2, 0.7] {
        let d = RegularPolygon::new(n, Point2::ORIGIN, 1.0, phase)?.distances_from(m);
        let sums = power_averages(&d, n);
        println!("{phase:.1}   {:?}", sums);
    }

    let closed = averages_from_radius_offset(n, 1.0, m.norm())?;
    println!("closed form       {:?}", closed.values());

    let d = RegularPolygon::new(n, Point2::ORIGIN, 1.0, 0.0)?.distances_from(m);
    let report = check_consistency(&averages_from_distances(&d)?, 1e-8);
    println!("consistency on real distances: {}", report.pass);

    let mut bent = d.into_values();
    bent[2] *= 1.01;
    let report = check_consistency(&averages_from_distances(&Distances::new(bent)?)?, 1e-8);
    let worst = report.worst().map(|c| c.relative_residual).unwrap_or(0.0);
    println!("after a 1% change to one distance: {} (worst residual {worst:.2e})", report.pass);
    Ok(())
}
