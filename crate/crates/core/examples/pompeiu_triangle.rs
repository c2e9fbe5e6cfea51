//! Distances 3, 5, 7 from a point to the vertices of an equilateral
//! triangle: two triangles fit, with sides 8 and √19.

use polydual::pompeiu::{construct_both_triangles, pompeiu_from_distances, solve_equilateral, weitzenbock_margin};

fn main() -> polydual::Result<()> {
    let tri = pompeiu_from_distances(3.0, 5.0, 7.0, 1e-9)?;
    println!("Pompeiu triangle area {:.6}, Weitzenböck margin {:.6}", tri.area, weitzenbock_margin(&tri));

    let eq = solve_equilateral(&tri);
    println!("sides {} and {} (√19 = {})", eq.larger_side, eq.smaller_side, 19f64.sqrt());

    let k = construct_both_triangles(3.0, 5.0, 7.0, 1e-9)?;
    for (name, t) in [("larger ", k.larger), ("smaller", k.smaller)] {
        let d: Vec<f64> = t.iter().map(|v| k.point.distance(*v)).collect();
        println!("{name} vertices {:?}", t.map(|v| (v.x, v.y)));
        println!("        distances from M {d:?}");
    }

    match pompeiu_from_distances(1.0, 1.0, 5.0, 1e-9) {
        Ok(_) => println!("1, 1, 5 accepted?"),
        Err(e) => println!("1, 1, 5 rejected: {e}"),
    }
    Ok(())
}
