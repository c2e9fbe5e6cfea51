//! Writes the three figure scenes as SVG files into a directory (default
//! `figures/`).

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, SQRT_2};
use std::path::PathBuf;

use polydual::pompeiu::construct_both_triangles;
use polydual::reconstruction::construct_dual;
use polydual::svg::{dual_scene, pompeiu_scene, two_points_scene};
use polydual::two_points::two_points;
use polydual::{Point2, RegularPolygon};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "figures".into()));
    std::fs::create_dir_all(&dir)?;

    let square = RegularPolygon::new(4, Point2::ORIGIN, SQRT_2, FRAC_PI_4)?;
    let pair = construct_dual(&square, Point2::new(1.0, 0.0), 0.0, 1e-9)?;
    let other = RegularPolygon::new(4, Point2::new(1.0, 2.0), 1.0, 3.0 * FRAC_PI_2)?;
    let sol = two_points(&square, &other, 1e-9)?;
    let triangles = construct_both_triangles(3.0, 5.0, 7.0, 1e-9)?;

    let scenes = [
        ("square_dual.svg", dual_scene(&pair, true)),
        ("two_points.svg", two_points_scene(&square, &other, &sol)),
        ("pompeiu.svg", pompeiu_scene(&triangles)),
    ];
    for (name, fig) in scenes {
        let path = dir.join(name);
        std::fs::write(&path, fig.to_svg())?;
        println!("{} {:?}", path.display(), fig.counts());
    }
    Ok(())
}
