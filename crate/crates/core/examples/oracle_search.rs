//! Finds the second polygon by brute force and compares it to the closed
//! forms. The search knows nothing about them.

use polydual::dual::solve;
use polydual::oracle::{search_second_polygon, InstanceOptions, InstanceStream, OracleConfig};

fn main() -> polydual::Result<()> {
    let opts = InstanceOptions {
        n_range: 3..=8,
        ..InstanceOptions::default()
    };
    let cfg = OracleConfig::default();
    for (p, m) in InstanceStream::new(2024, opts).take(8) {
        let (r, l) = (p.circumradius, m.distance(p.center));
        let found = search_second_polygon(&p, m, &cfg);
        let sol = solve(&p.distances_from(m), 1e-9)?;
        println!(
            "n={} R={r:.5} L={l:.5} -> search r={:.5} l={:.5} (closed form {:.5}, {:.5}) residual {:.1e} in {} evaluations",
            p.n,
            found.radius,
            found.offset,
            if r > l { sol.smaller.r } else { sol.larger.r },
            if r > l { sol.smaller.l } else { sol.larger.l },
            found.residual,
            found.samples_evaluated
        );
    }
    Ok(())
}
