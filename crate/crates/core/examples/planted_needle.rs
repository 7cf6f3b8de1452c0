//! A synthetic needle in a haystack: 10 000 rows, 0.8% of them in a tiny ball.
//!
//!     cargo run --release --example planted_needle

use zombi::objectives::plant_needle;
use zombi::prelude::*;

fn main() -> zombi::Result<()> {
    let needle = plant_needle(5, 10_000, 0.008, -2.0, 1)?;
    println!("{} needle rows around {:?}", needle.needle_rows, needle.center.coords());

    let manifold = InterpolatedManifold::knn_idw(needle.dataset, 8)?;
    let config = ZombiConfig::new(manifold.bounds().clone());
    for mode in [Mode::Zombi, Mode::PlainBo] {
        let result = run_ensemble(&manifold, &config, mode, 12)?;
        let finals = result.final_best();
        let hits = finals.iter().filter(|&&y| y <= needle.depth / 2.0).count();
        println!("{mode:<9} median best {:.3}, {hits}/12 runs reached half the needle depth", result.median_final_best());
    }
    Ok(())
}
