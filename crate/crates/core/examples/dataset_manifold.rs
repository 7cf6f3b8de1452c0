//! Optimizing over a tabular dataset.
//!
//! Builds a small CSV in memory (two features, one target to maximize),
//! turns it into a continuous objective with k-NN inverse-distance weighting
//! and with bagged trees, and runs the optimizer on both.
//!
//!     cargo run --release --example dataset_manifold

use zombi::objectives::ForestParams;
use zombi::prelude::*;
use zombi::rng::Rng;

fn main() -> zombi::Result<()> {
    let mut rng = Rng::new(3);
    let mut csv = String::from("density,band_gap,figure_of_merit\n");
    for _ in 0..400 {
        let (a, b) = (rng.uniform(1.0, 9.0), rng.uniform(0.0, 4.0));
        let merit = (-((a - 6.5).powi(2) + 4.0 * (b - 1.2).powi(2))).exp() + 0.05 * (3.0 * a).sin();
        csv.push_str(&format!("{a},{b},{merit}\n"));
    }
    csv.push_str("n/a,1.0,0.3\n");

    let ds = TabularDataset::from_reader(csv.as_bytes(), "figure_of_merit", ObjectiveSense::Maximize)?;
    println!("{} rows, {} features, {} dropped", ds.n_rows(), ds.dim(), ds.dropped_rows);
    let row = ds.best_row();
    println!("best row: {:?} -> {:.4}", ds.features[row], ds.target[row]);

    for kind in [Interpolator::default(), Interpolator::BaggedTrees(ForestParams { n_trees: 30, ..Default::default() })] {
        let manifold = InterpolatedManifold::new(ds.clone(), kind)?;
        let mut config = ZombiConfig::new(manifold.bounds().clone()).with_seed(1);
        config.sense = ObjectiveSense::Maximize;
        let trace = run_zombi(&manifold, &config)?;
        let best = trace.best();
        println!("{:?}: best {:.4} at {:?}", kind, trace.best_value(), best.x.coords());
    }
    Ok(())
}
