//! Widening the needle's basin with Gaussian smoothing and watching which
//! acquisition functions benefit.
//!
//!     cargo run --release --example smoothing_sweep

use zombi::bench::{run_smooth_sweep, write_sweep_csv};
use zombi::objectives::plant_needle;
use zombi::prelude::*;

fn main() -> zombi::Result<()> {
    let needle = plant_needle(3, 2_000, 0.01, -2.0, 4)?;
    let manifold = InterpolatedManifold::knn_idw(needle.dataset, 8)?;
    let base = ZombiConfig::new(manifold.bounds().clone()).with_budget(60)?;
    let rows = run_smooth_sweep(&manifold, &[0.02, 0.1, 0.3], &AcquisitionKind::ALL, 4, &base)?;
    write_sweep_csv(&rows, std::io::stdout())
}
