//! Per-step surrogate cost: bounded for the zooming optimizer, growing for plain BO.
//!
//!     cargo run --release --example timing

use zombi::bench::run_timing;
use zombi::prelude::*;

fn main() -> zombi::Result<()> {
    let ackley = Ackley::new(5, 3.0);
    let report = run_timing(&ackley, &ZombiConfig::new(ackley.bounds()?), 300)?;
    println!("plain BO fit time, last decile / first decile: {:.1}x", report.plain_bo_fit_growth);
    println!("zombi fit time, last activation / first:       {:.2}x", report.zombi_flatness_ratio);
    println!("largest surrogate: zombi {} points, plain BO {} points", report.zombi_max_surrogate_n, report.budget - 1);
    println!("final-step speedup: {:.1}x", report.final_speedup);
    Ok(())
}
