//! Median final best of each acquisition function over a small seeded ensemble.
//!
//!     cargo run --release --example acquisition_comparison

use zombi::prelude::*;

fn main() -> zombi::Result<()> {
    let ackley = Ackley::new(5, 3.0);
    let runs = 8;
    println!("{:<14} {:>10} {:>10}", "acquisition", "zombi", "plain-bo");
    for kind in AcquisitionKind::ALL {
        let config = ZombiConfig::new(ackley.bounds()?).with_acquisition(kind);
        let z = run_ensemble(&ackley, &config, Mode::Zombi, runs)?;
        let p = run_ensemble(&ackley, &config, Mode::PlainBo, runs)?;
        println!("{:<14} {:>10.4} {:>10.4}", kind, z.median_final_best(), p.median_final_best());
    }
    Ok(())
}
