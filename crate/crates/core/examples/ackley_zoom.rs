//! Zooming BO on the narrow-basin 5-D Ackley function.
//!
//! Prints each activation's search window so the shrinking bounds are visible,
//! then compares the final best against plain BO on the same budget and seed.
//!
//!     cargo run --release --example ackley_zoom

use zombi::prelude::*;

fn main() -> zombi::Result<()> {
    let ackley = Ackley::new(5, 3.0);
    let config = ZombiConfig::new(ackley.bounds()?).with_seed(7);

    let trace = run_zombi(&ackley, &config)?;
    for act in &trace.activations {
        let widths: Vec<String> = (0..trace.dim()).map(|d| format!("{:.3}", act.bounds.width(d))).collect();
        let best = act.memory.first().map(|s| s.y).unwrap_or(f64::NAN);
        println!("activation {}: widths [{}], memory best {:.4}", act.index, widths.join(", "), best);
    }
    let best = trace.best();
    println!("zombi    best y = {:.4} at {:?}", best.y, best.x.coords());

    let plain = run_plain_bo(&ackley, &config)?;
    println!("plain BO best y = {:.4}", plain.best().y);
    Ok(())
}
