//! Thermoelectric figure of merit ZT = S^2 sigma T / kappa.
//!
//!     cargo run --example zt

use zombi::objectives::compute_zt;

fn main() -> zombi::Result<()> {
    // Seebeck 200 uV/K, conductivity 1e5 S/m, thermal conductivity 2 W/(m K), 300 K.
    let zt = compute_zt(200e-6, 1e5, 2.0, 300.0)?;
    println!("ZT = {zt:.3}");
    Ok(())
}
