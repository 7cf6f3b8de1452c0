use crate::error::{Error, Result};

/// Thermoelectric figure of merit `S^2 sigma T / kappa` (dimensionless) from the
/// Seebeck coefficient (V/K), electrical conductivity (S/m), thermal
/// conductivity (W/(m K)) and temperature (K).
pub fn compute_zt(seebeck: f64, elec_conductivity: f64, thermal_conductivity: f64, temperature: f64) -> Result<f64> {
    if !(elec_conductivity > 0.0) {
        return Err(Error::NonPositive("electrical conductivity"));
    }
    if !(thermal_conductivity > 0.0) {
        return Err(Error::NonPositive("thermal conductivity"));
    }
    if !(temperature > 0.0) {
        return Err(Error::NonPositive("temperature"));
    }
    Ok(seebeck * seebeck * elec_conductivity * temperature / thermal_conductivity)
}
