use super::manifold::InterpolatedManifold;
use crate::engine::Objective;
use crate::error::{Error, Result};
use crate::space::Bounds;

/// Nadaraya-Watson smoothing of a dataset's targets with a Gaussian kernel.
/// Larger bandwidths widen basins of attraction and make them shallower.
#[derive(Debug, Clone)]
pub struct SmoothedObjective {
    ranges: Bounds,
    rows: Vec<Vec<f64>>,
    target: Vec<f64>,
    bandwidth: f64,
}

/// Smooths the rows behind `manifold` with bandwidth `bandwidth`, measured in
/// range-normalized feature units.
pub fn gaussian_smooth(manifold: &InterpolatedManifold, bandwidth: f64) -> Result<SmoothedObjective> {
    if !(bandwidth > 0.0 && bandwidth.is_finite()) {
        return Err(Error::NonPositive("bandwidth"));
    }
    Ok(SmoothedObjective {
        ranges: manifold.bounds().clone(),
        rows: manifold.normalized_rows().to_vec(),
        target: manifold.dataset().target.clone(),
        bandwidth,
    })
}

impl SmoothedObjective {
    pub fn bandwidth(&self) -> f64 {
        self.bandwidth
    }

    pub fn bounds(&self) -> &Bounds {
        &self.ranges
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        let u = self.ranges.normalize(x);
        let sq: Vec<f64> = self
            .rows
            .iter()
            .map(|r| r.iter().zip(&u).map(|(a, b)| (a - b) * (a - b)).sum())
            .collect();
        // Shift by the nearest distance so tiny bandwidths do not underflow to 0/0.
        let nearest = sq.iter().copied().fold(f64::INFINITY, f64::min);
        let denom = 2.0 * self.bandwidth * self.bandwidth;
        let (num, den) = sq.iter().zip(&self.target).fold((0.0, 0.0), |(n, d), (&s, &y)| {
            let w = (-(s - nearest) / denom).exp();
            (n + w * y, d + w)
        });
        num / den
    }

    /// The smoothed surface evaluated at every dataset row.
    pub fn at_rows(&self) -> Vec<f64> {
        self.rows
            .iter()
            .map(|r| self.eval(&self.ranges.denormalize(r)))
            .collect()
    }
}

impl Objective for SmoothedObjective {
    fn evaluate(&self, x: &[f64]) -> f64 {
        self.eval(x)
    }
}
