//! Synthetic needle-in-a-haystack datasets.

use std::f64::consts::TAU;

use super::tabular::TabularDataset;
use crate::error::{Error, Result};
use crate::memory::ObjectiveSense;
use crate::rng::Rng;
use crate::space::Point;

/// Radius of the planted needle ball, in unit-cube coordinates.
pub const NEEDLE_RADIUS: f64 = 0.02;

/// A generated dataset together with its known optimum.
#[derive(Debug, Clone)]
pub struct PlantedNeedle {
    pub dataset: TabularDataset,
    pub center: Point,
    pub depth: f64,
    pub needle_rows: usize,
}

/// Rough multimodal surface in `[0, 1]`: a broad funnel toward `center` plus
/// a ripple with many local minima. Zero only at `center`.
fn background(x: &[f64], center: &[f64]) -> f64 {
    let n = x.len() as f64;
    let rms = (x.iter().zip(center).map(|(a, c)| (a - c) * (a - c)).sum::<f64>() / n).sqrt();
    let funnel = (1.0 - (-5.0 * rms).exp()) / (1.0 - (-5.0f64).exp());
    let ripple = 0.5 * (1.0 - x.iter().zip(center).map(|(a, c)| (TAU * 5.0 * (a - c)).cos()).sum::<f64>() / n);
    (0.75 * funnel + 0.25 * ripple).clamp(0.0, 1.0)
}

/// Generates `n_rows` points in `[0, 1]^d`. Most rows carry the background
/// surface; `ceil(needle_fraction * n_rows)` rows sit inside a ball of radius
/// [`NEEDLE_RADIUS`] around a random center with targets falling linearly
/// from 0 at the rim to `needle_depth` at the center. One needle row is the
/// center itself, so the dataset minimum is exactly `needle_depth` there.
pub fn plant_needle(d: usize, n_rows: usize, needle_fraction: f64, needle_depth: f64, seed: u64) -> Result<PlantedNeedle> {
    if d == 0 || n_rows == 0 {
        return Err(Error::InvalidConfig("needle dataset needs d >= 1 and n_rows >= 1".into()));
    }
    if !(needle_fraction > 0.0 && needle_fraction < 0.05) {
        return Err(Error::InvalidConfig(format!("needle_fraction must be in (0, 0.05), got {needle_fraction}")));
    }
    if !(needle_depth < 0.0 && needle_depth.is_finite()) {
        return Err(Error::InvalidConfig(format!("needle_depth must be negative, got {needle_depth}")));
    }
    let exact = needle_fraction * n_rows as f64;
    if exact < 1.0 {
        return Err(Error::EmptyNeedle);
    }
    // Guard against 0.008 * 10_000 = 80.00000000000001 style round-up.
    let needle_rows = (exact - 1e-9 * exact).ceil() as usize;

    let mut rng = Rng::new(seed);
    let center: Vec<f64> = (0..d).map(|_| rng.uniform(0.2, 0.8)).collect();
    let mut features = Vec::with_capacity(n_rows);
    let mut target = Vec::with_capacity(n_rows);
    for _ in 0..n_rows - needle_rows {
        let x: Vec<f64> = (0..d).map(|_| rng.next_f64()).collect();
        target.push(background(&x, &center));
        features.push(x);
    }
    features.push(center.clone());
    target.push(needle_depth);
    for _ in 1..needle_rows {
        let mut dir: Vec<f64> = (0..d).map(|_| rng.normal()).collect();
        let norm = dir.iter().map(|v| v * v).sum::<f64>().sqrt().max(f64::MIN_POSITIVE);
        dir.iter_mut().for_each(|v| *v /= norm);
        let r = NEEDLE_RADIUS * rng.next_open01();
        features.push(center.iter().zip(&dir).map(|(c, u)| c + r * u).collect());
        target.push(needle_depth * (1.0 - r / NEEDLE_RADIUS));
    }

    let names = (1..=d).map(|j| format!("x{j}")).collect();
    let dataset = TabularDataset::new(names, features, "y".into(), target, ObjectiveSense::Minimize)?;
    Ok(PlantedNeedle { dataset, center: Point::new(center)?, depth: needle_depth, needle_rows })
}
