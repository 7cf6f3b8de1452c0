use std::f64::consts::{E, PI};

use crate::engine::Objective;
use crate::error::Result;
use crate::space::Bounds;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AckleyParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// Input multiplier; values above 1 narrow the central basin.
    pub scale: f64,
}

impl Default for AckleyParams {
    fn default() -> Self {
        AckleyParams { a: 20.0, b: 0.2, c: 2.0 * PI, scale: 1.0 }
    }
}

pub fn ackley_with(x: &[f64], p: &AckleyParams) -> f64 {
    let n = x.len() as f64;
    let sq = x.iter().map(|v| (v * p.scale).powi(2)).sum::<f64>() / n;
    let cos = x.iter().map(|v| (p.c * v * p.scale).cos()).sum::<f64>() / n;
    -p.a * (-p.b * sq.sqrt()).exp() - cos.exp() + p.a + E
}

/// Ackley function with the standard constants; global minimum 0 at the origin.
pub fn ackley(x: &[f64], scale: f64) -> f64 {
    ackley_with(x, &AckleyParams { scale, ..Default::default() })
}

/// The Ackley needle over a symmetric box.
#[derive(Debug, Clone)]
pub struct Ackley {
    pub dim: usize,
    pub params: AckleyParams,
    pub half_width: f64,
}

impl Ackley {
    /// `dim`-dimensional Ackley on `[-5, 5]^dim` with the given basin scale.
    pub fn new(dim: usize, scale: f64) -> Self {
        Ackley { dim, params: AckleyParams { scale, ..Default::default() }, half_width: 5.0 }
    }

    pub fn bounds(&self) -> Result<Bounds> {
        Bounds::uniform(self.dim, -self.half_width, self.half_width)
    }
}

impl Objective for Ackley {
    fn evaluate(&self, x: &[f64]) -> f64 {
        ackley_with(x, &self.params)
    }
}
