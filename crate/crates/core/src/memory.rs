//! Evaluated samples, the pruned memory, and the zooming-bounds computation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::{Bounds, Point};

/// Direction of the user objective. Interior code always minimizes; maximization
/// problems are negated where the objective is called.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ObjectiveSense {
    #[default]
    Minimize,
    Maximize,
}

impl ObjectiveSense {
    /// Converts a raw objective value into the internal minimization convention.
    /// The map is its own inverse.
    pub fn to_internal(self, y: f64) -> f64 {
        match self {
            ObjectiveSense::Minimize => y,
            ObjectiveSense::Maximize => -y,
        }
    }

    pub fn to_external(self, y: f64) -> f64 {
        self.to_internal(y)
    }
}

impl std::str::FromStr for ObjectiveSense {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "min" | "minimize" => Ok(ObjectiveSense::Minimize),
            "max" | "maximize" => Ok(ObjectiveSense::Maximize),
            other => Err(format!("unknown sense `{other}` (expected min or max)")),
        }
    }
}

/// One objective evaluation. `y` is stored in the minimization convention.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluatedSample {
    pub x: Point,
    pub y: f64,
    pub iteration: usize,
    pub activation: usize,
}

/// Samples the surrogate is currently trained on. Cleared at every activation.
#[derive(Debug, Clone, Default)]
pub struct MemoryBank {
    samples: Vec<EvaluatedSample>,
}

impl MemoryBank {
    pub fn new() -> Self {
        Self::default()
    }

    /// Replaces the whole memory (the pruning step).
    pub fn overwrite(&mut self, samples: Vec<EvaluatedSample>) {
        self.samples = samples;
    }

    pub fn push(&mut self, sample: EvaluatedSample) {
        self.samples.push(sample);
    }

    pub fn samples(&self) -> &[EvaluatedSample] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Lowest `y` currently held, the incumbent for expected improvement.
    pub fn incumbent(&self) -> Option<f64> {
        self.samples.iter().map(|s| s.y).min_by(f64::total_cmp)
    }
}

/// Picks the `m` best samples by ascending `y`, after dropping repeated `y`
/// values (the earliest iteration of each value survives).
pub fn select_memory(history: &[EvaluatedSample], m: usize) -> Result<Vec<EvaluatedSample>> {
    if history.is_empty() {
        return Err(Error::EmptyMemory);
    }
    if m == 0 {
        return Err(Error::InvalidConfig("memory size m must be at least 1".into()));
    }
    let mut ranked: Vec<&EvaluatedSample> = history.iter().collect();
    ranked.sort_by(|a, b| a.y.total_cmp(&b.y).then(a.iteration.cmp(&b.iteration)));
    ranked.dedup_by(|later, earlier| later.y == earlier.y);
    Ok(ranked.into_iter().take(m).cloned().collect())
}

/// Componentwise min/max box around `memory`. A dimension narrower than
/// `epsilon_expand` times the original range is widened symmetrically to that
/// width, then clipped to `original`.
pub fn compute_zoom_bounds(
    memory: &[EvaluatedSample],
    original: &Bounds,
    epsilon_expand: f64,
) -> Result<Bounds> {
    compute_zoom_bounds_within(memory, original, original, epsilon_expand)
}

/// As [`compute_zoom_bounds`], but clips widened dimensions to `enclosing`
/// instead of `original`. The engine passes the previous activation's window
/// so successive windows stay nested; the minimum width is still measured
/// against `original`.
pub fn compute_zoom_bounds_within(
    memory: &[EvaluatedSample],
    original: &Bounds,
    enclosing: &Bounds,
    epsilon_expand: f64,
) -> Result<Bounds> {
    let first = memory.first().ok_or(Error::EmptyMemory)?;
    let dim = original.dim();
    for s in memory {
        if s.x.dim() != dim {
            return Err(Error::DimensionMismatch { expected: dim, actual: s.x.dim() });
        }
    }
    if enclosing.dim() != dim {
        return Err(Error::DimensionMismatch { expected: dim, actual: enclosing.dim() });
    }

    let mut lower = first.x.clone().into_inner();
    let mut upper = lower.clone();
    for s in &memory[1..] {
        for d in 0..dim {
            lower[d] = lower[d].min(s.x[d]);
            upper[d] = upper[d].max(s.x[d]);
        }
    }

    for d in 0..dim {
        let min_width = epsilon_expand * original.width(d);
        if upper[d] - lower[d] < min_width {
            let mid = 0.5 * (lower[d] + upper[d]);
            let (lo, hi) = (enclosing.lower()[d], enclosing.upper()[d]);
            // The clip never cuts off a memory point: they already lie in the enclosing box.
            lower[d] = (mid - 0.5 * min_width).max(lo).min(lower[d]);
            upper[d] = (mid + 0.5 * min_width).min(hi).max(upper[d]);
        }
    }

    Bounds::new(Point::new(lower)?, Point::new(upper)?)
}
