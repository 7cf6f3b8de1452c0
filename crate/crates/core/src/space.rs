//! Points and axis-aligned boxes in problem units.

use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A design point in `d >= 1` dimensions with finite coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyPoint);
        }
        if let Some((index, &value)) = coords.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFiniteCoordinate { index, value });
        }
        Ok(Point(coords))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    // Internal constructor for coordinates produced by in-bounds arithmetic.
    pub(crate) fn from_vec_unchecked(coords: Vec<f64>) -> Self {
        debug_assert!(!coords.is_empty() && coords.iter().all(|v| v.is_finite()));
        Point(coords)
    }
}

impl Deref for Point {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl TryFrom<Vec<f64>> for Point {
    type Error = Error;

    fn try_from(coords: Vec<f64>) -> Result<Self> {
        Point::new(coords)
    }
}

/// Per-dimension lower/upper search limits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    lower: Point,
    upper: Point,
}

impl Bounds {
    pub fn new(lower: Point, upper: Point) -> Result<Self> {
        if lower.dim() != upper.dim() {
            return Err(Error::DimensionMismatch {
                expected: lower.dim(),
                actual: upper.dim(),
            });
        }
        for (dim, (&lo, &hi)) in lower.iter().zip(upper.iter()).enumerate() {
            if lo > hi {
                return Err(Error::InvertedBounds { dim, lower: lo, upper: hi });
            }
        }
        Ok(Bounds { lower, upper })
    }

    /// Same interval `[lower, upper]` in every one of `dim` dimensions.
    pub fn uniform(dim: usize, lower: f64, upper: f64) -> Result<Self> {
        Bounds::new(Point::new(vec![lower; dim])?, Point::new(vec![upper; dim])?)
    }

    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        let (lo, hi): (Vec<f64>, Vec<f64>) = pairs.iter().copied().unzip();
        Bounds::new(Point::new(lo)?, Point::new(hi)?)
    }

    pub fn dim(&self) -> usize {
        self.lower.dim()
    }

    pub fn lower(&self) -> &Point {
        &self.lower
    }

    pub fn upper(&self) -> &Point {
        &self.upper
    }

    pub fn width(&self, dim: usize) -> f64 {
        self.upper[dim] - self.lower[dim]
    }

    /// True when every dimension has positive width.
    pub fn is_non_degenerate(&self) -> bool {
        (0..self.dim()).all(|d| self.width(d) > 0.0)
    }

    /// Inclusive box membership.
    pub fn contains(&self, x: &[f64]) -> Result<bool> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: x.len(),
            });
        }
        Ok(x
            .iter()
            .zip(self.lower.iter().zip(self.upper.iter()))
            .all(|(&v, (&lo, &hi))| lo <= v && v <= hi))
    }

    /// Componentwise containment of `other` inside `self`.
    pub fn encloses(&self, other: &Bounds) -> bool {
        self.dim() == other.dim()
            && (0..self.dim())
                .all(|d| self.lower[d] <= other.lower[d] && other.upper[d] <= self.upper[d])
    }

    /// Maps `x` into `[0, 1]^d` relative to this box. Zero-width dimensions map to 0.
    pub fn normalize(&self, x: &[f64]) -> Vec<f64> {
        x.iter()
            .enumerate()
            .map(|(d, &v)| {
                let w = self.width(d);
                if w > 0.0 {
                    (v - self.lower[d]) / w
                } else {
                    0.0
                }
            })
            .collect()
    }

    pub fn denormalize(&self, u: &[f64]) -> Vec<f64> {
        u.iter()
            .enumerate()
            .map(|(d, &v)| (self.lower[d] + v * self.width(d)).clamp(self.lower[d], self.upper[d]))
            .collect()
    }
}
