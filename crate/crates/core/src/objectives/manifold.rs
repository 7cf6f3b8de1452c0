use serde::{Deserialize, Serialize};

use super::forest::{BaggedTrees, ForestParams};
use super::tabular::TabularDataset;
use crate::engine::Objective;
use crate::error::{Error, Result};
use crate::space::Bounds;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Interpolator {
    /// Inverse-squared-distance average of the `k` nearest rows.
    KnnIdw { k: usize },
    BaggedTrees(ForestParams),
}

impl Default for Interpolator {
    fn default() -> Self {
        Interpolator::KnnIdw { k: 8 }
    }
}

/// A continuous objective over a dataset's feature box.
///
/// Distances are measured after scaling every feature column to `[0, 1]`.
#[derive(Debug, Clone)]
pub struct InterpolatedManifold {
    dataset: TabularDataset,
    ranges: Bounds,
    rows: Vec<Vec<f64>>,
    kind: Interpolator,
    forest: Option<BaggedTrees>,
}

impl InterpolatedManifold {
    pub fn new(dataset: TabularDataset, kind: Interpolator) -> Result<Self> {
        let ranges = dataset.ranges();
        let rows: Vec<Vec<f64>> = dataset.features.iter().map(|r| ranges.normalize(r)).collect();
        let forest = match kind {
            Interpolator::KnnIdw { k } => {
                if k == 0 {
                    return Err(Error::InvalidConfig("knn_idw needs k >= 1".into()));
                }
                None
            }
            Interpolator::BaggedTrees(params) => Some(BaggedTrees::fit(&rows, &dataset.target, &params)?),
        };
        Ok(InterpolatedManifold { dataset, ranges, rows, kind, forest })
    }

    pub fn knn_idw(dataset: TabularDataset, k: usize) -> Result<Self> {
        Self::new(dataset, Interpolator::KnnIdw { k })
    }

    pub fn dataset(&self) -> &TabularDataset {
        &self.dataset
    }

    pub fn kind(&self) -> Interpolator {
        self.kind
    }

    /// The feature bounding box.
    pub fn bounds(&self) -> &Bounds {
        &self.ranges
    }

    /// Dataset rows in normalized coordinates.
    pub(crate) fn normalized_rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn normalize(&self, x: &[f64]) -> Vec<f64> {
        self.ranges.normalize(x)
    }

    /// Value of the manifold at `x` (problem units, raw target direction).
    pub fn eval(&self, x: &[f64]) -> f64 {
        let u = self.normalize(x);
        match (&self.kind, &self.forest) {
            (_, Some(forest)) => forest.predict(&u),
            (Interpolator::KnnIdw { k }, None) => self.idw(&u, *k),
            (Interpolator::BaggedTrees(_), None) => unreachable!("forest fitted at construction"),
        }
    }

    fn idw(&self, u: &[f64], k: usize) -> f64 {
        let mut dist: Vec<(f64, usize)> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| (r.iter().zip(u).map(|(a, b)| (a - b) * (a - b)).sum::<f64>(), i))
            .collect();
        let k = k.min(dist.len());
        let cmp = |a: &(f64, usize), b: &(f64, usize)| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1));
        if k < dist.len() {
            dist.select_nth_unstable_by(k - 1, cmp);
        }
        let nearest = &mut dist[..k];
        nearest.sort_unstable_by(cmp);
        if nearest[0].0 == 0.0 {
            return self.dataset.target[nearest[0].1];
        }
        let (num, den) = nearest.iter().fold((0.0, 0.0), |(n, d), &(sq, i)| {
            let w = 1.0 / sq;
            (n + w * self.dataset.target[i], d + w)
        });
        num / den
    }
}

impl Objective for InterpolatedManifold {
    fn evaluate(&self, x: &[f64]) -> f64 {
        self.eval(x)
    }
}

/// Free-function form of [`InterpolatedManifold::eval`].
pub fn manifold_eval(m: &InterpolatedManifold, x: &[f64]) -> f64 {
    m.eval(x)
}
