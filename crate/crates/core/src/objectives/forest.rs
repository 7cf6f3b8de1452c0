//! Bagged regression trees: bootstrap rows, random feature subsets per split,
//! depth-limited variance-reduction splits, mean-of-leaves prediction.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::Rng;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ForestParams {
    pub n_trees: usize,
    pub max_depth: usize,
    /// Features tried per split; `None` means `round(sqrt(d))`.
    pub max_features: Option<usize>,
    pub min_samples_leaf: usize,
    pub seed: u64,
}

impl Default for ForestParams {
    fn default() -> Self {
        ForestParams { n_trees: 100, max_depth: 12, max_features: None, min_samples_leaf: 1, seed: 0 }
    }
}

#[derive(Debug, Clone)]
enum Node {
    Leaf(f64),
    Split { feature: usize, threshold: f64, left: usize, right: usize },
}

#[derive(Debug, Clone)]
struct Tree {
    nodes: Vec<Node>,
}

impl Tree {
    fn predict(&self, x: &[f64]) -> f64 {
        let mut i = 0;
        loop {
            match self.nodes[i] {
                Node::Leaf(v) => return v,
                Node::Split { feature, threshold, left, right } => {
                    i = if x[feature] <= threshold { left } else { right };
                }
            }
        }
    }
}

struct Builder<'a> {
    x: &'a [Vec<f64>],
    y: &'a [f64],
    max_depth: usize,
    max_features: usize,
    min_leaf: usize,
    rng: Rng,
    nodes: Vec<Node>,
}

impl Builder<'_> {
    fn mean(&self, idx: &[usize]) -> f64 {
        idx.iter().map(|&i| self.y[i]).sum::<f64>() / idx.len() as f64
    }

    fn build(&mut self, idx: &mut [usize], depth: usize) -> usize {
        let id = self.nodes.len();
        self.nodes.push(Node::Leaf(self.mean(idx)));
        if depth >= self.max_depth || idx.len() < 2 * self.min_leaf {
            return id;
        }
        let Some((feature, threshold)) = self.best_split(idx) else {
            return id;
        };
        // Partition in place around the threshold.
        let mut mid = 0;
        for j in 0..idx.len() {
            if self.x[idx[j]][feature] <= threshold {
                idx.swap(j, mid);
                mid += 1;
            }
        }
        let (l, r) = idx.split_at_mut(mid);
        let left = self.build(l, depth + 1);
        let right = self.build(r, depth + 1);
        self.nodes[id] = Node::Split { feature, threshold, left, right };
        id
    }

    fn best_split(&mut self, idx: &[usize]) -> Option<(usize, f64)> {
        let d = self.x[0].len();
        let mut features: Vec<usize> = (0..d).collect();
        // Partial shuffle picks max_features distinct features.
        for i in 0..self.max_features.min(d) {
            let j = i + self.rng.below(d - i);
            features.swap(i, j);
        }
        let n = idx.len();
        let total: f64 = idx.iter().map(|&i| self.y[i]).sum();
        let mut best: Option<(f64, usize, f64)> = None;
        let mut order: Vec<usize> = idx.to_vec();
        for &f in &features[..self.max_features.min(d)] {
            order.sort_unstable_by(|&a, &b| self.x[a][f].total_cmp(&self.x[b][f]));
            let mut left_sum = 0.0;
            for split in 1..n {
                left_sum += self.y[order[split - 1]];
                let (lo, hi) = (self.x[order[split - 1]][f], self.x[order[split]][f]);
                if split < self.min_leaf || n - split < self.min_leaf || lo == hi {
                    continue;
                }
                let right_sum = total - left_sum;
                // Maximizing this is equivalent to minimizing the children's SSE.
                let score = left_sum * left_sum / split as f64 + right_sum * right_sum / (n - split) as f64;
                if best.map_or(true, |(s, _, _)| score > s) {
                    best = Some((score, f, 0.5 * (lo + hi)));
                }
            }
        }
        let (score, f, t) = best?;
        let parent = total * total / n as f64;
        (score > parent + 1e-12 * parent.abs().max(1.0)).then_some((f, t))
    }
}

/// An ensemble of bootstrapped regression trees.
#[derive(Debug, Clone)]
pub struct BaggedTrees {
    trees: Vec<Tree>,
}

impl BaggedTrees {
    pub fn fit(x: &[Vec<f64>], y: &[f64], params: &ForestParams) -> Result<Self> {
        if x.is_empty() || x.len() != y.len() {
            return Err(Error::EmptyDataset);
        }
        if params.n_trees == 0 || params.min_samples_leaf == 0 {
            return Err(Error::InvalidConfig("forest needs n_trees >= 1 and min_samples_leaf >= 1".into()));
        }
        let d = x[0].len();
        let max_features = params
            .max_features
            .unwrap_or_else(|| ((d as f64).sqrt().round() as usize).max(1))
            .clamp(1, d);
        let trees = (0..params.n_trees)
            .into_par_iter()
            .map(|t| {
                let mut rng = Rng::new(params.seed.wrapping_add(t as u64));
                let mut idx: Vec<usize> = (0..x.len()).map(|_| rng.below(x.len())).collect();
                let mut b = Builder {
                    x,
                    y,
                    max_depth: params.max_depth,
                    max_features,
                    min_leaf: params.min_samples_leaf,
                    rng,
                    nodes: Vec::new(),
                };
                b.build(&mut idx, 0);
                Tree { nodes: b.nodes }
            })
            .collect();
        Ok(BaggedTrees { trees })
    }

    pub fn n_trees(&self) -> usize {
        self.trees.len()
    }

    pub fn predict(&self, x: &[f64]) -> f64 {
        self.trees.iter().map(|t| t.predict(x)).sum::<f64>() / self.trees.len() as f64
    }
}
