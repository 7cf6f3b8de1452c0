//! Latin Hypercube initialization and uniform candidate sets.

use crate::error::{Error, Result};
use crate::rng::Rng;
use crate::space::{Bounds, Point};

/// `n` Latin Hypercube points: each dimension is cut into `n` equal strata and
/// every stratum holds exactly one point, with an independent random
/// stratum-to-point permutation per dimension.
pub fn latin_hypercube(n: usize, bounds: &Bounds, rng: &mut Rng) -> Result<Vec<Point>> {
    if n == 0 {
        return Err(Error::InvalidConfig("LHS sample count must be at least 1".into()));
    }
    if !bounds.is_non_degenerate() {
        return Err(Error::InvalidConfig("LHS requires non-degenerate bounds".into()));
    }
    let dim = bounds.dim();
    let mut coords = vec![vec![0.0; dim]; n];
    let mut strata: Vec<usize> = (0..n).collect();
    for d in 0..dim {
        rng.shuffle(&mut strata);
        let (lo, hi) = (bounds.lower()[d], bounds.upper()[d]);
        let width = hi - lo;
        for (point, &stratum) in coords.iter_mut().zip(&strata) {
            let t = (stratum as f64 + rng.next_open01()) / n as f64;
            point[d] = (lo + t * width).min(hi);
        }
    }
    Ok(coords.into_iter().map(Point::from_vec_unchecked).collect())
}

/// `n` i.i.d. uniform points inside `bounds`.
pub fn uniform_candidates(n: usize, bounds: &Bounds, rng: &mut Rng) -> Vec<Point> {
    (0..n)
        .map(|_| {
            Point::from_vec_unchecked(
                (0..bounds.dim())
                    .map(|d| rng.uniform(bounds.lower()[d], bounds.upper()[d]))
                    .collect(),
            )
        })
        .collect()
}
