//! Independent reference implementations used by the integration and
//! acceptance tests. Nothing here calls into the library's numerics.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use rand::rngs::StdRng;
use rand::{Rng as _, SeedableRng};
use rand_distr::{Distribution, Normal};

/// A random GP regression problem in raw (unnormalized) coordinates.
pub struct GpProblem {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub x: Vec<Vec<f64>>,
    pub y: Vec<f64>,
    pub queries: Vec<Vec<f64>>,
    pub length_scale: f64,
    pub nugget: f64,
}

pub fn random_gp_problem(rng: &mut StdRng) -> GpProblem {
    let d = rng.gen_range(1..=4);
    let n = rng.gen_range(1..=8);
    let lower: Vec<f64> = (0..d).map(|_| rng.gen_range(-10.0..0.0)).collect();
    let upper: Vec<f64> = lower.iter().map(|l| l + rng.gen_range(0.5..20.0)).collect();
    let draw = |rng: &mut StdRng| -> Vec<f64> { lower.iter().zip(&upper).map(|(l, u)| rng.gen_range(*l..*u)).collect() };
    let x: Vec<Vec<f64>> = (0..n).map(|_| draw(rng)).collect();
    let y: Vec<f64> = (0..n).map(|_| rng.gen_range(-3.0..3.0)).collect();
    let queries = (0..10).map(|_| draw(rng)).collect();
    let length_scale = [0.1, 0.2, 0.4, 0.8][rng.gen_range(0..4)];
    let nugget = [1e-4, 1e-3, 1e-2][rng.gen_range(0..3)];
    GpProblem { lower, upper, x, y, queries, length_scale, nugget }
}

/// GP posterior (mean, variance) in original y units via an explicit matrix inverse.
///
/// Inputs are min-max scaled by the box, targets standardized with the
/// population standard deviation (all zeros when constant).
pub fn dense_gp_posterior(p: &GpProblem, signal: f64, query: &[f64]) -> (f64, f64) {
    let scale = |v: &[f64]| -> Vec<f64> {
        v.iter().zip(p.lower.iter().zip(&p.upper)).map(|(x, (l, u))| (x - l) / (u - l)).collect()
    };
    let xs: Vec<Vec<f64>> = p.x.iter().map(|v| scale(v)).collect();
    let q = scale(query);
    let n = xs.len();
    let mean_y = p.y.iter().sum::<f64>() / n as f64;
    let std_y = (p.y.iter().map(|v| (v - mean_y).powi(2)).sum::<f64>() / n as f64).sqrt();
    let (ys, s): (Vec<f64>, f64) = if std_y > 1e-12 {
        (p.y.iter().map(|v| (v - mean_y) / std_y).collect(), std_y)
    } else {
        (vec![0.0; n], 1.0)
    };
    let k = |a: &[f64], b: &[f64]| {
        let d2: f64 = a.iter().zip(b).map(|(u, v)| (u - v).powi(2)).sum();
        signal * (-d2 / (2.0 * p.length_scale * p.length_scale)).exp()
    };
    let gram = DMatrix::from_fn(n, n, |i, j| k(&xs[i], &xs[j]) + if i == j { p.nugget } else { 0.0 });
    let inv = gram.try_inverse().expect("oracle gram invertible");
    let kq = DVector::from_fn(n, |i, _| k(&q, &xs[i]));
    let yv = DVector::from_vec(ys);
    let mu = kq.dot(&(&inv * yv));
    let var = (signal - kq.dot(&(&inv * &kq))).max(0.0);
    (mean_y + s * mu, s * s * var)
}

/// Monte-Carlo estimate of E[max(y* - xi - Y, 0)] for Y ~ N(mu, sigma^2).
/// Returns (estimate, standard error).
pub fn ei_monte_carlo(mu: f64, sigma: f64, incumbent: f64, xi: f64, draws: usize, seed: u64) -> (f64, f64) {
    let normal = Normal::new(mu, sigma).unwrap();
    let mut rng = StdRng::seed_from_u64(seed);
    let (mut sum, mut sum_sq) = (0.0, 0.0);
    for _ in 0..draws {
        let imp = (incumbent - xi - normal.sample(&mut rng)).max(0.0);
        sum += imp;
        sum_sq += imp * imp;
    }
    let n = draws as f64;
    let mean = sum / n;
    let var = (sum_sq / n - mean * mean).max(0.0) * n / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Counts, per dimension, how many points fall in each of `n` equal strata.
pub fn stratum_histogram(points: &[Vec<f64>], lower: &[f64], upper: &[f64]) -> Vec<Vec<usize>> {
    let n = points.len();
    (0..lower.len())
        .map(|d| {
            let mut counts = vec![0usize; n];
            for p in points {
                let t = (p[d] - lower[d]) / (upper[d] - lower[d]);
                let bin = ((t * n as f64).floor() as usize).min(n - 1);
                counts[bin] += 1;
            }
            counts
        })
        .collect()
}

/// Componentwise (min, max) over a set of points.
pub fn brute_min_max(points: &[Vec<f64>]) -> (Vec<f64>, Vec<f64>) {
    let d = points[0].len();
    let mut lo = vec![f64::INFINITY; d];
    let mut hi = vec![f64::NEG_INFINITY; d];
    for p in points {
        for j in 0..d {
            lo[j] = lo[j].min(p[j]);
            hi[j] = hi[j].max(p[j]);
        }
    }
    (lo, hi)
}

/// Ackley written out directly from its textbook definition.
pub fn ackley_reference(x: &[f64], scale: f64) -> f64 {
    let n = x.len() as f64;
    let s1: f64 = x.iter().map(|v| (v * scale).powi(2)).sum::<f64>() / n;
    let s2: f64 = x.iter().map(|v| (2.0 * std::f64::consts::PI * v * scale).cos()).sum::<f64>() / n;
    -20.0 * (-0.2 * s1.sqrt()).exp() - s2.exp() + 20.0 + std::f64::consts::E
}
