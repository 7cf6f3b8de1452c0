//! Exact Gaussian-process regression with an isotropic RBF kernel.
//!
//! Inputs are min-max normalized to the fitting window and targets are
//! standardized per fit, so one hyperparameter grid serves every zoom level.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::{Bounds, Point};

/// Smallest nugget ever used.
pub const NUGGET_FLOOR: f64 = 1e-8;
/// Nugget escalation stops past this value.
pub const MAX_NUGGET: f64 = 1e-2;

pub const LENGTH_SCALE_GRID: [f64; 6] = [0.05, 0.1, 0.2, 0.4, 0.8, 1.6];
pub const NUGGET_GRID: [f64; 3] = [1e-6, 1e-4, 1e-2];

const LN_2PI: f64 = 1.837_877_066_409_345_5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelParams {
    pub length_scale: f64,
    pub signal_variance: f64,
    pub noise_variance: f64,
}

impl Default for KernelParams {
    fn default() -> Self {
        KernelParams { length_scale: 0.2, signal_variance: 1.0, noise_variance: 1e-6 }
    }
}

impl KernelParams {
    pub fn new(length_scale: f64, signal_variance: f64, noise_variance: f64) -> Result<Self> {
        if !(length_scale > 0.0) {
            return Err(Error::NonPositive("length_scale"));
        }
        if !(signal_variance > 0.0) {
            return Err(Error::NonPositive("signal_variance"));
        }
        if !(noise_variance > 0.0) {
            return Err(Error::NonPositive("noise_variance"));
        }
        Ok(KernelParams {
            length_scale,
            signal_variance,
            noise_variance: noise_variance.max(NUGGET_FLOOR),
        })
    }

    fn at_sq_dist(&self, sq: f64) -> f64 {
        self.signal_variance * (-sq / (2.0 * self.length_scale * self.length_scale)).exp()
    }
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Squared-exponential kernel on (already normalized) inputs.
pub fn kernel_eval(a: &[f64], b: &[f64], params: &KernelParams) -> f64 {
    params.at_sq_dist(sq_dist(a, b))
}

/// Posterior at one point, in original target units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Posterior {
    pub mean: f64,
    pub stdev: f64,
}

/// Lower-triangular factor stored row-major.
#[derive(Debug, Clone)]
struct Cholesky {
    n: usize,
    l: Vec<f64>,
}

impl Cholesky {
    fn factor(mut a: Vec<f64>, n: usize) -> Option<Self> {
        for j in 0..n {
            let (done, rest) = a.split_at_mut((j + 1) * n);
            let row_j = &mut done[j * n..];
            let s = row_j[j] - row_j[..j].iter().map(|v| v * v).sum::<f64>();
            if !(s > 0.0 && s.is_finite()) {
                return None;
            }
            let diag = s.sqrt();
            row_j[j] = diag;
            let row_j = &done[j * n..];
            for row_i in rest.chunks_exact_mut(n) {
                let dot: f64 = row_i[..j].iter().zip(&row_j[..j]).map(|(x, y)| x * y).sum();
                row_i[j] = (row_i[j] - dot) / diag;
            }
        }
        // Zero the strict upper triangle so the buffer is exactly L.
        for i in 0..n {
            for v in &mut a[i * n + i + 1..(i + 1) * n] {
                *v = 0.0;
            }
        }
        Some(Cholesky { n, l: a })
    }

    fn row(&self, i: usize) -> &[f64] {
        &self.l[i * self.n..(i + 1) * self.n]
    }

    /// Solves `L v = b` in place.
    fn forward(&self, b: &mut [f64]) {
        for i in 0..self.n {
            let row = self.row(i);
            let dot: f64 = row[..i].iter().zip(&b[..i]).map(|(x, y)| x * y).sum();
            b[i] = (b[i] - dot) / row[i];
        }
    }

    /// Solves `L^T x = v` in place.
    fn backward(&self, v: &mut [f64]) {
        for i in (0..self.n).rev() {
            let mut s = v[i];
            for k in (i + 1)..self.n {
                s -= self.l[k * self.n + i] * v[k];
            }
            v[i] = s / self.l[i * self.n + i];
        }
    }

    fn log_det_half(&self) -> f64 {
        (0..self.n).map(|i| self.l[i * self.n + i].ln()).sum()
    }
}

/// Normalized inputs and standardized targets shared by all hyperparameter trials.
#[derive(Debug, Clone)]
struct TrainingSet {
    bounds: Bounds,
    x: Vec<Vec<f64>>,
    y: Vec<f64>,
    y_mean: f64,
    y_scale: f64,
    sq: Vec<f64>,
}

impl TrainingSet {
    fn new(x: &[Point], y: &[f64], bounds: &Bounds) -> Result<Self> {
        if x.is_empty() || x.len() != y.len() {
            return Err(Error::InvalidConfig(format!(
                "GP needs matching non-empty inputs ({} points, {} targets)",
                x.len(),
                y.len()
            )));
        }
        for p in x {
            if p.dim() != bounds.dim() {
                return Err(Error::DimensionMismatch { expected: bounds.dim(), actual: p.dim() });
            }
        }
        let n = x.len();
        let xn: Vec<Vec<f64>> = x.iter().map(|p| bounds.normalize(p)).collect();
        let y_mean = y.iter().sum::<f64>() / n as f64;
        let var = y.iter().map(|v| (v - y_mean) * (v - y_mean)).sum::<f64>() / n as f64;
        let std = var.sqrt();
        let constant = !(std > 16.0 * f64::EPSILON * y_mean.abs().max(1.0));
        let (ys, y_scale) = if constant {
            (vec![0.0; n], 1.0)
        } else {
            (y.iter().map(|v| (v - y_mean) / std).collect(), std)
        };
        let mut sq = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..i {
                let d = sq_dist(&xn[i], &xn[j]);
                sq[i * n + j] = d;
                sq[j * n + i] = d;
            }
        }
        Ok(TrainingSet { bounds: bounds.clone(), x: xn, y: ys, y_mean, y_scale, sq })
    }

    fn n(&self) -> usize {
        self.x.len()
    }

    fn gram(&self, params: &KernelParams, nugget: f64) -> Vec<f64> {
        let n = self.n();
        let mut k: Vec<f64> = self.sq.iter().map(|&d| params.at_sq_dist(d)).collect();
        for i in 0..n {
            k[i * n + i] += nugget;
        }
        k
    }

    /// Factorizes with nugget escalation; returns the factor and the nugget used.
    fn factor(&self, params: &KernelParams) -> Result<(Cholesky, f64)> {
        let mut nugget = params.noise_variance.max(NUGGET_FLOOR);
        loop {
            if let Some(chol) = Cholesky::factor(self.gram(params, nugget), self.n()) {
                return Ok((chol, nugget));
            }
            nugget *= 10.0;
            if nugget > MAX_NUGGET * (1.0 + 1e-9) {
                return Err(Error::IllConditioned);
            }
        }
    }

    fn lml(&self, chol: &Cholesky, alpha: &[f64]) -> f64 {
        let fit: f64 = self.y.iter().zip(alpha).map(|(a, b)| a * b).sum();
        -0.5 * fit - chol.log_det_half() - 0.5 * self.n() as f64 * LN_2PI
    }

    fn solve(&self, chol: &Cholesky) -> Vec<f64> {
        let mut alpha = self.y.clone();
        chol.forward(&mut alpha);
        chol.backward(&mut alpha);
        alpha
    }
}

/// A fitted surrogate. Immutable; safe to share across threads.
#[derive(Debug, Clone)]
pub struct GpModel {
    data: TrainingSet,
    params: KernelParams,
    chol: Cholesky,
    alpha: Vec<f64>,
    fit_time: Duration,
}

/// Fits a GP on `x`/`y`, normalizing inputs to `bounds`.
///
/// When the Gram matrix is not positive definite the nugget is raised tenfold
/// until it exceeds [`MAX_NUGGET`], after which the fit fails.
pub fn fit_gp(x: &[Point], y: &[f64], bounds: &Bounds, params: KernelParams) -> Result<GpModel> {
    let start = Instant::now();
    let data = TrainingSet::new(x, y, bounds)?;
    let (chol, nugget) = data.factor(&params)?;
    let alpha = data.solve(&chol);
    Ok(GpModel {
        data,
        params: KernelParams { noise_variance: nugget, ..params },
        chol,
        alpha,
        fit_time: start.elapsed(),
    })
}

impl GpModel {
    pub fn params(&self) -> &KernelParams {
        &self.params
    }

    pub fn n_train(&self) -> usize {
        self.data.n()
    }

    pub fn bounds(&self) -> &Bounds {
        &self.data.bounds
    }

    pub fn fit_time(&self) -> Duration {
        self.fit_time
    }

    /// Training inputs in normalized `[0, 1]^d` coordinates.
    pub fn train_x(&self) -> &[Vec<f64>] {
        &self.data.x
    }

    /// Standardized training targets.
    pub fn train_y(&self) -> &[f64] {
        &self.data.y
    }

    /// Reconstructs `L L^T` (row-major), for factorization checks.
    pub fn reconstructed_gram(&self) -> Vec<f64> {
        let n = self.n_train();
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..=i {
                let v: f64 = self.chol.row(i)[..=j].iter().zip(&self.chol.row(j)[..=j]).map(|(a, b)| a * b).sum();
                out[i * n + j] = v;
                out[j * n + i] = v;
            }
        }
        out
    }

    /// The Gram matrix plus nugget the factor was computed from.
    pub fn gram(&self) -> Vec<f64> {
        self.data.gram(&self.params, self.params.noise_variance)
    }

    /// Posterior in standardized units: `(mean, variance)`.
    pub fn predict_standardized(&self, x: &[f64]) -> (f64, f64) {
        let u = self.data.bounds.normalize(x);
        let mut k: Vec<f64> = self.data.x.iter().map(|xi| kernel_eval(&u, xi, &self.params)).collect();
        let mean: f64 = k.iter().zip(&self.alpha).map(|(a, b)| a * b).sum();
        self.chol.forward(&mut k);
        let explained: f64 = k.iter().map(|v| v * v).sum();
        let var = (self.params.signal_variance - explained).max(0.0);
        (mean, var)
    }

    /// Posterior mean and standard deviation in original target units.
    /// Points outside the fitting window extrapolate; see [`GpModel::in_window`].
    pub fn predict(&self, x: &[f64]) -> Posterior {
        let (mean, var) = self.predict_standardized(x);
        Posterior {
            mean: self.data.y_mean + self.data.y_scale * mean,
            stdev: self.data.y_scale * var.sqrt(),
        }
    }

    /// Whether `x` lies in the window the model was fitted on.
    pub fn in_window(&self, x: &[f64]) -> bool {
        self.data.bounds.contains(x).unwrap_or(false)
    }

    /// Gaussian log marginal likelihood of the standardized targets.
    pub fn log_marginal_likelihood(&self) -> f64 {
        self.data.lml(&self.chol, &self.alpha)
    }
}

/// Grid search over length scale and nugget (signal variance fixed at 1),
/// maximizing the log marginal likelihood. Fewer than two points returns the
/// defaults. Ties keep the earlier grid entry.
pub fn select_hyperparameters(x: &[Point], y: &[f64], bounds: &Bounds) -> Result<KernelParams> {
    if x.len() < 2 {
        return Ok(KernelParams::default());
    }
    let data = TrainingSet::new(x, y, bounds)?;
    let mut best: Option<(f64, KernelParams)> = None;
    for &length_scale in &LENGTH_SCALE_GRID {
        for &nugget in &NUGGET_GRID {
            let params = KernelParams { length_scale, signal_variance: 1.0, noise_variance: nugget };
            // Only exact factorizations compete; escalated nuggets would alias other grid cells.
            let Some(chol) = Cholesky::factor(data.gram(&params, nugget), data.n()) else {
                continue;
            };
            let lml = data.lml(&chol, &data.solve(&chol));
            if lml.is_finite() && best.map_or(true, |(b, _)| lml > b) {
                best = Some((lml, params));
            }
        }
    }
    Ok(best.map(|(_, p)| p).unwrap_or_default())
}
