//! Acquisition functions under one convention: the objective is minimized and
//! the candidate with the largest acquisition value is selected.
//!
//! EI is the expected improvement below the incumbent. The confidence-bound
//! family is scored as `-mu + w * sigma`, so maximizing it minimizes the lower
//! confidence bound `mu - w * sigma`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;

use crate::gp::{GpModel, Posterior};
use crate::space::Point;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AcquisitionKind {
    Ei,
    Lcb,
    EiAbrupt,
    LcbAdaptive,
}

impl AcquisitionKind {
    pub const ALL: [AcquisitionKind; 4] =
        [AcquisitionKind::Ei, AcquisitionKind::Lcb, AcquisitionKind::EiAbrupt, AcquisitionKind::LcbAdaptive];

    pub fn as_str(self) -> &'static str {
        match self {
            AcquisitionKind::Ei => "ei",
            AcquisitionKind::Lcb => "lcb",
            AcquisitionKind::EiAbrupt => "ei-abrupt",
            AcquisitionKind::LcbAdaptive => "lcb-adaptive",
        }
    }
}

impl fmt::Display for AcquisitionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AcquisitionKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        AcquisitionKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown acquisition `{s}` (expected ei, lcb, ei-abrupt or lcb-adaptive)"))
    }
}

/// `beta`: exploration weight; `xi`: EI margin; `epsilon`: per-sample decay
/// of `beta` for LCB Adaptive; `eta`: plateau tolerance for EI Abrupt.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AcqHyperparams {
    pub beta: f64,
    pub xi: f64,
    pub epsilon: f64,
    pub eta: f64,
}

impl AcqHyperparams {
    pub fn defaults(kind: AcquisitionKind) -> Self {
        match kind {
            AcquisitionKind::Ei => AcqHyperparams { beta: 0.0, xi: 0.1, epsilon: 1.0, eta: 0.0 },
            AcquisitionKind::Lcb => AcqHyperparams { beta: 3.0, xi: 0.0, epsilon: 1.0, eta: 0.0 },
            AcquisitionKind::EiAbrupt => AcqHyperparams { beta: 0.1, xi: 0.1, epsilon: 1.0, eta: 0.0 },
            AcquisitionKind::LcbAdaptive => AcqHyperparams { beta: 3.0, xi: 0.0, epsilon: 0.9, eta: 0.0 },
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        if !(self.beta >= 0.0) {
            return Err(format!("beta must be >= 0 (got {})", self.beta));
        }
        if !(self.xi >= 0.0) {
            return Err(format!("xi must be >= 0 (got {})", self.xi));
        }
        if !(self.epsilon > 0.0 && self.epsilon <= 1.0) {
            return Err(format!("epsilon must be in (0, 1] (got {})", self.epsilon));
        }
        if !(self.eta >= 0.0) {
            return Err(format!("eta must be >= 0 (got {})", self.eta));
        }
        Ok(())
    }
}

/// Run state the adaptive acquisitions read.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct AcqContext {
    /// Lowest `y` in the current memory.
    pub incumbent: f64,
    /// Forward experiments sampled so far in the run.
    pub n_forward: usize,
    /// Targets of the most recent forward experiments in this activation, oldest first.
    pub recent_y: Vec<f64>,
}

/// Which branch of EI Abrupt produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AbruptBranch {
    Explore,
    Greedy,
}

fn std_normal_cdf(z: f64) -> f64 {
    0.5 * erfc(-z / std::f64::consts::SQRT_2)
}

fn std_normal_pdf(z: f64) -> f64 {
    (-0.5 * z * z).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

/// Expected improvement below `incumbent - xi`.
pub fn acq_ei(post: &Posterior, ctx: &AcqContext, h: &AcqHyperparams) -> f64 {
    let improvement = ctx.incumbent - post.mean - h.xi;
    if post.stdev <= 0.0 {
        return improvement.max(0.0);
    }
    let z = improvement / post.stdev;
    (improvement * std_normal_cdf(z) + post.stdev * std_normal_pdf(z)).max(0.0)
}

pub fn acq_lcb(post: &Posterior, h: &AcqHyperparams) -> f64 {
    -post.mean + h.beta * post.stdev
}

/// True when the last three values change by at most `eta` between
/// consecutive samples. Fewer than three values never count as a plateau.
pub fn plateau_detected(recent_y: &[f64], eta: f64) -> bool {
    if recent_y.len() < 3 {
        return false;
    }
    let w = &recent_y[recent_y.len() - 3..];
    (w[1] - w[0]).abs().max((w[2] - w[1]).abs()) <= eta
}

pub fn abrupt_branch(ctx: &AcqContext, h: &AcqHyperparams) -> AbruptBranch {
    if plateau_detected(&ctx.recent_y, h.eta) {
        AbruptBranch::Explore
    } else {
        AbruptBranch::Greedy
    }
}

/// Greedy confidence bound until the targets plateau, then expected improvement.
pub fn acq_ei_abrupt(post: &Posterior, ctx: &AcqContext, h: &AcqHyperparams) -> f64 {
    match abrupt_branch(ctx, h) {
        AbruptBranch::Explore => acq_ei(post, ctx, h),
        AbruptBranch::Greedy => -post.mean + h.beta * post.stdev,
    }
}

/// `epsilon^n * beta`, the decayed LCB Adaptive exploration weight.
pub fn exploration_weight(n_forward: usize, h: &AcqHyperparams) -> f64 {
    h.epsilon.powf(n_forward as f64) * h.beta
}

pub fn acq_lcb_adaptive(post: &Posterior, ctx: &AcqContext, h: &AcqHyperparams) -> f64 {
    -post.mean + exploration_weight(ctx.n_forward, h) * post.stdev
}

pub fn acquisition_value(kind: AcquisitionKind, post: &Posterior, ctx: &AcqContext, h: &AcqHyperparams) -> f64 {
    match kind {
        AcquisitionKind::Ei => acq_ei(post, ctx, h),
        AcquisitionKind::Lcb => acq_lcb(post, h),
        AcquisitionKind::EiAbrupt => acq_ei_abrupt(post, ctx, h),
        AcquisitionKind::LcbAdaptive => acq_lcb_adaptive(post, ctx, h),
    }
}

/// Outcome of maximizing an acquisition over a candidate set.
#[derive(Debug, Clone, PartialEq)]
pub struct Selection {
    pub index: usize,
    pub point: Point,
    pub value: f64,
    /// Set for EI Abrupt only.
    pub branch: Option<AbruptBranch>,
    /// The `sigma` weight in effect, for confidence-bound kinds.
    pub exploration_weight: Option<f64>,
}

/// Index of the largest value; ties go to the lowest index and NaN never wins.
pub fn argmax_index(values: &[f64]) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, &v) in values.iter().enumerate() {
        if v.is_nan() {
            continue;
        }
        if best.map_or(true, |(_, b)| v > b) {
            best = Some((i, v));
        }
    }
    best.map(|(i, _)| i).or(if values.is_empty() { None } else { Some(0) })
}

/// Scores every candidate under `kind` and returns the best one.
///
/// # Panics
/// If `candidates` is empty.
pub fn argmax_acquisition(
    candidates: &[Point],
    model: &GpModel,
    kind: AcquisitionKind,
    ctx: &AcqContext,
    h: &AcqHyperparams,
) -> Selection {
    assert!(!candidates.is_empty(), "argmax over an empty candidate set");
    let values: Vec<f64> = candidates
        .iter()
        .map(|c| acquisition_value(kind, &model.predict(c), ctx, h))
        .collect();
    let index = argmax_index(&values).expect("non-empty");
    let (branch, exploration_weight) = match kind {
        AcquisitionKind::Ei => (None, None),
        AcquisitionKind::Lcb => (None, Some(h.beta)),
        AcquisitionKind::EiAbrupt => {
            let b = abrupt_branch(ctx, h);
            (Some(b), (b == AbruptBranch::Greedy).then_some(h.beta))
        }
        AcquisitionKind::LcbAdaptive => (None, Some(exploration_weight(ctx.n_forward, h))),
    };
    Selection { index, point: candidates[index].clone(), value: values[index], branch, exploration_weight }
}
