//! The zooming driver, the plain-BO baseline, and seeded ensembles.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::acquisition::{argmax_acquisition, AbruptBranch, AcqContext, AcqHyperparams, AcquisitionKind};
use crate::error::{Error, Result};
use crate::gp::{fit_gp, select_hyperparameters};
use crate::memory::{compute_zoom_bounds_within, select_memory, EvaluatedSample, MemoryBank, ObjectiveSense};
use crate::rng::Rng;
use crate::sampling::{latin_hypercube, uniform_candidates};
use crate::space::{Bounds, Point};

/// A black-box function to optimize. Implemented for any `Fn(&[f64]) -> f64 + Sync`.
pub trait Objective: Sync {
    fn evaluate(&self, x: &[f64]) -> f64;
}

impl<F> Objective for F
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    fn evaluate(&self, x: &[f64]) -> f64 {
        self(x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Zombi,
    PlainBo,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Zombi => "zombi",
            Mode::PlainBo => "plain-bo",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "zombi" => Ok(Mode::Zombi),
            "plain-bo" => Ok(Mode::PlainBo),
            other => Err(format!("unknown mode `{other}` (expected zombi or plain-bo)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZombiConfig {
    /// Number of zoom/prune cycles.
    pub activations: usize,
    /// Acquisition-driven samples per activation.
    pub forward_per_activation: usize,
    /// LHS samples drawn inside each new window.
    pub init_per_activation: usize,
    /// Best samples used to compute each window.
    pub memory: usize,
    /// LHS samples over the original bounds before the first activation.
    pub initial_global_samples: usize,
    pub candidates_per_step: usize,
    pub acquisition: AcquisitionKind,
    pub hyperparams: AcqHyperparams,
    pub seed: u64,
    pub sense: ObjectiveSense,
    pub bounds: Bounds,
    /// Minimum window width as a fraction of the original range.
    pub epsilon_expand: f64,
}

impl ZombiConfig {
    pub fn new(bounds: Bounds) -> Self {
        let acquisition = AcquisitionKind::LcbAdaptive;
        ZombiConfig {
            activations: 4,
            forward_per_activation: 20,
            init_per_activation: 5,
            memory: 5,
            initial_global_samples: 10,
            candidates_per_step: 1000,
            acquisition,
            hyperparams: AcqHyperparams::defaults(acquisition),
            seed: 0,
            sense: ObjectiveSense::Minimize,
            bounds,
            epsilon_expand: 0.01,
        }
    }

    /// Switches acquisition kind and resets its hyperparameters to that kind's defaults.
    pub fn with_acquisition(mut self, kind: AcquisitionKind) -> Self {
        self.acquisition = kind;
        self.hyperparams = AcqHyperparams::defaults(kind);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Fits the activation count to an evaluation budget, keeping `i` and `phi`
    /// and moving the remainder into the initial global sample.
    pub fn with_budget(mut self, budget: usize) -> Result<Self> {
        let per = self.init_per_activation + self.forward_per_activation;
        if budget < per + 1 {
            return Err(Error::InvalidConfig(format!(
                "budget {budget} is too small for one activation of {per} samples plus an initial sample"
            )));
        }
        self.activations = if budget >= self.initial_global_samples + per {
            (budget - self.initial_global_samples) / per
        } else {
            (budget - 1) / per
        };
        self.initial_global_samples = budget - self.activations * per;
        Ok(self)
    }

    pub fn total_budget(&self) -> usize {
        self.initial_global_samples + self.activations * (self.init_per_activation + self.forward_per_activation)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("activations", self.activations),
            ("forward_per_activation", self.forward_per_activation),
            ("init_per_activation", self.init_per_activation),
            ("memory", self.memory),
            ("initial_global_samples", self.initial_global_samples),
            ("candidates_per_step", self.candidates_per_step),
        ];
        for (name, v) in positive {
            if v == 0 {
                return Err(Error::InvalidConfig(format!("{name} must be at least 1")));
            }
        }
        if self.memory > self.init_per_activation + self.forward_per_activation {
            return Err(Error::InvalidConfig(format!(
                "memory m = {} exceeds i + phi = {}",
                self.memory,
                self.init_per_activation + self.forward_per_activation
            )));
        }
        if !self.bounds.is_non_degenerate() {
            return Err(Error::InvalidConfig("search bounds must have positive width".into()));
        }
        if !(self.epsilon_expand > 0.0 && self.epsilon_expand <= 1.0) {
            return Err(Error::InvalidConfig("epsilon_expand must be in (0, 1]".into()));
        }
        self.hyperparams.validate().map_err(Error::InvalidConfig)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    /// LHS over the original bounds before any activation.
    Global,
    /// LHS inside a freshly zoomed window.
    Lhs,
    /// Acquisition-driven sample.
    Forward,
}

/// One objective evaluation as logged. `y` and `best_y` use the minimization convention.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IterationRecord {
    pub iteration: usize,
    pub activation: usize,
    pub phase: Phase,
    pub x: Point,
    pub y: f64,
    /// Best `y` over every evaluation so far, pruned or not.
    pub best_y: f64,
    /// Training rows of the surrogate that proposed this point; 0 for LHS rows.
    pub surrogate_n: usize,
    pub fit_ms: f64,
    pub acq_ms: f64,
    pub branch: Option<AbruptBranch>,
    pub exploration_weight: Option<f64>,
}

/// The window used for one activation and the memory it was computed from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ActivationRecord {
    pub index: usize,
    pub bounds: Bounds,
    pub memory: Vec<EvaluatedSample>,
}

#[derive(Debug, Clone)]
pub struct RunTrace {
    pub mode: Mode,
    pub config: ZombiConfig,
    pub records: Vec<IterationRecord>,
    pub activations: Vec<ActivationRecord>,
    /// Every evaluation in order; never pruned.
    pub archive: Vec<EvaluatedSample>,
    pub wall_clock: Duration,
}

impl RunTrace {
    /// Best archived sample (minimization convention).
    pub fn best(&self) -> &EvaluatedSample {
        self.archive
            .iter()
            .min_by(|a, b| a.y.total_cmp(&b.y).then(a.iteration.cmp(&b.iteration)))
            .expect("a finished run has at least one evaluation")
    }

    pub fn final_best_y(&self) -> f64 {
        self.best().y
    }

    /// Best value in the objective's own units and direction.
    pub fn best_value(&self) -> f64 {
        self.config.sense.to_external(self.best().y)
    }

    pub fn best_curve(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.best_y).collect()
    }

    pub fn dim(&self) -> usize {
        self.config.bounds.dim()
    }
}

struct Run<'a, O: Objective + ?Sized> {
    objective: &'a O,
    config: &'a ZombiConfig,
    rng: Rng,
    archive: Vec<EvaluatedSample>,
    records: Vec<IterationRecord>,
    best_y: f64,
    n_forward: usize,
}

struct Proposal {
    point: Point,
    surrogate_n: usize,
    fit: Duration,
    acq: Duration,
    branch: Option<AbruptBranch>,
    exploration_weight: Option<f64>,
}

fn millis(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

impl<'a, O: Objective + ?Sized> Run<'a, O> {
    fn new(objective: &'a O, config: &'a ZombiConfig) -> Result<Self> {
        config.validate()?;
        Ok(Run {
            objective,
            config,
            rng: Rng::new(config.seed),
            archive: Vec::with_capacity(config.total_budget()),
            records: Vec::with_capacity(config.total_budget()),
            best_y: f64::INFINITY,
            n_forward: 0,
        })
    }

    fn evaluate(&mut self, x: Point, activation: usize, phase: Phase, proposal: Option<&Proposal>) -> Result<EvaluatedSample> {
        let raw = self.objective.evaluate(&x);
        if !raw.is_finite() {
            return Err(Error::NonFiniteObjective { point: x.into_inner(), value: raw });
        }
        let y = self.config.sense.to_internal(raw);
        self.best_y = self.best_y.min(y);
        let iteration = self.archive.len();
        let sample = EvaluatedSample { x: x.clone(), y, iteration, activation };
        self.records.push(IterationRecord {
            iteration,
            activation,
            phase,
            x,
            y,
            best_y: self.best_y,
            surrogate_n: proposal.map_or(0, |p| p.surrogate_n),
            fit_ms: proposal.map_or(0.0, |p| millis(p.fit)),
            acq_ms: proposal.map_or(0.0, |p| millis(p.acq)),
            branch: proposal.and_then(|p| p.branch),
            exploration_weight: proposal.and_then(|p| p.exploration_weight),
        });
        self.archive.push(sample.clone());
        Ok(sample)
    }

    fn lhs(&mut self, n: usize, bounds: &Bounds, activation: usize, phase: Phase) -> Result<Vec<EvaluatedSample>> {
        let points = latin_hypercube(n, bounds, &mut self.rng)?;
        points.into_iter().map(|p| self.evaluate(p, activation, phase, None)).collect()
    }

    /// Fits the surrogate on `memory` and picks the next point inside `bounds`.
    fn propose(&mut self, memory: &MemoryBank, bounds: &Bounds, recent_y: &[f64]) -> Result<Proposal> {
        let fit_start = Instant::now();
        let xs: Vec<Point> = memory.samples().iter().map(|s| s.x.clone()).collect();
        let ys: Vec<f64> = memory.samples().iter().map(|s| s.y).collect();
        let params = select_hyperparameters(&xs, &ys, bounds)?;
        let model = fit_gp(&xs, &ys, bounds, params)?;
        let fit = fit_start.elapsed();

        let acq_start = Instant::now();
        let candidates = uniform_candidates(self.config.candidates_per_step, bounds, &mut self.rng);
        let ctx = AcqContext {
            incumbent: memory.incumbent().ok_or(Error::EmptyMemory)?,
            n_forward: self.n_forward,
            recent_y: recent_y.to_vec(),
        };
        let selection = argmax_acquisition(&candidates, &model, self.config.acquisition, &ctx, &self.config.hyperparams);
        let acq = acq_start.elapsed();

        Ok(Proposal {
            point: selection.point,
            surrogate_n: memory.len(),
            fit,
            acq,
            branch: selection.branch,
            exploration_weight: selection.exploration_weight,
        })
    }

    fn forward(&mut self, memory: &mut MemoryBank, bounds: &Bounds, activation: usize, recent_y: &mut Vec<f64>) -> Result<()> {
        let proposal = self.propose(memory, bounds, recent_y)?;
        let sample = self.evaluate(proposal.point.clone(), activation, Phase::Forward, Some(&proposal))?;
        self.n_forward += 1;
        recent_y.push(sample.y);
        if recent_y.len() > 3 {
            recent_y.remove(0);
        }
        memory.push(sample);
        Ok(())
    }

    fn finish(self, mode: Mode, activations: Vec<ActivationRecord>, started: Instant) -> RunTrace {
        RunTrace {
            mode,
            config: self.config.clone(),
            records: self.records,
            activations,
            archive: self.archive,
            wall_clock: started.elapsed(),
        }
    }
}

/// Runs the zooming optimizer.
///
/// After an initial LHS over the original bounds, each activation zooms the
/// window onto the best `m` samples of the current memory, draws `i` LHS points
/// inside it, replaces the memory with them, then takes `phi` acquisition-driven
/// steps, refitting the GP on the memory before each one.
pub fn run_zombi<O: Objective + ?Sized>(objective: &O, config: &ZombiConfig) -> Result<RunTrace> {
    let started = Instant::now();
    let mut run = Run::new(objective, config)?;
    let original = &config.bounds;

    let mut memory = MemoryBank::new();
    memory.overwrite(run.lhs(config.initial_global_samples, original, 0, Phase::Global)?);

    let mut window = original.clone();
    let mut activations = Vec::with_capacity(config.activations);
    for activation in 1..=config.activations {
        let best = select_memory(memory.samples(), config.memory)?;
        window = compute_zoom_bounds_within(&best, original, &window, config.epsilon_expand)?;
        activations.push(ActivationRecord { index: activation, bounds: window.clone(), memory: best });

        memory.overwrite(run.lhs(config.init_per_activation, &window, activation, Phase::Lhs)?);
        let mut recent_y = Vec::with_capacity(3);
        for _ in 0..config.forward_per_activation {
            run.forward(&mut memory, &window, activation, &mut recent_y)?;
        }
    }
    Ok(run.finish(Mode::Zombi, activations, started))
}

/// Standard BO on the same budget: no zooming, no pruning, the GP is refit on
/// the full history at every step.
pub fn run_plain_bo<O: Objective + ?Sized>(objective: &O, config: &ZombiConfig) -> Result<RunTrace> {
    let started = Instant::now();
    let mut run = Run::new(objective, config)?;
    let original = &config.bounds;

    let mut memory = MemoryBank::new();
    memory.overwrite(run.lhs(config.initial_global_samples, original, 0, Phase::Global)?);
    let steps = config.total_budget() - config.initial_global_samples;
    let mut recent_y = Vec::with_capacity(3);
    for _ in 0..steps {
        run.forward(&mut memory, original, 1, &mut recent_y)?;
    }
    Ok(run.finish(Mode::PlainBo, Vec::new(), started))
}

pub fn run_mode<O: Objective + ?Sized>(mode: Mode, objective: &O, config: &ZombiConfig) -> Result<RunTrace> {
    match mode {
        Mode::Zombi => run_zombi(objective, config),
        Mode::PlainBo => run_plain_bo(objective, config),
    }
}

/// Pointwise statistics of the running best across ensemble members.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnsembleRow {
    pub iteration: usize,
    pub median: f64,
    pub min: f64,
    pub max: f64,
}

#[derive(Debug, Clone)]
pub struct EnsembleResult {
    pub traces: Vec<RunTrace>,
    pub summary: Vec<EnsembleRow>,
}

impl EnsembleResult {
    pub fn final_best(&self) -> Vec<f64> {
        self.traces.iter().map(RunTrace::final_best_y).collect()
    }

    pub fn median_final_best(&self) -> f64 {
        median(&self.final_best())
    }
}

pub fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    assert!(n > 0, "median of an empty set");
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// `runs` independent runs seeded `config.seed, config.seed + 1, ...`, executed
/// in parallel and aggregated in run order.
pub fn run_ensemble<O: Objective + ?Sized>(objective: &O, config: &ZombiConfig, mode: Mode, runs: usize) -> Result<EnsembleResult> {
    if runs == 0 {
        return Err(Error::InvalidConfig("ensemble needs at least one run".into()));
    }
    let traces = (0..runs)
        .into_par_iter()
        .map(|r| {
            let cfg = config.clone().with_seed(config.seed.wrapping_add(r as u64));
            run_mode(mode, objective, &cfg)
        })
        .collect::<Result<Vec<_>>>()?;

    let len = traces[0].records.len();
    let summary = (0..len)
        .map(|i| {
            let col: Vec<f64> = traces.iter().map(|t| t.records[i].best_y).collect();
            EnsembleRow {
                iteration: i,
                median: median(&col),
                min: col.iter().copied().fold(f64::INFINITY, f64::min),
                max: col.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            }
        })
        .collect();
    Ok(EnsembleResult { traces, summary })
}
