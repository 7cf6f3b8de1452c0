//! Experiment harness: objective selection, compute-time comparison, and the
//! basin-width sweep.

use std::io::Write;
use std::path::PathBuf;

use serde::Serialize;

use crate::acquisition::AcquisitionKind;
use crate::engine::{median, run_ensemble, run_plain_bo, run_zombi, Mode, Objective, Phase, RunTrace, ZombiConfig};
use crate::error::{Error, Result};
use crate::memory::ObjectiveSense;
use crate::objectives::{gaussian_smooth, load_csv, plant_needle, Ackley, InterpolatedManifold, Interpolator, PlantedNeedle};
use crate::space::Bounds;

/// Which objective an experiment runs on.
#[derive(Debug, Clone)]
pub enum ObjectiveSpec {
    Ackley { dim: usize, scale: f64 },
    Dataset { path: PathBuf, target: String, sense: ObjectiveSense, interpolator: Interpolator, bandwidth: Option<f64> },
    Needle { dim: usize, rows: usize, fraction: f64, depth: f64, seed: u64, interpolator: Interpolator },
}

/// A ready-to-evaluate objective with its natural search box.
pub struct BuiltObjective {
    pub objective: Box<dyn Objective + Send>,
    pub bounds: Bounds,
    pub sense: ObjectiveSense,
    /// Rows dropped while loading a dataset.
    pub dropped_rows: usize,
    /// Known optimum location, when the objective is synthetic.
    pub known_optimum: Option<(Vec<f64>, f64)>,
}

impl ObjectiveSpec {
    pub fn build(&self) -> Result<BuiltObjective> {
        match self {
            ObjectiveSpec::Ackley { dim, scale } => {
                let a = Ackley::new(*dim, *scale);
                Ok(BuiltObjective {
                    bounds: a.bounds()?,
                    known_optimum: Some((vec![0.0; *dim], 0.0)),
                    objective: Box::new(a),
                    sense: ObjectiveSense::Minimize,
                    dropped_rows: 0,
                })
            }
            ObjectiveSpec::Dataset { path, target, sense, interpolator, bandwidth } => {
                let ds = load_csv(path, target, *sense)?;
                let dropped_rows = ds.dropped_rows;
                let manifold = InterpolatedManifold::new(ds, *interpolator)?;
                let bounds = manifold.bounds().clone();
                let objective: Box<dyn Objective + Send> = match bandwidth {
                    Some(bw) => Box::new(gaussian_smooth(&manifold, *bw)?),
                    None => Box::new(manifold),
                };
                Ok(BuiltObjective { objective, bounds, sense: *sense, dropped_rows, known_optimum: None })
            }
            ObjectiveSpec::Needle { dim, rows, fraction, depth, seed, interpolator } => {
                let PlantedNeedle { dataset, center, depth, .. } = plant_needle(*dim, *rows, *fraction, *depth, *seed)?;
                let manifold = InterpolatedManifold::new(dataset, *interpolator)?;
                Ok(BuiltObjective {
                    bounds: manifold.bounds().clone(),
                    objective: Box::new(manifold),
                    sense: ObjectiveSense::Minimize,
                    dropped_rows: 0,
                    known_optimum: Some((center.into_inner(), depth)),
                })
            }
        }
    }
}

/// Per-step compute cost of one forward experiment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StepTime {
    pub iteration: usize,
    pub activation: usize,
    pub surrogate_n: usize,
    pub fit_ms: f64,
    pub acq_ms: f64,
}

impl StepTime {
    pub fn total_ms(&self) -> f64 {
        self.fit_ms + self.acq_ms
    }
}

pub fn forward_steps(trace: &RunTrace) -> Vec<StepTime> {
    trace
        .records
        .iter()
        .filter(|r| r.phase == Phase::Forward)
        .map(|r| StepTime {
            iteration: r.iteration,
            activation: r.activation,
            surrogate_n: r.surrogate_n,
            fit_ms: r.fit_ms,
            acq_ms: r.acq_ms,
        })
        .collect()
}

fn mean(v: impl IntoIterator<Item = f64>) -> f64 {
    let (s, n) = v.into_iter().fold((0.0, 0usize), |(s, n), x| (s + x, n + 1));
    if n == 0 {
        f64::NAN
    } else {
        s / n as f64
    }
}

/// Mean of `f` over the last tenth divided by its mean over the first tenth.
pub fn decile_ratio(steps: &[StepTime], f: impl Fn(&StepTime) -> f64) -> f64 {
    let k = steps.len().div_ceil(10).max(1);
    if steps.len() < 2 {
        return f64::NAN;
    }
    mean(steps[steps.len() - k..].iter().map(&f)) / mean(steps[..k].iter().map(&f))
}

#[derive(Debug, Clone, Serialize)]
pub struct TimingReport {
    pub budget: usize,
    pub activations: usize,
    /// Largest training set seen by the zooming run.
    pub zombi_max_surrogate_n: usize,
    /// Plain-BO last-decile mean fit time over first-decile mean.
    pub plain_bo_fit_growth: f64,
    /// Same ratio on fit plus acquisition time.
    pub plain_bo_total_growth: f64,
    pub zombi_first_activation_mean_fit_ms: f64,
    pub zombi_last_activation_mean_fit_ms: f64,
    /// Last-activation mean fit time over first-activation mean.
    pub zombi_flatness_ratio: f64,
    /// Largest per-step (fit + acquisition) time within the final activation.
    pub zombi_sawtooth_max_ms: f64,
    /// Plain-BO over zooming per-step time at the final iteration.
    pub final_speedup: f64,
    #[serde(skip)]
    pub zombi_steps: Vec<StepTime>,
    #[serde(skip)]
    pub plain_steps: Vec<StepTime>,
}

/// Runs the zooming optimizer and plain BO on the same objective, budget and
/// seed and compares their per-step compute time.
pub fn run_timing<O: Objective + ?Sized>(objective: &O, config: &ZombiConfig, budget: usize) -> Result<TimingReport> {
    let config = config.clone().with_budget(budget)?;
    let zombi = run_zombi(objective, &config)?;
    let plain = run_plain_bo(objective, &config)?;
    Ok(timing_report(&zombi, &plain))
}

pub fn timing_report(zombi: &RunTrace, plain: &RunTrace) -> TimingReport {
    let zs = forward_steps(zombi);
    let ps = forward_steps(plain);
    let first = zs.first().map_or(0, |s| s.activation);
    let last = zs.last().map_or(0, |s| s.activation);
    let act_mean = |a: usize| mean(zs.iter().filter(|s| s.activation == a).map(|s| s.fit_ms));
    let (first_mean, last_mean) = (act_mean(first), act_mean(last));
    let sawtooth = zs
        .iter()
        .filter(|s| s.activation == last)
        .map(StepTime::total_ms)
        .fold(0.0, f64::max);
    let final_speedup = match (ps.last(), zs.last()) {
        (Some(p), Some(z)) => p.total_ms() / z.total_ms(),
        _ => f64::NAN,
    };
    TimingReport {
        budget: zombi.archive.len(),
        activations: zombi.config.activations,
        zombi_max_surrogate_n: zs.iter().map(|s| s.surrogate_n).max().unwrap_or(0),
        plain_bo_fit_growth: decile_ratio(&ps, |s| s.fit_ms),
        plain_bo_total_growth: decile_ratio(&ps, StepTime::total_ms),
        zombi_first_activation_mean_fit_ms: first_mean,
        zombi_last_activation_mean_fit_ms: last_mean,
        zombi_flatness_ratio: last_mean / first_mean,
        zombi_sawtooth_max_ms: sawtooth,
        final_speedup,
        zombi_steps: zs,
        plain_steps: ps,
    }
}

/// `iteration,mode,fit_ms,acq_ms` for every forward step of both runs.
pub fn write_timing_csv<W: Write>(report: &TimingReport, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["iteration", "mode", "fit_ms", "acq_ms"])?;
    for (mode, steps) in [(Mode::Zombi, &report.zombi_steps), (Mode::PlainBo, &report.plain_steps)] {
        for s in steps {
            w.write_record([
                s.iteration.to_string(),
                mode.to_string(),
                format!("{:.3}", s.fit_ms),
                format!("{:.3}", s.acq_ms),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub const DEFAULT_BANDWIDTHS: [f64; 5] = [0.01, 0.05, 0.1, 0.2, 0.4];

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub bandwidth: f64,
    pub acquisition: AcquisitionKind,
    pub runs: usize,
    /// Median over runs of the final best value (objective units).
    pub median_best_y: f64,
    pub min_best_y: f64,
    pub max_best_y: f64,
    /// Best value of the smoothed surface over the dataset rows.
    pub surface_best: f64,
}

/// For each bandwidth and acquisition kind, runs a seeded ensemble of the
/// zooming optimizer on the smoothed dataset and records the final bests.
pub fn run_smooth_sweep(
    manifold: &InterpolatedManifold,
    bandwidths: &[f64],
    kinds: &[AcquisitionKind],
    runs: usize,
    base: &ZombiConfig,
) -> Result<Vec<SweepRow>> {
    if bandwidths.is_empty() || kinds.is_empty() {
        return Err(Error::InvalidConfig("sweep needs at least one bandwidth and one acquisition".into()));
    }
    let sense = manifold.dataset().sense;
    let mut rows = Vec::with_capacity(bandwidths.len() * kinds.len());
    for &bw in bandwidths {
        let smoothed = gaussian_smooth(manifold, bw)?;
        let surface = smoothed.at_rows();
        let surface_best = surface
            .iter()
            .map(|&v| sense.to_internal(v))
            .fold(f64::INFINITY, f64::min);
        for &kind in kinds {
            let mut cfg = base.clone().with_acquisition(kind);
            cfg.bounds = manifold.bounds().clone();
            cfg.sense = sense;
            let result = run_ensemble(&smoothed, &cfg, Mode::Zombi, runs)?;
            let finals = result.final_best();
            rows.push(SweepRow {
                bandwidth: bw,
                acquisition: kind,
                runs,
                median_best_y: sense.to_external(median(&finals)),
                min_best_y: sense.to_external(finals.iter().copied().fold(f64::INFINITY, f64::min)),
                max_best_y: sense.to_external(finals.iter().copied().fold(f64::NEG_INFINITY, f64::max)),
                surface_best: sense.to_external(surface_best),
            });
        }
    }
    Ok(rows)
}

pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["bandwidth", "acquisition", "runs", "median_best_y", "min_best_y", "max_best_y", "surface_best"])?;
    for r in rows {
        w.write_record([
            r.bandwidth.to_string(),
            r.acquisition.to_string(),
            r.runs.to_string(),
            r.median_best_y.to_string(),
            r.min_best_y.to_string(),
            r.max_best_y.to_string(),
            r.surface_best.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
