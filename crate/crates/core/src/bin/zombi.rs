use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use zombi::acquisition::AcquisitionKind;
use zombi::bench::{run_smooth_sweep, run_timing, write_sweep_csv, write_timing_csv, ObjectiveSpec, DEFAULT_BANDWIDTHS};
use zombi::engine::{run_ensemble, run_mode, Mode, ZombiConfig};
use zombi::memory::ObjectiveSense;
use zombi::objectives::{load_csv, plant_needle, ForestParams, InterpolatedManifold, Interpolator};
use zombi::output::{save_json, save_trace_csv, write_ensemble_csv, RunSummary};
use zombi::{Error, Result};

#[derive(Parser)]
#[command(name = "zombi", version, about = "Zooming memory-based Bayesian optimization")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one optimization and write trace.csv and summary.json.
    Run {
        #[command(flatten)]
        objective: ObjectiveArgs,
        #[command(flatten)]
        opt: OptimizerArgs,
        #[arg(long, default_value = "zombi")]
        mode: Mode,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Run seeds base..base+runs in parallel and write per-run traces plus ensemble.csv.
    Ensemble {
        #[command(flatten)]
        objective: ObjectiveArgs,
        #[command(flatten)]
        opt: OptimizerArgs,
        #[arg(long, default_value = "zombi")]
        mode: Mode,
        #[arg(long, default_value_t = 12)]
        runs: usize,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Compare per-step surrogate cost of the zooming optimizer and plain BO.
    Timing {
        #[command(flatten)]
        objective: ObjectiveArgs,
        #[command(flatten)]
        opt: OptimizerArgs,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Sweep smoothing bandwidths x acquisition kinds on a dataset manifold.
    SmoothSweep {
        /// Dataset CSV; a synthetic planted needle is used when omitted.
        #[arg(long)]
        data: Option<PathBuf>,
        #[arg(long, default_value = "y")]
        target: String,
        #[arg(long, default_value = "min")]
        sense: ObjectiveSense,
        #[arg(long, value_delimiter = ',')]
        bandwidth: Vec<f64>,
        #[arg(long, value_delimiter = ',')]
        acq: Vec<AcquisitionKind>,
        #[arg(long, default_value_t = 12)]
        runs: usize,
        #[arg(long, default_value_t = 100)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        k: usize,
        #[command(flatten)]
        needle: NeedleArgs,
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
    /// Write a synthetic needle-in-a-haystack CSV and print its optimum as JSON.
    GenNeedle {
        #[command(flatten)]
        needle: NeedleArgs,
        #[arg(long, default_value = "needle.csv")]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectiveKind {
    Ackley5,
    Ackley,
    Dataset,
    Needle,
}

#[derive(Clone, Copy, ValueEnum)]
enum InterpolatorKind {
    Knn,
    Trees,
}

#[derive(Args)]
struct NeedleArgs {
    #[arg(long, default_value_t = 5)]
    needle_dim: usize,
    #[arg(long, default_value_t = 10_000)]
    needle_rows: usize,
    #[arg(long, default_value_t = 0.008)]
    needle_fraction: f64,
    #[arg(long, default_value_t = -2.0, allow_negative_numbers = true)]
    needle_depth: f64,
    #[arg(long, default_value_t = 1)]
    needle_seed: u64,
}

#[derive(Args)]
struct ObjectiveArgs {
    #[arg(long, value_enum, default_value = "ackley5")]
    objective: ObjectiveKind,
    /// Dimension for `--objective ackley`.
    #[arg(long, default_value_t = 5)]
    dim: usize,
    /// Ackley basin narrowing factor.
    #[arg(long, default_value_t = 3.0)]
    scale: f64,
    #[arg(long)]
    data: Option<PathBuf>,
    #[arg(long, default_value = "y")]
    target: String,
    #[arg(long, default_value = "min")]
    sense: ObjectiveSense,
    #[arg(long, value_enum, default_value = "knn")]
    interpolator: InterpolatorKind,
    #[arg(long, default_value_t = 8)]
    k: usize,
    /// Gaussian smoothing bandwidth applied to a dataset manifold.
    #[arg(long)]
    bandwidth: Option<f64>,
    #[command(flatten)]
    needle: NeedleArgs,
}

#[derive(Args)]
struct OptimizerArgs {
    #[arg(long, default_value = "lcb-adaptive")]
    acq: AcquisitionKind,
    /// Number of activations (alpha).
    #[arg(long)]
    activations: Option<usize>,
    /// Forward experiments per activation.
    #[arg(long, default_value_t = 20)]
    phi: usize,
    /// LHS samples drawn at the start of each activation.
    #[arg(long, default_value_t = 5)]
    init: usize,
    /// Memory points kept for zooming (m).
    #[arg(long, default_value_t = 5)]
    memory: usize,
    /// Initial global LHS samples.
    #[arg(long)]
    initial: Option<usize>,
    #[arg(long, default_value_t = 1000)]
    candidates: usize,
    /// Total evaluations; sets activations and the initial sample size.
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    xi: Option<f64>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    eta: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl NeedleArgs {
    fn spec(&self, interpolator: Interpolator) -> ObjectiveSpec {
        ObjectiveSpec::Needle {
            dim: self.needle_dim,
            rows: self.needle_rows,
            fraction: self.needle_fraction,
            depth: self.needle_depth,
            seed: self.needle_seed,
            interpolator,
        }
    }
}

impl ObjectiveArgs {
    fn interpolator(&self) -> Interpolator {
        match self.interpolator {
            InterpolatorKind::Knn => Interpolator::KnnIdw { k: self.k },
            InterpolatorKind::Trees => Interpolator::BaggedTrees(ForestParams::default()),
        }
    }

    fn spec(&self) -> Result<ObjectiveSpec> {
        Ok(match self.objective {
            ObjectiveKind::Ackley5 => ObjectiveSpec::Ackley { dim: 5, scale: self.scale },
            ObjectiveKind::Ackley => ObjectiveSpec::Ackley { dim: self.dim, scale: self.scale },
            ObjectiveKind::Dataset => ObjectiveSpec::Dataset {
                path: self.data.clone().ok_or_else(|| Error::InvalidConfig("--objective dataset requires --data".into()))?,
                target: self.target.clone(),
                sense: self.sense,
                interpolator: self.interpolator(),
                bandwidth: self.bandwidth,
            },
            ObjectiveKind::Needle => self.needle.spec(self.interpolator()),
        })
    }
}

impl OptimizerArgs {
    fn config(&self, bounds: zombi::space::Bounds, sense: ObjectiveSense, default_budget: Option<usize>) -> Result<ZombiConfig> {
        let mut cfg = ZombiConfig::new(bounds).with_acquisition(self.acq).with_seed(self.seed);
        cfg.sense = sense;
        cfg.forward_per_activation = self.phi;
        cfg.init_per_activation = self.init;
        cfg.memory = self.memory;
        cfg.candidates_per_step = self.candidates;
        if let Some(v) = self.initial {
            cfg.initial_global_samples = v;
        }
        if let Some(budget) = self.budget.or(default_budget) {
            if self.activations.is_some() {
                return Err(Error::InvalidConfig("--budget and --activations are mutually exclusive".into()));
            }
            cfg = cfg.with_budget(budget)?;
        } else if let Some(a) = self.activations {
            cfg.activations = a;
        }
        let h = &mut cfg.hyperparams;
        h.beta = self.beta.unwrap_or(h.beta);
        h.xi = self.xi.unwrap_or(h.xi);
        h.epsilon = self.epsilon.unwrap_or(h.epsilon);
        h.eta = self.eta.unwrap_or(h.eta);
        cfg.validate()?;
        Ok(cfg)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            let usage = matches!(e, Error::InvalidConfig(_) | Error::EmptyNeedle | Error::NonPositive(_));
            ExitCode::from(if usage { 2 } else { 1 })
        }
    }
}

fn create_dir(out: &Path) -> Result<()> {
    fs::create_dir_all(out)?;
    Ok(())
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Run { objective, opt, mode, out } => {
            let built = objective.spec()?.build()?;
            report_dropped(built.dropped_rows);
            let cfg = opt.config(built.bounds.clone(), built.sense, None)?;
            let trace = run_mode(mode, built.objective.as_ref(), &cfg)?;
            create_dir(&out)?;
            save_trace_csv(&trace, &out.join("trace.csv"))?;
            let summary = RunSummary::from_trace(&trace);
            save_json(&summary, &out.join("summary.json"))?;
            println!("best y = {} at x = {:?} (iteration {})", summary.best_y, summary.best_x, summary.best_iteration);
        }
        Command::Ensemble { objective, opt, mode, runs, out } => {
            if runs == 0 {
                return Err(Error::InvalidConfig("--runs must be at least 1".into()));
            }
            let built = objective.spec()?.build()?;
            report_dropped(built.dropped_rows);
            let cfg = opt.config(built.bounds.clone(), built.sense, None)?;
            let result = run_ensemble(built.objective.as_ref(), &cfg, mode, runs)?;
            create_dir(&out)?;
            for trace in &result.traces {
                save_trace_csv(trace, &out.join(format!("trace_seed{}.csv", trace.config.seed)))?;
            }
            write_ensemble_csv(&result, fs::File::create(out.join("ensemble.csv"))?)?;
            let finals: Vec<f64> = result.traces.iter().map(|t| t.best_value()).collect();
            let summary = EnsembleSummary {
                mode,
                runs,
                base_seed: cfg.seed,
                median_final_best: cfg.sense.to_external(result.median_final_best()),
                final_best: finals,
            };
            save_json(&summary, &out.join("summary.json"))?;
            println!("median final best y over {runs} runs = {}", summary.median_final_best);
        }
        Command::Timing { objective, opt, out } => {
            let built = objective.spec()?.build()?;
            let cfg = opt.config(built.bounds.clone(), built.sense, Some(opt.budget.unwrap_or(500)))?;
            let report = run_timing(built.objective.as_ref(), &cfg, cfg.total_budget())?;
            create_dir(&out)?;
            write_timing_csv(&report, fs::File::create(out.join("timing.csv"))?)?;
            save_json(&report, &out.join("timing_summary.json"))?;
            println!(
                "plain BO last/first decile fit time = {:.2}x; zooming last/first activation = {:.2}x; final speedup = {:.2}x",
                report.plain_bo_fit_growth, report.zombi_flatness_ratio, report.final_speedup
            );
        }
        Command::SmoothSweep { data, target, sense, bandwidth, acq, runs, budget, seed, k, needle, out } => {
            if runs == 0 {
                return Err(Error::InvalidConfig("--runs must be at least 1".into()));
            }
            let dataset = match &data {
                Some(path) => {
                    let ds = load_csv(path, &target, sense)?;
                    report_dropped(ds.dropped_rows);
                    ds
                }
                None => {
                    plant_needle(needle.needle_dim, needle.needle_rows, needle.needle_fraction, needle.needle_depth, needle.needle_seed)?
                        .dataset
                }
            };
            let manifold = InterpolatedManifold::knn_idw(dataset, k)?;
            let bandwidths = if bandwidth.is_empty() { DEFAULT_BANDWIDTHS.to_vec() } else { bandwidth };
            let kinds = if acq.is_empty() { AcquisitionKind::ALL.to_vec() } else { acq };
            let base = ZombiConfig::new(manifold.bounds().clone()).with_seed(seed).with_budget(budget)?;
            let rows = run_smooth_sweep(&manifold, &bandwidths, &kinds, runs, &base)?;
            create_dir(&out)?;
            write_sweep_csv(&rows, fs::File::create(out.join("sweep.csv"))?)?;
            write_sweep_csv(&rows, std::io::stdout())?;
        }
        Command::GenNeedle { needle, out } => {
            let planted =
                plant_needle(needle.needle_dim, needle.needle_rows, needle.needle_fraction, needle.needle_depth, needle.needle_seed)?;
            if let Some(dir) = out.parent().filter(|p| !p.as_os_str().is_empty()) {
                create_dir(dir)?;
            }
            planted.dataset.save_csv(&out)?;
            let optimum = NeedleOptimum {
                path: out.display().to_string(),
                center: planted.center.coords().to_vec(),
                depth: planted.depth,
                needle_rows: planted.needle_rows,
            };
            println!("{}", serde_json::to_string_pretty(&optimum)?);
        }
    }
    Ok(())
}

fn report_dropped(n: usize) {
    if n > 0 {
        eprintln!("warning: dropped {n} rows with non-numeric or missing values");
    }
}

#[derive(Serialize)]
struct EnsembleSummary {
    mode: Mode,
    runs: usize,
    base_seed: u64,
    median_final_best: f64,
    final_best: Vec<f64>,
}

#[derive(Serialize)]
struct NeedleOptimum {
    path: String,
    center: Vec<f64>,
    depth: f64,
    needle_rows: usize,
}
