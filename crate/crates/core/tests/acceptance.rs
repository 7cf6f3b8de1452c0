//! Acceptance criteria, one PASS/FAIL line each. Runs sequentially so the
//! timing criterion is not disturbed by other work in the same process.

mod common;

use std::fs;
use std::process::{Command, ExitCode};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng as _, SeedableRng};

use common::{dense_gp_posterior, ei_monte_carlo, random_gp_problem, stratum_histogram};
use zombi::acquisition::{acq_ei, exploration_weight, AbruptBranch, AcqContext};
use zombi::bench::run_timing;
use zombi::engine::{run_ensemble, run_zombi, Phase};
use zombi::gp::{fit_gp, KernelParams, Posterior};
use zombi::objectives::{compute_zt, plant_needle};
use zombi::prelude::*;
use zombi::rng::Rng;
use zombi::sampling::latin_hypercube;

type Outcome = Result<String, String>;

fn check(cond: bool, detail: String) -> Outcome {
    if cond {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn c1_surrogate_oracle() -> Outcome {
    let mut rng = StdRng::seed_from_u64(1);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let p = random_gp_problem(&mut rng);
        let bounds = Bounds::new(Point::new(p.lower.clone()).unwrap(), Point::new(p.upper.clone()).unwrap()).unwrap();
        let x: Vec<Point> = p.x.iter().map(|v| Point::new(v.clone()).unwrap()).collect();
        let model = fit_gp(&x, &p.y, &bounds, KernelParams::new(p.length_scale, 1.0, p.nugget).unwrap()).map_err(|e| e.to_string())?;
        for q in p.queries.iter().chain(&p.x) {
            let (mu, var) = dense_gp_posterior(&p, 1.0, q);
            let post = model.predict(q);
            worst = worst.max((post.mean - mu).abs()).max((post.stdev * post.stdev - var).abs());
        }
    }
    check(worst <= 1e-6, format!("max abs deviation {worst:.2e} (tol 1e-6)"))
}

fn c2_ei_monte_carlo() -> Outcome {
    let mut rng = StdRng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    for case in 0..20 {
        let mu = rng.gen_range(-2.0..2.0);
        let sigma = rng.gen_range(0.05..2.0);
        let xi = rng.gen_range(0.0..0.3);
        let incumbent = mu + xi + sigma * rng.gen_range(-3.0..3.0);
        let closed = acq_ei(
            &Posterior { mean: mu, stdev: sigma },
            &AcqContext { incumbent, ..Default::default() },
            &AcqHyperparams { xi, ..AcqHyperparams::defaults(AcquisitionKind::Ei) },
        );
        let (mc, se) = ei_monte_carlo(mu, sigma, incumbent, xi, 1_000_000, 100 + case);
        worst = worst.max((closed - mc).abs() / se);
    }
    check(worst <= 3.0, format!("max |closed - MC| = {worst:.2} standard errors (tol 3)"))
}

fn c3_pruning_cap() -> Outcome {
    let ackley = Ackley::new(5, 3.0);
    let config = ZombiConfig::new(ackley.bounds().unwrap());
    let report = run_timing(&ackley, &config, 500).map_err(|e| e.to_string())?;
    let cap = config.init_per_activation + config.forward_per_activation;
    let detail = format!(
        "max surrogate n {} (cap {cap}); final/first activation mean fit {:.2}x (tol 1.5); plain BO last/first decile fit {:.1}x (min 10)",
        report.zombi_max_surrogate_n, report.zombi_flatness_ratio, report.plain_bo_fit_growth
    );
    check(
        report.zombi_max_surrogate_n <= cap && report.zombi_flatness_ratio <= 1.5 && report.plain_bo_fit_growth >= 10.0,
        detail,
    )
}

fn c4_bounds_nesting() -> Outcome {
    let ackley = Ackley::new(5, 3.0);
    for seed in 0..20 {
        let config = ZombiConfig::new(ackley.bounds().unwrap()).with_seed(seed);
        let trace = run_zombi(&ackley, &config).map_err(|e| e.to_string())?;
        let mut prev = config.bounds.clone();
        for act in &trace.activations {
            if !prev.encloses(&act.bounds) {
                return Err(format!("seed {seed}: activation {} escapes its parent window", act.index));
            }
            if !act.memory.iter().all(|s| act.bounds.contains(&s.x).unwrap()) {
                return Err(format!("seed {seed}: activation {} misses a memory point", act.index));
            }
            prev = act.bounds.clone();
        }
    }
    Ok("20 seeds x 4 activations nested and memory-containing".into())
}

fn c5_convergence_superiority() -> Outcome {
    let ackley = Ackley::new(5, 3.0);
    let base = ZombiConfig::new(ackley.bounds().unwrap()).with_budget(110).map_err(|e| e.to_string())?;
    let z = run_ensemble(&ackley, &base.clone().with_acquisition(AcquisitionKind::LcbAdaptive), Mode::Zombi, 12)
        .map_err(|e| e.to_string())?;
    let p = run_ensemble(&ackley, &base.with_acquisition(AcquisitionKind::Lcb), Mode::PlainBo, 12).map_err(|e| e.to_string())?;
    let (mz, mp) = (z.median_final_best(), p.median_final_best());
    check(mz <= 0.8 * mp, format!("median best: zombi {mz:.3}, plain BO {mp:.3} (need zombi <= 0.8 x plain)"))
}

fn c6_planted_needle() -> Outcome {
    let needle = plant_needle(5, 10_000, 0.008, -2.0, 1).map_err(|e| e.to_string())?;
    let manifold = InterpolatedManifold::knn_idw(needle.dataset, 8).map_err(|e| e.to_string())?;
    let base = ZombiConfig::new(manifold.bounds().clone()).with_budget(110).map_err(|e| e.to_string())?;
    let hits = |mode| -> Result<(usize, f64), String> {
        let r = run_ensemble(&manifold, &base, mode, 12).map_err(|e| e.to_string())?;
        Ok((r.final_best().iter().filter(|&&y| y <= -1.0).count(), r.median_final_best()))
    };
    let (hz, mz) = hits(Mode::Zombi)?;
    let (hp, mp) = hits(Mode::PlainBo)?;
    check(
        hz >= 6 && hp <= 3,
        format!("runs reaching y <= -1: zombi {hz}/12 (need >= 6, median {mz:.3}), plain BO {hp}/12 (need <= 3, median {mp:.3})"),
    )
}

/// Returns the scripted value for forward steps 0..3 of the first activation,
/// and a smooth bowl everywhere else.
struct Scripted {
    calls: AtomicUsize,
    first_forward: usize,
    script: [f64; 3],
}

impl Objective for Scripted {
    fn evaluate(&self, x: &[f64]) -> f64 {
        let i = self.calls.fetch_add(1, Ordering::SeqCst);
        match i.checked_sub(self.first_forward) {
            Some(k) if k < 3 => self.script[k],
            _ => x.iter().map(|v| v * v).sum(),
        }
    }
}

fn c7_abrupt_branches() -> Outcome {
    let mut config = ZombiConfig::new(Bounds::uniform(2, -1.0, 1.0).unwrap()).with_acquisition(AcquisitionKind::EiAbrupt);
    config.activations = 1;
    let first_forward = config.initial_global_samples + config.init_per_activation;
    let eta = config.hyperparams.eta;
    let branch_after = |script: [f64; 3]| -> Result<Option<AbruptBranch>, String> {
        let obj = Scripted { calls: AtomicUsize::new(0), first_forward, script };
        let trace = run_zombi(&obj, &config).map_err(|e| e.to_string())?;
        let forced: Vec<f64> = trace.records[first_forward..first_forward + 3].iter().map(|r| r.y).collect();
        if forced != script || trace.records[first_forward + 3].phase != Phase::Forward {
            return Err(format!("script not applied: {forced:?}"));
        }
        Ok(trace.records[first_forward + 3].branch)
    };
    let flat = branch_after([0.7, 0.7, 0.7])?;
    let bumped = branch_after([0.7, 0.7 + eta + 0.1, 0.7])?;
    check(
        flat == Some(AbruptBranch::Explore) && bumped == Some(AbruptBranch::Greedy),
        format!("equal triple -> {flat:?}, perturbed triple -> {bumped:?} (eta {eta})"),
    )
}

fn c8_adaptive_decay() -> Outcome {
    let h = AcqHyperparams::defaults(AcquisitionKind::LcbAdaptive);
    let w10 = exploration_weight(10, &h);
    let err = (w10 - 3.0 * 0.9f64.powi(10)).abs();
    let ackley = Ackley::new(5, 3.0);
    let config = ZombiConfig::new(ackley.bounds().unwrap()).with_acquisition(AcquisitionKind::LcbAdaptive);
    let trace = run_zombi(&ackley, &config).map_err(|e| e.to_string())?;
    let weights: Vec<f64> = trace.records.iter().filter_map(|r| r.exploration_weight).collect();
    let decreasing = weights.windows(2).all(|w| w[1] < w[0]);
    check(
        err <= 1e-9 && decreasing && weights.len() == 80 && trace.records.len() == 110,
        format!("w(10) error {err:.1e} (tol 1e-9); {} forward weights strictly decreasing: {decreasing}", weights.len()),
    )
}

fn c9_lhs_stratification() -> Outcome {
    for n in [4, 16, 64] {
        for d in [2, 5] {
            let bounds = Bounds::uniform(d, -2.0, 3.0).unwrap();
            for seed in 0..100 {
                let pts = latin_hypercube(n, &bounds, &mut Rng::new(seed)).map_err(|e| e.to_string())?;
                let coords: Vec<Vec<f64>> = pts.iter().map(|p| p.coords().to_vec()).collect();
                if stratum_histogram(&coords, &vec![-2.0; d], &vec![3.0; d]).iter().any(|h| h.iter().any(|&c| c != 1)) {
                    return Err(format!("n={n} d={d} seed={seed} not stratified"));
                }
            }
        }
    }
    Ok("n in {4,16,64} x d in {2,5} x 100 seeds".into())
}

fn masked_traces(dir: &std::path::Path) -> Result<Vec<(String, String)>, String> {
    let mut files: Vec<_> = fs::read_dir(dir).map_err(|e| e.to_string())?.filter_map(|e| e.ok()).map(|e| e.path()).collect();
    files.retain(|p| p.file_name().is_some_and(|n| n.to_string_lossy().starts_with("trace_")));
    files.sort();
    files
        .iter()
        .map(|path| {
            let mut rdr = csv::Reader::from_path(path).map_err(|e| e.to_string())?;
            let header = rdr.headers().map_err(|e| e.to_string())?.clone();
            let keep: Vec<usize> = (0..header.len()).filter(|&i| !matches!(&header[i], "fit_ms" | "acq_ms")).collect();
            let mut body = String::new();
            for rec in rdr.records() {
                let rec = rec.map_err(|e| e.to_string())?;
                body.push_str(&keep.iter().map(|&i| &rec[i]).collect::<Vec<_>>().join(","));
                body.push('\n');
            }
            Ok((path.file_name().unwrap().to_string_lossy().into_owned(), body))
        })
        .collect()
}

fn c10_cli_determinism() -> Outcome {
    let root = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut outputs = Vec::new();
    for name in ["a", "b"] {
        let out = root.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_zombi"))
            .args(["ensemble", "--objective", "ackley5", "--runs", "4", "--seed", "9", "--out"])
            .arg(&out)
            .output()
            .map_err(|e| e.to_string())?;
        if !status.status.success() {
            return Err(String::from_utf8_lossy(&status.stderr).into_owned());
        }
        outputs.push(masked_traces(&out)?);
    }
    check(
        outputs[0].len() == 4 && outputs[0] == outputs[1],
        format!("{} trace files, identical with timing columns masked: {}", outputs[0].len(), outputs[0] == outputs[1]),
    )
}

fn c11_zt() -> Outcome {
    let zt = compute_zt(2e-4, 1e5, 2.0, 300.0).map_err(|e| e.to_string())?;
    check(zt == 0.6, format!("compute_zt = {zt:?} (exact 0.6)"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Duration); 11] = [
        ("surrogate oracle equivalence", c1_surrogate_oracle, Duration::from_secs(10)),
        ("EI Monte-Carlo oracle", c2_ei_monte_carlo, Duration::from_secs(30)),
        ("pruning cap and flat fit time", c3_pruning_cap, Duration::from_secs(600)),
        ("bounds nesting", c4_bounds_nesting, Duration::from_secs(300)),
        ("convergence superiority on narrow Ackley", c5_convergence_superiority, Duration::from_secs(900)),
        ("planted-needle discovery", c6_planted_needle, Duration::from_secs(1200)),
        ("EI Abrupt branch switching", c7_abrupt_branches, Duration::from_secs(60)),
        ("LCB Adaptive decay", c8_adaptive_decay, Duration::from_secs(60)),
        ("LHS stratification", c9_lhs_stratification, Duration::from_secs(60)),
        ("ensemble CLI determinism", c10_cli_determinism, Duration::from_secs(300)),
        ("ZT arithmetic", c11_zt, Duration::from_secs(1)),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= *limit => (true, d),
            Ok(d) => (false, format!("{d}; took {elapsed:.1?}, limit {limit:?}")),
            Err(d) => (false, d),
        };
        failed += usize::from(!ok);
        println!("{} {:>2}. {name}: {detail} [{:.1?}]", if ok { "PASS" } else { "FAIL" }, i + 1, elapsed);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
