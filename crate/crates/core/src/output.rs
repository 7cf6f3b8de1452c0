//! CSV traces and JSON run summaries.
//!
//! Trace columns: `iteration,activation,x1..xd,y,best_y,surrogate_n,fit_ms,acq_ms`.
//! `y` and `best_y` are written in the objective's own direction; timings are
//! milliseconds with three decimals.

use std::fs::File;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::engine::{EnsembleResult, Mode, RunTrace, ZombiConfig};
use crate::error::Result;

/// Timing columns, excluded when comparing traces for reproducibility.
pub const TIMING_COLUMNS: [&str; 2] = ["fit_ms", "acq_ms"];

pub fn trace_header(dim: usize) -> Vec<String> {
    let mut h = vec!["iteration".to_string(), "activation".to_string()];
    h.extend((1..=dim).map(|d| format!("x{d}")));
    h.extend(["y", "best_y", "surrogate_n", "fit_ms", "acq_ms"].map(String::from));
    h
}

pub fn write_trace_csv<W: Write>(trace: &RunTrace, out: W) -> Result<()> {
    let sense = trace.config.sense;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(trace_header(trace.dim()))?;
    for r in &trace.records {
        let mut row = vec![r.iteration.to_string(), r.activation.to_string()];
        row.extend(r.x.iter().map(|v| v.to_string()));
        row.push(sense.to_external(r.y).to_string());
        row.push(sense.to_external(r.best_y).to_string());
        row.push(r.surrogate_n.to_string());
        row.push(format!("{:.3}", r.fit_ms));
        row.push(format!("{:.3}", r.acq_ms));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn save_trace_csv(trace: &RunTrace, path: &Path) -> Result<()> {
    write_trace_csv(trace, File::create(path)?)
}

#[derive(Debug, Clone, Serialize)]
pub struct RunSummary {
    pub mode: Mode,
    pub best_x: Vec<f64>,
    pub best_y: f64,
    pub best_iteration: usize,
    pub total_evaluations: usize,
    pub total_seconds: f64,
    pub config: ZombiConfig,
}

impl RunSummary {
    pub fn from_trace(trace: &RunTrace) -> Self {
        let best = trace.best();
        RunSummary {
            mode: trace.mode,
            best_x: best.x.coords().to_vec(),
            best_y: trace.best_value(),
            best_iteration: best.iteration,
            total_evaluations: trace.archive.len(),
            total_seconds: trace.wall_clock.as_secs_f64(),
            config: trace.config.clone(),
        }
    }
}

pub fn save_json<T: Serialize>(value: &T, path: &Path) -> Result<()> {
    let mut f = File::create(path)?;
    serde_json::to_writer_pretty(&mut f, value)?;
    writeln!(f)?;
    Ok(())
}

/// Per-iteration median/min/max of the running best, objective units.
pub fn write_ensemble_csv<W: Write>(result: &EnsembleResult, out: W) -> Result<()> {
    let sense = result.traces[0].config.sense;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["iteration", "median_best_y", "min_best_y", "max_best_y"])?;
    for row in &result.summary {
        // Under maximization the envelope flips along with the sign.
        let (lo, hi) = match sense {
            crate::memory::ObjectiveSense::Minimize => (row.min, row.max),
            crate::memory::ObjectiveSense::Maximize => (row.max, row.min),
        };
        w.write_record([
            row.iteration.to_string(),
            sense.to_external(row.median).to_string(),
            sense.to_external(lo).to_string(),
            sense.to_external(hi).to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
