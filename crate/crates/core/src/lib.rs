//! Zooming memory-based Bayesian optimization for needle-in-a-haystack problems.
//!
//! The optimizer alternates between two phases. Each *activation* shrinks the
//! search window to the bounding box of the best few samples in memory, draws
//! a fresh Latin Hypercube inside it, and discards everything else from memory.
//! Then a fixed number of *forward experiments* are chosen one at a time by
//! maximizing an acquisition function over a GP surrogate trained only on the
//! current memory. Because memory is pruned every activation, the surrogate
//! never trains on more than `i + phi` points and the per-step cost stays flat.
//!
//! ```no_run
//! use zombi::prelude::*;
//!
//! let ackley = Ackley::new(5, 3.0);
//! let config = ZombiConfig::new(ackley.bounds()?)
//!     .with_acquisition(AcquisitionKind::LcbAdaptive)
//!     .with_seed(42);
//! let trace = run_zombi(&ackley, &config)?;
//! println!("best y = {}", trace.best_value());
//! # Ok::<(), zombi::Error>(())
//! ```
//!
//! Runnable examples live in `examples/`; the `zombi` binary wraps the same
//! API for batch experiments.

pub mod acquisition;
pub mod bench;
pub mod engine;
pub mod error;
pub mod gp;
pub mod memory;
pub mod objectives;
pub mod output;
pub mod rng;
pub mod sampling;
pub mod space;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::acquisition::{AcqHyperparams, AcquisitionKind};
    pub use crate::engine::{run_ensemble, run_mode, run_plain_bo, run_zombi, Mode, Objective, RunTrace, ZombiConfig};
    pub use crate::memory::ObjectiveSense;
    pub use crate::objectives::{Ackley, InterpolatedManifold, Interpolator, TabularDataset};
    pub use crate::space::{Bounds, Point};
}
