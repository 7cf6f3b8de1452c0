//! Benchmark and dataset-backed objectives.

mod ackley;
mod forest;
mod manifold;
mod needle;
mod smooth;
mod tabular;
mod zt;

pub use ackley::{ackley, ackley_with, Ackley, AckleyParams};
pub use forest::{BaggedTrees, ForestParams};
pub use manifold::{manifold_eval, InterpolatedManifold, Interpolator};
pub use needle::{plant_needle, PlantedNeedle, NEEDLE_RADIUS};
pub use smooth::{gaussian_smooth, SmoothedObjective};
pub use tabular::{load_csv, TabularDataset};
pub use zt::compute_zt;
