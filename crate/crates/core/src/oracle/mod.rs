//! Sampling-based estimates: distances, the metric subregularity probe,
//! violation sequences and penalty exactness.

pub mod distance;
pub mod feasible;
pub mod penalty;
pub mod probe;
pub mod witness;

pub use distance::{distance_to_gamma, gamma_distance_f64, ortho_distance, Norm};
pub use feasible::{feasible_distance, feasible_pool, FeasiblePool};
pub use penalty::{penalty_probe, PenaltyConfig, PenaltyNorm, PenaltyReport};
pub use probe::{mscq_probe, ProbeConfig, ProbeResult, ProbeVerdict};
pub use witness::{verify_sequence, witness_search, WitnessConfig, WitnessSequence};
