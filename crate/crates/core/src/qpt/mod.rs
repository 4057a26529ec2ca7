//! Scheme plans, design matrices, simulation and linear inversion.

pub mod dcqd;
pub mod design;
pub mod plan;
pub mod reconstruct;
pub mod relaxation;
pub mod simulate;

pub use crate::scheme::SchemeTag;
pub use dcqd::{coherence_input, dcqd_configs, dcqd_configs_with, DcqdFrame, DcqdParams};
pub use design::{build_design_matrix, design_from_configs, DesignMatrix};
pub use plan::{build_plan, Config, ExperimentPlan};
pub use reconstruct::{reconstruct_chi, ChiEstimate, LinearInversion};
pub use relaxation::{extract_relaxation, RelaxationEstimate};
pub use simulate::{exact_distributions, resample, simulate_experiment, stacked_observations, Shots};

use crate::channel::QuantumChannel;
use crate::error::Result;

/// Plan, simulate and invert in one call.
pub fn run_tomography(scheme: SchemeTag, channel: &QuantumChannel, shots: Shots, seed: u64) -> Result<ChiEstimate> {
    let plan = build_plan(scheme, channel.qubit_count())?;
    let design = build_design_matrix(&plan)?;
    let dists = simulate_experiment(&plan, channel, shots, seed)?;
    reconstruct_chi(&design, &stacked_observations(&design, &dists)?)
}
