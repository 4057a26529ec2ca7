use rayon::prelude::*;

use crate::channel::QuantumChannel;
use crate::error::{Error, Result};
use crate::measurement::{outcome_probabilities_raw, OutcomeDistribution};
use crate::sampling::{derive_seed, sample_outcomes};

use super::design::DesignMatrix;
use super::plan::ExperimentPlan;

/// Exact probabilities, or a finite number of shots per configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shots {
    Exact,
    Sampled(u64),
}

/// Exact outcome distribution of every configuration under `channel`.
pub fn exact_distributions(plan: &ExperimentPlan, channel: &QuantumChannel) -> Result<Vec<OutcomeDistribution>> {
    if channel.qubit_count() != plan.n {
        return Err(Error::DimensionMismatch { expected: plan.n, found: channel.qubit_count() });
    }
    plan.configs
        .par_iter()
        .map(|cfg| {
            let rho = channel.apply_to_system(&cfg.input.projector(), plan.simulated_ancillas)?;
            outcome_probabilities_raw(&cfg.measurement, &rho)
        })
        .collect()
}

/// Runs every configuration of `plan` on `channel`. Sampled runs seed
/// configuration `i` with `seed ^ i`.
pub fn simulate_experiment(
    plan: &ExperimentPlan,
    channel: &QuantumChannel,
    shots: Shots,
    seed: u64,
) -> Result<Vec<OutcomeDistribution>> {
    let exact = exact_distributions(plan, channel)?;
    match shots {
        Shots::Exact => Ok(exact),
        Shots::Sampled(n) => resample(&exact, n, seed),
    }
}

/// Draws `shots` outcomes from each distribution.
pub fn resample(exact: &[OutcomeDistribution], shots: u64, seed: u64) -> Result<Vec<OutcomeDistribution>> {
    exact
        .par_iter()
        .enumerate()
        .map(|(i, d)| sample_outcomes(d, shots, derive_seed(seed, i as u64)))
        .collect()
}

/// Non-loss frequencies of every configuration, stacked in design-row order.
pub fn stacked_observations(design: &DesignMatrix, dists: &[OutcomeDistribution]) -> Result<Vec<f64>> {
    let blocks = design.block_sizes();
    if blocks.len() != dists.len() {
        return Err(Error::LengthMismatch(blocks.len(), dists.len()));
    }
    let mut out = Vec::with_capacity(design.rows());
    for (&size, d) in blocks.iter().zip(dists) {
        if d.len() < size {
            return Err(Error::DimensionMismatch { expected: size, found: d.len() });
        }
        out.extend_from_slice(&d.frequencies()[..size]);
    }
    Ok(out)
}
