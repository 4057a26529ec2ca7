//! Simulation and comparison of quantum process tomography schemes.
//!
//! Channels are described by Kraus operators and summarised by their χ
//! matrix in the Pauli basis. Each scheme is a list of input states and
//! measurements; its design matrix maps χ to outcome probabilities, and
//! least-squares inversion recovers χ from exact or sampled statistics.

pub mod channel;
pub mod chi;
pub mod cost;
pub mod error;
pub mod io;
pub mod linalg;
pub mod measurement;
pub mod mub;
pub mod pauli;
pub mod qpt;
pub mod resources;
pub mod sampling;
pub mod scheme;
pub mod state;
pub mod sweep;

pub use channel::{random_channel, QuantumChannel};
pub use chi::{chi_to_kraus, kraus_to_chi, ChiMatrix};
pub use cost::{measurement_cost, CostTarget, GateModel};
pub use error::{Error, Result};
pub use measurement::{Measurement, OutcomeDistribution};
pub use mub::{mub_family, pauli_partition, MeasurementSetting, MubFamily};
pub use pauli::{Pauli, PauliString};
pub use qpt::{build_design_matrix, build_plan, reconstruct_chi, simulate_experiment, ExperimentPlan, Shots};
pub use resources::{comparison_table, repetitions_for_precision, resource_row, ResourceRow};
pub use scheme::SchemeTag;
pub use state::{DensityMatrix, KetVector};
pub use sweep::{precision_sweep, SweepReport};
