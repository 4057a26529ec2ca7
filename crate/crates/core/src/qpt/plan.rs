use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{self, c};
use crate::measurement::{setting_to_measurement, Measurement, PovmMeasurement};
use crate::mub::{pauli_partition, MeasurementSetting};
use crate::pauli::{Pauli, PauliString};
use crate::scheme::SchemeTag;
use crate::state::KetVector;

use super::dcqd::dcqd_configs;

/// Largest system size the simulator builds plans for.
pub const MAX_PLAN_QUBITS: usize = 2;

/// One experimental configuration: an input state and a measurement.
#[derive(Clone, Debug)]
pub struct Config {
    pub label: String,
    pub input: KetVector,
    pub measurement: Arc<Measurement>,
    pub measurement_label: String,
}

/// Everything needed to simulate and invert one scheme on `n` qubits.
#[derive(Clone, Debug)]
pub struct ExperimentPlan {
    pub scheme: SchemeTag,
    pub n: usize,
    pub configs: Vec<Config>,
    /// Ancillas the scheme requires in the lab.
    pub ancilla_count: usize,
    /// Ancillas actually carried through the simulation.
    pub simulated_ancillas: usize,
    /// Configuration count used for resource accounting.
    pub accounted_configurations: u128,
}

impl ExperimentPlan {
    pub fn register_qubits(&self) -> usize {
        self.n + self.simulated_ancillas
    }

    pub fn config_count(&self) -> usize {
        self.configs.len()
    }

    /// Distinct input states, in first-seen order.
    pub fn distinct_inputs(&self) -> usize {
        let mut seen: Vec<&KetVector> = Vec::new();
        for cfg in &self.configs {
            if !seen.iter().any(|k| linalg_eq(k, &cfg.input)) {
                seen.push(&cfg.input);
            }
        }
        seen.len()
    }

    pub fn distinct_measurements(&self) -> usize {
        let mut seen: Vec<&Arc<Measurement>> = Vec::new();
        for cfg in &self.configs {
            if !seen.iter().any(|m| Arc::ptr_eq(m, &cfg.measurement)) {
                seen.push(&cfg.measurement);
            }
        }
        seen.len()
    }
}

fn linalg_eq(a: &KetVector, b: &KetVector) -> bool {
    (a.amplitudes() - b.amplitudes()).camax() < 1e-12
}

/// Builds the configuration list of `scheme` for `n` system qubits.
pub fn build_plan(scheme: SchemeTag, n: usize) -> Result<ExperimentPlan> {
    if n == 0 || n > MAX_PLAN_QUBITS {
        return Err(Error::SizeLimit(format!(
            "plans are simulated for 1..={MAX_PLAN_QUBITS} system qubits, got {n}"
        )));
    }
    let four_n = 1u128 << (2 * n);
    let plan = match scheme {
        SchemeTag::Sqpt => ExperimentPlan {
            scheme,
            n,
            configs: sqpt_configs(n)?,
            ancilla_count: 0,
            simulated_ancillas: 0,
            accounted_configurations: four_n * four_n,
        },
        SchemeTag::AaptSeparable => ExperimentPlan {
            scheme,
            n,
            configs: separable_configs(n)?,
            ancilla_count: n,
            simulated_ancillas: n,
            accounted_configurations: four_n * four_n,
        },
        SchemeTag::AaptMub => ExperimentPlan {
            scheme,
            n,
            configs: mub_configs(n)?,
            ancilla_count: n,
            simulated_ancillas: n,
            accounted_configurations: four_n + 1,
        },
        SchemeTag::AaptPovm => {
            if n != 1 {
                return Err(Error::SizeLimit(
                    "the general-POVM scheme needs a 6n-qubit register and is simulated for n = 1 only".into(),
                ));
            }
            let meas = Arc::new(Measurement::from(PovmMeasurement::tetrahedral(2)?.with_loss()));
            ExperimentPlan {
                scheme,
                n,
                configs: vec![Config {
                    label: "in=phi meas=tetrahedral".into(),
                    input: KetVector::max_entangled(1),
                    measurement: meas,
                    measurement_label: "tetrahedral".into(),
                }],
                ancilla_count: 3 * n,
                simulated_ancillas: n,
                accounted_configurations: 1,
            }
        }
        SchemeTag::Dcqd => ExperimentPlan {
            scheme,
            n,
            configs: dcqd_configs(n)?,
            ancilla_count: n,
            simulated_ancillas: n,
            accounted_configurations: four_n,
        },
    };
    Ok(plan)
}

const SQPT_INPUT_LABELS: [&str; 4] = ["0", "1", "+", "+i"];

fn sqpt_input(k: usize) -> KetVector {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let amps = match k {
        0 => [c(1.0, 0.0), c(0.0, 0.0)],
        1 => [c(0.0, 0.0), c(1.0, 0.0)],
        2 => [c(h, 0.0), c(h, 0.0)],
        _ => [c(h, 0.0), c(0.0, h)],
    };
    KetVector::new(linalg::CVector::from_row_slice(&amps)).expect("normalised by construction")
}

fn digits(mut index: usize, base: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for slot in out.iter_mut().rev() {
        *slot = index % base;
        index /= base;
    }
    out
}

/// Product measurement of one Pauli per qubit, returned as a setting.
fn product_setting(labels: &[Pauli]) -> Result<MeasurementSetting> {
    let m = labels.len();
    MeasurementSetting::new(labels.iter().enumerate().map(|(k, &p)| PauliString::single(p, k, m)).collect())
}

/// `4ⁿ` product inputs times `4ⁿ` Pauli settings; an `I` label is read out
/// in the `Z` basis.
fn sqpt_configs(n: usize) -> Result<Vec<Config>> {
    let four_n = 1usize << (2 * n);
    let mut meas = Vec::with_capacity(four_n);
    for p in PauliString::all(n) {
        let device: Vec<Pauli> = p.labels().iter().map(|&l| if l == Pauli::I { Pauli::Z } else { l }).collect();
        let m = setting_to_measurement(&product_setting(&device)?, true);
        meas.push((p.to_string(), Arc::new(Measurement::from(m))));
    }
    let mut configs = Vec::with_capacity(four_n * four_n);
    for i in 0..four_n {
        let ks = digits(i, 4, n);
        let input = ks.iter().skip(1).fold(sqpt_input(ks[0]), |acc, &k| acc.tensor(&sqpt_input(k)));
        let in_label = ks.iter().map(|&k| SQPT_INPUT_LABELS[k]).collect::<Vec<_>>().join(".");
        for (ml, m) in &meas {
            configs.push(Config {
                label: format!("in={in_label} meas={ml}"),
                input: input.clone(),
                measurement: Arc::clone(m),
                measurement_label: ml.clone(),
            });
        }
    }
    Ok(configs)
}

/// Maximally entangled input, every product of `{X, Y, Z}` on the `2n`
/// register qubits.
fn separable_configs(n: usize) -> Result<Vec<Config>> {
    let total = 2 * n;
    let input = KetVector::max_entangled(n);
    let labels = [Pauli::X, Pauli::Y, Pauli::Z];
    (0..3usize.pow(total as u32))
        .map(|i| {
            let device: Vec<Pauli> = digits(i, 3, total).into_iter().map(|k| labels[k]).collect();
            let name: String = device.iter().map(|p| p.as_char()).collect();
            let m = setting_to_measurement(&product_setting(&device)?, true);
            Ok(Config {
                label: format!("in=phi meas={name}"),
                input: input.clone(),
                measurement: Arc::new(m.into()),
                measurement_label: name,
            })
        })
        .collect()
}

/// Maximally entangled input measured in each of the `4ⁿ + 1` bases of the
/// `2n`-qubit Pauli partition.
fn mub_configs(n: usize) -> Result<Vec<Config>> {
    let input = KetVector::max_entangled(n);
    Ok(pauli_partition(2 * n)?
        .iter()
        .map(|s| {
            let name = s.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>().join(",");
            Config {
                label: format!("in=phi meas={name}"),
                input: input.clone(),
                measurement: Arc::new(setting_to_measurement(s, true).into()),
                measurement_label: name,
            }
        })
        .collect())
}
