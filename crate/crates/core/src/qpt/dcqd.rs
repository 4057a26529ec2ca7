//! Direct characterization configurations.
//!
//! A system qubit and its ancilla start in `U⊗U (α|00⟩ + e^{iφ}β|11⟩)` or
//! in `|Φ⁺⟩`, and every configuration ends in the Bell measurement. The
//! three frames `U ∈ {I, H, SH}` make the stabilizer `ZZ`, `XX` or `YY`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{self, c, CMatrix, CVector};
use crate::measurement::{bell_measurement, Measurement};
use crate::pauli::PauliString;
use crate::state::KetVector;

use super::design::design_from_configs;
use super::plan::Config;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DcqdFrame {
    Z,
    X,
    Y,
}

impl DcqdFrame {
    pub const ALL: [DcqdFrame; 3] = [DcqdFrame::Z, DcqdFrame::X, DcqdFrame::Y];

    /// Single-qubit frame change applied to both qubits of the pair.
    pub fn local_unitary(self) -> CMatrix {
        match self {
            DcqdFrame::Z => linalg::identity(2),
            DcqdFrame::X => linalg::hadamard(),
            DcqdFrame::Y => linalg::phase_s() * linalg::hadamard(),
        }
    }

    pub fn stabilizer(self) -> PauliString {
        let s = match self {
            DcqdFrame::Z => "ZZ",
            DcqdFrame::X => "XX",
            DcqdFrame::Y => "YY",
        };
        s.parse().expect("static label")
    }

    /// Image of `XX` under the frame change.
    pub fn normalizer(self) -> PauliString {
        let s = match self {
            DcqdFrame::Z => "XX",
            DcqdFrame::X | DcqdFrame::Y => "ZZ",
        };
        s.parse().expect("static label")
    }
}

/// Amplitudes of the non-maximally entangled inputs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DcqdParams {
    pub cos_theta: f64,
    pub phase: f64,
}

impl Default for DcqdParams {
    fn default() -> Self {
        DcqdParams { cos_theta: 0.75f64.sqrt(), phase: std::f64::consts::FRAC_PI_2 }
    }
}

/// `(U⊗U)(α|00⟩ + e^{iφ}β|11⟩)` on a system-ancilla pair.
pub fn coherence_input(frame: DcqdFrame, params: DcqdParams) -> Result<KetVector> {
    if !(0.0..=1.0).contains(&params.cos_theta) {
        return Err(Error::InvalidArgument(format!("cos θ = {} outside [0, 1]", params.cos_theta)));
    }
    let a = params.cos_theta;
    let b = (1.0 - a * a).sqrt();
    let phase = c(params.phase.cos(), params.phase.sin()) * b;
    let v = CVector::from_row_slice(&[c(a, 0.0), c(0.0, 0.0), c(0.0, 0.0), phase]);
    let u = frame.local_unitary();
    KetVector::new(linalg::kron(&u, &u) * v)
}

fn pair_configs(params: DcqdParams) -> Result<Vec<(String, KetVector)>> {
    let mut out = vec![("population S=ZZ,XX".to_string(), KetVector::max_entangled(1))];
    for frame in DcqdFrame::ALL {
        let name = format!(
            "coherence-{} S={} N={}",
            format!("{frame:?}").to_lowercase(),
            frame.stabilizer(),
            frame.normalizer()
        );
        out.push((name, coherence_input(frame, params)?));
    }
    Ok(out)
}

/// Reorders a ket on pairs `(S0, A0, S1, A1, …)` into `(S0, S1, …, A0, A1, …)`.
fn pairs_to_register(v: &KetVector, n: usize) -> Result<KetVector> {
    let order: Vec<usize> = (0..2 * n).map(|k| if k % 2 == 0 { k / 2 } else { n + k / 2 }).collect();
    KetVector::new(linalg::permute_qubits(v.amplitudes(), &order))
}

pub fn dcqd_configs(n: usize) -> Result<Vec<Config>> {
    dcqd_configs_with(n, DcqdParams::default())
}

/// `4ⁿ` configurations: every product of the four pair inputs, Bell
/// measurement throughout. Fails with `RankDeficient` when the single-pair
/// set is not informationally complete for the given parameters.
pub fn dcqd_configs_with(n: usize, params: DcqdParams) -> Result<Vec<Config>> {
    let pair = pair_configs(params)?;
    let single = build_configs(&pair, 1)?;
    let rank = design_from_configs(&single, 1, 1)?.rank();
    if rank < 16 {
        return Err(Error::RankDeficient { rank, required: 16 });
    }
    if n == 1 {
        return Ok(single);
    }
    build_configs(&pair, n)
}

fn build_configs(pair: &[(String, KetVector)], n: usize) -> Result<Vec<Config>> {
    let meas = Arc::new(Measurement::from(bell_measurement(n)?.with_loss()));
    let count = pair.len().pow(n as u32);
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let mut idx = Vec::with_capacity(n);
        let mut rest = i;
        for _ in 0..n {
            idx.push(rest % pair.len());
            rest /= pair.len();
        }
        idx.reverse();
        let product = idx.iter().skip(1).fold(pair[idx[0]].1.clone(), |acc, &k| acc.tensor(&pair[k].1));
        let label = idx.iter().map(|&k| pair[k].0.as_str()).collect::<Vec<_>>().join(" | ");
        out.push(Config {
            label,
            input: pairs_to_register(&product, n)?,
            measurement: Arc::clone(&meas),
            measurement_label: "bell".into(),
        });
    }
    Ok(out)
}
