//! Analytic gate counts for the measurements each scheme needs.
//!
//! Asymptotic statements are pinned to concrete constants: a full MUB
//! setting on `2n` qubits costs `(2n)²` operations with non-local two-body
//! gates and `(2n)² · 2n` on a nearest-neighbour chain; a general POVM on
//! `2n` qubits costs `4^(2n)`.

use crate::error::{Error, Result};
use crate::mub::MeasurementSetting;
use crate::pauli::{Pauli, PauliString};
use crate::scheme::SchemeTag;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GateModel {
    /// Two-qubit gates between any pair of qubits.
    NonlocalTwoBody,
    /// Nearest-neighbour two-qubit gates only.
    LocalTwoBody,
}

impl std::str::FromStr for GateModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "nonlocal" | "nonlocal-two-body" => Ok(GateModel::NonlocalTwoBody),
            "local" | "local-two-body" => Ok(GateModel::LocalTwoBody),
            other => Err(Error::InvalidArgument(format!("unknown gate model {other:?}"))),
        }
    }
}

/// What is being measured.
#[derive(Clone, Copy, Debug)]
pub enum CostTarget<'a> {
    /// One Pauli-string observable on the whole register.
    PauliString(&'a PauliString),
    /// A full commuting setting of `2n` operators.
    MubSetting(&'a MeasurementSetting),
    /// `n` CNOTs plus `n` Hadamards.
    BellMeasurement,
    /// Per-configuration cost of a scheme.
    Scheme(SchemeTag),
}

/// Whether a count is polynomial or exponential in `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GateClass {
    Polynomial,
    Exponential,
}

pub fn gate_class(scheme: SchemeTag) -> GateClass {
    match scheme {
        SchemeTag::AaptPovm => GateClass::Exponential,
        _ => GateClass::Polynomial,
    }
}

/// Gate count for measuring `target` on a register of `total_qubits = 2n`
/// qubits (system plus ancilla).
///
/// A Pauli string needs a CNOT from every qubit onto a readout line plus a
/// basis change on every X or Y label, independent of `model`.
pub fn measurement_cost(target: CostTarget<'_>, total_qubits: usize, model: GateModel) -> Result<u128> {
    if total_qubits == 0 {
        return Err(Error::InvalidArgument("register must contain at least one qubit".into()));
    }
    let q = total_qubits as u128;
    let transport = match model {
        GateModel::NonlocalTwoBody => 1,
        GateModel::LocalTwoBody => q,
    };
    let need_pairs = || {
        if total_qubits % 2 != 0 {
            Err(Error::InvalidArgument(format!("{total_qubits} qubits do not split into system and ancilla")))
        } else {
            Ok(q / 2)
        }
    };
    match target {
        CostTarget::PauliString(p) => {
            if p.qubit_count() != total_qubits {
                return Err(Error::LengthMismatch(p.qubit_count(), total_qubits));
            }
            let changes = p.labels().iter().filter(|&&l| matches!(l, Pauli::X | Pauli::Y)).count();
            Ok(q + changes as u128)
        }
        CostTarget::MubSetting(s) => {
            if s.qubit_count() != total_qubits {
                return Err(Error::LengthMismatch(s.qubit_count(), total_qubits));
            }
            Ok(q * q * transport)
        }
        CostTarget::BellMeasurement => Ok(2 * need_pairs()?),
        CostTarget::Scheme(scheme) => {
            let n = need_pairs()?;
            Ok(match scheme {
                SchemeTag::Sqpt | SchemeTag::AaptSeparable | SchemeTag::Dcqd => 2 * n,
                SchemeTag::AaptMub => q * q * transport,
                SchemeTag::AaptPovm => 1u128
                    .checked_shl((4 * n) as u32)
                    .filter(|_| 4 * n < 128)
                    .ok_or_else(|| Error::Overflow("POVM gate count".into()))?,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anchored_values() {
        assert_eq!(measurement_cost(CostTarget::BellMeasurement, 2, GateModel::NonlocalTwoBody).unwrap(), 2);
        let s = crate::mub::pauli_partition(2).unwrap();
        assert_eq!(measurement_cost(CostTarget::MubSetting(&s[0]), 2, GateModel::NonlocalTwoBody).unwrap(), 4);
        let zzzz: PauliString = "ZZZZ".parse().unwrap();
        assert_eq!(measurement_cost(CostTarget::PauliString(&zzzz), 4, GateModel::NonlocalTwoBody).unwrap(), 4);
        let xyzi: PauliString = "XYZI".parse().unwrap();
        assert_eq!(measurement_cost(CostTarget::PauliString(&xyzi), 4, GateModel::LocalTwoBody).unwrap(), 6);
    }

    #[test]
    fn local_model_multiplies_by_chain_length() {
        let s = crate::mub::pauli_partition(4).unwrap();
        let nonlocal = measurement_cost(CostTarget::MubSetting(&s[0]), 4, GateModel::NonlocalTwoBody).unwrap();
        let local = measurement_cost(CostTarget::MubSetting(&s[0]), 4, GateModel::LocalTwoBody).unwrap();
        assert_eq!((nonlocal, local), (16, 64));
    }

    #[test]
    fn scheme_costs_monotone_in_n() {
        for scheme in SchemeTag::ALL {
            for model in [GateModel::NonlocalTwoBody, GateModel::LocalTwoBody] {
                let costs: Vec<u128> = (1..=8)
                    .map(|n| measurement_cost(CostTarget::Scheme(scheme), 2 * n, model).unwrap())
                    .collect();
                assert!(costs.windows(2).all(|w| w[0] < w[1]), "{scheme} {model:?}");
            }
        }
        assert_eq!(measurement_cost(CostTarget::Scheme(SchemeTag::AaptPovm), 2, GateModel::NonlocalTwoBody).unwrap(), 16);
    }

    #[test]
    fn odd_register_rejected_for_pair_based_costs() {
        assert!(measurement_cost(CostTarget::BellMeasurement, 3, GateModel::NonlocalTwoBody).is_err());
    }
}
