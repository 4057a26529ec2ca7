//! Relaxation times from a single-qubit χ matrix under the
//! amplitude-damping-plus-dephasing model.

use crate::channel::QuantumChannel;
use crate::chi::{kraus_to_chi, ChiMatrix};
use crate::error::{Error, Result};

/// Max-norm distance allowed between the estimate and the fitted model.
pub const MODEL_TOL: f64 = 0.05;
const DEGENERATE_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct RelaxationEstimate {
    pub gamma: f64,
    pub coherence: f64,
    pub t1: f64,
    pub t2: f64,
    pub residual: f64,
}

/// Reads `γ = 2(χ_XX + χ_YY)` and `c = χ_II - χ_ZZ` from `chi`, checks the
/// model rebuilt from them, and converts to `T1 = -t / ln(1-γ)`,
/// `T2 = -t / ln c`.
pub fn extract_relaxation(chi: &ChiMatrix, t: f64) -> Result<RelaxationEstimate> {
    if chi.qubit_count() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, found: chi.qubit_count() });
    }
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::InvalidArgument(format!("evolution time must be positive, got {t}")));
    }
    let e = chi.entries();
    let gamma = 2.0 * (e[(1, 1)].re + e[(2, 2)].re);
    let coherence = e[(0, 0)].re - e[(3, 3)].re;
    if gamma <= DEGENERATE_TOL || gamma >= 1.0 - DEGENERATE_TOL {
        return Err(Error::Indeterminate(format!("decay probability {gamma:.3e} leaves T1 undefined")));
    }
    if coherence >= 1.0 - DEGENERATE_TOL || coherence <= DEGENERATE_TOL {
        return Err(Error::Indeterminate(format!("coherence factor {coherence:.3e} leaves T2 undefined")));
    }
    let lambda = (1.0 - coherence * coherence / (1.0 - gamma)).clamp(0.0, 1.0);
    let model = kraus_to_chi(&QuantumChannel::damping_dephasing(gamma, lambda)?);
    let residual = chi.max_abs_diff(&model);
    if residual > MODEL_TOL {
        return Err(Error::ModelMismatch { residual });
    }
    Ok(RelaxationEstimate {
        gamma,
        coherence,
        t1: -t / (1.0 - gamma).ln(),
        t2: -t / coherence.ln(),
        residual,
    })
}
