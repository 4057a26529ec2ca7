use nalgebra::{DMatrix, DVector};

use crate::chi::ChiMatrix;
use crate::error::{Error, Result};

use super::design::{DesignMatrix, RANK_TOL};

/// A reconstructed process matrix with fit diagnostics.
#[derive(Clone, Debug)]
pub struct ChiEstimate {
    pub chi: ChiMatrix,
    /// Euclidean norm of `A θ̂ - p`.
    pub residual_norm: f64,
    pub condition_number: f64,
}

/// Minimum-norm least-squares inverse of a complete design matrix, factored
/// once and reused across observation vectors.
#[derive(Clone, Debug)]
pub struct LinearInversion {
    design: DMatrix<f64>,
    pinv: DMatrix<f64>,
    condition_number: f64,
    qubit_count: usize,
}

impl LinearInversion {
    pub fn new(design: &DesignMatrix) -> Result<Self> {
        let cols = design.cols();
        let rank = design.rank();
        if rank < cols {
            return Err(Error::RankDeficient { rank, required: cols });
        }
        let svd = design.entries().clone().svd(true, true);
        let smax = svd.singular_values.max();
        let pinv = svd
            .pseudo_inverse(smax * RANK_TOL)
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
        Ok(LinearInversion {
            design: design.entries().clone(),
            pinv,
            condition_number: design.condition_number(),
            qubit_count: design.qubit_count(),
        })
    }

    pub fn condition_number(&self) -> f64 {
        self.condition_number
    }

    pub fn estimate(&self, observations: &[f64]) -> Result<ChiEstimate> {
        if observations.len() != self.design.nrows() {
            return Err(Error::DimensionMismatch { expected: self.design.nrows(), found: observations.len() });
        }
        let p = DVector::from_column_slice(observations);
        let theta = &self.pinv * &p;
        let residual_norm = (&self.design * &theta - &p).norm();
        Ok(ChiEstimate {
            chi: ChiMatrix::from_params(theta.as_slice(), self.qubit_count)?,
            residual_norm,
            condition_number: self.condition_number,
        })
    }
}

/// One-shot convenience wrapper around [`LinearInversion`].
pub fn reconstruct_chi(design: &DesignMatrix, observations: &[f64]) -> Result<ChiEstimate> {
    LinearInversion::new(design)?.estimate(observations)
}
