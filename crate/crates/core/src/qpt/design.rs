//! Linear map from χ parameters to outcome probabilities.
//!
//! Row `(config, outcome)` holds the coefficients of
//! `p = Σ_mn χ_mn tr(E (σ_m⊗I)|ψ⟩⟨ψ|(σ_n⊗I)†)` in the real parameter order
//! of [`ChiMatrix::to_params`]. Loss outcomes are left out since their
//! probability is affine in χ.

use nalgebra::DMatrix;
use rayon::prelude::*;

use crate::chi::{param_count, param_labels, ChiMatrix};
use crate::error::{Error, Result};
use crate::linalg::{self, CVector};
use crate::pauli::PauliString;

use super::plan::{Config, ExperimentPlan};

/// Relative singular-value cutoff used for rank decisions.
pub const RANK_TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct DesignMatrix {
    entries: DMatrix<f64>,
    row_labels: Vec<String>,
    qubit_count: usize,
    block_sizes: Vec<usize>,
}

pub fn build_design_matrix(plan: &ExperimentPlan) -> Result<DesignMatrix> {
    design_from_configs(&plan.configs, plan.n, plan.simulated_ancillas)
}

pub fn design_from_configs(configs: &[Config], qubits: usize, ancillas: usize) -> Result<DesignMatrix> {
    let total = qubits + ancillas;
    let dim = 1usize << total;
    let anc_id = linalg::identity(1 << ancillas);
    let lifted: Vec<_> = PauliString::all(qubits)
        .map(|p| linalg::kron(&p.matrix(), &anc_id))
        .collect();
    let d2 = lifted.len();
    let cols = param_count(qubits);

    let blocks: Vec<(Vec<f64>, Vec<String>)> = configs
        .par_iter()
        .map(|cfg| {
            if cfg.input.amplitudes().len() != dim || cfg.measurement.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: cfg.measurement.dim() });
            }
            let kets: Vec<CVector> = lifted.iter().map(|l| l * cfg.input.amplitudes()).collect();
            let mut rows = Vec::with_capacity(cfg.measurement.outcome_count() * cols);
            let mut labels = Vec::with_capacity(cfg.measurement.outcome_count());
            for (e, label) in cfg.measurement.effects().iter().zip(cfg.measurement.labels()) {
                let applied: Vec<CVector> = kets.iter().map(|v| e * v).collect();
                // t[m][n] = v_n† E v_m
                let t = |m: usize, n: usize| kets[n].dotc(&applied[m]);
                let mut row = vec![0.0; cols];
                for (m, slot) in row.iter_mut().enumerate().take(d2) {
                    *slot = t(m, m).re;
                }
                let mut k = d2;
                for m in 0..d2 {
                    for n in m + 1..d2 {
                        let z = t(m, n);
                        row[k] = 2.0 * z.re;
                        row[k + 1] = -2.0 * z.im;
                        k += 2;
                    }
                }
                rows.extend(row);
                labels.push(format!("{} | {}", cfg.label, label));
            }
            Ok((rows, labels))
        })
        .collect::<Result<_>>()?;

    let block_sizes: Vec<usize> = blocks.iter().map(|b| b.1.len()).collect();
    let nrows: usize = block_sizes.iter().sum();
    let mut data = Vec::with_capacity(nrows * cols);
    let mut row_labels = Vec::with_capacity(nrows);
    for (rows, labels) in blocks {
        data.extend(rows);
        row_labels.extend(labels);
    }
    Ok(DesignMatrix {
        entries: DMatrix::from_row_slice(nrows, cols, &data),
        row_labels,
        qubit_count: qubits,
        block_sizes,
    })
}

impl DesignMatrix {
    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn rows(&self) -> usize {
        self.entries.nrows()
    }

    pub fn cols(&self) -> usize {
        self.entries.ncols()
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn column_labels(&self) -> Vec<String> {
        param_labels(self.qubit_count)
    }

    /// Non-loss outcomes contributed by each configuration.
    pub fn block_sizes(&self) -> &[usize] {
        &self.block_sizes
    }

    /// Singular values in descending order.
    pub fn singular_values(&self) -> Vec<f64> {
        let mut s: Vec<f64> = self.entries.clone().singular_values().iter().copied().collect();
        s.sort_by(|a, b| b.total_cmp(a));
        s
    }

    pub fn rank(&self) -> usize {
        let s = self.singular_values();
        let cutoff = s.first().copied().unwrap_or(0.0) * RANK_TOL;
        s.iter().filter(|&&x| x > cutoff).count()
    }

    pub fn is_complete(&self) -> bool {
        self.rank() == self.cols()
    }

    /// `σ_max / σ_min` over the full column space; infinite when rank
    /// deficient.
    pub fn condition_number(&self) -> f64 {
        let s = self.singular_values();
        if s.len() < self.cols() || self.rank() < self.cols() {
            return f64::INFINITY;
        }
        s[0] / s[self.cols() - 1]
    }

    /// Predicted non-loss probabilities for `chi`, stacked in row order.
    pub fn predict(&self, chi: &ChiMatrix) -> Result<Vec<f64>> {
        if chi.qubit_count() != self.qubit_count {
            return Err(Error::DimensionMismatch { expected: self.qubit_count, found: chi.qubit_count() });
        }
        let theta = nalgebra::DVector::from_vec(chi.to_params());
        Ok((&self.entries * theta).iter().copied().collect())
    }
}
