//! Pure and mixed states on small qubit registers.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::{self, c, hermitian_eigenvalues, hermiticity_error, CMatrix, CVector, ONE};

const NORM_TOL: f64 = 1e-12;

fn qubits_for_dim(dim: usize) -> Result<usize> {
    if dim < 2 || !dim.is_power_of_two() {
        return Err(Error::InvalidState(format!("dimension {dim} is not a power of two ≥ 2")));
    }
    Ok(dim.trailing_zeros() as usize)
}

/// A normalised pure state.
#[derive(Clone, Debug, PartialEq)]
pub struct KetVector {
    amplitudes: CVector,
}

impl KetVector {
    pub fn new(amplitudes: CVector) -> Result<Self> {
        qubits_for_dim(amplitudes.len())?;
        let norm_sq = amplitudes.norm_squared();
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidState(format!("squared norm {norm_sq} differs from 1")));
        }
        Ok(KetVector { amplitudes })
    }

    /// Normalises `amplitudes` before validating.
    pub fn normalized(amplitudes: CVector) -> Result<Self> {
        let norm = amplitudes.norm();
        if norm == 0.0 {
            return Err(Error::InvalidState("zero vector".into()));
        }
        KetVector::new(amplitudes / c(norm, 0.0))
    }

    pub fn basis(index: usize, qubits: usize) -> Self {
        let mut v = CVector::zeros(1 << qubits);
        v[index] = ONE;
        KetVector { amplitudes: v }
    }

    /// `Σ_j |j⟩|j⟩ / √d` with the first `qubits` qubits as system and the
    /// rest as ancilla; equal to `|Φ⁺⟩^⊗n` pairing qubit `i` with `i + n`.
    pub fn max_entangled(qubits: usize) -> Self {
        let d = 1usize << qubits;
        let mut v = CVector::zeros(d * d);
        let amp = c(1.0 / (d as f64).sqrt(), 0.0);
        for j in 0..d {
            v[j * d + j] = amp;
        }
        KetVector { amplitudes: v }
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    pub fn qubit_count(&self) -> usize {
        self.amplitudes.len().trailing_zeros() as usize
    }

    pub fn tensor(&self, other: &KetVector) -> KetVector {
        KetVector { amplitudes: self.amplitudes.kronecker(&other.amplitudes) }
    }

    pub fn apply(&self, unitary: &CMatrix) -> Result<KetVector> {
        if unitary.ncols() != self.amplitudes.len() {
            return Err(Error::DimensionMismatch { expected: self.amplitudes.len(), found: unitary.ncols() });
        }
        KetVector::new(unitary * &self.amplitudes)
    }

    pub fn projector(&self) -> CMatrix {
        &self.amplitudes * self.amplitudes.adjoint()
    }

    pub fn density(&self) -> DensityMatrix {
        DensityMatrix { entries: self.projector() }
    }

    /// Number of non-zero Schmidt coefficients across the cut after the
    /// first `left_qubits` qubits.
    pub fn schmidt_rank(&self, left_qubits: usize) -> usize {
        let total = self.qubit_count();
        let (dl, dr) = (1usize << left_qubits, 1usize << (total - left_qubits));
        let m = DMatrix::from_fn(dl, dr, |i, j| self.amplitudes[i * dr + j]);
        m.singular_values().iter().filter(|&&s| s > 1e-10).count()
    }
}

/// A (possibly sub-normalised) density operator.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    entries: CMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity, positivity and `tr ρ ≤ 1`. Traces below one are
    /// allowed: they are the outputs of lossy maps.
    pub fn new(entries: CMatrix) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::InvalidState("density matrix must be square".into()));
        }
        qubits_for_dim(entries.nrows())?;
        let herm = hermiticity_error(&entries);
        if herm > linalg::HERMITIAN_TOL {
            return Err(Error::InvalidState(format!("not Hermitian (deviation {herm:e})")));
        }
        let min_eig = hermitian_eigenvalues(&entries)[0];
        if min_eig < -linalg::PSD_TOL {
            return Err(Error::InvalidState(format!("negative eigenvalue {min_eig:e}")));
        }
        let tr = entries.trace().re;
        if tr > 1.0 + NORM_TOL {
            return Err(Error::InvalidState(format!("trace {tr} exceeds 1")));
        }
        Ok(DensityMatrix { entries })
    }

    pub fn maximally_mixed(qubits: usize) -> Self {
        let d = 1usize << qubits;
        DensityMatrix { entries: linalg::identity(d) * c(1.0 / d as f64, 0.0) }
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn into_entries(self) -> CMatrix {
        self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn qubit_count(&self) -> usize {
        self.dim().trailing_zeros() as usize
    }

    pub fn trace(&self) -> f64 {
        self.entries.trace().re
    }
}

impl From<&KetVector> for DensityMatrix {
    fn from(k: &KetVector) -> Self {
        k.density()
    }
}
