//! Completely positive, trace non-increasing maps in Kraus form.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{self, c, hermitian_eigen, hermitian_eigenvalues, CMatrix, ONE, ZERO};
use crate::pauli::Pauli;
use crate::state::DensityMatrix;

/// Eigenvalues of `I - ΣK†K` must stay above `-CP_TOL`.
pub const CP_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct QuantumChannel {
    kraus: Vec<CMatrix>,
    qubit_count: usize,
}

impl QuantumChannel {
    pub fn new(kraus: Vec<CMatrix>, qubit_count: usize) -> Result<Self> {
        if qubit_count == 0 {
            return Err(Error::InvalidChannel("channel must act on at least one qubit".into()));
        }
        if kraus.is_empty() {
            return Err(Error::InvalidChannel("empty Kraus set".into()));
        }
        let d = 1usize << qubit_count;
        if let Some(bad) = kraus.iter().find(|k| k.nrows() != d || k.ncols() != d) {
            return Err(Error::DimensionMismatch { expected: d, found: bad.nrows().max(bad.ncols()) });
        }
        let ch = QuantumChannel { kraus, qubit_count };
        let min = ch.trace_deficit_eigenvalues()[0];
        if min < -CP_TOL {
            return Err(Error::InvalidChannel(format!(
                "Kraus operators increase trace (min eigenvalue of I - ΣK†K is {min:e})"
            )));
        }
        Ok(ch)
    }

    pub fn kraus_operators(&self) -> &[CMatrix] {
        &self.kraus
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn dim(&self) -> usize {
        1 << self.qubit_count
    }

    /// `ΣK†K`.
    pub fn kraus_sum(&self) -> CMatrix {
        self.kraus
            .iter()
            .fold(linalg::zeros(self.dim()), |acc, k| acc + k.adjoint() * k)
    }

    /// Ascending eigenvalues of `I - ΣK†K`.
    pub fn trace_deficit_eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&(linalg::identity(self.dim()) - self.kraus_sum()))
    }

    pub fn is_trace_preserving(&self) -> bool {
        self.trace_deficit_eigenvalues()
            .iter()
            .all(|v| v.abs() <= CP_TOL)
    }

    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        if rho.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: rho.dim() });
        }
        DensityMatrix::new(self.apply_raw(rho.entries()))
    }

    /// `Σ K ρ K†` on a raw matrix of matching dimension.
    pub fn apply_raw(&self, rho: &CMatrix) -> CMatrix {
        self.kraus
            .iter()
            .fold(linalg::zeros(rho.nrows()), |acc, k| acc + k * rho * k.adjoint())
    }

    /// Applies the channel to the leading qubits of a larger register,
    /// leaving the trailing `ancillas` qubits untouched.
    pub fn apply_to_system(&self, rho: &CMatrix, ancillas: usize) -> Result<CMatrix> {
        let expected = self.dim() << ancillas;
        if rho.nrows() != expected {
            return Err(Error::DimensionMismatch { expected, found: rho.nrows() });
        }
        if ancillas == 0 {
            return Ok(self.apply_raw(rho));
        }
        let id = linalg::identity(1 << ancillas);
        Ok(self.kraus.iter().fold(linalg::zeros(expected), |acc, k| {
            let big = linalg::kron(k, &id);
            acc + &big * rho * big.adjoint()
        }))
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn compose(&self, first: &QuantumChannel) -> Result<QuantumChannel> {
        if self.qubit_count != first.qubit_count {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: first.dim() });
        }
        let kraus = self
            .kraus
            .iter()
            .flat_map(|a| first.kraus.iter().map(move |b| a * b))
            .collect();
        QuantumChannel::new(kraus, self.qubit_count)
    }

    /// `self ⊗ other` on `self.qubit_count + other.qubit_count` qubits.
    pub fn tensor(&self, other: &QuantumChannel) -> Result<QuantumChannel> {
        let kraus = self
            .kraus
            .iter()
            .flat_map(|a| other.kraus.iter().map(move |b| linalg::kron(a, b)))
            .collect();
        QuantumChannel::new(kraus, self.qubit_count + other.qubit_count)
    }

    pub fn tensor_power(&self, copies: usize) -> Result<QuantumChannel> {
        let mut out = self.clone();
        for _ in 1..copies.max(1) {
            out = out.tensor(self)?;
        }
        Ok(out)
    }

    // Presets. Single-qubit unless stated otherwise.

    pub fn identity(qubits: usize) -> QuantumChannel {
        QuantumChannel { kraus: vec![linalg::identity(1 << qubits)], qubit_count: qubits }
    }

    /// `ρ ↦ (1 - 3p/4) ρ + (p/4)(XρX + YρY + ZρZ)`; `p = 1` is fully
    /// depolarising.
    pub fn depolarizing(p: f64) -> Result<QuantumChannel> {
        check_unit("depolarizing p", p)?;
        let kraus = vec![
            Pauli::I.matrix() * c((1.0 - 0.75 * p).sqrt(), 0.0),
            Pauli::X.matrix() * c((p / 4.0).sqrt(), 0.0),
            Pauli::Y.matrix() * c((p / 4.0).sqrt(), 0.0),
            Pauli::Z.matrix() * c((p / 4.0).sqrt(), 0.0),
        ];
        QuantumChannel::new(kraus, 1)
    }

    pub fn bit_flip(p: f64) -> Result<QuantumChannel> {
        check_unit("bit-flip p", p)?;
        let kraus = vec![
            Pauli::I.matrix() * c((1.0 - p).sqrt(), 0.0),
            Pauli::X.matrix() * c(p.sqrt(), 0.0),
        ];
        QuantumChannel::new(kraus, 1)
    }

    /// Energy relaxation with decay probability `gamma = 1 - exp(-t/T1)`.
    pub fn amplitude_damping(gamma: f64) -> Result<QuantumChannel> {
        check_unit("amplitude-damping gamma", gamma)?;
        let k0 = CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, c((1.0 - gamma).sqrt(), 0.0)]);
        let k1 = CMatrix::from_row_slice(2, 2, &[ZERO, c(gamma.sqrt(), 0.0), ZERO, ZERO]);
        QuantumChannel::new(vec![k0, k1], 1)
    }

    /// Pure dephasing: coherences scale by `sqrt(1 - lambda)`, populations
    /// are untouched.
    pub fn phase_damping(lambda: f64) -> Result<QuantumChannel> {
        check_unit("dephasing lambda", lambda)?;
        let k0 = CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, c((1.0 - lambda).sqrt(), 0.0)]);
        let k1 = CMatrix::from_row_slice(2, 2, &[ZERO, ZERO, ZERO, c(lambda.sqrt(), 0.0)]);
        QuantumChannel::new(vec![k0, k1], 1)
    }

    /// Amplitude damping after pure dephasing (the two commute). Coherences
    /// scale by `sqrt((1 - gamma)(1 - lambda))`.
    pub fn damping_dephasing(gamma: f64, lambda: f64) -> Result<QuantumChannel> {
        QuantumChannel::amplitude_damping(gamma)?.compose(&QuantumChannel::phase_damping(lambda)?)
    }

    /// Uniform loss: a single Kraus operator `sqrt(1 - p) I`.
    pub fn loss(p: f64) -> Result<QuantumChannel> {
        check_unit("loss p", p)?;
        QuantumChannel::new(vec![linalg::identity(2) * c((1.0 - p).sqrt(), 0.0)], 1)
    }
}

fn check_unit(name: &str, v: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&v) {
        return Err(Error::InvalidArgument(format!("{name} = {v} outside [0, 1]")));
    }
    Ok(())
}

fn random_complex_matrix<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(dim, dim, |_, _| {
        c(rng.sample::<f64, _>(StandardNormal), rng.sample::<f64, _>(StandardNormal))
    })
}

/// Random CP map with `kraus_count` Kraus operators whose trace deficit
/// `I - ΣK†K` has eigenvalues drawn uniformly from `[0, max_deficit]`.
///
/// Gaussian matrices `G_k` are normalised to a trace-preserving set
/// `G_k S^{-1/2}`, then right-multiplied by a random contraction.
pub fn random_channel<R: Rng + ?Sized>(
    qubits: usize,
    kraus_count: usize,
    max_deficit: f64,
    rng: &mut R,
) -> Result<QuantumChannel> {
    check_unit("max_deficit", max_deficit)?;
    let d = 1usize << qubits;
    let gs: Vec<CMatrix> = (0..kraus_count.max(1)).map(|_| random_complex_matrix(d, rng)).collect();
    let s = gs.iter().fold(linalg::zeros(d), |acc, g| acc + g.adjoint() * g);
    let inv_sqrt = spectral_map(&s, |v| 1.0 / v.sqrt());

    let frame = hermitian_eigen(&{
        let g = random_complex_matrix(d, rng);
        &g + g.adjoint()
    });
    let mut contraction = linalg::zeros(d);
    for (_, vec) in &frame {
        let deficit = rng.random::<f64>() * max_deficit;
        contraction += vec * vec.adjoint() * c((1.0 - deficit).sqrt(), 0.0);
    }
    let right = &inv_sqrt * &contraction;
    QuantumChannel::new(gs.iter().map(|g| g * &right).collect(), qubits)
}

/// `f(A)` for Hermitian `A` through its eigen-decomposition.
pub(crate) fn spectral_map(a: &CMatrix, f: impl Fn(f64) -> f64) -> CMatrix {
    hermitian_eigen(a)
        .iter()
        .fold(linalg::zeros(a.nrows()), |acc, (v, vec)| acc + vec * vec.adjoint() * c(f(*v), 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs_diff;
    use crate::state::KetVector;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_channel_is_noop() {
        let rho = KetVector::normalized(nalgebra::DVector::from_vec(vec![c(0.6, 0.0), c(0.0, 0.8)]))
            .unwrap()
            .density();
        let out = QuantumChannel::identity(1).apply(&rho).unwrap();
        assert!(max_abs_diff(out.entries(), rho.entries()) < 1e-15);
    }

    #[test]
    fn full_depolarizing_gives_maximally_mixed() {
        let out = QuantumChannel::depolarizing(1.0)
            .unwrap()
            .apply(&KetVector::basis(0, 1).density())
            .unwrap();
        assert!(max_abs_diff(out.entries(), DensityMatrix::maximally_mixed(1).entries()) < 1e-15);
    }

    #[test]
    fn loss_scales_state() {
        let ch = QuantumChannel::loss(0.5).unwrap();
        assert!(!ch.is_trace_preserving());
        let rho = KetVector::basis(1, 1).density();
        let out = ch.apply(&rho).unwrap();
        assert!((out.trace() - 0.5).abs() < 1e-15);
        assert!(max_abs_diff(out.entries(), &(rho.entries() * c(0.5, 0.0))) < 1e-15);
    }

    #[test]
    fn rejects_trace_increasing_kraus() {
        let k = linalg::identity(2) * c(1.1, 0.0);
        assert!(matches!(QuantumChannel::new(vec![k], 1), Err(Error::InvalidChannel(_))));
    }

    #[test]
    fn rejects_dimension_mismatch() {
        let ch = QuantumChannel::identity(1);
        assert!(matches!(
            ch.apply(&DensityMatrix::maximally_mixed(2)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn presets_reject_out_of_range() {
        assert!(QuantumChannel::depolarizing(1.5).is_err());
        assert!(QuantumChannel::amplitude_damping(-0.1).is_err());
    }

    #[test]
    fn random_channels_are_sub_trace_preserving() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for q in 1..=2 {
            for _ in 0..20 {
                let ch = random_channel(q, 3, 0.5, &mut rng).unwrap();
                let eig = ch.trace_deficit_eigenvalues();
                assert!(eig[0] >= -CP_TOL);
                assert!(*eig.last().unwrap() <= 0.5 + 1e-10);
            }
        }
        let tp = random_channel(1, 3, 0.0, &mut rng).unwrap();
        assert!(tp.is_trace_preserving());
    }

    #[test]
    fn output_trace_never_grows() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let ch = random_channel(1, 2, 0.5, &mut rng).unwrap();
        for idx in 0..2 {
            let rho = KetVector::basis(idx, 1).density();
            assert!(ch.apply(&rho).unwrap().trace() <= rho.trace() + 1e-12);
        }
    }
}
