//! Process (χ) matrix in the unnormalised Pauli basis:
//! `Λ(ρ) = Σ_mn χ_mn σ_m ρ σ_n†`.

use num_complex::Complex64;

use crate::channel::QuantumChannel;
use crate::error::{Error, Result};
use crate::linalg::{self, c, hermitian_eigen, hermitian_eigenvalues, hermiticity_error, CMatrix};
use crate::pauli::{pauli_basis, PauliString};

pub const CHI_HERMITIAN_TOL: f64 = 1e-10;
/// Eigenvalues below `-CHI_PSD_TOL` mark an unphysical χ.
pub const CHI_PSD_TOL: f64 = 1e-8;
/// Eigenvalues below this are dropped when extracting Kraus operators.
const KRAUS_DROP: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct ChiMatrix {
    entries: CMatrix,
    qubit_count: usize,
}

impl ChiMatrix {
    pub fn new(entries: CMatrix, qubit_count: usize) -> Result<Self> {
        let d2 = 1usize << (2 * qubit_count);
        if entries.nrows() != d2 || entries.ncols() != d2 {
            return Err(Error::DimensionMismatch { expected: d2, found: entries.nrows() });
        }
        let herm = hermiticity_error(&entries);
        if herm > CHI_HERMITIAN_TOL {
            return Err(Error::InvalidChannel(format!("χ not Hermitian (deviation {herm:e})")));
        }
        Ok(ChiMatrix { entries, qubit_count })
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    /// Hilbert-space dimension `d`; χ is `d² × d²`.
    pub fn basis_dim(&self) -> usize {
        1 << self.qubit_count
    }

    pub fn get(&self, m: &PauliString, n: &PauliString) -> Complex64 {
        self.entries[(m.index(), n.index())]
    }

    pub fn min_eigenvalue(&self) -> f64 {
        hermitian_eigenvalues(&self.entries)[0]
    }

    pub fn is_positive(&self) -> bool {
        self.min_eigenvalue() >= -CHI_PSD_TOL
    }

    /// `Σ_mn χ_mn σ_n† σ_m`, which equals `ΣK†K` of any Kraus realisation.
    pub fn kraus_sum(&self) -> CMatrix {
        let basis = pauli_basis(self.qubit_count);
        let d = self.basis_dim();
        let mut acc = linalg::zeros(d);
        for (m, sm) in basis.iter().enumerate() {
            for (n, sn) in basis.iter().enumerate() {
                let w = self.entries[(m, n)];
                if w != linalg::ZERO {
                    acc += sn * sm * w;
                }
            }
        }
        acc
    }

    pub fn apply_raw(&self, rho: &CMatrix) -> CMatrix {
        let basis = pauli_basis(self.qubit_count);
        let mut acc = linalg::zeros(rho.nrows());
        for (m, sm) in basis.iter().enumerate() {
            let left = sm * rho;
            for (n, sn) in basis.iter().enumerate() {
                let w = self.entries[(m, n)];
                if w != linalg::ZERO {
                    acc += &left * sn * w;
                }
            }
        }
        acc
    }

    pub fn max_abs_diff(&self, other: &ChiMatrix) -> f64 {
        linalg::max_abs_diff(&self.entries, &other.entries)
    }

    /// Real parameter vector of length `d⁴`: the `d²` diagonal entries, then
    /// `(Re χ_mn, Im χ_mn)` for `m < n` in row-major order.
    pub fn to_params(&self) -> Vec<f64> {
        let d2 = self.entries.nrows();
        let mut out = Vec::with_capacity(d2 * d2);
        out.extend((0..d2).map(|m| self.entries[(m, m)].re));
        for m in 0..d2 {
            for n in m + 1..d2 {
                let z = self.entries[(m, n)];
                out.push(z.re);
                out.push(z.im);
            }
        }
        out
    }

    pub fn from_params(params: &[f64], qubit_count: usize) -> Result<Self> {
        let d2 = 1usize << (2 * qubit_count);
        if params.len() != d2 * d2 {
            return Err(Error::DimensionMismatch { expected: d2 * d2, found: params.len() });
        }
        let mut entries = linalg::zeros(d2);
        for m in 0..d2 {
            entries[(m, m)] = c(params[m], 0.0);
        }
        let mut k = d2;
        for m in 0..d2 {
            for n in m + 1..d2 {
                let z = c(params[k], params[k + 1]);
                entries[(m, n)] = z;
                entries[(n, m)] = z.conj();
                k += 2;
            }
        }
        Ok(ChiMatrix { entries, qubit_count })
    }
}

/// Number of real parameters of a χ matrix on `qubits` qubits (`d⁴`).
pub fn param_count(qubits: usize) -> usize {
    1 << (4 * qubits)
}

/// Column labels matching [`ChiMatrix::to_params`].
pub fn param_labels(qubits: usize) -> Vec<String> {
    let names: Vec<String> = PauliString::all(qubits).map(|p| p.to_string()).collect();
    let mut out: Vec<String> = names.iter().map(|m| format!("chi[{m},{m}]")).collect();
    for (i, m) in names.iter().enumerate() {
        for n in &names[i + 1..] {
            out.push(format!("re[{m},{n}]"));
            out.push(format!("im[{m},{n}]"));
        }
    }
    out
}

/// `χ = Σ_k c_k c_k†` with `K_k = Σ_m c_km σ_m`, `c_km = tr(σ_m K_k) / d`.
pub fn kraus_to_chi(ch: &QuantumChannel) -> ChiMatrix {
    let basis = pauli_basis(ch.qubit_count());
    let d = ch.dim() as f64;
    let d2 = basis.len();
    let mut entries = linalg::zeros(d2);
    for k in ch.kraus_operators() {
        let coeffs: Vec<Complex64> = basis
            .iter()
            .map(|s| linalg::trace_product(s, k) / d)
            .collect();
        for m in 0..d2 {
            for n in 0..d2 {
                entries[(m, n)] += coeffs[m] * coeffs[n].conj();
            }
        }
    }
    ChiMatrix { entries, qubit_count: ch.qubit_count() }
}

/// Kraus operators from the eigen-decomposition `χ = Σ λ_k v_k v_k†`,
/// `K_k = √λ_k Σ_m v_km σ_m`.
pub fn chi_to_kraus(chi: &ChiMatrix) -> Result<QuantumChannel> {
    let eig = hermitian_eigen(chi.entries());
    let min = eig.last().map(|p| p.0).unwrap_or(0.0);
    if min < -CHI_PSD_TOL {
        return Err(Error::NotPositive(min));
    }
    let basis = pauli_basis(chi.qubit_count);
    let d = chi.basis_dim();
    let kraus: Vec<CMatrix> = eig
        .iter()
        .filter(|(v, _)| *v > KRAUS_DROP)
        .map(|(v, vec)| {
            let scale = c(v.sqrt(), 0.0);
            basis
                .iter()
                .zip(vec.iter())
                .fold(linalg::zeros(d), |acc, (s, a)| acc + s * (*a * scale))
        })
        .collect();
    if kraus.is_empty() {
        return QuantumChannel::new(vec![linalg::zeros(d)], chi.qubit_count);
    }
    QuantumChannel::new(kraus, chi.qubit_count)
}
