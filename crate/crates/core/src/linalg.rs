//! Small dense complex linear algebra helpers on top of `nalgebra`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Tolerance for Hermiticity and unitarity checks.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Eigenvalues above `-PSD_TOL` count as non-negative.
pub const PSD_TOL: f64 = 1e-10;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity(dim: usize) -> CMatrix {
    CMatrix::identity(dim, dim)
}

pub fn zeros(dim: usize) -> CMatrix {
    CMatrix::zeros(dim, dim)
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Largest absolute entry of `a - b`.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn max_abs(a: &CMatrix) -> f64 {
    a.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

pub fn hermiticity_error(a: &CMatrix) -> f64 {
    max_abs_diff(a, &a.adjoint())
}

/// Real eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(a: &CMatrix) -> Vec<f64> {
    let herm = (a + a.adjoint()) * c(0.5, 0.0);
    let mut vals: Vec<f64> = herm.symmetric_eigenvalues().iter().copied().collect();
    vals.sort_by(|x, y| x.total_cmp(y));
    vals
}

/// Eigen-decomposition of a Hermitian matrix as (value, unit eigenvector)
/// pairs sorted by descending eigenvalue.
pub fn hermitian_eigen(a: &CMatrix) -> Vec<(f64, CVector)> {
    let herm = (a + a.adjoint()) * c(0.5, 0.0);
    let eig = herm.symmetric_eigen();
    let mut pairs: Vec<(f64, CVector)> = eig
        .eigenvalues
        .iter()
        .zip(eig.eigenvectors.column_iter())
        .map(|(&v, col)| (v, col.into_owned()))
        .collect();
    pairs.sort_by(|x, y| y.0.total_cmp(&x.0));
    pairs
}

/// `Re tr(a b)` without forming the product.
pub fn trace_product_re(a: &CMatrix, b: &CMatrix) -> f64 {
    trace_product(a, b).re
}

pub fn trace_product(a: &CMatrix, b: &CMatrix) -> Complex64 {
    let n = a.nrows();
    let mut acc = ZERO;
    for i in 0..n {
        for j in 0..n {
            acc += a[(i, j)] * b[(j, i)];
        }
    }
    acc
}

/// Multiplies a vector by a phase so that its first entry with magnitude
/// above `tol` is real and positive.
pub fn fix_phase(v: &mut CVector, tol: f64) {
    if let Some(first) = v.iter().find(|x| x.norm() > tol).copied() {
        let phase = first.conj() / first.norm();
        v.iter_mut().for_each(|x| *x *= phase);
    }
}

pub fn hadamard() -> CMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    CMatrix::from_row_slice(2, 2, &[c(s, 0.0), c(s, 0.0), c(s, 0.0), c(-s, 0.0)])
}

pub fn phase_s() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, I])
}

/// `gate` acting on `qubit` of a `total`-qubit register (qubit 0 leftmost).
pub fn on_qubit(gate: &CMatrix, qubit: usize, total: usize) -> CMatrix {
    let left = identity(1 << qubit);
    let right = identity(1 << (total - qubit - 1));
    kron(&kron(&left, gate), &right)
}

/// Controlled-NOT on a `total`-qubit register as a permutation matrix.
pub fn cnot(control: usize, target: usize, total: usize) -> CMatrix {
    let dim = 1usize << total;
    let cbit = 1usize << (total - control - 1);
    let tbit = 1usize << (total - target - 1);
    let mut m = zeros(dim);
    for col in 0..dim {
        let row = if col & cbit != 0 { col ^ tbit } else { col };
        m[(row, col)] = ONE;
    }
    m
}

/// Permutes the qubits of a ket: qubit `k` of the input becomes qubit
/// `order[k]` of the output.
pub fn permute_qubits(v: &CVector, order: &[usize]) -> CVector {
    let total = order.len();
    let dim = 1usize << total;
    let mut out = CVector::zeros(dim);
    for idx in 0..dim {
        let mut target = 0usize;
        for (k, &dest) in order.iter().enumerate() {
            if idx & (1 << (total - k - 1)) != 0 {
                target |= 1 << (total - dest - 1);
            }
        }
        out[target] = v[idx];
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cnot_maps_10_to_11() {
        let m = cnot(0, 1, 2);
        let mut v = CVector::zeros(4);
        v[2] = ONE;
        let w = &m * v;
        assert_eq!(w[3], ONE);
    }

    #[test]
    fn permutation_swaps_qubits() {
        let mut v = CVector::zeros(4);
        v[1] = ONE; // |01>
        let w = permute_qubits(&v, &[1, 0]);
        assert_eq!(w[2], ONE); // |10>
    }

    #[test]
    fn eigen_pairs_descend() {
        let m = CMatrix::from_diagonal(&CVector::from_vec(vec![c(0.2, 0.0), c(0.7, 0.0)]));
        let e = hermitian_eigen(&m);
        assert!((e[0].0 - 0.7).abs() < 1e-14);
        assert!((e[1].0 - 0.2).abs() < 1e-14);
    }
}
