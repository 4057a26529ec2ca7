//! Pauli labels and tensor-product Pauli strings.
//!
//! Strings are indexed lexicographically over `I < X < Y < Z` with the
//! leftmost qubit most significant, so `index("XY") = 1 * 4 + 2`. Every
//! process-matrix index in the crate uses this order.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, c, kron, CMatrix, ONE, ZERO};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(idx: usize) -> Pauli {
        Pauli::ALL[idx & 3]
    }

    /// Symplectic (x, z) bits: `X = (1,0)`, `Z = (0,1)`, `Y = (1,1)`.
    pub fn xz(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn from_xz(x: bool, z: bool) -> Pauli {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn matrix(self) -> CMatrix {
        let m = match self {
            Pauli::I => [ONE, ZERO, ZERO, ONE],
            Pauli::X => [ZERO, ONE, ONE, ZERO],
            Pauli::Y => [ZERO, -linalg::I, linalg::I, ZERO],
            Pauli::Z => [ONE, ZERO, ZERO, -ONE],
        };
        CMatrix::from_row_slice(2, 2, &m)
    }

    /// `self * other = phase * result`.
    pub fn mul(self, other: Pauli) -> (Complex64, Pauli) {
        use Pauli::*;
        match (self, other) {
            (I, p) | (p, I) => (ONE, p),
            (a, b) if a == b => (ONE, I),
            (X, Y) => (linalg::I, Z),
            (Y, Z) => (linalg::I, X),
            (Z, X) => (linalg::I, Y),
            (Y, X) => (-linalg::I, Z),
            (Z, Y) => (-linalg::I, X),
            (X, Z) => (-linalg::I, Y),
            _ => unreachable!(),
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

impl TryFrom<char> for Pauli {
    type Error = Error;

    fn try_from(ch: char) -> Result<Self> {
        match ch.to_ascii_uppercase() {
            'I' => Ok(Pauli::I),
            'X' => Ok(Pauli::X),
            'Y' => Ok(Pauli::Y),
            'Z' => Ok(Pauli::Z),
            other => Err(Error::InvalidPauli(other)),
        }
    }
}

/// A tensor product of single-qubit Pauli operators, one label per qubit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    labels: Vec<Pauli>,
}

impl PauliString {
    pub fn new(labels: Vec<Pauli>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidArgument("pauli string must act on at least one qubit".into()));
        }
        Ok(PauliString { labels })
    }

    pub fn identity(qubits: usize) -> Self {
        PauliString { labels: vec![Pauli::I; qubits.max(1)] }
    }

    /// Inverse of [`PauliString::index`].
    pub fn from_index(mut idx: usize, qubits: usize) -> Self {
        let mut labels = vec![Pauli::I; qubits];
        for slot in labels.iter_mut().rev() {
            *slot = Pauli::from_index(idx & 3);
            idx >>= 2;
        }
        PauliString { labels }
    }

    /// All `4^qubits` strings in basis order.
    pub fn all(qubits: usize) -> impl Iterator<Item = PauliString> {
        (0..1usize << (2 * qubits)).map(move |i| PauliString::from_index(i, qubits))
    }

    /// Builds a string from symplectic bit vectors; bit `k` is qubit `k`.
    pub fn from_symplectic(x: u32, z: u32, qubits: usize) -> Self {
        let labels = (0..qubits)
            .map(|k| Pauli::from_xz(x >> k & 1 == 1, z >> k & 1 == 1))
            .collect();
        PauliString { labels }
    }

    pub fn symplectic(&self) -> (u32, u32) {
        self.labels.iter().enumerate().fold((0, 0), |(x, z), (k, p)| {
            let (px, pz) = p.xz();
            (x | (px as u32) << k, z | (pz as u32) << k)
        })
    }

    pub fn labels(&self) -> &[Pauli] {
        &self.labels
    }

    pub fn qubit_count(&self) -> usize {
        self.labels.len()
    }

    pub fn index(&self) -> usize {
        self.labels.iter().fold(0, |acc, p| acc * 4 + p.index())
    }

    pub fn is_identity(&self) -> bool {
        self.labels.iter().all(|&p| p == Pauli::I)
    }

    pub fn weight(&self) -> usize {
        self.labels.iter().filter(|&&p| p != Pauli::I).count()
    }

    /// Single-qubit operator `p` on `qubit`, identity elsewhere.
    pub fn single(p: Pauli, qubit: usize, qubits: usize) -> Self {
        let mut labels = vec![Pauli::I; qubits];
        labels[qubit] = p;
        PauliString { labels }
    }

    /// Concatenation `self ⊗ other`.
    pub fn tensor(&self, other: &PauliString) -> PauliString {
        let mut labels = self.labels.clone();
        labels.extend_from_slice(&other.labels);
        PauliString { labels }
    }

    pub fn matrix(&self) -> CMatrix {
        self.labels
            .iter()
            .fold(CMatrix::identity(1, 1), |acc, p| kron(&acc, &p.matrix()))
    }

    /// Sign-counting commutation rule: two strings commute iff they
    /// anticommute on an even number of qubits.
    pub fn commutes(&self, other: &PauliString) -> Result<bool> {
        self.check_len(other)?;
        let clashes = self
            .labels
            .iter()
            .zip(&other.labels)
            .filter(|(a, b)| **a != Pauli::I && **b != Pauli::I && a != b)
            .count();
        Ok(clashes % 2 == 0)
    }

    /// `self * other = phase * result` with `phase ∈ {±1, ±i}`.
    pub fn mul(&self, other: &PauliString) -> Result<(Complex64, PauliString)> {
        self.check_len(other)?;
        let mut phase = c(1.0, 0.0);
        let labels = self
            .labels
            .iter()
            .zip(&other.labels)
            .map(|(a, b)| {
                let (ph, p) = a.mul(*b);
                phase *= ph;
                p
            })
            .collect();
        Ok((phase, PauliString { labels }))
    }

    fn check_len(&self, other: &PauliString) -> Result<()> {
        if self.labels.len() != other.labels.len() {
            return Err(Error::LengthMismatch(self.labels.len(), other.labels.len()));
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let labels = s.trim().chars().map(Pauli::try_from).collect::<Result<Vec<_>>>()?;
        PauliString::new(labels)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.labels {
            write!(f, "{}", p.as_char())?;
        }
        Ok(())
    }
}

/// Matrices of all `4^qubits` basis strings, in basis order.
pub fn pauli_basis(qubits: usize) -> Vec<CMatrix> {
    PauliString::all(qubits).map(|p| p.matrix()).collect()
}

/// Stand-alone form of [`PauliString::matrix`].
pub fn pauli_matrix(p: &PauliString) -> CMatrix {
    p.matrix()
}

/// Stand-alone form of [`PauliString::commutes`].
pub fn commutes(a: &PauliString, b: &PauliString) -> Result<bool> {
    a.commutes(b)
}
