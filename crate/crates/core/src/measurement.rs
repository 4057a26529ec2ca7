//! Measurement descriptions and the Born rule.
//!
//! Non-trace-preserving outputs are handled with an explicit loss outcome
//! carrying `1 - Σ p_i`, so outcome probabilities stay linear in the
//! process matrix.

use crate::error::{Error, Result};
use crate::linalg::{self, c, hermitian_eigenvalues, hermiticity_error, trace_product_re, CMatrix};
use crate::mub::{sign_label, MeasurementSetting};
use crate::pauli::{Pauli, PauliString};
use crate::state::{DensityMatrix, KetVector};

const MEAS_TOL: f64 = 1e-10;
/// Label of the appended loss outcome.
pub const LOSS_LABEL: &str = "loss";
/// Largest register the exact simulator handles.
pub const MAX_SIM_QUBITS: usize = 4;

fn check_effect(e: &CMatrix, dim: usize) -> Result<()> {
    if e.nrows() != dim || e.ncols() != dim {
        return Err(Error::DimensionMismatch { expected: dim, found: e.nrows() });
    }
    let herm = hermiticity_error(e);
    if herm > MEAS_TOL {
        return Err(Error::InvalidMeasurement(format!("effect not Hermitian ({herm:e})")));
    }
    let min = hermitian_eigenvalues(e)[0];
    if min < -MEAS_TOL {
        return Err(Error::InvalidMeasurement(format!("effect not positive ({min:e})")));
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct ProjectiveMeasurement {
    projectors: Vec<CMatrix>,
    labels: Vec<String>,
    include_loss: bool,
}

impl ProjectiveMeasurement {
    pub fn new(projectors: Vec<CMatrix>, labels: Vec<String>, include_loss: bool) -> Result<Self> {
        if projectors.is_empty() || projectors.len() != labels.len() {
            return Err(Error::InvalidMeasurement("one label per projector required".into()));
        }
        let dim = projectors[0].nrows();
        for (i, p) in projectors.iter().enumerate() {
            check_effect(p, dim)?;
            for q in &projectors[..i] {
                let overlap = linalg::max_abs(&(p * q));
                if overlap > MEAS_TOL {
                    return Err(Error::InvalidMeasurement(format!(
                        "projectors not orthogonal ({overlap:e})"
                    )));
                }
            }
        }
        let sum = projectors.iter().fold(linalg::zeros(dim), |acc, p| acc + p);
        if hermitian_eigenvalues(&(linalg::identity(dim) - sum))[0] < -MEAS_TOL {
            return Err(Error::InvalidMeasurement("projectors sum beyond identity".into()));
        }
        Ok(ProjectiveMeasurement { projectors, labels, include_loss })
    }

    pub fn with_loss(mut self) -> Self {
        self.include_loss = true;
        self
    }

    pub fn projectors(&self) -> &[CMatrix] {
        &self.projectors
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn include_loss(&self) -> bool {
        self.include_loss
    }

    pub fn dim(&self) -> usize {
        self.projectors[0].nrows()
    }
}

/// A POVM given directly by its effects. No dilation circuit is built.
#[derive(Clone, Debug)]
pub struct PovmMeasurement {
    effects: Vec<CMatrix>,
    labels: Vec<String>,
    include_loss: bool,
}

impl PovmMeasurement {
    pub fn new(effects: Vec<CMatrix>, labels: Vec<String>, include_loss: bool) -> Result<Self> {
        if effects.is_empty() || effects.len() != labels.len() {
            return Err(Error::InvalidMeasurement("one label per effect required".into()));
        }
        let dim = effects[0].nrows();
        for e in &effects {
            check_effect(e, dim)?;
        }
        let sum = effects.iter().fold(linalg::zeros(dim), |acc, e| acc + e);
        let dev = linalg::max_abs_diff(&sum, &linalg::identity(dim));
        if dev > MEAS_TOL {
            return Err(Error::InvalidMeasurement(format!("effects sum to identity only within {dev:e}")));
        }
        Ok(PovmMeasurement { effects, labels, include_loss })
    }

    /// Product of single-qubit tetrahedral (SIC) POVMs on `qubits` qubits:
    /// `4^qubits` rank-one effects.
    pub fn tetrahedral(qubits: usize) -> Result<Self> {
        let s = 1.0 / 3f64.sqrt();
        let dirs = [[s, s, s], [s, -s, -s], [-s, s, -s], [-s, -s, s]];
        let single: Vec<CMatrix> = dirs
            .iter()
            .map(|r| {
                (Pauli::I.matrix()
                    + Pauli::X.matrix() * c(r[0], 0.0)
                    + Pauli::Y.matrix() * c(r[1], 0.0)
                    + Pauli::Z.matrix() * c(r[2], 0.0))
                    * c(0.25, 0.0)
            })
            .collect();
        let mut effects = vec![CMatrix::identity(1, 1)];
        let mut labels = vec![String::new()];
        for _ in 0..qubits {
            let mut next = Vec::new();
            let mut next_labels = Vec::new();
            for (e, l) in effects.iter().zip(&labels) {
                for (k, t) in single.iter().enumerate() {
                    next.push(linalg::kron(e, t));
                    next_labels.push(format!("{l}{k}"));
                }
            }
            effects = next;
            labels = next_labels;
        }
        PovmMeasurement::new(effects, labels.into_iter().map(|l| format!("t{l}")).collect(), false)
    }

    /// Two-qubit POVM built from the 20 projectors of the five MUBs with
    /// weight 1/5, coarse-grained to 16 outcomes by merging effect pairs
    /// (lexicographic order) whenever the merge keeps the span at 16.
    pub fn mub_mixture() -> Result<Self> {
        let mut groups: Vec<(String, CMatrix)> = Vec::new();
        for (b, setting) in crate::mub::pauli_partition(2)?.iter().enumerate() {
            for (signs, p) in setting.sector_projectors() {
                groups.push((format!("b{b}{}", sign_label(&signs)), p * c(0.2, 0.0)));
            }
        }
        while groups.len() > 16 {
            let mut merged = None;
            'search: for i in 0..groups.len() {
                for j in i + 1..groups.len() {
                    let mut trial = groups.clone();
                    let (lj, ej) = trial.remove(j);
                    trial[i].0 = format!("{}|{}", trial[i].0, lj);
                    trial[i].1 += ej;
                    let mats: Vec<CMatrix> = trial.iter().map(|g| g.1.clone()).collect();
                    if operator_span(&mats) == 16 {
                        merged = Some(trial);
                        break 'search;
                    }
                }
            }
            groups = merged.ok_or_else(|| {
                Error::InvalidMeasurement("no informationally complete coarse-graining".into())
            })?;
        }
        let (labels, effects) = groups.into_iter().unzip();
        PovmMeasurement::new(effects, labels, false)
    }

    pub fn with_loss(mut self) -> Self {
        self.include_loss = true;
        self
    }

    pub fn effects(&self) -> &[CMatrix] {
        &self.effects
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn include_loss(&self) -> bool {
        self.include_loss
    }

    pub fn dim(&self) -> usize {
        self.effects[0].nrows()
    }

    /// Effects span the full real space of Hermitian operators.
    pub fn is_informationally_complete(&self) -> bool {
        let d = self.dim();
        operator_span(&self.effects) == d * d
    }
}

/// Real dimension of the span of a set of Hermitian operators.
pub fn operator_span(ops: &[CMatrix]) -> usize {
    let Some(first) = ops.first() else { return 0 };
    let d = first.nrows();
    let rows = nalgebra::DMatrix::from_fn(ops.len(), 2 * d * d, |r, col| {
        let z = ops[r][(col / 2 / d, col / 2 % d)];
        if col % 2 == 0 { z.re } else { z.im }
    });
    rows.rank(1e-9)
}

/// Either kind of measurement behind one experimental configuration.
#[derive(Clone, Debug)]
pub enum Measurement {
    Projective(ProjectiveMeasurement),
    Povm(PovmMeasurement),
}

impl Measurement {
    /// Effects excluding the loss outcome.
    pub fn effects(&self) -> &[CMatrix] {
        match self {
            Measurement::Projective(m) => m.projectors(),
            Measurement::Povm(m) => m.effects(),
        }
    }

    pub fn labels(&self) -> &[String] {
        match self {
            Measurement::Projective(m) => m.labels(),
            Measurement::Povm(m) => m.labels(),
        }
    }

    pub fn include_loss(&self) -> bool {
        match self {
            Measurement::Projective(m) => m.include_loss(),
            Measurement::Povm(m) => m.include_loss(),
        }
    }

    /// Number of outcomes, not counting loss.
    pub fn outcome_count(&self) -> usize {
        self.effects().len()
    }

    pub fn dim(&self) -> usize {
        self.effects()[0].nrows()
    }

    /// Outcome labels including the loss outcome when present.
    pub fn all_labels(&self) -> Vec<String> {
        let mut out = self.labels().to_vec();
        if self.include_loss() {
            out.push(LOSS_LABEL.to_string());
        }
        out
    }
}

impl From<ProjectiveMeasurement> for Measurement {
    fn from(m: ProjectiveMeasurement) -> Self {
        Measurement::Projective(m)
    }
}

impl From<PovmMeasurement> for Measurement {
    fn from(m: PovmMeasurement) -> Self {
        Measurement::Povm(m)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OutcomeDistribution {
    pub probabilities: Vec<f64>,
    pub labels: Vec<String>,
    pub counts: Option<Vec<u64>>,
}

impl OutcomeDistribution {
    pub fn new(probabilities: Vec<f64>, labels: Vec<String>) -> Result<Self> {
        if probabilities.len() != labels.len() {
            return Err(Error::InvalidDistribution("one label per probability required".into()));
        }
        if let Some(p) = probabilities.iter().find(|p| !(-1e-12..=1.0 + 1e-12).contains(*p)) {
            return Err(Error::InvalidDistribution(format!("probability {p} out of range")));
        }
        let total: f64 = probabilities.iter().sum();
        if (total - 1.0).abs() > MEAS_TOL {
            return Err(Error::InvalidDistribution(format!("probabilities sum to {total}")));
        }
        Ok(OutcomeDistribution { probabilities, labels, counts: None })
    }

    pub fn len(&self) -> usize {
        self.probabilities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probabilities.is_empty()
    }

    pub fn shots(&self) -> Option<u64> {
        self.counts.as_ref().map(|c| c.iter().sum())
    }

    /// Empirical frequencies when counts are present, else probabilities.
    pub fn frequencies(&self) -> Vec<f64> {
        match &self.counts {
            Some(counts) => {
                let n = counts.iter().sum::<u64>().max(1) as f64;
                counts.iter().map(|&k| k as f64 / n).collect()
            }
            None => self.probabilities.clone(),
        }
    }

    pub fn probability_of(&self, label: &str) -> Option<f64> {
        self.labels.iter().position(|l| l == label).map(|i| self.probabilities[i])
    }
}

/// One projector per common eigenspace, labelled by its sign vector.
pub fn setting_to_measurement(s: &MeasurementSetting, include_loss: bool) -> ProjectiveMeasurement {
    let (labels, projectors) = s
        .sector_projectors()
        .into_iter()
        .map(|(signs, p)| (sign_label(&signs), p))
        .unzip();
    ProjectiveMeasurement { projectors, labels, include_loss }
}

/// Bell-basis measurement on `n` system qubits paired with `n` ancillas
/// (qubit `i` with qubit `i + n`). Outcome `P` projects onto
/// `(P ⊗ I)|Φ⟩` with `|Φ⟩ = Σ_j |j⟩|j⟩ / √d`, outcomes in Pauli basis order.
pub fn bell_measurement(n: usize) -> Result<ProjectiveMeasurement> {
    if n == 0 || 2 * n > MAX_SIM_QUBITS {
        return Err(Error::SizeLimit(format!(
            "Bell measurement on {n} pairs exceeds the {MAX_SIM_QUBITS}-qubit limit"
        )));
    }
    let phi = KetVector::max_entangled(n);
    let id = linalg::identity(1 << n);
    let (labels, projectors) = PauliString::all(n)
        .map(|p| {
            let op = linalg::kron(&p.matrix(), &id);
            let v = op * phi.amplitudes();
            (p.to_string(), &v * v.adjoint())
        })
        .unzip();
    Ok(ProjectiveMeasurement { projectors, labels, include_loss: false })
}

/// Unitary of the Bell read-out circuit: a CNOT from each system qubit to
/// its ancilla, then a Hadamard on each system qubit.
pub fn bell_circuit(n: usize) -> CMatrix {
    let total = 2 * n;
    let mut u = linalg::identity(1 << total);
    for i in 0..n {
        u = linalg::cnot(i, i + n, total) * u;
    }
    for i in 0..n {
        u = linalg::on_qubit(&linalg::hadamard(), i, total) * u;
    }
    u
}

/// Computational-basis index the Bell circuit maps outcome `p` to: system
/// qubit `i` reads the z bit of `p_i`, ancilla `i` reads its x bit.
pub fn bell_circuit_outcome(p: &PauliString) -> usize {
    let n = p.qubit_count();
    let mut idx = 0usize;
    for (i, label) in p.labels().iter().enumerate() {
        let (x, z) = label.xz();
        if z {
            idx |= 1 << (2 * n - 1 - i);
        }
        if x {
            idx |= 1 << (n - 1 - i);
        }
    }
    idx
}

/// Born rule on a raw operator: `p_i = Re tr(E_i ρ)`, negatives within
/// tolerance clipped to zero, loss appended when enabled.
pub fn outcome_probabilities_raw(meas: &Measurement, rho: &CMatrix) -> Result<OutcomeDistribution> {
    if rho.nrows() != meas.dim() {
        return Err(Error::DimensionMismatch { expected: meas.dim(), found: rho.nrows() });
    }
    let mut probs = Vec::with_capacity(meas.outcome_count() + 1);
    for e in meas.effects() {
        let p = trace_product_re(e, rho);
        if p < -MEAS_TOL {
            return Err(Error::InvalidDistribution(format!("negative probability {p:e}")));
        }
        probs.push(p.max(0.0));
    }
    if meas.include_loss() {
        let total: f64 = probs.iter().sum();
        if total > 1.0 + MEAS_TOL {
            return Err(Error::InvalidDistribution(format!("probabilities sum to {total}")));
        }
        probs.push((1.0 - total).max(0.0));
    }
    OutcomeDistribution::new(probs, meas.all_labels())
}

pub fn outcome_probabilities(meas: &Measurement, rho: &DensityMatrix) -> Result<OutcomeDistribution> {
    outcome_probabilities_raw(meas, rho.entries())
}
