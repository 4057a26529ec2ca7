//! Commuting Pauli settings, maximal commuting partitions of the Pauli
//! group, and the mutually unbiased bases they generate.

use crate::error::{Error, Result};
use crate::linalg::{self, c, fix_phase, hermitian_eigen, CMatrix, CVector};
use crate::pauli::PauliString;
use crate::state::KetVector;

/// Largest register for which partitions are built.
pub const MAX_PARTITION_QUBITS: usize = 4;

/// A set of independent, pairwise commuting, non-identity Pauli strings
/// measured together in one experimental configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasurementSetting {
    generators: Vec<PauliString>,
    qubit_count: usize,
}

impl MeasurementSetting {
    pub fn new(generators: Vec<PauliString>) -> Result<Self> {
        let first = generators
            .first()
            .ok_or_else(|| Error::InvalidSetting("no generators".into()))?;
        let qubit_count = first.qubit_count();
        for (i, g) in generators.iter().enumerate() {
            if g.qubit_count() != qubit_count {
                return Err(Error::LengthMismatch(qubit_count, g.qubit_count()));
            }
            if g.is_identity() {
                return Err(Error::InvalidSetting("identity generator".into()));
            }
            for h in &generators[..i] {
                if !g.commutes(h)? {
                    return Err(Error::InvalidSetting(format!("{g} and {h} anticommute")));
                }
            }
        }
        let vectors: Vec<u64> = generators.iter().map(symplectic_word).collect();
        if gf2_rank(&vectors) != generators.len() {
            return Err(Error::InvalidSetting("generators are not independent".into()));
        }
        Ok(MeasurementSetting { generators, qubit_count })
    }

    /// Parses a comma-separated generator list such as `"ZZ,XX"`.
    pub fn parse(s: &str) -> Result<Self> {
        MeasurementSetting::new(s.split(',').map(str::parse).collect::<Result<Vec<_>>>()?)
    }

    /// Builds a setting from a commuting class, choosing an independent
    /// generating subset greedily in the given order.
    pub fn from_class(members: &[PauliString]) -> Result<Self> {
        let mut chosen: Vec<PauliString> = Vec::new();
        let mut words: Vec<u64> = Vec::new();
        for m in members {
            let w = symplectic_word(m);
            words.push(w);
            if gf2_rank(&words) > chosen.len() {
                chosen.push(m.clone());
            } else {
                words.pop();
            }
        }
        let setting = MeasurementSetting::new(chosen)?;
        let generated = setting.members();
        if members.iter().any(|m| !generated.contains(m)) || generated.len() != members.len() {
            return Err(Error::InvalidSetting("class is not a commuting subgroup".into()));
        }
        Ok(setting)
    }

    pub fn generators(&self) -> &[PauliString] {
        &self.generators
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    /// A full setting fixes a unique common eigenbasis.
    pub fn is_full(&self) -> bool {
        self.generators.len() == self.qubit_count
    }

    /// The `2^g - 1` non-identity group elements, phases dropped. Element
    /// `k` is the product of the generators selected by the bits of `k + 1`
    /// (bit `i` selects generator `i`).
    pub fn members(&self) -> Vec<PauliString> {
        let g = self.generators.len();
        (1usize..1 << g)
            .map(|mask| {
                let (x, z) = (0..g)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| self.generators[i].symplectic())
                    .fold((0, 0), |(x, z), (gx, gz)| (x ^ gx, z ^ gz));
                PauliString::from_symplectic(x, z, self.qubit_count)
            })
            .collect()
    }

    /// Common eigenspace projectors `Π_i (I + s_i G_i) / 2`, one per sign
    /// vector. Sign vectors are ordered with the first generator most
    /// significant and `+` before `-`.
    pub fn sector_projectors(&self) -> Vec<(Vec<i8>, CMatrix)> {
        let g = self.generators.len();
        let dim = 1usize << self.qubit_count;
        let mats: Vec<CMatrix> = self.generators.iter().map(|p| p.matrix()).collect();
        (0..1usize << g)
            .map(|o| {
                let signs: Vec<i8> = (0..g)
                    .map(|i| if o >> (g - 1 - i) & 1 == 0 { 1 } else { -1 })
                    .collect();
                let proj = mats.iter().zip(&signs).fold(linalg::identity(dim), |acc, (m, &s)| {
                    acc * (linalg::identity(dim) + m * c(s as f64, 0.0)) * c(0.5, 0.0)
                });
                (signs, proj)
            })
            .collect()
    }
}

/// Renders a sign vector as `"+-+"`.
pub fn sign_label(signs: &[i8]) -> String {
    signs.iter().map(|&s| if s > 0 { '+' } else { '-' }).collect()
}

fn symplectic_word(p: &PauliString) -> u64 {
    let (x, z) = p.symplectic();
    (x as u64) << 32 | z as u64
}

fn gf2_rank(words: &[u64]) -> usize {
    let mut rows = words.to_vec();
    let mut rank = 0;
    for bit in (0..64).rev() {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r] >> bit & 1 == 1) else {
            continue;
        };
        rows.swap(rank, pivot);
        for r in 0..rows.len() {
            if r != rank && rows[r] >> bit & 1 == 1 {
                rows[r] ^= rows[rank];
            }
        }
        rank += 1;
    }
    rank
}

/// An orthonormal basis labelled by generator eigenvalues.
#[derive(Clone, Debug)]
pub struct EigenBasis {
    pub vectors: Vec<KetVector>,
    pub labels: Vec<Vec<i8>>,
}

/// Joint eigenbasis of a setting. Vectors are grouped by sector in
/// [`MeasurementSetting::sector_projectors`] order; each vector's first
/// non-negligible amplitude is real and positive. Settings with fewer than
/// `m` generators give `2^(m-g)` vectors per sector.
pub fn common_eigenbasis(s: &MeasurementSetting) -> EigenBasis {
    let mut vectors = Vec::new();
    let mut labels = Vec::new();
    for (signs, proj) in s.sector_projectors() {
        let mut sector: Vec<CVector> = if s.is_full() {
            let best = (0..proj.ncols())
                .max_by(|&a, &b| proj.column(a).norm().total_cmp(&proj.column(b).norm()))
                .unwrap_or(0);
            let col = proj.column(best).into_owned();
            let norm = col.norm();
            vec![col / c(norm, 0.0)]
        } else {
            hermitian_eigen(&proj)
                .into_iter()
                .filter(|(v, _)| *v > 0.5)
                .map(|(_, vec)| vec)
                .collect()
        };
        for v in &mut sector {
            fix_phase(v, 1e-9);
        }
        for v in sector {
            // projector columns are exact eigenvectors, renormalisation keeps
            // the norm within the ket tolerance
            vectors.push(KetVector::normalized(v).expect("non-zero sector vector"));
            labels.push(signs.clone());
        }
    }
    EigenBasis { vectors, labels }
}

/// Maximal commuting partition of the non-identity Pauli strings on `m`
/// qubits into `2^m + 1` classes of `2^m - 1` strings.
///
/// `m = 2` returns the table whose first three rows each pair a
/// system-local with an ancilla-local operator; other sizes use the
/// Galois-field spread `{x = 0}`, `{(x, M_a x) : a ∈ GF(2^m)}`.
pub fn pauli_partition(m: usize) -> Result<Vec<MeasurementSetting>> {
    match m {
        2 => Ok(two_qubit_settings()),
        1 | 3 | 4 => field_partition(m),
        _ => Err(Error::SizeLimit(format!(
            "pauli partitions are built for 1..={MAX_PARTITION_QUBITS} qubits, got {m}"
        ))),
    }
}

fn two_qubit_settings() -> Vec<MeasurementSetting> {
    [["XI", "IX"], ["YI", "IY"], ["ZI", "IZ"], ["XY", "YZ"], ["YX", "ZY"]]
        .iter()
        .map(|pair| {
            MeasurementSetting::new(pair.iter().map(|s| s.parse().unwrap()).collect())
                .expect("canonical two-qubit setting")
        })
        .collect()
}

/// Irreducible polynomials over GF(2), bit `k` = coefficient of `x^k`.
fn field_modulus(m: usize) -> u32 {
    match m {
        1 => 0b11,
        2 => 0b111,
        3 => 0b1011,
        4 => 0b10011,
        _ => unreachable!("field size checked by caller"),
    }
}

fn gf_mul(mut a: u32, mut b: u32, m: usize) -> u32 {
    let modulus = field_modulus(m);
    let mut acc = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a >> m & 1 == 1 {
            a ^= modulus;
        }
    }
    acc
}

/// Absolute trace `a + a² + a⁴ + …`, which lands in GF(2).
fn gf_trace(a: u32, m: usize) -> u32 {
    let mut acc = 0;
    let mut power = a;
    for _ in 0..m {
        acc ^= power;
        power = gf_mul(power, power, m);
    }
    acc & 1
}

fn field_partition(m: usize) -> Result<Vec<MeasurementSetting>> {
    let q = 1u32 << m;
    let basis: Vec<u32> = (0..m).map(|i| 1u32 << i).collect();
    let mut out = Vec::with_capacity(q as usize + 1);
    for a in 0..q {
        // column j of M_a has entries Tr(a e_i e_j)
        let gens = (0..m)
            .map(|j| {
                let z = (0..m).fold(0u32, |acc, i| {
                    acc | gf_trace(gf_mul(a, gf_mul(basis[i], basis[j], m), m), m) << i
                });
                PauliString::from_symplectic(1 << j, z, m)
            })
            .collect();
        out.push(MeasurementSetting::new(gens)?);
    }
    let z_class = (0..m).map(|j| PauliString::from_symplectic(0, 1 << j, m)).collect();
    out.push(MeasurementSetting::new(z_class)?);
    Ok(out)
}

/// One line per setting listing its members, comma-separated.
pub fn partition_dump(settings: &[MeasurementSetting]) -> String {
    settings
        .iter()
        .map(|s| {
            let names: Vec<String> = s.members().iter().map(|p| p.to_string()).collect();
            names.join(",") + "\n"
        })
        .collect()
}

/// A family of mutually unbiased bases with the settings that define them.
#[derive(Clone, Debug)]
pub struct MubFamily {
    pub bases: Vec<Vec<KetVector>>,
    pub settings: Vec<MeasurementSetting>,
}

impl MubFamily {
    /// Builds and certifies the family: each basis orthonormal to 1e-12 and
    /// every cross-basis overlap `|⟨a|b⟩|² = 1/2^m` to 1e-10.
    pub fn from_settings(settings: Vec<MeasurementSetting>) -> Result<Self> {
        let m = settings
            .first()
            .map(|s| s.qubit_count())
            .ok_or_else(|| Error::InvalidSetting("empty family".into()))?;
        if settings.len() > (1 << m) + 1 {
            return Err(Error::InvalidSetting(format!("{} bases exceed 2^m + 1", settings.len())));
        }
        if let Some(bad) = settings.iter().find(|s| !s.is_full() || s.qubit_count() != m) {
            return Err(Error::InvalidSetting(format!(
                "setting with {} generators on {} qubits is not full",
                bad.generator_count(),
                bad.qubit_count()
            )));
        }
        let bases = settings.iter().map(|s| common_eigenbasis(s).vectors).collect();
        let fam = MubFamily { bases, settings };
        let ortho = fam.max_orthonormality_deviation();
        if ortho > 1e-12 {
            return Err(Error::InvalidSetting(format!("basis not orthonormal ({ortho:e})")));
        }
        let unb = fam.max_unbiasedness_deviation();
        if unb > 1e-10 {
            return Err(Error::InvalidSetting(format!("bases not mutually unbiased ({unb:e})")));
        }
        Ok(fam)
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    pub fn qubit_count(&self) -> usize {
        self.settings[0].qubit_count()
    }

    pub fn max_orthonormality_deviation(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for basis in &self.bases {
            for (i, a) in basis.iter().enumerate() {
                for (j, b) in basis.iter().enumerate() {
                    let ip = a.amplitudes().dotc(b.amplitudes()).norm();
                    let target = if i == j { 1.0 } else { 0.0 };
                    worst = worst.max((ip - target).abs());
                }
            }
        }
        worst
    }

    pub fn max_unbiasedness_deviation(&self) -> f64 {
        let target = 1.0 / (1usize << self.qubit_count()) as f64;
        let mut worst: f64 = 0.0;
        for (i, bi) in self.bases.iter().enumerate() {
            for bj in &self.bases[i + 1..] {
                for a in bi {
                    for b in bj {
                        let ov = a.amplitudes().dotc(b.amplitudes()).norm_sqr();
                        worst = worst.max((ov - target).abs());
                    }
                }
            }
        }
        worst
    }
}

/// The five mutually unbiased bases of two qubits.
pub fn two_qubit_mub() -> MubFamily {
    MubFamily::from_settings(two_qubit_settings()).expect("canonical two-qubit MUB certifies")
}

/// Complete MUB family on `m ≤ 4` qubits from [`pauli_partition`].
pub fn mub_family(m: usize) -> Result<MubFamily> {
    MubFamily::from_settings(pauli_partition(m)?)
}
