//! File formats: channel JSON, and CSV dumps of plans, outcomes, design
//! matrices and χ estimates. Floats are written in shortest round-trip form.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::channel::QuantumChannel;
use crate::chi::ChiMatrix;
use crate::error::{Error, Result};
use crate::linalg::{c, CMatrix};
use crate::measurement::OutcomeDistribution;
use crate::pauli::PauliString;
use crate::qpt::{DesignMatrix, ExperimentPlan};

/// On-disk channel description: Kraus operators as row-major lists of
/// `[re, im]` pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChannelFile {
    pub qubits: usize,
    pub kraus: Vec<Vec<Vec<[f64; 2]>>>,
}

impl ChannelFile {
    pub fn from_channel(ch: &QuantumChannel) -> Self {
        let kraus = ch
            .kraus_operators()
            .iter()
            .map(|k| (0..k.nrows()).map(|i| (0..k.ncols()).map(|j| [k[(i, j)].re, k[(i, j)].im]).collect()).collect())
            .collect();
        ChannelFile { qubits: ch.qubit_count(), kraus }
    }

    pub fn to_channel(&self) -> Result<QuantumChannel> {
        let dim = 1usize << self.qubits;
        let mut ops = Vec::with_capacity(self.kraus.len());
        for k in &self.kraus {
            if k.len() != dim || k.iter().any(|row| row.len() != dim) {
                return Err(Error::Parse(format!("Kraus operator is not {dim}x{dim}")));
            }
            ops.push(CMatrix::from_fn(dim, dim, |i, j| c(k[i][j][0], k[i][j][1])));
        }
        QuantumChannel::new(ops, self.qubits)
    }
}

pub fn read_channel_json<R: Read>(input: R) -> Result<QuantumChannel> {
    let file: ChannelFile = serde_json::from_reader(input)?;
    file.to_channel()
}

pub fn write_channel_json<W: Write>(ch: &QuantumChannel, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, &ChannelFile::from_channel(ch))?;
    out.write_all(b"\n")?;
    Ok(())
}

/// One line of a plan dump.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigSummary {
    pub index: usize,
    pub label: String,
    pub measurement: String,
    pub outcomes: usize,
    pub loss: bool,
}

pub fn plan_summary(plan: &ExperimentPlan) -> Vec<ConfigSummary> {
    plan.configs
        .iter()
        .enumerate()
        .map(|(index, cfg)| ConfigSummary {
            index,
            label: cfg.label.clone(),
            measurement: cfg.measurement_label.clone(),
            outcomes: cfg.measurement.outcome_count(),
            loss: cfg.measurement.include_loss(),
        })
        .collect()
}

pub fn write_plan_csv<W: Write>(plan: &ExperimentPlan, out: W) -> Result<()> {
    write_rows(&plan_summary(plan), out)
}

pub fn read_plan_csv<R: Read>(input: R) -> Result<Vec<ConfigSummary>> {
    read_rows(input)
}

pub fn write_plan_text<W: Write>(plan: &ExperimentPlan, mut out: W) -> Result<()> {
    writeln!(out, "scheme: {}", plan.scheme)?;
    writeln!(out, "n: {}", plan.n)?;
    writeln!(out, "configurations: {}", plan.config_count())?;
    writeln!(out, "accounted_configurations: {}", plan.accounted_configurations)?;
    writeln!(out, "ancillas: {}", plan.ancilla_count)?;
    writeln!(out, "simulated_ancillas: {}", plan.simulated_ancillas)?;
    for s in plan_summary(plan) {
        writeln!(out, "config {}: {} [{} outcomes{}]", s.index, s.label, s.outcomes, if s.loss { " + loss" } else { "" })?;
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct OutcomeRow {
    config: usize,
    outcome: String,
    probability: f64,
    count: Option<u64>,
}

pub fn write_outcomes_csv<W: Write>(dists: &[OutcomeDistribution], out: W) -> Result<()> {
    let rows: Vec<OutcomeRow> = dists
        .iter()
        .enumerate()
        .flat_map(|(config, d)| {
            d.labels.iter().enumerate().map(move |(i, l)| OutcomeRow {
                config,
                outcome: l.clone(),
                probability: d.probabilities[i],
                count: d.counts.as_ref().map(|c| c[i]),
            })
        })
        .collect();
    write_rows(&rows, out)
}

pub fn read_outcomes_csv<R: Read>(input: R) -> Result<Vec<OutcomeDistribution>> {
    let rows: Vec<OutcomeRow> = read_rows(input)?;
    let mut out: Vec<OutcomeDistribution> = Vec::new();
    type Block = (usize, Vec<f64>, Vec<String>, Vec<Option<u64>>);
    let mut pending: Option<Block> = None;
    let flush = |p: Block, out: &mut Vec<OutcomeDistribution>| {
        let (_, probs, labels, counts) = p;
        let mut d = OutcomeDistribution::new(probs, labels)?;
        if counts.iter().all(Option::is_some) {
            d.counts = Some(counts.into_iter().flatten().collect());
        } else if counts.iter().any(Option::is_some) {
            return Err(Error::Parse("counts present for only some outcomes".into()));
        }
        out.push(d);
        Ok::<(), Error>(())
    };
    for row in rows {
        match pending.as_mut() {
            Some(p) if p.0 == row.config => {
                p.1.push(row.probability);
                p.2.push(row.outcome);
                p.3.push(row.count);
            }
            _ => {
                if let Some(p) = pending.take() {
                    flush(p, &mut out)?;
                }
                if row.config != out.len() {
                    return Err(Error::Parse(format!("configuration {} out of order", row.config)));
                }
                pending = Some((row.config, vec![row.probability], vec![row.outcome], vec![row.count]));
            }
        }
    }
    if let Some(p) = pending {
        flush(p, &mut out)?;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct ChiRow {
    m: String,
    n: String,
    re: f64,
    im: f64,
}

pub fn write_chi_csv<W: Write>(chi: &ChiMatrix, out: W) -> Result<()> {
    let names: Vec<String> = PauliString::all(chi.qubit_count()).map(|p| p.to_string()).collect();
    let e = chi.entries();
    let rows: Vec<ChiRow> = (0..names.len())
        .flat_map(|i| (0..names.len()).map(move |j| (i, j)))
        .map(|(i, j)| ChiRow { m: names[i].clone(), n: names[j].clone(), re: e[(i, j)].re, im: e[(i, j)].im })
        .collect();
    write_rows(&rows, out)
}

pub fn read_chi_csv<R: Read>(input: R) -> Result<ChiMatrix> {
    let rows: Vec<ChiRow> = read_rows(input)?;
    let d2 = (rows.len() as f64).sqrt().round() as usize;
    if d2 * d2 != rows.len() || !d2.is_power_of_two() || d2.trailing_zeros() % 2 != 0 {
        return Err(Error::Parse(format!("{} entries do not form a χ matrix", rows.len())));
    }
    let qubits = d2.trailing_zeros() as usize / 2;
    let mut entries = crate::linalg::zeros(d2);
    let mut seen = vec![false; d2 * d2];
    for r in rows {
        let m: PauliString = r.m.parse()?;
        let n: PauliString = r.n.parse()?;
        if m.qubit_count() != qubits || n.qubit_count() != qubits {
            return Err(Error::Parse(format!("label {}/{} has wrong length", r.m, r.n)));
        }
        let (i, j) = (m.index(), n.index());
        if std::mem::replace(&mut seen[i * d2 + j], true) {
            return Err(Error::Parse(format!("duplicate entry {},{}", r.m, r.n)));
        }
        entries[(i, j)] = c(r.re, r.im);
    }
    ChiMatrix::new(entries, qubits)
}

/// Design matrix with a leading `row` label column.
pub fn write_design_csv<W: Write>(design: &DesignMatrix, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["row".to_string()];
    header.extend(design.column_labels());
    w.write_record(&header)?;
    for (i, label) in design.row_labels().iter().enumerate() {
        let mut rec = vec![label.clone()];
        rec.extend(design.entries().row(i).iter().map(|v| v.to_string()));
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

fn write_rows<T: Serialize, W: Write>(rows: &[T], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

fn read_rows<T: for<'de> Deserialize<'de>, R: Read>(input: R) -> Result<Vec<T>> {
    csv::Reader::from_reader(input).deserialize().map(|r| r.map_err(Error::from)).collect()
}
