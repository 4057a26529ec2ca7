//! Closed-form resource accounting for the five schemes.
//!
//! Configuration counts use the exact powers `16ⁿ`; for `n = 3` this is
//! 4096 where a rounded figure of 5000 is often quoted.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::cost::{gate_class, measurement_cost, CostTarget, GateClass, GateModel};
use crate::error::{Error, Result};
use crate::scheme::SchemeTag;

pub const CSV_HEADER: [&str; 12] = [
    "scheme",
    "n",
    "inputs",
    "settings",
    "configurations",
    "k",
    "outcomes",
    "ancillas",
    "gates_per_config",
    "total_ops",
    "repetitions",
    "grand_total",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResourceRow {
    pub scheme: SchemeTag,
    pub n: u32,
    pub inputs: u128,
    pub settings: u128,
    pub configurations: u128,
    pub k: u32,
    pub outcomes: u128,
    pub ancillas: u32,
    pub gates_per_config: u128,
    pub total_ops: u128,
    pub repetitions: u128,
    pub grand_total: u128,
}

impl ResourceRow {
    pub fn gate_class(&self) -> GateClass {
        gate_class(self.scheme)
    }

    /// Physically distinct measurement devices; differs from `settings`
    /// only for the separable scheme, where `3^(2n)` Pauli products suffice.
    pub fn distinct_devices(&self) -> Result<u128> {
        match self.scheme {
            SchemeTag::AaptSeparable => pow(3, 2 * self.n),
            _ => Ok(self.settings),
        }
    }
}

fn pow(base: u128, exp: u32) -> Result<u128> {
    base.checked_pow(exp).ok_or_else(|| Error::Overflow(format!("{base}^{exp}")))
}

fn mul(a: u128, b: u128, what: &str) -> Result<u128> {
    a.checked_mul(b).ok_or_else(|| Error::Overflow(what.to_string()))
}

pub fn outcome_exponent(scheme: SchemeTag) -> u32 {
    match scheme {
        SchemeTag::Sqpt => 1,
        SchemeTag::AaptPovm => 4,
        _ => 2,
    }
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("precision must be positive, got {epsilon}")))
    }
}

/// `N′ = 2^(kn) / ε²`, rounded to the nearest integer when within 1e-9
/// relative of it and up otherwise.
pub fn repetitions_for_precision(k: u32, n: u32, epsilon: f64) -> Result<u128> {
    check_epsilon(epsilon)?;
    let exp = k.checked_mul(n).filter(|&e| e < 1000).ok_or_else(|| Error::Overflow("2^(kn)".into()))?;
    let value = 2f64.powi(exp as i32) / (epsilon * epsilon);
    if !value.is_finite() || value >= u128::MAX as f64 {
        return Err(Error::Overflow("repetition count".into()));
    }
    let nearest = value.round();
    let out = if (value - nearest).abs() <= 1e-9 * nearest.max(1.0) { nearest } else { value.ceil() };
    Ok(out as u128)
}

pub fn resource_row(scheme: SchemeTag, n: u32, model: GateModel, epsilon: f64) -> Result<ResourceRow> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    check_epsilon(epsilon)?;
    let four_n = pow(4, n)?;
    let (inputs, settings, ancillas) = match scheme {
        SchemeTag::Sqpt => (four_n, four_n, 0),
        SchemeTag::AaptSeparable => (1, pow(16, n)?, n),
        SchemeTag::AaptMub => (1, four_n + 1, n),
        SchemeTag::AaptPovm => (1, 1, 3 * n),
        SchemeTag::Dcqd => (four_n, 1, n),
    };
    let k = outcome_exponent(scheme);
    let configurations = mul(inputs, settings, "configurations")?;
    let gates_per_config = measurement_cost(CostTarget::Scheme(scheme), 2 * n as usize, model)?;
    let total_ops = mul(configurations, gates_per_config, "total operations")?;
    let repetitions = repetitions_for_precision(k, n, epsilon)?;
    Ok(ResourceRow {
        scheme,
        n,
        inputs,
        settings,
        configurations,
        k,
        outcomes: pow(2, k * n)?,
        ancillas,
        gates_per_config,
        total_ops,
        repetitions,
        grand_total: mul(total_ops, repetitions, "grand total")?,
    })
}

/// All five schemes for each `n`, ordered by `n` then scheme.
pub fn comparison_table(ns: impl IntoIterator<Item = u32>, model: GateModel, epsilon: f64) -> Result<Vec<ResourceRow>> {
    let mut out = Vec::new();
    for n in ns {
        for scheme in SchemeTag::ALL {
            out.push(resource_row(scheme, n, model, epsilon)?);
        }
    }
    Ok(out)
}

pub fn write_resource_csv<W: Write>(rows: &[ResourceRow], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_resource_csv<R: Read>(input: R) -> Result<Vec<ResourceRow>> {
    let mut r = csv::Reader::from_reader(input);
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if header != CSV_HEADER {
        return Err(Error::Parse(format!("unexpected resource header {header:?}")));
    }
    r.deserialize().map(|row| row.map_err(Error::from)).collect()
}
