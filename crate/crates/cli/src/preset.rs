//! Channel presets and range arguments.

use std::fs::File;
use std::path::Path;

use qpt_core::io::read_channel_json;
use qpt_core::{Error, QuantumChannel, Result};

/// Parses `name` or `name(p1,p2,…)` into a single-qubit channel and lifts it
/// to `n` qubits as a tensor power.
pub fn parse_preset(text: &str, n: usize) -> Result<QuantumChannel> {
    let text = text.trim();
    let (name, args) = match text.find('(') {
        Some(open) => {
            let close = text
                .strip_suffix(')')
                .ok_or_else(|| Error::InvalidArgument(format!("unterminated parameter list in {text:?}")))?;
            let params = close[open + 1..]
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::InvalidArgument(format!("bad channel parameter {s:?}")))
                })
                .collect::<Result<Vec<f64>>>()?;
            (&text[..open], params)
        }
        None => (text, Vec::new()),
    };
    let arity = |k: usize| {
        if args.len() == k {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("{name} takes {k} parameter(s), got {}", args.len())))
        }
    };
    for &p in &args {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidArgument(format!("channel parameter {p} outside [0, 1]")));
        }
    }
    let single = match name {
        "identity" => {
            arity(0)?;
            return Ok(QuantumChannel::identity(n));
        }
        "depolarizing" => {
            arity(1)?;
            QuantumChannel::depolarizing(args[0])?
        }
        "bit-flip" => {
            arity(1)?;
            QuantumChannel::bit_flip(args[0])?
        }
        "amplitude-damping" => {
            arity(1)?;
            QuantumChannel::amplitude_damping(args[0])?
        }
        "damping-dephasing" => {
            arity(2)?;
            QuantumChannel::damping_dephasing(args[0], args[1])?
        }
        "loss" => {
            arity(1)?;
            QuantumChannel::loss(args[0])?
        }
        other => return Err(Error::InvalidArgument(format!("unknown channel preset {other:?}"))),
    };
    single.tensor_power(n)
}

/// Reads a JSON channel file; every failure is reported as a parse error.
pub fn load_channel_file(path: &Path, n: usize) -> Result<QuantumChannel> {
    let file = File::open(path)?;
    let ch = read_channel_json(std::io::BufReader::new(file)).map_err(|e| match e {
        Error::Io(e) => Error::Io(e),
        Error::Parse(m) => Error::Parse(m),
        other => Error::Parse(format!("{}: {other}", path.display())),
    })?;
    if ch.qubit_count() != n {
        return Err(Error::InvalidArgument(format!(
            "channel acts on {} qubit(s) but --n is {n}",
            ch.qubit_count()
        )));
    }
    Ok(ch)
}

/// `A` or `A..B` (inclusive); `B < A` gives an empty range.
pub fn parse_range(s: &str) -> Result<Vec<u32>> {
    let bad = || Error::InvalidArgument(format!("expected INT or A..B, got {s:?}"));
    match s.split_once("..") {
        Some((a, b)) => {
            let a: u32 = a.trim().parse().map_err(|_| bad())?;
            let b: u32 = b.trim().parse().map_err(|_| bad())?;
            Ok((a..=b).collect())
        }
        None => Ok(vec![s.trim().parse().map_err(|_| bad())?]),
    }
}

pub fn parse_shot_list(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|v| {
            let v = v.trim();
            let parsed = v.parse::<u64>().ok().or_else(|| {
                v.parse::<f64>().ok().filter(|f| f.fract() == 0.0 && *f >= 0.0 && *f < 1.8e19).map(|f| f as u64)
            });
            parsed.ok_or_else(|| Error::InvalidArgument(format!("bad shot count {v:?}")))
        })
        .collect()
}
