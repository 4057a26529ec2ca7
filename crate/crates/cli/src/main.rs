//! `qpt`: plans, simulations, resource tables and precision sweeps.
//!
//! Exit codes: 0 success, 2 invalid arguments or size limits, 3 incomplete
//! design, 4 I/O or parse failure.

mod preset;

use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qpt_core::chi::kraus_to_chi;
use qpt_core::io::{write_chi_csv, write_outcomes_csv, write_plan_csv, write_plan_text};
use qpt_core::mub::partition_dump;
use qpt_core::qpt::{
    build_design_matrix, build_plan, extract_relaxation, reconstruct_chi, simulate_experiment, stacked_observations,
};
use qpt_core::resources::{comparison_table, write_resource_csv, ResourceRow};
use qpt_core::{pauli_partition, precision_sweep, Error, GateModel, PauliString, QuantumChannel, Result, SchemeTag, Shots};

#[derive(Parser)]
#[command(name = "qpt", version, about = "Quantum process tomography workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the configurations of a scheme.
    Plan {
        #[arg(long)]
        scheme: SchemeTag,
        #[arg(long)]
        n: String,
        #[command(flatten)]
        output: Output,
    },
    /// Simulate a scheme on a channel and reconstruct χ.
    Simulate {
        #[arg(long)]
        scheme: SchemeTag,
        #[arg(long)]
        n: String,
        #[command(flatten)]
        channel: ChannelArgs,
        #[command(flatten)]
        shots: ShotArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write per-configuration outcome statistics as CSV.
        #[arg(long)]
        outcomes: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Resource comparison table for every scheme.
    Resources {
        #[arg(long, default_value = "1..4")]
        n: String,
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
        #[arg(long, value_enum, default_value_t = Locality::Nonlocal)]
        locality: Locality,
        #[command(flatten)]
        output: Output,
    },
    /// Reconstruction error against shot count over repeated trials.
    Sweep {
        #[arg(long)]
        scheme: SchemeTag,
        #[arg(long, default_value = "1")]
        n: String,
        #[command(flatten)]
        channel: ChannelArgs,
        /// Comma-separated shot counts.
        #[arg(long, default_value = "1000,10000,100000,1000000")]
        shots: String,
        #[arg(long)]
        exact: bool,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Partition of the nontrivial Pauli strings into commuting sets.
    Partition {
        /// Number of qubits.
        #[arg(long, default_value_t = 2)]
        m: usize,
        #[command(flatten)]
        output: Output,
    },
    /// T1 and T2 from a single-qubit channel via the direct scheme.
    Relaxation {
        #[command(flatten)]
        channel: ChannelArgs,
        /// Evolution time the channel corresponds to.
        #[arg(long, default_value_t = 1.0)]
        time: f64,
        #[command(flatten)]
        shots: ShotArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Args)]
struct ChannelArgs {
    /// Preset: identity, depolarizing(p), bit-flip(p), amplitude-damping(g),
    /// damping-dephasing(g,l), loss(p).
    #[arg(long, conflicts_with = "channel_file")]
    channel: Option<String>,
    /// JSON file with Kraus operators.
    #[arg(long)]
    channel_file: Option<PathBuf>,
}

#[derive(Args)]
struct ShotArgs {
    #[arg(long, conflicts_with = "exact")]
    shots: Option<String>,
    #[arg(long)]
    exact: bool,
}

#[derive(Args)]
struct Output {
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum Locality {
    Nonlocal,
    Local,
}

impl From<Locality> for GateModel {
    fn from(l: Locality) -> Self {
        match l {
            Locality::Nonlocal => GateModel::NonlocalTwoBody,
            Locality::Local => GateModel::LocalTwoBody,
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::RankDeficient { .. } => 3,
        Error::Io(_) | Error::Parse(_) => 4,
        _ => 2,
    }
}

fn single_n(s: &str) -> Result<usize> {
    match preset::parse_range(s)?.as_slice() {
        [n] => Ok(*n as usize),
        _ => Err(Error::InvalidArgument(format!("--n must be a single value here, got {s:?}"))),
    }
}

impl ChannelArgs {
    fn load(&self, n: usize) -> Result<QuantumChannel> {
        match (&self.channel, &self.channel_file) {
            (Some(text), None) => preset::parse_preset(text, n),
            (None, Some(path)) => preset::load_channel_file(path, n),
            (None, None) => Err(Error::InvalidArgument("one of --channel or --channel-file is required".into())),
            (Some(_), Some(_)) => Err(Error::InvalidArgument("--channel and --channel-file are exclusive".into())),
        }
    }
}

impl ShotArgs {
    fn shots(&self) -> Result<Shots> {
        match (&self.shots, self.exact) {
            (Some(s), false) => match preset::parse_shot_list(s)?.as_slice() {
                [0] => Err(Error::InvalidArgument("--shots must be positive".into())),
                [n] => Ok(Shots::Sampled(*n)),
                _ => Err(Error::InvalidArgument("--shots takes a single count here".into())),
            },
            _ => Ok(Shots::Exact),
        }
    }
}

impl Output {
    fn emit(&self, body: &[u8]) -> Result<()> {
        match &self.out {
            Some(path) => {
                let mut w = BufWriter::new(File::create(path)?);
                w.write_all(body)?;
                w.flush()?;
            }
            None => io::stdout().lock().write_all(body)?,
        }
        Ok(())
    }
}

fn fmt_matrix(out: &mut String, labels: &[String], value: impl Fn(usize, usize) -> f64) {
    let _ = write!(out, "{:>8}", "");
    for l in labels {
        let _ = write!(out, " {l:>15}");
    }
    out.push('\n');
    for (i, l) in labels.iter().enumerate() {
        let _ = write!(out, "{l:>8}");
        for j in 0..labels.len() {
            let _ = write!(out, " {:>15.8e}", value(i, j));
        }
        out.push('\n');
    }
}

fn cmd_plan(scheme: SchemeTag, n: &str, output: &Output) -> Result<()> {
    let plan = build_plan(scheme, single_n(n)?)?;
    let mut buf = Vec::new();
    match output.format {
        Format::Csv => write_plan_csv(&plan, &mut buf)?,
        Format::Text => write_plan_text(&plan, &mut buf)?,
    }
    output.emit(&buf)
}

fn cmd_simulate(
    scheme: SchemeTag,
    n: &str,
    channel: &ChannelArgs,
    shots: &ShotArgs,
    seed: u64,
    outcomes: Option<&PathBuf>,
    output: &Output,
) -> Result<()> {
    let n = single_n(n)?;
    let plan = build_plan(scheme, n)?;
    let ch = channel.load(n)?;
    let shots = shots.shots()?;
    let design = build_design_matrix(&plan)?;
    let dists = simulate_experiment(&plan, &ch, shots, seed)?;
    let est = reconstruct_chi(&design, &stacked_observations(&design, &dists)?)?;
    let truth = kraus_to_chi(&ch);
    if let Some(path) = outcomes {
        write_outcomes_csv(&dists, BufWriter::new(File::create(path)?))?;
    }
    let mut buf = Vec::new();
    match output.format {
        Format::Csv => write_chi_csv(&est.chi, &mut buf)?,
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "scheme: {scheme}");
            let _ = writeln!(s, "n: {n}");
            let _ = writeln!(s, "configurations: {}", plan.config_count());
            match shots {
                Shots::Exact => s.push_str("shots: exact\n"),
                Shots::Sampled(k) => {
                    let _ = writeln!(s, "shots: {k}");
                    let _ = writeln!(s, "seed: {seed}");
                }
            }
            s.push_str("frequencies:\n");
            for (cfg, d) in plan.configs.iter().zip(&dists) {
                let _ = write!(s, "  {}:", cfg.label);
                for (l, f) in d.labels.iter().zip(d.frequencies()) {
                    let _ = write!(s, " {l}={f:.8}");
                }
                s.push('\n');
            }
            let labels: Vec<String> = PauliString::all(n).map(|p| p.to_string()).collect();
            let e = est.chi.entries();
            s.push_str("chi_re:\n");
            fmt_matrix(&mut s, &labels, |i, j| e[(i, j)].re);
            s.push_str("chi_im:\n");
            fmt_matrix(&mut s, &labels, |i, j| e[(i, j)].im);
            let _ = writeln!(s, "residual_norm: {:.6e}", est.residual_norm);
            let _ = writeln!(s, "condition_number: {:.6e}", est.condition_number);
            let _ = writeln!(s, "max_error: {:.6e}", est.chi.max_abs_diff(&truth));
            buf = s.into_bytes();
        }
    }
    output.emit(&buf)
}

fn resource_text(rows: &[ResourceRow]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<10} {:>2} {:>8} {:>8} {:>10} {:>2} {:>10} {:>3} {:>12} {:>14} {:>12} {:>22}",
        "scheme", "n", "inputs", "settings", "configs", "k", "outcomes", "anc", "gates/config", "total_ops", "reps", "grand_total"
    );
    for r in rows {
        let _ = writeln!(
            s,
            "{:<10} {:>2} {:>8} {:>8} {:>10} {:>2} {:>10} {:>3} {:>12} {:>14} {:>12} {:>22}",
            r.scheme.as_str(),
            r.n,
            r.inputs,
            r.settings,
            r.configurations,
            r.k,
            r.outcomes,
            r.ancillas,
            r.gates_per_config,
            r.total_ops,
            r.repetitions,
            r.grand_total
        );
    }
    s
}

fn cmd_resources(n: &str, epsilon: f64, locality: Locality, output: &Output) -> Result<()> {
    let rows = comparison_table(preset::parse_range(n)?, locality.into(), epsilon)?;
    let mut buf = Vec::new();
    match output.format {
        Format::Csv => write_resource_csv(&rows, &mut buf)?,
        Format::Text => buf = resource_text(&rows).into_bytes(),
    }
    output.emit(&buf)
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    scheme: SchemeTag,
    n: &str,
    channel: &ChannelArgs,
    shots: &str,
    exact: bool,
    trials: usize,
    seed: u64,
    output: &Output,
) -> Result<()> {
    if exact {
        return Err(Error::InvalidArgument("a precision sweep needs sampled statistics".into()));
    }
    let n = single_n(n)?;
    let plan = build_plan(scheme, n)?;
    let ch = channel.load(n)?;
    let report = precision_sweep(&plan, &ch, &preset::parse_shot_list(shots)?, trials, seed)?;
    let mut s = String::new();
    match output.format {
        Format::Csv => {
            s.push_str("shots,rms_error,mean_element_std\n");
            for p in &report.points {
                let _ = writeln!(s, "{},{},{}", p.shots, p.rms_error, p.mean_element_std);
            }
        }
        Format::Text => {
            let _ = writeln!(s, "scheme: {}", report.scheme);
            let _ = writeln!(s, "n: {}", report.n);
            let _ = writeln!(s, "trials: {}", report.trials);
            let _ = writeln!(s, "seed: {}", report.seed);
            let _ = writeln!(s, "{:>12} {:>15} {:>15}", "shots", "rms_error", "mean_std");
            for p in &report.points {
                let _ = writeln!(s, "{:>12} {:>15.6e} {:>15.6e}", p.shots, p.rms_error, p.mean_element_std);
            }
            let _ = writeln!(s, "slope: {:.4} +/- {:.4}", report.slope, report.slope_stderr);
        }
    }
    output.emit(s.as_bytes())
}

fn cmd_partition(m: usize, output: &Output) -> Result<()> {
    let settings = pauli_partition(m)?;
    let body = match output.format {
        Format::Text => partition_dump(&settings),
        Format::Csv => {
            let mut s = String::from("setting,member\n");
            for (i, set) in settings.iter().enumerate() {
                for p in set.members() {
                    let _ = writeln!(s, "{i},{p}");
                }
            }
            s
        }
    };
    output.emit(body.as_bytes())
}

fn cmd_relaxation(channel: &ChannelArgs, time: f64, shots: &ShotArgs, seed: u64, output: &Output) -> Result<()> {
    let ch = channel.load(1)?;
    let plan = build_plan(SchemeTag::Dcqd, 1)?;
    let design = build_design_matrix(&plan)?;
    let dists = simulate_experiment(&plan, &ch, shots.shots()?, seed)?;
    let est = reconstruct_chi(&design, &stacked_observations(&design, &dists)?)?;
    let r = extract_relaxation(&est.chi, time)?;
    let body = match output.format {
        Format::Csv => format!("t1,t2,gamma,coherence,residual\n{},{},{},{},{}\n", r.t1, r.t2, r.gamma, r.coherence, r.residual),
        Format::Text => format!(
            "t1: {:.8e}\nt2: {:.8e}\ngamma: {:.8e}\ncoherence: {:.8e}\nmodel_residual: {:.3e}\n",
            r.t1, r.t2, r.gamma, r.coherence, r.residual
        ),
    };
    output.emit(body.as_bytes())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Plan { scheme, n, output } => cmd_plan(scheme, &n, &output),
        Command::Simulate { scheme, n, channel, shots, seed, outcomes, output } => {
            cmd_simulate(scheme, &n, &channel, &shots, seed, outcomes.as_ref(), &output)
        }
        Command::Resources { n, epsilon, locality, output } => cmd_resources(&n, epsilon, locality, &output),
        Command::Sweep { scheme, n, channel, shots, exact, trials, seed, output } => {
            cmd_sweep(scheme, &n, &channel, &shots, exact, trials, seed, &output)
        }
        Command::Partition { m, output } => cmd_partition(m, &output),
        Command::Relaxation { channel, time, shots, seed, output } => {
            cmd_relaxation(&channel, time, &shots, seed, &output)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qpt: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
