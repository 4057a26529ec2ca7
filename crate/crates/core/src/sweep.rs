//! Repeated sampled reconstructions over a range of shot counts.

use rayon::prelude::*;

use crate::channel::QuantumChannel;
use crate::chi::kraus_to_chi;
use crate::error::{Error, Result};
use crate::qpt::{build_design_matrix, exact_distributions, resample, stacked_observations, ExperimentPlan, LinearInversion};
use crate::sampling::mix_seed;
use crate::scheme::SchemeTag;

pub const MIN_SHOT_VALUES: usize = 4;
pub const MIN_DECADES: f64 = 2.0;
pub const MIN_TRIALS: usize = 20;

#[derive(Clone, Debug, PartialEq)]
pub struct SweepPoint {
    pub shots: u64,
    /// Root-mean-square parameter error against the true χ, over trials and
    /// parameters.
    pub rms_error: f64,
    /// Sample standard deviation of each real χ parameter across trials.
    pub element_std: Vec<f64>,
    pub mean_element_std: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepReport {
    pub scheme: SchemeTag,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub points: Vec<SweepPoint>,
    /// Least-squares slope of `log rms_error` against `log shots`.
    pub slope: f64,
    pub slope_stderr: f64,
}

fn validate(shots: &[u64], trials: usize) -> Result<Vec<u64>> {
    if trials < MIN_TRIALS {
        return Err(Error::InvalidArgument(format!("at least {MIN_TRIALS} trials required, got {trials}")));
    }
    let mut sorted = shots.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() < MIN_SHOT_VALUES {
        return Err(Error::InvalidArgument(format!(
            "at least {MIN_SHOT_VALUES} distinct shot counts required, got {}",
            sorted.len()
        )));
    }
    if sorted[0] == 0 {
        return Err(Error::InvalidArgument("shot counts must be positive".into()));
    }
    let decades = (sorted[sorted.len() - 1] as f64 / sorted[0] as f64).log10();
    if decades < MIN_DECADES - 1e-12 {
        return Err(Error::InvalidArgument(format!(
            "shot counts span {decades:.2} decades, {MIN_DECADES} required"
        )));
    }
    Ok(sorted)
}

/// Ordinary least squares `y = a + b x`; returns `(b, stderr(b))`.
pub fn fit_slope(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|v| (v - mx).powi(2)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = x.iter().zip(y).map(|(a, b)| (b - intercept - slope * a).powi(2)).sum();
    let stderr = if x.len() > 2 { (sse / (n - 2.0) / sxx).sqrt() } else { 0.0 };
    (slope, stderr)
}

/// For each shot count, reconstructs χ from `trials` independent sampled
/// experiments. Trial `t` of point `i` uses seed `mix_seed(seed, i·trials + t)`.
pub fn precision_sweep(
    plan: &ExperimentPlan,
    channel: &QuantumChannel,
    shots: &[u64],
    trials: usize,
    seed: u64,
) -> Result<SweepReport> {
    let shots = validate(shots, trials)?;
    let design = build_design_matrix(plan)?;
    let inversion = LinearInversion::new(&design)?;
    let exact = exact_distributions(plan, channel)?;
    let truth = kraus_to_chi(channel).to_params();
    let params = truth.len();

    let mut points = Vec::with_capacity(shots.len());
    for (i, &n_shots) in shots.iter().enumerate() {
        let estimates: Vec<Vec<f64>> = (0..trials)
            .into_par_iter()
            .map(|t| {
                let trial_seed = mix_seed(seed, (i * trials + t) as u64);
                let dists = resample(&exact, n_shots, trial_seed)?;
                let obs = stacked_observations(&design, &dists)?;
                Ok(inversion.estimate(&obs)?.chi.to_params())
            })
            .collect::<Result<_>>()?;
        let sq_err: f64 = estimates
            .iter()
            .flat_map(|e| e.iter().zip(&truth).map(|(a, b)| (a - b).powi(2)))
            .sum();
        let rms_error = (sq_err / (trials * params) as f64).sqrt();
        let element_std: Vec<f64> = (0..params)
            .map(|p| {
                let mean = estimates.iter().map(|e| e[p]).sum::<f64>() / trials as f64;
                let var = estimates.iter().map(|e| (e[p] - mean).powi(2)).sum::<f64>() / (trials - 1) as f64;
                var.sqrt()
            })
            .collect();
        let mean_element_std = element_std.iter().sum::<f64>() / params as f64;
        points.push(SweepPoint { shots: n_shots, rms_error, element_std, mean_element_std });
    }

    let x: Vec<f64> = points.iter().map(|p| (p.shots as f64).log10()).collect();
    let y: Vec<f64> = points.iter().map(|p| p.rms_error.log10()).collect();
    let (slope, slope_stderr) = fit_slope(&x, &y);
    Ok(SweepReport { scheme: plan.scheme, n: plan.n, trials, seed, points, slope, slope_stderr })
}
