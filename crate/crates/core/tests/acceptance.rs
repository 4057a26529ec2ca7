//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines always reach the terminal.

use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qpt_core::chi::kraus_to_chi;
use qpt_core::cost::{measurement_cost, CostTarget, GateModel};
use qpt_core::linalg::{self, c, CVector};
use qpt_core::measurement::outcome_probabilities_raw;
use qpt_core::mub::{pauli_partition, two_qubit_mub};
use qpt_core::qpt::{
    build_design_matrix, build_plan, dcqd_configs, design_from_configs, exact_distributions, extract_relaxation,
    simulate_experiment, stacked_observations, Config, DcqdFrame, LinearInversion, SchemeTag, Shots,
};
use qpt_core::resources::{comparison_table, repetitions_for_precision, resource_row};
use qpt_core::sweep::precision_sweep;
use qpt_core::{random_channel, KetVector, PauliString, QuantumChannel, Result};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome { pass, detail: detail.into() })
}

const NL: GateModel = GateModel::NonlocalTwoBody;
const LOCAL: GateModel = GateModel::LocalTwoBody;

fn ac1() -> Result<Outcome> {
    let start = Instant::now();
    let mut ok = true;
    let expected_dcqd = [4u128, 16, 64, 256];
    for n in 1..=4u32 {
        ok &= resource_row(SchemeTag::Dcqd, n, NL, 0.1)?.configurations == expected_dcqd[n as usize - 1];
        ok &= resource_row(SchemeTag::Sqpt, n, NL, 0.1)?.configurations == 16u128.pow(n);
        ok &= resource_row(SchemeTag::AaptPovm, n, NL, 0.1)?.configurations == 1;
    }
    ok &= resource_row(SchemeTag::AaptMub, 1, NL, 0.1)?.configurations == 5;
    for n in 1..=2usize {
        let dcqd = build_plan(SchemeTag::Dcqd, n)?;
        ok &= dcqd.config_count() as u128 == expected_dcqd[n - 1];
        let sqpt = build_plan(SchemeTag::Sqpt, n)?;
        ok &= sqpt.config_count() as u128 == 16u128.pow(n as u32);
        for scheme in SchemeTag::ALL.into_iter().filter(|&s| n == 1 || s != SchemeTag::AaptPovm) {
            let plan = build_plan(scheme, n)?;
            ok &= plan.accounted_configurations == resource_row(scheme, n as u32, NL, 0.1)?.configurations;
        }
    }
    ok &= build_plan(SchemeTag::AaptMub, 1)?.config_count() == 5;
    ok &= build_plan(SchemeTag::AaptPovm, 1)?.config_count() == 1;
    let secs = start.elapsed().as_secs_f64();
    outcome(ok && secs < 1.0, format!("DCQD 4/16/64/256, MUB 5, POVM 1, SQPT 16^n; {secs:.3} s"))
}

fn ac2() -> Result<Outcome> {
    let start = Instant::now();
    let family = two_qubit_mub();
    let unbiased = family.max_unbiasedness_deviation();
    let ortho = family.max_orthonormality_deviation();
    let mut covered: Vec<usize> = pauli_partition(2)?
        .iter()
        .flat_map(|s| s.members().into_iter().map(|p| p.index()))
        .collect();
    covered.sort_unstable();
    let exact_cover = covered == (1..16).collect::<Vec<_>>();
    let triples = pauli_partition(2)?.iter().all(|s| s.members().len() == 3);
    let secs = start.elapsed().as_secs_f64();
    outcome(
        family.len() == 5 && unbiased <= 1e-10 && ortho <= 1e-10 && exact_cover && triples && secs < 1.0,
        format!("5 bases, |<a|b>|^2 deviation {unbiased:.1e}, exact cover of 15 strings: {exact_cover}; {secs:.3} s"),
    )
}

fn ac3() -> Result<Outcome> {
    let start = Instant::now();
    let mut ranks = Vec::new();
    let mut setups = Vec::new();
    for scheme in SchemeTag::ALL {
        let plan = build_plan(scheme, 1)?;
        let design = build_design_matrix(&plan)?;
        ranks.push(design.rank());
        let inv = LinearInversion::new(&design)?;
        setups.push((plan, design, inv));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut worst, mut worst_pair) = (0.0f64, 0.0f64);
    for _ in 0..100 {
        let kraus = rng.random_range(1..=4);
        let deficit = rng.random_range(0.0..=0.5);
        let ch = random_channel(1, kraus, deficit, &mut rng)?;
        let truth = kraus_to_chi(&ch);
        let mut estimates = Vec::new();
        for (plan, design, inv) in &setups {
            let dists = exact_distributions(plan, &ch)?;
            let est = inv.estimate(&stacked_observations(design, &dists)?)?;
            worst = worst.max(est.chi.max_abs_diff(&truth));
            estimates.push(est.chi);
        }
        for i in 0..estimates.len() {
            for j in i + 1..estimates.len() {
                worst_pair = worst_pair.max(estimates[i].max_abs_diff(&estimates[j]));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        ranks.iter().all(|&r| r == 16) && worst < 1e-8 && worst_pair < 1e-8 && secs < 30.0,
        format!("ranks {ranks:?}, max error {worst:.1e}, max pairwise {worst_pair:.1e}; {secs:.2} s"),
    )
}

fn ac4() -> Result<Outcome> {
    let cfg = &dcqd_configs(1)?[0];
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let kraus = rng.random_range(1..=4);
        let deficit = rng.random_range(0.0..=0.5);
        let ch = random_channel(1, kraus, deficit, &mut rng)?;
        let chi = kraus_to_chi(&ch);
        let rho = ch.apply_to_system(&cfg.input.projector(), 1)?;
        let dist = outcome_probabilities_raw(&cfg.measurement, &rho)?;
        for (m, label) in ["I", "X", "Y", "Z"].iter().enumerate() {
            let p = dist.probability_of(label).unwrap_or(f64::NAN);
            worst = worst.max((p - chi.entries()[(m, m)].re).abs());
        }
    }
    outcome(worst <= 1e-12, format!("max |p_P - chi_PP| = {worst:.1e} over 100 channels"))
}

fn random_qubit(rng: &mut ChaCha8Rng) -> KetVector {
    let v = CVector::from_fn(2, |_, _| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
    KetVector::normalized(v).expect("nonzero")
}

fn with_inputs(base: &[Config], inputs: Vec<KetVector>) -> Vec<Config> {
    let mut out = base.to_vec();
    for (cfg, ket) in out.iter_mut().skip(1).zip(inputs) {
        cfg.input = ket;
    }
    out
}

/// Product states that keep each coherence configuration's stabilizer: the
/// frame image of `|00⟩` or `|11⟩` with a random phase.
fn code_space_product(frame: DcqdFrame, rng: &mut ChaCha8Rng) -> KetVector {
    let u = frame.local_unitary();
    let k = if rng.random_bool(0.5) { 0 } else { 3 };
    let phase = rng.random_range(0.0..std::f64::consts::TAU);
    let mut v = CVector::zeros(4);
    v[k] = c(phase.cos(), phase.sin());
    KetVector::new(linalg::kron(&u, &u) * v).expect("unitary image")
}

fn ac5() -> Result<Outcome> {
    let base = dcqd_configs(1)?;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut counterexamples = 0;
    let mut max_rank = 0;
    for _ in 0..100 {
        let inputs: Vec<KetVector> = DcqdFrame::ALL.iter().map(|&f| code_space_product(f, &mut rng)).collect();
        debug_assert!(inputs.iter().all(|k| k.schmidt_rank(1) == 1));
        let rank = design_from_configs(&with_inputs(&base, inputs), 1, 1)?.rank();
        max_rank = max_rank.max(rank);
        counterexamples += usize::from(rank >= 16);
    }
    outcome(
        counterexamples == 0,
        format!("stabilizer-preserving product inputs: max rank {max_rank}, {counterexamples} counterexamples in 100"),
    )
}

fn ac5_generic() -> Result<(usize, usize)> {
    let base = dcqd_configs(1)?;
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    let mut full = 0;
    let trials = 100;
    for _ in 0..trials {
        let inputs: Vec<KetVector> = (0..3).map(|_| random_qubit(&mut rng).tensor(&random_qubit(&mut rng))).collect();
        full += usize::from(design_from_configs(&with_inputs(&base, inputs), 1, 1)?.rank() == 16);
    }
    Ok((full, trials))
}

fn ac6() -> Result<Outcome> {
    let start = Instant::now();
    let ch = QuantumChannel::depolarizing(0.3)?;
    let shots = [1_000, 10_000, 100_000, 1_000_000];
    let dcqd = precision_sweep(&build_plan(SchemeTag::Dcqd, 1)?, &ch, &shots, 50, 0)?;
    let povm = precision_sweep(&build_plan(SchemeTag::AaptPovm, 1)?, &ch, &shots, 50, 0)?;
    let ratios: Vec<f64> = povm
        .points
        .iter()
        .zip(&dcqd.points)
        .map(|(p, d)| p.mean_element_std / d.mean_element_std)
        .collect();
    let ratio = ratios.iter().sum::<f64>() / ratios.len() as f64;
    let secs = start.elapsed().as_secs_f64();
    let slope_ok = (dcqd.slope + 0.5).abs() <= 0.05;
    let ratio_ok = (1.4..=2.6).contains(&ratio);
    outcome(
        slope_ok && ratio_ok && secs < 300.0,
        format!(
            "slope {:.3} +/- {:.3}, POVM/DCQD std ratio {ratio:.2} (per N {:?}); {secs:.1} s",
            dcqd.slope,
            dcqd.slope_stderr,
            ratios.iter().map(|r| (r * 100.0).round() / 100.0).collect::<Vec<_>>()
        ),
    )
}

fn ac7() -> Result<Outcome> {
    let mut ok = true;
    let mut checked = 0;
    for k in [1u32, 2, 4] {
        for n in 1..=8u32 {
            for eps in [0.1, 0.05, 0.01] {
                let base = (1.0f64 / (eps * eps)).round() as u128;
                let r = repetitions_for_precision(k, n, eps)?;
                let r1 = repetitions_for_precision(1, n, eps)?;
                ok &= r == (1u128 << (k * n)) * base;
                ok &= r % r1 == 0 && r / r1 == 1u128 << ((k - 1) * n);
                checked += 1;
            }
        }
    }
    outcome(ok, format!("{checked} (k, n, eps) triples exact"))
}

fn ac8() -> Result<Outcome> {
    let mut ok = true;
    for n in 1..=8usize {
        let q = 2 * n;
        ok &= measurement_cost(CostTarget::Scheme(SchemeTag::Dcqd), q, NL)? == q as u128;
        ok &= measurement_cost(CostTarget::BellMeasurement, q, NL)? == q as u128;
        let zs: PauliString = "Z".repeat(q).parse()?;
        ok &= measurement_cost(CostTarget::PauliString(&zs), q, NL)? == q as u128;
        ok &= measurement_cost(CostTarget::Scheme(SchemeTag::AaptMub), q, NL)? == (q * q) as u128;
        ok &= measurement_cost(CostTarget::Scheme(SchemeTag::AaptMub), q, LOCAL)? == (q * q * q) as u128;
    }
    for n in 1..=2usize {
        let q = 2 * n;
        let s = &pauli_partition(q)?[0];
        ok &= measurement_cost(CostTarget::MubSetting(s), q, NL)? == (q * q) as u128;
        ok &= measurement_cost(CostTarget::MubSetting(s), q, LOCAL)? == (q * q * q) as u128;
    }
    let mut minimal = true;
    for model in [NL, LOCAL] {
        for eps in [0.1, 0.05, 0.01] {
            let rows = comparison_table(1..=8, model, eps)?;
            for group in rows.chunks(SchemeTag::ALL.len()) {
                let dcqd = group.iter().find(|r| r.scheme == SchemeTag::Dcqd).expect("row");
                minimal &= group.iter().all(|r| dcqd.grand_total <= r.grand_total);
            }
        }
    }
    outcome(ok && minimal, format!("cost anchors hold: {ok}; DCQD grand total minimal for n in 1..=8: {minimal}"))
}

fn ac9() -> Result<Outcome> {
    let (t1, t2, t) = (50.0f64, 30.0f64, 10.0f64);
    let gamma = 1.0 - (-t / t1).exp();
    let coherence = (-t / t2).exp();
    let lambda = 1.0 - coherence * coherence / (1.0 - gamma);
    let ch = QuantumChannel::damping_dephasing(gamma, lambda)?;
    let plan = build_plan(SchemeTag::Dcqd, 1)?;
    let design = build_design_matrix(&plan)?;
    let inv = LinearInversion::new(&design)?;
    let mut errs = Vec::new();
    for shots in [Shots::Exact, Shots::Sampled(1_000_000)] {
        let dists = simulate_experiment(&plan, &ch, shots, 0)?;
        let est = inv.estimate(&stacked_observations(&design, &dists)?)?;
        let r = extract_relaxation(&est.chi, t)?;
        errs.push(((r.t1 - t1).abs() / t1).max((r.t2 - t2).abs() / t2));
    }
    outcome(
        errs[0] <= 0.01 && errs[1] <= 0.05,
        format!("max relative error: exact {:.1e}, 1e6 shots {:.2}%", errs[0], errs[1] * 100.0),
    )
}

fn main() -> ExitCode {
    type Check = fn() -> Result<Outcome>;
    let criteria: [(&str, &str, Check); 9] = [
        ("AC1", "configuration counts", ac1),
        ("AC2", "two-qubit MUB certification", ac2),
        ("AC3", "completeness and cross-scheme agreement", ac3),
        ("AC4", "DCQD population read-out", ac4),
        ("AC5", "entanglement necessity", ac5),
        ("AC6", "precision scaling", ac6),
        ("AC7", "repetition-factor identities", ac7),
        ("AC8", "gate-cost anchors", ac8),
        ("AC9", "T1/T2 extraction", ac9),
    ];
    let mut failures = 0;
    for (id, name, check) in criteria {
        let (pass, detail) = match check() {
            Ok(o) => (o.pass, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        failures += usize::from(!pass);
        println!("{id} {} {name}: {detail}", if pass { "PASS" } else { "FAIL" });
    }
    match ac5_generic() {
        Ok((full, trials)) => println!(
            "NOTE AC5 with unconstrained random product inputs: {full}/{trials} draws reach rank 16"
        ),
        Err(e) => println!("NOTE AC5 unconstrained product inputs: error: {e}"),
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} acceptance criteria failed");
        ExitCode::FAILURE
    }
}
