//! End-to-end runs: two-qubit reconstructions, loss handling and the
//! role of entangled inputs in the direct scheme.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qpt_core::chi::kraus_to_chi;
use qpt_core::linalg::{c, CVector};
use qpt_core::measurement::LOSS_LABEL;
use qpt_core::qpt::{
    build_design_matrix, build_plan, dcqd_configs, design_from_configs, run_tomography, simulate_experiment, Shots,
};
use qpt_core::{random_channel, KetVector, QuantumChannel, SchemeTag};

#[test]
fn two_qubit_schemes_agree_on_exact_statistics() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let ch = random_channel(2, 3, 0.4, &mut rng).unwrap();
    let truth = kraus_to_chi(&ch);
    for scheme in [SchemeTag::Sqpt, SchemeTag::AaptSeparable, SchemeTag::AaptMub, SchemeTag::Dcqd] {
        let est = run_tomography(scheme, &ch, Shots::Exact, 0).unwrap();
        assert!(est.chi.max_abs_diff(&truth) < 1e-8, "{scheme}: {}", est.chi.max_abs_diff(&truth));
    }
}

#[test]
fn two_qubit_design_ranks() {
    for scheme in [SchemeTag::Sqpt, SchemeTag::AaptSeparable, SchemeTag::AaptMub, SchemeTag::Dcqd] {
        let d = build_design_matrix(&build_plan(scheme, 2).unwrap()).unwrap();
        assert_eq!(d.rank(), 256, "{scheme}");
    }
}

#[test]
fn identity_reconstruction_is_exact() {
    let est = run_tomography(SchemeTag::Dcqd, &QuantumChannel::identity(1), Shots::Exact, 0).unwrap();
    assert!(est.chi.max_abs_diff(&kraus_to_chi(&QuantumChannel::identity(1))) < 1e-10);
}

#[test]
fn lossy_channel_reconstructed_with_loss_outcome() {
    let ch = QuantumChannel::amplitude_damping(0.3).unwrap().compose(&QuantumChannel::loss(0.25).unwrap()).unwrap();
    for scheme in SchemeTag::ALL {
        let plan = build_plan(scheme, 1).unwrap();
        let dists = simulate_experiment(&plan, &ch, Shots::Exact, 0).unwrap();
        for d in &dists {
            assert!((d.probability_of(LOSS_LABEL).unwrap() - 0.25).abs() < 1e-12, "{scheme}");
        }
        let est = run_tomography(scheme, &ch, Shots::Exact, 0).unwrap();
        assert!(est.chi.max_abs_diff(&kraus_to_chi(&ch)) < 1e-10, "{scheme}");
    }
}

#[test]
fn sampled_reconstruction_is_reproducible() {
    let ch = QuantumChannel::depolarizing(0.3).unwrap();
    let a = run_tomography(SchemeTag::Dcqd, &ch, Shots::Sampled(1_000_000), 0).unwrap();
    let b = run_tomography(SchemeTag::Dcqd, &ch, Shots::Sampled(1_000_000), 0).unwrap();
    assert_eq!(a.chi, b.chi);
    assert!(a.chi.max_abs_diff(&kraus_to_chi(&ch)) < 0.01);
}

/// Product inputs chosen freely, without respecting the stabilizer of the
/// configuration they replace, still make the direct scheme's design
/// complete; incompleteness needs the product input to stay inside the
/// stabilizer code space.
#[test]
fn unconstrained_product_inputs_can_restore_completeness() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut random_qubit = || {
        let v = CVector::from_fn(2, |_, _| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)));
        KetVector::normalized(v).unwrap()
    };
    let mut configs = dcqd_configs(1).unwrap();
    for cfg in configs.iter_mut().skip(1) {
        cfg.input = random_qubit().tensor(&random_qubit());
        assert_eq!(cfg.input.schmidt_rank(1), 1);
    }
    assert_eq!(design_from_configs(&configs, 1, 1).unwrap().rank(), 16);
}

#[test]
fn code_space_product_inputs_lose_coherence_information() {
    let mut configs = dcqd_configs(1).unwrap();
    for cfg in configs.iter_mut().skip(1) {
        cfg.input = KetVector::basis(0, 2);
    }
    assert!(design_from_configs(&configs, 1, 1).unwrap().rank() < 16);
}
