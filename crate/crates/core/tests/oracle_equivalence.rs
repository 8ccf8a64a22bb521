use kondo_core::oracle::random::{random_density, random_separable_ensemble, rng};
use kondo_core::oracle::verify::{outcome_difference, run_verification, VerifyOptions};
use kondo_core::oracle::{
    assemble_t_matrix, brute_force_two_fermion, expand_product, fit_calibration, normal_order,
    LadderOperatorSpec,
};
use kondo_core::spinspace::{c, kets};
use kondo_core::*;

#[test]
fn ladder_assembly_reproduces_kernel() {
    let t = assemble_t_matrix(&LadderOperatorSpec::spin_half());
    assert!(t.max_abs_diff(&born_kernel()) < 1e-14);
}

#[test]
fn fitted_calibration_is_scale_minus_two_offset_minus_one() {
    let cal = fit_calibration(&LadderOperatorSpec::spin_half_uncalibrated());
    assert!((cal.scale - c(-2.0, 0.0)).norm() < 1e-14);
    assert!((cal.offset - c(-1.0, 0.0)).norm() < 1e-14);
}

#[test]
fn zero_spec_assembles_to_zero() {
    assert_eq!(
        assemble_t_matrix(&LadderOperatorSpec::zero()).max_abs(),
        0.0
    );
}

#[test]
fn normal_ordering_signs() {
    assert_eq!(normal_order(&[1, 0]), Some((-1.0, vec![0, 1])));
    assert_eq!(normal_order(&[2, 0, 1]), Some((1.0, vec![0, 1, 2])));
    assert_eq!(normal_order(&[3, 3]), None);
    // (c†0 + c†1)(c†0 − c†1) = −2 c†0 c†1
    let terms = expand_product(&[
        vec![(0, c(1.0, 0.0)), (1, c(1.0, 0.0))],
        vec![(0, c(1.0, 0.0)), (1, c(-1.0, 0.0))],
    ]);
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[&vec![0, 1]], c(-2.0, 0.0));
}

#[test]
fn fast_detection_matches_operator_algebra_on_fixed_states() {
    let splitters = [
        BeamSplitter::balanced(),
        BeamSplitter::identity(),
        BeamSplitter::with_angle(0.3),
    ];
    let states = [
        TwoQubitDensity::pure(&kets::psi_minus()).unwrap(),
        TwoQubitDensity::pure(&kets::psi_plus()).unwrap(),
        TwoQubitDensity::pure(&kets::up_up()).unwrap(),
        TwoQubitDensity::maximally_mixed(),
        random_density(11),
    ];
    for bs in &splitters {
        for rho in &states {
            let fast = two_fermion_transform(bs, rho).unwrap();
            let slow = brute_force_two_fermion(bs, rho).unwrap();
            assert!(outcome_difference(&fast, &slow) < 1e-12);
        }
    }
}

#[test]
fn singlet_bunches_at_balanced_splitter() {
    let out = two_fermion_transform(
        &BeamSplitter::balanced(),
        &TwoQubitDensity::pure(&kets::psi_minus()).unwrap(),
    )
    .unwrap();
    assert!((out.p_55 - 0.5).abs() < 1e-14);
    assert!((out.p_66 - 0.5).abs() < 1e-14);
    assert!(out.p_56 < 1e-14);
    assert!(out.conditional_spin_56.is_none());
}

#[test]
fn random_density_is_deterministic_and_normalized() {
    for seed in 0..100 {
        let a = random_density(seed);
        let b = random_density(seed);
        assert_eq!(a, b);
        assert!((a.matrix().trace().re - 1.0).abs() < 1e-12);
        assert!(a.eigenvalues()[3] >= -1e-12);
    }
    assert_ne!(random_density(1), random_density(2));
}

#[test]
fn separable_ensembles_are_deterministic() {
    let a = random_separable_ensemble(&mut rng(5), 0.5);
    let b = random_separable_ensemble(&mut rng(5), 0.5);
    assert_eq!(a.density().matrix(), b.density().matrix());
    let total: f64 = a.components().iter().map(|p| p.weight).sum();
    assert!((total - 1.0).abs() < 1e-12);
}

#[test]
fn verification_passes_and_detects_perturbation() {
    let report = run_verification(&VerifyOptions::default());
    assert!(report.all_passed(), "{report}");
    let broken = run_verification(&VerifyOptions {
        kernel_perturbation: 1e-3,
    });
    assert!(!broken.all_passed(), "{broken}");
}
