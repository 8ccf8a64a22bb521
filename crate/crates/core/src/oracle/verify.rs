//! Dual-construction checks, runnable from the CLI.

use std::fmt;
use std::time::Instant;

use crate::detection::{
    bunching_probability, lambda_spin_correlation, spin_correlation_z, two_fermion_transform,
    BeamSplitter, OutcomeDistribution,
};
use crate::entanglement::concurrence;
use crate::error::Result;
use crate::scattering::{
    apply_first_order, born_kernel, lambda_prime_weights, lambda_weights, scatter_full,
    scatter_with_kernel, Coupling, ImpurityPreparation,
};
use crate::spinspace::{c, ComplexMatrix, JointState, Spin};
use crate::sweep::uniform_grid;

use super::fermion::brute_force_two_fermion;
use super::ladder::{assemble_t_matrix, LadderOperatorSpec};
use super::random::{random_beam_splitter, random_density_from, rng};

/// Coupling values at which the scattering paths are compared.
pub const CHECK_COUPLINGS: [f64; 3] = [0.1, 1.0, 3.0];

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct VerifyOptions {
    /// Added to the `(0, 0)` entry of the Born kernel before checking.
    /// Nonzero values exist to confirm the checks can fail.
    pub kernel_perturbation: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl CheckResult {
    fn new(name: &'static str, max_error: f64, tolerance: f64) -> Self {
        Self {
            name,
            max_error,
            tolerance,
            passed: max_error.is_finite() && max_error <= tolerance,
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
    pub elapsed_seconds: f64,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:<34} {:>12} {:>10}  result",
            "check", "max error", "tolerance"
        )?;
        for check in &self.checks {
            writeln!(
                f,
                "{:<34} {:>12.3e} {:>10.0e}  {}",
                check.name,
                check.max_error,
                check.tolerance,
                if check.passed { "PASS" } else { "FAIL" }
            )?;
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        write!(
            f,
            "{} checks, {} failed, {:.3} s",
            self.checks.len(),
            failed,
            self.elapsed_seconds
        )
    }
}

fn kernel_under_test(opts: &VerifyOptions) -> ComplexMatrix {
    let mut k = born_kernel();
    k[(0, 0)] += c(opts.kernel_perturbation, 0.0);
    k
}

/// Largest deviation between two outcome distributions, over the lead
/// probabilities and the conditional spin block.
pub fn outcome_difference(a: &OutcomeDistribution, b: &OutcomeDistribution) -> f64 {
    let mut err = (a.p_55 - b.p_55)
        .abs()
        .max((a.p_66 - b.p_66).abs())
        .max((a.p_56 - b.p_56).abs());
    match (&a.conditional_spin_56, &b.conditional_spin_56) {
        (Some(x), Some(y)) => err = err.max(x.matrix().max_abs_diff(y.matrix())),
        (None, None) => {}
        _ => return f64::INFINITY,
    }
    err
}

fn ladder_vs_kernel(kernel: &ComplexMatrix) -> CheckResult {
    let t = assemble_t_matrix(&LadderOperatorSpec::spin_half());
    CheckResult::new(
        "ladder assembly = Born kernel",
        t.max_abs_diff(kernel),
        1e-14,
    )
}

fn scatter_vs_ladder(kernel: &ComplexMatrix) -> Result<CheckResult> {
    let t = assemble_t_matrix(&LadderOperatorSpec::spin_half());
    let mut err = 0.0_f64;
    for j in CHECK_COUPLINGS {
        let j = Coupling::new(j)?;
        for i in 0..JointState::DIM {
            let input = JointState::basis_index(i);
            let fast = scatter_with_kernel(kernel, j, &input)?;
            let oracle = apply_first_order(&t, j, &input).normalize()?;
            err = err.max(fast.vector().max_abs_diff(oracle.vector()));
        }
    }
    Ok(CheckResult::new(
        "scatter = ladder-operator oracle",
        err,
        1e-12,
    ))
}

fn final_state_closed_form(kernel: &ComplexMatrix) -> Result<CheckResult> {
    let input = JointState::basis(Spin::Up, Spin::Up, Spin::Down);
    let mut err = 0.0_f64;
    for j in CHECK_COUPLINGS {
        let out = scatter_with_kernel(kernel, Coupling::new(j)?, &input)?;
        let n = (1.0 + 9.0 * j * j).sqrt();
        let mut expected = [c(0.0, 0.0); 8];
        expected[JointState::index(Spin::Up, Spin::Up, Spin::Down)] = c(1.0, j) / n;
        expected[JointState::index(Spin::Up, Spin::Down, Spin::Up)] = c(0.0, -2.0 * j) / n;
        expected[JointState::index(Spin::Down, Spin::Up, Spin::Up)] = c(0.0, -2.0 * j) / n;
        let expected = JointState::from_amplitudes(expected)?;
        err = err.max(out.vector().max_abs_diff(expected.vector()));
    }
    Ok(CheckResult::new("final state closed form", err, 1e-12))
}

fn kernel_structure(kernel: &ComplexMatrix) -> CheckResult {
    let sz_total = ComplexMatrix::diagonal(
        &(0..JointState::DIM)
            .map(|i| 3.0 - 2.0 * JointState::down_count(i) as f64)
            .collect::<Vec<_>>(),
    );
    let err = kernel
        .hermiticity_error()
        .max(kernel.commutator(&sz_total).max_abs());
    CheckResult::new("kernel Hermitian, conserves Sz", err, 1e-14)
}

fn triplet_norm_law(kernel: &ComplexMatrix) -> Result<CheckResult> {
    use crate::spinspace::kets;
    let mut err = 0.0_f64;
    let triplets = [kets::up_up(), kets::psi_plus(), kets::down_down()];
    for j in CHECK_COUPLINGS {
        let jc = Coupling::new(j)?;
        for imp in Spin::BOTH {
            for t in &triplets {
                let s = JointState::product(t, &imp.ket())?;
                err = err.max(
                    (apply_first_order(kernel, jc, &s).norm_sqr() - (1.0 + 9.0 * j * j)).abs(),
                );
            }
            let s = JointState::product(&kets::psi_minus(), &imp.ket())?;
            err = err.max((apply_first_order(kernel, jc, &s).norm_sqr() - (1.0 + j * j)).abs());
        }
    }
    Ok(CheckResult::new("triplet norm law 1+9J^2", err, 1e-12))
}

fn two_fermion_paths() -> Result<CheckResult> {
    let mut err = 0.0_f64;
    let mut r = rng(0x7f0e);
    for _ in 0..100 {
        let bs = random_beam_splitter(&mut r);
        let rho = random_density_from(&mut r);
        let fast = two_fermion_transform(&bs, &rho)?;
        let slow = brute_force_two_fermion(&bs, &rho)?;
        err = err.max(outcome_difference(&fast, &slow));
    }
    Ok(CheckResult::new(
        "two-fermion fast = operator algebra",
        err,
        1e-12,
    ))
}

fn concurrence_closed_form() -> Result<CheckResult> {
    let mut err = 0.0_f64;
    for j in uniform_grid(0.0, 5.0, 51) {
        let jc = Coupling::new(j)?;
        let d = scatter_full(jc, &ImpurityPreparation::Down)?;
        let r = scatter_full(jc, &ImpurityPreparation::Random)?;
        err = err.max((concurrence(&d.unconditional)? - lambda_weights(j).1).abs());
        err = err.max((concurrence(&r.unconditional)? - lambda_prime_weights(j).1).abs());
    }
    Ok(CheckResult::new("concurrence closed form", err, 1e-10))
}

fn detection_closed_form() -> Result<CheckResult> {
    let bs = BeamSplitter::balanced();
    let mut err = 0.0_f64;
    for j in uniform_grid(0.0, 5.0, 101) {
        let d = scatter_full(Coupling::new(j)?, &ImpurityPreparation::Down)?;
        err = err.max(bunching_probability(&bs, &d.unconditional)?);
        err = err
            .max((spin_correlation_z(&bs, &d.unconditional)? - lambda_spin_correlation(j)).abs());
    }
    Ok(CheckResult::new("detection closed form", err, 1e-10))
}

/// Run every cross-check. Errors from the library itself are reported as
/// failed checks rather than propagated.
pub fn run_verification(opts: &VerifyOptions) -> VerificationReport {
    let start = Instant::now();
    let kernel = kernel_under_test(opts);
    let failed = |name| CheckResult {
        name,
        max_error: f64::INFINITY,
        tolerance: 0.0,
        passed: false,
    };
    let checks = vec![
        ladder_vs_kernel(&kernel),
        kernel_structure(&kernel),
        scatter_vs_ladder(&kernel).unwrap_or_else(|_| failed("scatter = ladder-operator oracle")),
        final_state_closed_form(&kernel).unwrap_or_else(|_| failed("final state closed form")),
        triplet_norm_law(&kernel).unwrap_or_else(|_| failed("triplet norm law 1+9J^2")),
        two_fermion_paths().unwrap_or_else(|_| failed("two-fermion fast = operator algebra")),
        concurrence_closed_form().unwrap_or_else(|_| failed("concurrence closed form")),
        detection_closed_form().unwrap_or_else(|_| failed("detection closed form")),
    ];
    VerificationReport {
        checks,
        elapsed_seconds: start.elapsed().as_secs_f64(),
    }
}
