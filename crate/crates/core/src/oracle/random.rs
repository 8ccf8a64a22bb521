//! Seeded random inputs for property checks.
//!
//! All draws come from `ChaCha8Rng::seed_from_u64(seed)`. ChaCha output is
//! specified bit-for-bit and `seed_from_u64` expands the seed with PCG32,
//! so a given seed yields the same inputs on every platform. Draws are
//! uniform `f64` in `[0, 1)` plus `gen_range` for ensemble sizes.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::detection::{BeamSplitter, ProductComponent, SeparableEnsemble};
use crate::spinspace::{c, ComplexMatrix, ComplexVector, TwoQubitDensity};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn uniform_complex(rng: &mut SeededRng) -> Complex64 {
    c(rng.gen::<f64>() * 2.0 - 1.0, rng.gen::<f64>() * 2.0 - 1.0)
}

/// `G·G† / Tr(G·G†)` for a 4×4 `G` with entries uniform in the unit square
/// `[−1, 1) + i[−1, 1)`.
pub fn random_density_from(rng: &mut SeededRng) -> TwoQubitDensity {
    let g = ComplexMatrix::from_fn(4, 4, |_, _| uniform_complex(rng));
    TwoQubitDensity::from_unnormalized(&(&g * &g.adjoint()))
        .expect("G·G† is a density after scaling")
}

pub fn random_density(seed: u64) -> TwoQubitDensity {
    random_density_from(&mut rng(seed))
}

/// Haar-random single-spin pure state, `(cos θ/2, e^{iφ} sin θ/2)` with
/// `cos θ` and `φ` uniform.
pub fn haar_qubit(rng: &mut SeededRng) -> ComplexVector {
    let cos_theta = 1.0 - 2.0 * rng.gen::<f64>();
    let half = cos_theta.clamp(-1.0, 1.0).acos() / 2.0;
    let phi = 2.0 * PI * rng.gen::<f64>();
    ComplexVector::new(vec![
        c(half.cos(), 0.0),
        Complex64::from_polar(half.sin(), phi),
    ])
    .unwrap()
}

/// Haar-random element of U(2).
pub fn haar_unitary_2(rng: &mut SeededRng) -> ComplexMatrix {
    let v = haar_qubit(rng);
    // random phase on the first component makes (a, b) Haar on the 3-sphere
    let chi = 2.0 * PI * rng.gen::<f64>();
    let a = v[0] * Complex64::from_polar(1.0, chi);
    let b = v[1];
    let alpha = 2.0 * PI * rng.gen::<f64>();
    let g = Complex64::from_polar(1.0, alpha);
    ComplexMatrix::from_rows(&[[a * g, -b.conj() * g], [b * g, a.conj() * g]]).unwrap()
}

pub fn random_beam_splitter(rng: &mut SeededRng) -> BeamSplitter {
    BeamSplitter::new(haar_unitary_2(rng)).expect("Haar unitary is unitary")
}

/// A random separable ensemble of 1–4 product components with random
/// weights. With probability `aligned_probability` a component's second
/// spin copies the first (up to a random phase), otherwise both spins are
/// independent Haar draws.
pub fn random_separable_ensemble(
    rng: &mut SeededRng,
    aligned_probability: f64,
) -> SeparableEnsemble {
    let n = rng.gen_range(1..=4);
    let raw: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() + 1e-3).collect();
    let total: f64 = raw.iter().sum();
    let mut comps = Vec::with_capacity(n);
    for w in raw {
        let first = haar_qubit(rng);
        let second = if rng.gen::<f64>() < aligned_probability {
            first.scale(Complex64::from_polar(1.0, 2.0 * PI * rng.gen::<f64>()))
        } else {
            haar_qubit(rng)
        };
        comps.push(ProductComponent::new(w / total, first, second));
    }
    SeparableEnsemble::new(comps).expect("constructed ensemble is valid")
}
