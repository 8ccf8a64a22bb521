//! Wootters concurrence and entanglement of formation for two-qubit states.

use crate::error::Result;
use crate::spinspace::{general_eigenvalues_psd_product, pauli, tensor, TwoQubitDensity};

/// Concurrence together with the entanglement of formation it implies.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EntanglementReport {
    pub concurrence: f64,
    /// Entanglement of formation in ebits (base-2 entropy).
    pub eof: f64,
}

impl EntanglementReport {
    pub fn from_concurrence(concurrence: f64) -> Self {
        Self {
            concurrence,
            eof: eof_from_concurrence(concurrence),
        }
    }
}

/// `ρ̃ = (σy⊗σy) ρ* (σy⊗σy)`, with `ρ*` the entrywise conjugate in the
/// standard basis.
pub fn spin_flip(rho: &TwoQubitDensity) -> TwoQubitDensity {
    let yy = tensor(&pauli::y(), &pauli::y());
    let flipped = &(&yy * &rho.matrix().conj()) * &yy;
    TwoQubitDensity::from_unnormalized(&flipped).expect("spin flip of a density is a density")
}

/// Eigenvalues of `ρρ̃` at or below this are roundoff zeros. Taking the square
/// root would otherwise turn an `O(ε)` residue into an `O(√ε)` concurrence error.
pub const EIGENVALUE_FLOOR: f64 = 1e-14;

/// `C = max(0, √λ₁ − √λ₂ − √λ₃ − √λ₄)` over the descending eigenvalues of `ρρ̃`.
pub fn concurrence(rho: &TwoQubitDensity) -> Result<f64> {
    let tilde = spin_flip(rho);
    let lambda = general_eigenvalues_psd_product(rho, &tilde)?;
    let r = lambda.map(|x| if x <= EIGENVALUE_FLOOR { 0.0 } else { x.sqrt() });
    Ok((r[0] - r[1] - r[2] - r[3]).clamp(0.0, 1.0))
}

/// Binary entropy in bits; `h(0) = h(1) = 0`.
pub fn binary_entropy(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        return 0.0;
    }
    -x * x.log2() - (1.0 - x) * (1.0 - x).log2()
}

pub fn eof_from_concurrence(c: f64) -> f64 {
    let c = c.clamp(0.0, 1.0);
    binary_entropy((1.0 + (1.0 - c * c).sqrt()) / 2.0)
}

pub fn entanglement_of_formation(rho: &TwoQubitDensity) -> Result<EntanglementReport> {
    Ok(EntanglementReport::from_concurrence(concurrence(rho)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scattering::{aligned_triplet_mixture, lambda_weights};
    use crate::spinspace::{c, kets, ComplexMatrix, ComplexVector};

    fn pure(k: &ComplexVector) -> TwoQubitDensity {
        TwoQubitDensity::pure(k).unwrap()
    }

    #[test]
    fn spin_flip_cases() {
        let pp = pure(&kets::psi_plus());
        assert!(spin_flip(&pp).matrix().max_abs_diff(pp.matrix()) < 1e-15);
        let uu = pure(&kets::up_up());
        let dd = pure(&kets::down_down());
        assert!(spin_flip(&uu).matrix().max_abs_diff(dd.matrix()) < 1e-15);
        let mm = TwoQubitDensity::maximally_mixed();
        assert!(spin_flip(&mm).matrix().max_abs_diff(mm.matrix()) < 1e-15);
    }

    #[test]
    fn bell_state_is_maximally_entangled() {
        assert!((concurrence(&pure(&kets::psi_plus())).unwrap() - 1.0).abs() < 1e-12);
        assert!((concurrence(&pure(&kets::psi_minus())).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn product_state_has_zero_concurrence() {
        let a = ComplexVector::new(vec![c(0.6, 0.0), c(0.0, 0.8)]).unwrap();
        let b = ComplexVector::new(vec![c(0.28, 0.96), c(0.0, 0.0)]).unwrap();
        let rho = pure(&tensor(&a, &b));
        assert!(concurrence(&rho).unwrap() < 1e-12);
        assert_eq!(
            concurrence(&TwoQubitDensity::maximally_mixed()).unwrap(),
            0.0
        );
    }

    #[test]
    fn lambda_at_unit_coupling() {
        // Hand algebra: ρρ̃ has one nonzero eigenvalue, (8𝑱²/(1+9𝑱²))² = 0.64 at 𝑱 = 1.
        let (w0, w1) = lambda_weights(1.0);
        let rho = aligned_triplet_mixture(w0, w1).unwrap();
        let report = entanglement_of_formation(&rho).unwrap();
        assert!((report.concurrence - 0.8).abs() < 1e-12);
        // h(0.8) with x = (1 + 0.6)/2 = 0.8
        let h08 = -0.8 * 0.8_f64.log2() - 0.2 * 0.2_f64.log2();
        assert!((report.eof - h08).abs() < 1e-12);
        assert!((report.eof - 0.721928).abs() < 1e-6);
    }

    #[test]
    fn lambda_at_three_exceeds_point_eight() {
        let (w0, w1) = lambda_weights(3.0);
        let report = entanglement_of_formation(&aligned_triplet_mixture(w0, w1).unwrap()).unwrap();
        assert!((report.concurrence - 72.0 / 82.0).abs() < 1e-12);
        // h((1 + √(1 − C²))/2) at C = 72/82, evaluated independently
        assert!((report.eof - 0.827_822_542_223_8).abs() < 1e-12);
        assert!(report.eof > 0.8);
    }

    #[test]
    fn entropy_endpoints() {
        assert_eq!(binary_entropy(0.0), 0.0);
        assert_eq!(binary_entropy(1.0), 0.0);
        assert!((binary_entropy(0.5) - 1.0).abs() < 1e-15);
        assert_eq!(eof_from_concurrence(0.0), 0.0);
        assert!((eof_from_concurrence(1.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn werner_threshold() {
        // p|ψ⁻⟩⟨ψ⁻| + (1−p)I/4 has C = max(0, (3p−1)/2)
        for p in [0.2, 1.0 / 3.0, 0.5, 0.9] {
            let singlet = pure(&kets::psi_minus());
            let m = &singlet.matrix().scale(c(p, 0.0))
                + &ComplexMatrix::identity(4).scale(c((1.0 - p) / 4.0, 0.0));
            let rho = TwoQubitDensity::new(m).unwrap();
            let expected = ((3.0 * p - 1.0) / 2.0_f64).max(0.0);
            assert!(
                (concurrence(&rho).unwrap() - expected).abs() < 1e-7,
                "p = {p}"
            );
        }
    }
}
