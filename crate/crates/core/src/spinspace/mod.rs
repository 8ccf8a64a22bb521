//! Spin-space kernel: dense complex linear algebra plus the state types
//! shared by the scattering, entanglement and detection modules.
//!
//! Basis convention, used everywhere in the crate: spin up is 0, spin down
//! is 1. A joint (electron in rail 3, electron in rail 4, impurity) basis
//! ket `|s₃ s₄ s_imp⟩` has index `4·s₃ + 2·s₄ + s_imp`; a two-electron ket
//! `|s₃ s₄⟩` has index `2·s₃ + s₄`, i.e. `{↑↑, ↑↓, ↓↑, ↓↓}`.

mod eigen;
mod linalg;

pub use eigen::{
    general_eigenvalues_psd_product, hermitian_eigen, hermitian_eigenvalues, psd_sqrt,
    HermitianEigen, CLAMP_TOL, HERMITIAN_TOL, NEGATIVE_ERROR_TOL,
};
pub use linalg::{c, pauli, tensor, tensor_all, ComplexMatrix, ComplexVector, Kron, I, ONE, ZERO};

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance on `|M − M†|` entries of a stored density matrix.
pub const DENSITY_HERMITIAN_TOL: f64 = 1e-12;
/// Tolerance on the trace of a stored density matrix.
pub const DENSITY_TRACE_TOL: f64 = 1e-12;
/// Tolerance for "this input is normalized" checks on caller-supplied states.
pub const NORMALIZED_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    pub const BOTH: [Spin; 2] = [Spin::Up, Spin::Down];

    pub fn index(self) -> usize {
        match self {
            Spin::Up => 0,
            Spin::Down => 1,
        }
    }

    pub fn from_index(i: usize) -> Spin {
        match i {
            0 => Spin::Up,
            1 => Spin::Down,
            _ => panic!("spin index out of range: {i}"),
        }
    }

    pub fn flipped(self) -> Spin {
        match self {
            Spin::Up => Spin::Down,
            Spin::Down => Spin::Up,
        }
    }

    /// Pauli-z eigenvalue, +1 for up.
    pub fn sign(self) -> f64 {
        match self {
            Spin::Up => 1.0,
            Spin::Down => -1.0,
        }
    }

    pub fn ket(self) -> ComplexVector {
        ComplexVector::basis(2, self.index())
    }
}

/// Two-electron kets in the `{↑↑, ↑↓, ↓↑, ↓↓}` basis.
pub mod kets {
    use super::*;

    pub fn up_up() -> ComplexVector {
        ComplexVector::basis(4, 0)
    }

    pub fn down_down() -> ComplexVector {
        ComplexVector::basis(4, 3)
    }

    /// `(|↑↓⟩ + |↓↑⟩)/√2`
    pub fn psi_plus() -> ComplexVector {
        ComplexVector::new(vec![
            ZERO,
            c(FRAC_1_SQRT_2, 0.0),
            c(FRAC_1_SQRT_2, 0.0),
            ZERO,
        ])
        .unwrap()
    }

    /// `(|↑↓⟩ − |↓↑⟩)/√2`, the singlet.
    pub fn psi_minus() -> ComplexVector {
        ComplexVector::new(vec![
            ZERO,
            c(FRAC_1_SQRT_2, 0.0),
            c(-FRAC_1_SQRT_2, 0.0),
            ZERO,
        ])
        .unwrap()
    }
}

/// An 8-dimensional (electron₃ ⊗ electron₄ ⊗ impurity) spin state.
#[derive(Clone, Debug, PartialEq)]
pub struct JointState {
    vector: ComplexVector,
}

impl JointState {
    pub const DIM: usize = 8;

    pub fn new(vector: ComplexVector) -> Result<Self> {
        if vector.dim() != Self::DIM {
            return Err(Error::Dimension {
                expected: "8".into(),
                got: vector.dim().to_string(),
            });
        }
        Ok(Self { vector })
    }

    pub fn from_amplitudes(amps: [Complex64; 8]) -> Result<Self> {
        Self::new(ComplexVector::new(amps.to_vec())?)
    }

    pub fn index(s3: Spin, s4: Spin, imp: Spin) -> usize {
        4 * s3.index() + 2 * s4.index() + imp.index()
    }

    pub fn basis(s3: Spin, s4: Spin, imp: Spin) -> Self {
        Self {
            vector: ComplexVector::basis(8, Self::index(s3, s4, imp)),
        }
    }

    /// Basis state number `i` in the fixed ordering.
    pub fn basis_index(i: usize) -> Self {
        assert!(i < Self::DIM);
        Self {
            vector: ComplexVector::basis(8, i),
        }
    }

    /// `|electrons⟩ ⊗ |impurity⟩` from a 4-dim electron ket and a 2-dim impurity ket.
    pub fn product(electrons: &ComplexVector, impurity: &ComplexVector) -> Result<Self> {
        if electrons.dim() != 4 || impurity.dim() != 2 {
            return Err(Error::Dimension {
                expected: "4 ⊗ 2".into(),
                got: format!("{} ⊗ {}", electrons.dim(), impurity.dim()),
            });
        }
        Self::new(tensor(electrons, impurity))
    }

    pub fn vector(&self) -> &ComplexVector {
        &self.vector
    }

    pub fn amplitude(&self, s3: Spin, s4: Spin, imp: Spin) -> Complex64 {
        self.vector[Self::index(s3, s4, imp)]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.vector.norm_sqr()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.norm_sqr() - 1.0).abs() <= tol
    }

    pub fn normalize(&self) -> Result<Self> {
        Ok(Self {
            vector: self.vector.normalized()?,
        })
    }

    pub fn density(&self) -> ComplexMatrix {
        self.vector.outer(&self.vector)
    }

    /// Number of down spins among the three particles of a basis index.
    pub fn down_count(index: usize) -> u32 {
        (index as u32 & 0b111).count_ones()
    }
}

fn validate_density(m: &ComplexMatrix, dim: usize) -> Result<()> {
    if m.rows() != dim || m.cols() != dim {
        return Err(Error::Dimension {
            expected: format!("{dim}x{dim}"),
            got: format!("{}x{}", m.rows(), m.cols()),
        });
    }
    let herm = m.hermiticity_error();
    if herm > DENSITY_HERMITIAN_TOL {
        return Err(Error::NotHermitian(herm));
    }
    let tr = m.trace();
    if (tr.re - 1.0).abs() > DENSITY_TRACE_TOL || tr.im.abs() > DENSITY_TRACE_TOL {
        return Err(Error::InvalidTrace(tr.re));
    }
    let min = *hermitian_eigenvalues(m)?.last().unwrap();
    if min < -CLAMP_TOL {
        return Err(Error::NotPsd(min));
    }
    Ok(())
}

/// Symmetrize and renormalize a matrix produced by arithmetic that is exact
/// up to roundoff, then validate it.
fn tidy_density(m: &ComplexMatrix, dim: usize) -> Result<ComplexMatrix> {
    let h = m.hermitian_part();
    let tr = h.trace().re;
    if tr <= 0.0 || !tr.is_finite() {
        return Err(Error::InvalidTrace(tr));
    }
    let out = h.scale(c(1.0 / tr, 0.0));
    validate_density(&out, dim)?;
    Ok(out)
}

/// A 4×4 density matrix over the spins of the electrons in rails 3 and 4.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoQubitDensity {
    matrix: ComplexMatrix,
}

impl TwoQubitDensity {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        validate_density(&matrix, 4)?;
        Ok(Self { matrix })
    }

    /// Like [`new`](Self::new) but first projects onto the Hermitian part and
    /// divides by the trace. For matrices known to be densities up to roundoff.
    pub fn from_unnormalized(matrix: &ComplexMatrix) -> Result<Self> {
        Ok(Self {
            matrix: tidy_density(matrix, 4)?,
        })
    }

    /// `|ψ⟩⟨ψ|` for a normalized two-electron ket.
    pub fn pure(ket: &ComplexVector) -> Result<Self> {
        if ket.dim() != 4 {
            return Err(Error::Dimension {
                expected: "4".into(),
                got: ket.dim().to_string(),
            });
        }
        let n = ket.norm_sqr();
        if (n - 1.0).abs() > NORMALIZED_TOL {
            return Err(Error::NotNormalized(n));
        }
        Self::from_unnormalized(&ket.outer(ket))
    }

    pub fn maximally_mixed() -> Self {
        Self {
            matrix: ComplexMatrix::identity(4).scale(c(0.25, 0.0)),
        }
    }

    /// Convex combination `Σ wᵢ ρᵢ`; weights must be nonnegative and sum to 1.
    pub fn mixture(parts: &[(f64, &TwoQubitDensity)]) -> Result<Self> {
        let total: f64 = parts.iter().map(|(w, _)| w).sum();
        if parts.iter().any(|(w, _)| *w < 0.0 || !w.is_finite()) || (total - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidEnsemble(format!(
                "weights must be nonnegative and sum to 1 (sum {total})"
            )));
        }
        let mut acc = ComplexMatrix::zeros(4, 4);
        for (w, rho) in parts {
            acc = &acc + &rho.matrix.scale(c(*w, 0.0));
        }
        Self::from_unnormalized(&acc)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.matrix[(i, j)]
    }

    /// `⟨ψ|ρ|ψ⟩` for a two-electron ket.
    pub fn expectation_in(&self, ket: &ComplexVector) -> f64 {
        ket.inner(&self.matrix.apply(ket)).re
    }

    /// `Tr(ρ O)` for a 4×4 observable.
    pub fn expectation(&self, observable: &ComplexMatrix) -> Complex64 {
        (&self.matrix * observable).trace()
    }

    pub fn eigenvalues(&self) -> [f64; 4] {
        let v = hermitian_eigenvalues(&self.matrix).expect("validated density is Hermitian");
        [v[0], v[1], v[2], v[3]]
    }
}

/// A 2×2 density matrix for the impurity spin.
#[derive(Clone, Debug, PartialEq)]
pub struct QubitDensity {
    matrix: ComplexMatrix,
}

impl QubitDensity {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        validate_density(&matrix, 2)?;
        Ok(Self { matrix })
    }

    pub fn pure(spin: Spin) -> Self {
        let k = spin.ket();
        Self {
            matrix: k.outer(&k),
        }
    }

    pub fn maximally_mixed() -> Self {
        Self {
            matrix: ComplexMatrix::identity(2).scale(c(0.5, 0.0)),
        }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Eigen-ensemble `{(pᵢ, |χᵢ⟩)}` with zero-weight components dropped.
    pub fn pure_components(&self) -> Vec<(f64, ComplexVector)> {
        let eig = hermitian_eigen(&self.matrix).expect("validated density is Hermitian");
        eig.values
            .iter()
            .enumerate()
            .filter(|(_, &p)| p > CLAMP_TOL)
            .map(|(k, &p)| {
                let v = ComplexVector::new(vec![eig.vectors[(0, k)], eig.vectors[(1, k)]]).unwrap();
                (p, v)
            })
            .collect()
    }
}

/// Reduced electron-spin density of a normalized joint pure state.
pub fn partial_trace_impurity(state: &JointState) -> Result<TwoQubitDensity> {
    let n = state.norm_sqr();
    if (n - 1.0).abs() > NORMALIZED_TOL {
        return Err(Error::NotNormalized(n));
    }
    let v = state.vector();
    let m = ComplexMatrix::from_fn(4, 4, |i, j| {
        (0..2).map(|k| v[2 * i + k] * v[2 * j + k].conj()).sum()
    });
    TwoQubitDensity::from_unnormalized(&m)
}

/// Reduced electron-spin density of a unit-trace 8×8 joint density matrix.
pub fn partial_trace_impurity_mixed(rho: &ComplexMatrix) -> Result<TwoQubitDensity> {
    if rho.rows() != 8 || rho.cols() != 8 {
        return Err(Error::Dimension {
            expected: "8x8".into(),
            got: format!("{}x{}", rho.rows(), rho.cols()),
        });
    }
    let tr = rho.trace();
    if (tr.re - 1.0).abs() > NORMALIZED_TOL || tr.im.abs() > NORMALIZED_TOL {
        return Err(Error::NotNormalized(tr.re));
    }
    let m = ComplexMatrix::from_fn(4, 4, |i, j| {
        (0..2).map(|k| rho[(2 * i + k, 2 * j + k)]).sum()
    });
    TwoQubitDensity::from_unnormalized(&m)
}
