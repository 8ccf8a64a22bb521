//! First-order exchange scattering of two spin-up electrons off a localized
//! impurity spin.
//!
//! Both electrons are at the Fermi level in single-channel rails, so the
//! only degrees of freedom are the three spins. To first order the
//! scattering operator is `1 + i𝑱·K` with the Born kernel
//!
//! ```text
//! K = −(1 + τ⃗·(σ⃗₃ + σ⃗₄))
//! ```
//!
//! where `τ⃗` acts on the impurity and `σ⃗ₗ` on the electron leaving through
//! rail `l`, all with Pauli normalization. On `|↑↑⟩⊗|↓⟩` this gives
//! `(1+i𝑱)|↑↑⟩⊗|↓⟩ − 2√2·i𝑱|ψ⁺⟩⊗|↑⟩`; triplet electron states pick up a
//! squared norm `1 + 9𝑱²` and the singlet `1 + 𝑱²`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spinspace::{
    c, hermitian_eigen, partial_trace_impurity, partial_trace_impurity_mixed, pauli, tensor_all,
    ComplexMatrix, ComplexVector, HermitianEigen, JointState, QubitDensity, Spin, TwoQubitDensity,
    NORMALIZED_TOL, ONE,
};

/// Dimensionless scattering strength `𝑱 = π·J·ρ(ε_F)`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Coupling(f64);

impl Coupling {
    pub const ZERO: Coupling = Coupling(0.0);

    pub fn new(jbold: f64) -> Result<Self> {
        if !jbold.is_finite() || jbold < 0.0 {
            return Err(Error::InvalidCoupling(jbold));
        }
        Ok(Self(jbold))
    }

    /// `π · j_exchange · rho_fermi`, from the exchange energy per atom and the
    /// Fermi-level density of states (in reciprocal units of the same energy).
    pub fn from_parameters(j_exchange: f64, rho_fermi: f64) -> Result<Self> {
        for (name, value) in [("j_exchange", j_exchange), ("rho_fermi", rho_fermi)] {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::NegativeParameter { name, value });
            }
        }
        Self::new(PI * j_exchange * rho_fermi)
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Free-function alias of [`Coupling::from_parameters`].
pub fn coupling_from_parameters(j_exchange: f64, rho_fermi: f64) -> Result<Coupling> {
    Coupling::from_parameters(j_exchange, rho_fermi)
}

/// Initial state of the impurity spin.
#[derive(Clone, Debug, PartialEq)]
pub enum ImpurityPreparation {
    Down,
    Up,
    /// `I/2`.
    Random,
    Explicit(QubitDensity),
}

impl ImpurityPreparation {
    pub fn density(&self) -> QubitDensity {
        match self {
            Self::Down => QubitDensity::pure(Spin::Down),
            Self::Up => QubitDensity::pure(Spin::Up),
            Self::Random => QubitDensity::maximally_mixed(),
            Self::Explicit(rho) => rho.clone(),
        }
    }

    /// The prepared spin for definite preparations.
    pub fn definite_spin(&self) -> Option<Spin> {
        match self {
            Self::Down => Some(Spin::Down),
            Self::Up => Some(Spin::Up),
            _ => None,
        }
    }

    fn pure_components(&self) -> Vec<(f64, ComplexVector)> {
        match self {
            Self::Down => vec![(1.0, Spin::Down.ket())],
            Self::Up => vec![(1.0, Spin::Up.ket())],
            Self::Random => vec![(0.5, Spin::Up.ket()), (0.5, Spin::Down.ket())],
            Self::Explicit(rho) => rho.pure_components(),
        }
    }
}

/// Result of scattering the spin-filtered `|↑↑⟩` pair.
#[derive(Clone, Debug)]
pub struct ScatterOutcome {
    /// Normalized final joint state for each pure impurity component, with its weight.
    pub components: Vec<(f64, JointState)>,
    /// Electron state with the impurity traced out.
    pub unconditional: TwoQubitDensity,
    /// Probability that an impurity `S_z` measurement disagrees with the
    /// prepared value. `None` unless the preparation is definite.
    pub flip_probability: Option<f64>,
    /// Electron state given a flipped impurity. `None` if undefined or the
    /// flip probability vanishes.
    pub conditional_on_flip: Option<TwoQubitDensity>,
    pub conditional_on_no_flip: Option<TwoQubitDensity>,
}

fn kernel_cell() -> &'static ComplexMatrix {
    static KERNEL: OnceLock<ComplexMatrix> = OnceLock::new();
    KERNEL.get_or_init(|| {
        let id = pauli::identity();
        let mut dot = ComplexMatrix::zeros(8, 8);
        for sigma in [pauli::x(), pauli::y(), pauli::z()] {
            let on_3 = tensor_all(&[sigma.clone(), id.clone(), sigma.clone()]);
            let on_4 = tensor_all(&[id.clone(), sigma.clone(), sigma.clone()]);
            dot = &(&dot + &on_3) + &on_4;
        }
        (&ComplexMatrix::identity(8) + &dot).scale(-ONE)
    })
}

fn kernel_eigen() -> &'static HermitianEigen {
    static EIGEN: OnceLock<HermitianEigen> = OnceLock::new();
    EIGEN.get_or_init(|| hermitian_eigen(kernel_cell()).expect("Born kernel is Hermitian"))
}

/// The 8×8 Born kernel `K = −(1 + τ⃗·(σ⃗₃ + σ⃗₄))` in the fixed joint basis.
pub fn born_kernel() -> ComplexMatrix {
    kernel_cell().clone()
}

/// `(1 + i𝑱K)|ψ⟩` before normalization, for an arbitrary kernel.
pub fn apply_first_order(kernel: &ComplexMatrix, j: Coupling, state: &JointState) -> JointState {
    let kpsi = kernel.apply(state.vector());
    let out = state.vector() + &kpsi.scale(c(0.0, j.value()));
    JointState::new(out).expect("kernel preserves dimension")
}

fn require_normalized(state: &JointState) -> Result<()> {
    if !state.is_normalized(NORMALIZED_TOL) {
        return Err(Error::NotNormalized(state.norm_sqr()));
    }
    Ok(())
}

/// Normalized first-order scattered state `(1 + i𝑱K)|ψ⟩ / ‖·‖`, using the
/// supplied kernel. Used by the verification suite to probe perturbed kernels.
pub fn scatter_with_kernel(
    kernel: &ComplexMatrix,
    j: Coupling,
    state: &JointState,
) -> Result<JointState> {
    require_normalized(state)?;
    let raw = apply_first_order(kernel, j, state);
    raw.normalize()
}

/// Normalized first-order scattered state `(1 + i𝑱K)|ψ⟩ / ‖·‖`.
pub fn scatter(j: Coupling, state: &JointState) -> Result<JointState> {
    require_normalized(state)?;
    let raw = apply_first_order(kernel_cell(), j, state);
    // ‖(1 + i𝑱K)ψ‖² = 1 + 𝑱²⟨K²⟩ since K is Hermitian
    debug_assert!(raw.norm_sqr() >= state.norm_sqr() - 1e-12);
    raw.normalize()
}

/// `exp(i𝑱K)|ψ⟩` via the spectral decomposition of `K`. Exactly
/// norm-preserving; agrees with [`scatter`] to first order in `𝑱`.
pub fn unitary_probe(j: Coupling, state: &JointState) -> Result<JointState> {
    require_normalized(state)?;
    let u = kernel_eigen().map_spectrum(|k| Complex64::from_polar(1.0, j.value() * k));
    JointState::new(u.apply(state.vector()))
}

/// The impurity-spin projector `|s⟩⟨s|` lifted to the joint space.
fn impurity_projector(spin: Spin) -> ComplexMatrix {
    let k = spin.ket();
    tensor_all(&[ComplexMatrix::identity(4), k.outer(&k)])
}

fn conditional(state: &JointState, spin: Spin) -> (f64, Option<TwoQubitDensity>) {
    let projected = JointState::new(impurity_projector(spin).apply(state.vector())).unwrap();
    let p = projected.norm_sqr();
    if p <= 1e-15 {
        return (p, None);
    }
    let rho = projected
        .normalize()
        .and_then(|s| partial_trace_impurity(&s))
        .ok();
    (p, rho)
}

/// Scatter the spin-filtered `|↑↑⟩` pair off an impurity prepared in `prep`.
pub fn scatter_full(j: Coupling, prep: &ImpurityPreparation) -> Result<ScatterOutcome> {
    let up_up = crate::spinspace::kets::up_up();
    let mut components = Vec::new();
    let mut joint = ComplexMatrix::zeros(8, 8);
    for (weight, imp) in prep.pure_components() {
        let input = JointState::product(&up_up, &imp)?;
        let out = scatter(j, &input)?;
        joint = &joint + &out.density().scale(c(weight, 0.0));
        components.push((weight, out));
    }
    let unconditional = partial_trace_impurity_mixed(&joint)?;

    let (flip_probability, conditional_on_flip, conditional_on_no_flip) = match prep.definite_spin()
    {
        Some(prepared) => {
            let state = &components[0].1;
            let (p_flip, on_flip) = conditional(state, prepared.flipped());
            let (_, on_no_flip) = conditional(state, prepared);
            (Some(p_flip.clamp(0.0, 1.0)), on_flip, on_no_flip)
        }
        None => (None, None, None),
    };

    Ok(ScatterOutcome {
        components,
        unconditional,
        flip_probability,
        conditional_on_flip,
        conditional_on_no_flip,
    })
}

/// Closed-form weights of `|↑↑⟩⟨↑↑|` and `|ψ⁺⟩⟨ψ⁺|` in the unconditional
/// electron state for a down-prepared impurity.
pub fn lambda_weights(j: f64) -> (f64, f64) {
    let d = 1.0 + 9.0 * j * j;
    ((1.0 + j * j) / d, 8.0 * j * j / d)
}

/// Closed-form weights for a completely random impurity.
pub fn lambda_prime_weights(j: f64) -> (f64, f64) {
    let d = 1.0 + 9.0 * j * j;
    ((1.0 + 5.0 * j * j) / d, 4.0 * j * j / d)
}

/// `w_↑↑·|↑↑⟩⟨↑↑| + w_ψ⁺·|ψ⁺⟩⟨ψ⁺|`, built directly without scattering.
pub fn aligned_triplet_mixture(w_up_up: f64, w_psi_plus: f64) -> Result<TwoQubitDensity> {
    use crate::spinspace::kets;
    let a = TwoQubitDensity::pure(&kets::up_up())?;
    let b = TwoQubitDensity::pure(&kets::psi_plus())?;
    TwoQubitDensity::mixture(&[(w_up_up, &a), (w_psi_plus, &b)])
}
