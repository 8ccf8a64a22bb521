use num_complex::Complex64;

use crate::spinspace::{c, tensor_all, ComplexMatrix, JointState, Spin, ONE, ZERO};

/// Affine calibration `scale·T + offset·1` applied to the assembled operator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Calibration {
    pub scale: Complex64,
    /// Spin-independent shift.
    pub offset: Complex64,
}

impl Calibration {
    pub const IDENTITY: Calibration = Calibration {
        scale: ONE,
        offset: ZERO,
    };
}

/// Explicit 2×2 matrices for the operators in the exchange T-matrix
/// `Σ_l [S⁺ς_l⁻ + S⁻ς_l⁺ + S_z(n↑ − n↓)_l]`, plus a calibration.
#[derive(Clone, Debug, PartialEq)]
pub struct LadderOperatorSpec {
    pub impurity_raise: ComplexMatrix,
    pub impurity_lower: ComplexMatrix,
    pub impurity_z: ComplexMatrix,
    /// `ς⁺ = a†↑ a↓` on one electron.
    pub electron_raise: ComplexMatrix,
    /// `ς⁻ = a†↓ a↑`.
    pub electron_lower: ComplexMatrix,
    /// `a†↑a↑ − a†↓a↓`.
    pub electron_number_difference: ComplexMatrix,
    pub calibration: Calibration,
}

fn m2(a: f64, b: f64, c_: f64, d: f64) -> ComplexMatrix {
    ComplexMatrix::from_rows(&[[c(a, 0.0), c(b, 0.0)], [c(c_, 0.0), c(d, 0.0)]]).unwrap()
}

impl LadderOperatorSpec {
    /// Spin-½ impurity (`S_z = ±½`, `S^± = S_x ± iS_y`) and single-electron
    /// fermion bilinears, with the identity calibration.
    pub fn spin_half_uncalibrated() -> Self {
        Self {
            impurity_raise: m2(0.0, 1.0, 0.0, 0.0),
            impurity_lower: m2(0.0, 0.0, 1.0, 0.0),
            impurity_z: m2(0.5, 0.0, 0.0, -0.5),
            electron_raise: m2(0.0, 1.0, 0.0, 0.0),
            electron_lower: m2(0.0, 0.0, 1.0, 0.0),
            electron_number_difference: m2(1.0, 0.0, 0.0, -1.0),
            calibration: Calibration::IDENTITY,
        }
    }

    /// Spin-½ conventions with the calibration fitted by [`fit_calibration`].
    pub fn spin_half() -> Self {
        let mut spec = Self::spin_half_uncalibrated();
        spec.calibration = fit_calibration(&spec);
        spec
    }

    pub fn zero() -> Self {
        let z = ComplexMatrix::zeros(2, 2);
        Self {
            impurity_raise: z.clone(),
            impurity_lower: z.clone(),
            impurity_z: z.clone(),
            electron_raise: z.clone(),
            electron_lower: z.clone(),
            electron_number_difference: z,
            calibration: Calibration {
                scale: ZERO,
                offset: ZERO,
            },
        }
    }
}

fn uncalibrated(spec: &LadderOperatorSpec) -> ComplexMatrix {
    let id = ComplexMatrix::identity(2);
    let mut t = ComplexMatrix::zeros(8, 8);
    let pairs = [
        (&spec.impurity_raise, &spec.electron_lower),
        (&spec.impurity_lower, &spec.electron_raise),
        (&spec.impurity_z, &spec.electron_number_difference),
    ];
    for (imp, el) in pairs {
        // factor order: electron 3, electron 4, impurity
        let on_3 = tensor_all(&[el.clone(), id.clone(), imp.clone()]);
        let on_4 = tensor_all(&[id.clone(), el.clone(), imp.clone()]);
        t = &(&t + &on_3) + &on_4;
    }
    t
}

/// Build the 8×8 T-matrix from the explicit operators of a [`LadderOperatorSpec`] by tensor
/// products in the joint basis, then apply the calibration.
pub fn assemble_t_matrix(spec: &LadderOperatorSpec) -> ComplexMatrix {
    let t = uncalibrated(spec);
    let cal = spec.calibration;
    &t.scale(cal.scale) + &ComplexMatrix::identity(8).scale(cal.offset)
}

/// Fit `(scale, offset)` so that `(1 + i𝑱T)|↑↑↓⟩ = (1 + i𝑱)|↑↑↓⟩ −
/// 2i𝑱(|↑↓↑⟩ + |↓↑↑⟩)` for every `𝑱`, i.e. the diagonal element of `T` on
/// the injected state is 1 and the spin-flip element is −2.
pub fn fit_calibration(spec: &LadderOperatorSpec) -> Calibration {
    let t = uncalibrated(spec);
    let input = JointState::index(Spin::Up, Spin::Up, Spin::Down);
    let flipped = JointState::index(Spin::Up, Spin::Down, Spin::Up);
    let diag = t[(input, input)];
    let flip = t[(flipped, input)];
    let scale = c(-2.0, 0.0) / flip;
    Calibration {
        scale,
        offset: ONE - scale * diag,
    }
}
