//! Eigenvalues of small Hermitian matrices by cyclic complex Jacobi sweeps.
//!
//! Each rotation first removes the phase of the pivot `h_pq`, then applies
//! the real symmetric Jacobi rotation that zeroes it. For the 2×2 to 8×8
//! matrices used here a handful of sweeps reaches machine precision.

use num_complex::Complex64;

use super::linalg::{c, ComplexMatrix, ZERO};
use super::TwoQubitDensity;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 64;

/// Input to the eigen-solvers must be Hermitian to this tolerance.
pub const HERMITIAN_TOL: f64 = 1e-10;
/// Density matrices may carry eigenvalues down to `-CLAMP_TOL` from roundoff.
pub const CLAMP_TOL: f64 = 1e-10;
/// Derived spectra (square roots, products) clamp negatives above
/// `-NEGATIVE_ERROR_TOL` to zero and reject anything lower.
pub const NEGATIVE_ERROR_TOL: f64 = 1e-8;

/// Spectral decomposition `m = V · diag(values) · V†`.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    /// Real eigenvalues, descending.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors as columns, in the order of `values`.
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    /// `V · diag(f(values)) · V†`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> Complex64) -> ComplexMatrix {
        let n = self.values.len();
        let v = &self.vectors;
        ComplexMatrix::from_fn(n, n, |i, j| {
            (0..n)
                .map(|k| v[(i, k)] * f(self.values[k]) * v[(j, k)].conj())
                .sum()
        })
    }
}

fn check_hermitian(m: &ComplexMatrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::NotSquare(m.rows(), m.cols()));
    }
    let err = m.hermiticity_error();
    let scale = m.max_abs().max(1.0);
    if err > HERMITIAN_TOL * scale {
        return Err(Error::NotHermitian(err));
    }
    Ok(())
}

/// Full eigendecomposition of a Hermitian matrix.
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<HermitianEigen> {
    check_hermitian(m)?;
    let n = m.rows();
    let mut h = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);

    let frob: f64 = h
        .as_slice()
        .iter()
        .map(|z| z.norm_sqr())
        .sum::<f64>()
        .sqrt();
    let threshold = (f64::EPSILON * frob.max(f64::MIN_POSITIVE)).powi(2);

    let mut converged = n == 1;
    for _ in 0..MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| h[(i, j)].norm_sqr())
            .sum();
        if off <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut h, &mut v, p, q);
            }
        }
    }
    if !converged {
        return Err(Error::NoConvergence(MAX_SWEEPS));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| h[(b, b)].re.total_cmp(&h[(a, a)].re));
    let values = order.iter().map(|&k| h[(k, k)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok(HermitianEigen { values, vectors })
}

fn rotate(h: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let hpq = h[(p, q)];
    let abs = hpq.norm();
    if abs < 1e-300 {
        return;
    }
    let n = h.rows();
    let phase = hpq / abs;
    let app = h[(p, p)].re;
    let aqq = h[(q, q)].re;

    let tau = (aqq - app) / (2.0 * abs);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let cs = 1.0 / (1.0 + t * t).sqrt();
    let sn = t * cs;

    // U restricted to (p, q): [[c, s], [-s e^{-iφ}, c e^{-iφ}]]
    let u_pp = c(cs, 0.0);
    let u_pq = c(sn, 0.0);
    let u_qp = -phase.conj() * sn;
    let u_qq = phase.conj() * cs;

    // H <- H U
    for k in 0..n {
        let (hkp, hkq) = (h[(k, p)], h[(k, q)]);
        h[(k, p)] = hkp * u_pp + hkq * u_qp;
        h[(k, q)] = hkp * u_pq + hkq * u_qq;
    }
    // H <- U† H
    for k in 0..n {
        let (hpk, hqk) = (h[(p, k)], h[(q, k)]);
        h[(p, k)] = u_pp.conj() * hpk + u_qp.conj() * hqk;
        h[(q, k)] = u_pq.conj() * hpk + u_qq.conj() * hqk;
    }
    h[(p, q)] = ZERO;
    h[(q, p)] = ZERO;
    h[(p, p)] = c(h[(p, p)].re, 0.0);
    h[(q, q)] = c(h[(q, q)].re, 0.0);

    // V <- V U
    for k in 0..n {
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = vkp * u_pp + vkq * u_qp;
        v[(k, q)] = vkp * u_pq + vkq * u_qq;
    }
}

/// Real eigenvalues of a Hermitian matrix, descending.
pub fn hermitian_eigenvalues(m: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(hermitian_eigen(m)?.values)
}

/// Principal square root of a PSD Hermitian matrix. Slightly negative
/// eigenvalues (roundoff) are treated as zero.
pub fn psd_sqrt(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eigen(m)?;
    if let Some(&min) = eig.values.last() {
        if min < -NEGATIVE_ERROR_TOL {
            return Err(Error::NotPsd(min));
        }
    }
    Ok(eig.map_spectrum(|x| c(x.max(0.0).sqrt(), 0.0)))
}

/// Eigenvalues of the product `a · b` of two density matrices, descending.
///
/// The product is not Hermitian, but it is similar to `√a · b · √a`, which
/// is Hermitian and PSD, so its spectrum is real and nonnegative.
pub fn general_eigenvalues_psd_product(
    a: &TwoQubitDensity,
    b: &TwoQubitDensity,
) -> Result<[f64; 4]> {
    let root = psd_sqrt(a.matrix())?;
    let sandwich = &(&root * b.matrix()) * &root;
    let values = hermitian_eigenvalues(&sandwich.hermitian_part())?;
    let mut out = [0.0; 4];
    for (slot, &x) in out.iter_mut().zip(&values) {
        if x < -NEGATIVE_ERROR_TOL {
            return Err(Error::NotPsd(x));
        }
        *slot = x.max(0.0);
    }
    Ok(out)
}
