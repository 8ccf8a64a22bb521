//! Two-fermion beam-splitter outcomes by literal creation-operator algebra.
//!
//! Each input creation operator is replaced by its image `Σ_i U_ik c†_i`,
//! the product is expanded term by term, and every term is brought to
//! normal order with the anticommutation sign. Nothing here uses the
//! exterior-power shortcut of the detection module.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::detection::{BeamSplitter, OutcomeDistribution};
use crate::error::Result;
use crate::spinspace::{c, ComplexMatrix, TwoQubitDensity, ZERO};

/// A linear combination of single creation operators, `Σ (mode, amplitude)`.
pub type Creation = Vec<(usize, Complex64)>;

/// Sort a string of creation operators into ascending mode order.
/// Returns the permutation sign, or `None` if a mode repeats (`c†c† = 0`).
pub fn normal_order(modes: &[usize]) -> Option<(f64, Vec<usize>)> {
    let mut v = modes.to_vec();
    let mut sign = 1.0;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] == v[j + 1] {
                return None;
            }
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((sign, v))
}

/// Expand `Π_k (Σ_i a_ki c†_i) |0⟩` into normal-ordered Fock basis terms.
pub fn expand_product(factors: &[Creation]) -> BTreeMap<Vec<usize>, Complex64> {
    let mut terms: Vec<(Vec<usize>, Complex64)> = vec![(Vec::new(), c(1.0, 0.0))];
    for factor in factors {
        let mut next = Vec::with_capacity(terms.len() * factor.len());
        for (modes, amp) in &terms {
            for &(m, a) in factor {
                if a == ZERO {
                    continue;
                }
                let mut s = modes.clone();
                s.push(m);
                next.push((s, amp * a));
            }
        }
        terms = next;
    }
    let mut out = BTreeMap::new();
    for (modes, amp) in terms {
        if let Some((sign, sorted)) = normal_order(&modes) {
            *out.entry(sorted).or_insert(ZERO) += amp * sign;
        }
    }
    out
}

/// Output modes `(lead, spin)`: 5↑ = 0, 5↓ = 1, 6↑ = 2, 6↓ = 3.
fn out_mode(lead: usize, spin: usize) -> usize {
    2 * lead + spin
}

/// Image of the input creation operator for (rail `3 + rail`, spin).
fn transformed(bs: &BeamSplitter, rail: usize, spin: usize) -> Creation {
    let s = bs.matrix();
    (0..2)
        .map(|lead| (out_mode(lead, spin), s[(lead, rail)]))
        .collect()
}

/// Outcome distribution computed by operator expansion.
pub fn brute_force_two_fermion(
    bs: &BeamSplitter,
    spin_in: &TwoQubitDensity,
) -> Result<OutcomeDistribution> {
    // Fock amplitudes for each input spin basis state c†_{3a} c†_{4b}|0⟩
    let mut columns: Vec<BTreeMap<Vec<usize>, Complex64>> = Vec::with_capacity(4);
    for a in 0..2 {
        for b in 0..2 {
            columns.push(expand_product(&[
                transformed(bs, 0, a),
                transformed(bs, 1, b),
            ]));
        }
    }
    let amp = |fock: &[usize], col: usize| columns[col].get(fock).copied().unwrap_or(ZERO);
    let rho = spin_in.matrix();
    let population = |fock: &[usize]| -> Complex64 {
        let mut acc = ZERO;
        for x in 0..4 {
            for y in 0..4 {
                acc += amp(fock, x) * rho[(x, y)] * amp(fock, y).conj();
            }
        }
        acc
    };

    let both_5 = [out_mode(0, 0), out_mode(0, 1)];
    let both_6 = [out_mode(1, 0), out_mode(1, 1)];
    let p_55 = population(&both_5).re.max(0.0);
    let p_66 = population(&both_6).re.max(0.0);

    let split = |idx: usize| [out_mode(0, idx / 2), out_mode(1, idx % 2)];
    let mut block = ComplexMatrix::zeros(4, 4);
    for r in 0..4 {
        for s in 0..4 {
            let (fr, fs) = (split(r), split(s));
            let mut acc = ZERO;
            for x in 0..4 {
                for y in 0..4 {
                    acc += amp(&fr, x) * rho[(x, y)] * amp(&fs, y).conj();
                }
            }
            block[(r, s)] = acc;
        }
    }
    let p_56: f64 = (0..4).map(|k| block[(k, k)].re.max(0.0)).sum();
    let conditional_spin_56 = if p_56 > crate::detection::MIN_ANTIBUNCHED {
        Some(TwoQubitDensity::from_unnormalized(&block)?)
    } else {
        None
    };
    Ok(OutcomeDistribution {
        p_55,
        p_66,
        p_56,
        conditional_spin_56,
    })
}
