//! Single-shot reports for `scatter` and `detect`, rendered as text or JSON.

use std::fmt::{self, Write as _};

use kondo_core::detection::{two_fermion_transform, BeamSplitter};
use kondo_core::sweep::format_significant;
use kondo_core::{
    entanglement_of_formation, noiseless_witness, scatter_full, Coupling, ImpurityPreparation,
    JointState, Result,
};
use serde::Serialize;

const DIGITS: usize = 12;

const ARROWS: [&str; 2] = ["↑", "↓"];

/// Joint basis labels `|s3 s4 imp⟩` in index order.
pub fn joint_basis_labels() -> Vec<String> {
    (0..JointState::DIM)
        .map(|i| {
            format!(
                "{}{}{}",
                ARROWS[(i >> 2) & 1],
                ARROWS[(i >> 1) & 1],
                ARROWS[i & 1]
            )
        })
        .collect()
}

pub fn electron_basis_labels() -> Vec<String> {
    (0..4)
        .map(|i| format!("{}{}", ARROWS[(i >> 1) & 1], ARROWS[i & 1]))
        .collect()
}

fn num(v: f64) -> String {
    format_significant(v, DIGITS)
}

fn complex(re: f64, im: f64) -> String {
    let sign = if im < 0.0 { '-' } else { '+' };
    format!("{} {} {}i", num(re), sign, num(im.abs()))
}

fn opt(v: Option<f64>) -> String {
    v.map(num).unwrap_or_else(|| "undefined".to_string())
}

#[derive(Debug, Serialize)]
pub struct Component {
    pub weight: f64,
    /// `[re, im]` per joint basis state.
    pub amplitudes: Vec<[f64; 2]>,
}

#[derive(Debug, Serialize)]
pub struct ScatterReport {
    pub jbold: f64,
    pub impurity: &'static str,
    pub joint_basis: Vec<String>,
    pub components: Vec<Component>,
    pub electron_basis: Vec<String>,
    /// Row-major `[re, im]` entries of the two-electron density.
    pub electron_density: Vec<Vec<[f64; 2]>>,
    pub flip_probability: Option<f64>,
    pub concurrence: f64,
    pub eof: f64,
}

impl ScatterReport {
    pub fn compute(j: f64, impurity: &'static str, prep: &ImpurityPreparation) -> Result<Self> {
        let out = scatter_full(Coupling::new(j)?, prep)?;
        let ent = entanglement_of_formation(&out.unconditional)?;
        let components = out
            .components
            .iter()
            .map(|(w, s)| Component {
                weight: *w,
                amplitudes: s.vector().as_slice().iter().map(|a| [a.re, a.im]).collect(),
            })
            .collect();
        let rho = out.unconditional.matrix();
        let electron_density = (0..4)
            .map(|r| (0..4).map(|c| [rho[(r, c)].re, rho[(r, c)].im]).collect())
            .collect();
        Ok(Self {
            jbold: j,
            impurity,
            joint_basis: joint_basis_labels(),
            components,
            electron_basis: electron_basis_labels(),
            electron_density,
            flip_probability: out.flip_probability,
            concurrence: ent.concurrence,
            eof: ent.eof,
        })
    }
}

impl fmt::Display for ScatterReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "jbold: {}", num(self.jbold))?;
        writeln!(f, "impurity: {}", self.impurity)?;
        for (k, comp) in self.components.iter().enumerate() {
            writeln!(f, "component {k} weight: {}", num(comp.weight))?;
            for (label, [re, im]) in self.joint_basis.iter().zip(&comp.amplitudes) {
                writeln!(f, "  |{label}⟩ {}", complex(*re, *im))?;
            }
        }
        let header = self.electron_basis.iter().fold(String::new(), |mut s, l| {
            let _ = write!(s, " {l:>28}");
            s
        });
        writeln!(f, "electron density:{header}")?;
        for (label, row) in self.electron_basis.iter().zip(&self.electron_density) {
            write!(f, "{:<17}", format!("  {label}"))?;
            for [re, im] in row {
                write!(f, " {:>28}", complex(*re, *im))?;
            }
            writeln!(f)?;
        }
        writeln!(f, "flip_probability: {}", opt(self.flip_probability))?;
        writeln!(f, "concurrence: {}", num(self.concurrence))?;
        write!(f, "eof: {}", num(self.eof))
    }
}

#[derive(Debug, Serialize)]
pub struct DetectReport {
    pub jbold: f64,
    pub impurity: &'static str,
    pub p_55: f64,
    pub p_66: f64,
    pub p_56: f64,
    pub bunching: f64,
    /// `None` when no pair splits.
    pub sz_correlation: Option<f64>,
    pub verdict: String,
}

impl DetectReport {
    pub fn compute(j: f64, impurity: &'static str, prep: &ImpurityPreparation) -> Result<Self> {
        let out = scatter_full(Coupling::new(j)?, prep)?;
        let dist = two_fermion_transform(&BeamSplitter::balanced(), &out.unconditional)?;
        let witness = noiseless_witness(&out.unconditional)?;
        Ok(Self {
            jbold: j,
            impurity,
            p_55: dist.p_55,
            p_66: dist.p_66,
            p_56: dist.p_56,
            bunching: witness.bunching,
            sz_correlation: witness.correlation,
            verdict: witness.verdict.as_str().to_string(),
        })
    }
}

impl fmt::Display for DetectReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "jbold: {}", num(self.jbold))?;
        writeln!(f, "impurity: {}", self.impurity)?;
        writeln!(f, "p_55: {}", num(self.p_55))?;
        writeln!(f, "p_66: {}", num(self.p_66))?;
        writeln!(f, "p_56: {}", num(self.p_56))?;
        writeln!(f, "bunching: {}", num(self.bunching))?;
        writeln!(f, "sz_correlation: {}", opt(self.sz_correlation))?;
        write!(f, "verdict: {}", self.verdict)
    }
}
