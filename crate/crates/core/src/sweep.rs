//! Coupling sweeps: the entanglement-versus-𝑱 curves for a definite and a
//! completely random impurity, with detection observables alongside.

use std::io::{self, Write};

use crate::detection::{bunching_probability, spin_correlation_z, BeamSplitter};
use crate::entanglement::entanglement_of_formation;
use crate::error::{Error, Result};
use crate::scattering::{scatter_full, Coupling, ImpurityPreparation};

pub const CSV_HEADER: &str =
    "jbold,concurrence_definite,eof_definite,concurrence_random,eof_random,flip_probability,bunching,sz_correlation";

/// Significant digits written to CSV.
pub const CSV_DIGITS: usize = 12;

#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub j_min: f64,
    pub j_max: f64,
    pub steps: usize,
    /// Preparation used for the `*_definite`, flip, bunching and correlation columns.
    pub impurity: ImpurityPreparation,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            j_min: 0.0,
            j_max: 5.0,
            steps: 101,
            impurity: ImpurityPreparation::Down,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("j_min", self.j_min), ("j_max", self.j_max)] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidSweep(format!(
                    "{name} must be finite and nonnegative (got {v})"
                )));
            }
        }
        if self.j_min > self.j_max {
            return Err(Error::InvalidSweep(format!(
                "j_min {} exceeds j_max {}",
                self.j_min, self.j_max
            )));
        }
        if self.steps < 2 {
            return Err(Error::InvalidSweep(format!(
                "steps must be at least 2 (got {})",
                self.steps
            )));
        }
        Ok(())
    }

    pub fn grid(&self) -> Vec<f64> {
        uniform_grid(self.j_min, self.j_max, self.steps)
    }
}

/// `steps` uniformly spaced points from `lo` to `hi`, both included exactly.
pub fn uniform_grid(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    assert!(steps >= 2);
    let last = steps - 1;
    (0..steps)
        .map(|i| {
            if i == last {
                hi
            } else {
                lo + (hi - lo) * i as f64 / last as f64
            }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRow {
    pub jbold: f64,
    pub concurrence_definite: f64,
    pub eof_definite: f64,
    pub concurrence_random: f64,
    pub eof_random: f64,
    /// Empty in the CSV when the preparation is not definite.
    pub flip_probability: Option<f64>,
    pub bunching: f64,
    pub sz_correlation: f64,
}

pub fn sweep_point(j: f64, impurity: &ImpurityPreparation) -> Result<SweepRow> {
    let jc = Coupling::new(j)?;
    let bs = BeamSplitter::balanced();
    let definite = scatter_full(jc, impurity)?;
    let random = scatter_full(jc, &ImpurityPreparation::Random)?;
    let d = entanglement_of_formation(&definite.unconditional)?;
    let r = entanglement_of_formation(&random.unconditional)?;
    Ok(SweepRow {
        jbold: j,
        concurrence_definite: d.concurrence,
        eof_definite: d.eof,
        concurrence_random: r.concurrence,
        eof_random: r.eof,
        flip_probability: definite.flip_probability,
        bunching: bunching_probability(&bs, &definite.unconditional)?,
        sz_correlation: spin_correlation_z(&bs, &definite.unconditional)?,
    })
}

/// Rows in grid order.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    cfg.validate()?;
    cfg.grid()
        .into_iter()
        .map(|j| sweep_point(j, &cfg.impurity))
        .collect()
}

/// Format with `digits` significant digits in the style of C's `%g`:
/// fixed notation for decimal exponents in `[-5, digits)`, scientific
/// otherwise, trailing zeros removed.
pub fn format_significant(v: f64, digits: usize) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let sci = format!("{:.*e}", digits - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        let m = strip_zeros(mantissa);
        return format!("{m}e{exp}");
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    strip_zeros(&format!("{v:.decimals$}")).to_string()
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

impl SweepRow {
    pub fn to_csv_line(&self) -> String {
        let f = |v: f64| format_significant(v, CSV_DIGITS);
        format!(
            "{},{},{},{},{},{},{},{}",
            f(self.jbold),
            f(self.concurrence_definite),
            f(self.eof_definite),
            f(self.concurrence_random),
            f(self.eof_random),
            self.flip_probability.map(f).unwrap_or_default(),
            f(self.bunching),
            f(self.sz_correlation),
        )
    }
}

/// Header plus one LF-terminated line per row.
pub fn write_csv<W: Write>(rows: &[SweepRow], mut out: W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for row in rows {
        writeln!(out, "{}", row.to_csv_line())?;
    }
    out.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_formatting() {
        assert_eq!(format_significant(0.8, 12), "0.8");
        assert_eq!(format_significant(-0.6, 12), "-0.6");
        assert_eq!(format_significant(-0.0, 12), "0");
        assert_eq!(format_significant(72.0 / 82.0, 12), "0.878048780488");
        assert_eq!(format_significant(5.0, 12), "5");
        assert_eq!(format_significant(1.25e-17, 12), "1.25e-17");
        assert_eq!(format_significant(123456.789, 12), "123456.789");
        assert_eq!(format_significant(1.0 / 3.0, 12), "0.333333333333");
        assert_eq!(format_significant(2.0e13, 12), "2e13");
    }

    #[test]
    fn grid_includes_endpoints() {
        let g = uniform_grid(0.0, 5.0, 101);
        assert_eq!(g.len(), 101);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[100], 5.0);
        assert!((g[20] - 1.0).abs() < 1e-15);
        assert!((g[60] - 3.0).abs() < 1e-15);
    }

    #[test]
    fn config_validation() {
        let ok = SweepConfig::default();
        assert!(ok.validate().is_ok());
        assert!(SweepConfig {
            steps: 1,
            ..ok.clone()
        }
        .validate()
        .is_err());
        assert!(SweepConfig {
            j_min: 2.0,
            j_max: 1.0,
            ..ok.clone()
        }
        .validate()
        .is_err());
        assert!(SweepConfig { j_min: -1.0, ..ok }.validate().is_err());
    }

    #[test]
    fn rows_at_landmarks() {
        let row = sweep_point(0.0, &ImpurityPreparation::Down).unwrap();
        assert_eq!(row.concurrence_definite, 0.0);
        assert_eq!(row.flip_probability, Some(0.0));
        assert!((row.sz_correlation - 1.0).abs() < 1e-15);

        let row = sweep_point(1.0, &ImpurityPreparation::Down).unwrap();
        assert!((row.flip_probability.unwrap() - 0.8).abs() < 1e-14);
        assert!((row.sz_correlation + 0.6).abs() < 1e-14);
        assert!(row.bunching < 1e-15);

        let row = sweep_point(3.0, &ImpurityPreparation::Down).unwrap();
        assert!(row.eof_definite > 0.8);

        let random = sweep_point(1.0, &ImpurityPreparation::Random).unwrap();
        assert_eq!(random.flip_probability, None);
        assert!(random.to_csv_line().contains(",,"));
    }

    #[test]
    fn csv_layout() {
        let rows = run_sweep(&SweepConfig {
            steps: 3,
            ..SweepConfig::default()
        })
        .unwrap();
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[0], CSV_HEADER);
        assert!(lines[1].starts_with("0,0,0,0,0,0,"));
        assert!(lines[3].starts_with("5,"));
        assert!(!text.contains('\r'));
        assert!(lines.iter().all(|l| l.split(',').count() == 8));
    }
}
