//! Laplace-spectrum datasets and the spectral side of the counting
//! functions: the truncated explicit formula for psi, spectral exponential
//! sums with their cancellation envelope, and the weighted psi function
//! behind log-derivative estimates.
//!
//! Eigenvalue data is an input, not something this crate computes. The
//! bundled file carries the first thirty spectral parameters of the modular
//! surface with a provenance header; loading validates shape and, for the
//! bundled set, the anchor lambda_1 = 91.14…

use crate::counts;
use crate::error::{Error, Result};
use crate::quadratic::NormSpectrum;
use crate::sum::{ComplexNeumaier, Neumaier};
use num_complex::Complex64;
use std::path::Path;

/// Spectral parameters t_j (s_j = 1/2 + i t_j) with multiplicities, plus the
/// exceptional zeros in (1/2, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralDataset {
    pub exceptional: Vec<f64>,
    pub t_values: Vec<f64>,
    pub multiplicities: Vec<u32>,
    pub source: String,
}

/// First spectral parameter of the modular surface: sqrt(91.14 - 1/4).
const MODULAR_T1: f64 = 9.533_625_254_729_55;

impl SpectralDataset {
    /// Parse the line-oriented `gel-spectral v1` format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::Parse { line: 1, message: "empty file".to_string() })?;
        let source = header
            .strip_prefix("gel-spectral v1")
            .ok_or_else(|| Error::Parse {
                line: 1,
                message: format!("expected `gel-spectral v1` header, found `{header}`"),
            })?
            .trim()
            .to_string();
        let mut t_values: Vec<f64> = Vec::new();
        let mut multiplicities: Vec<u32> = Vec::new();
        for (idx, raw) in lines {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut cols = line.split('\t');
            let t: f64 = cols
                .next()
                .unwrap()
                .trim()
                .parse()
                .map_err(|e| Error::Parse { line: line_no, message: format!("bad t value: {e}") })?;
            let mult: u32 = match cols.next() {
                Some(m) => m.trim().parse().map_err(|e| Error::Parse {
                    line: line_no,
                    message: format!("bad multiplicity: {e}"),
                })?,
                None => 1,
            };
            if !(t > 0.0) || !t.is_finite() {
                return Err(Error::Validation(format!(
                    "line {line_no}: spectral parameter must be positive, got {t}"
                )));
            }
            if mult == 0 {
                return Err(Error::Validation(format!("line {line_no}: multiplicity must be positive")));
            }
            match t_values.last() {
                Some(&prev) if t < prev => {
                    return Err(Error::Validation(format!(
                        "line {line_no}: t = {t} out of order after {prev}"
                    )));
                }
                Some(&prev) if t == prev => {
                    // Fold exact duplicates into the multiplicity.
                    *multiplicities.last_mut().unwrap() += mult;
                }
                _ => {
                    t_values.push(t);
                    multiplicities.push(mult);
                }
            }
        }
        Ok(SpectralDataset { exceptional: vec![1.0], t_values, multiplicities, source })
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// The dataset shipped with the crate.
    pub fn bundled() -> Self {
        let ds = Self::parse(include_str!("../data/sl2z_maass.tsv"))
            .expect("bundled spectral dataset must parse");
        ds.validate_modular_anchor().expect("bundled spectral dataset must satisfy the anchor");
        ds
    }

    /// Anchor check for modular-surface data: t_1 within 0.01 of
    /// sqrt(91.14 - 1/4).
    pub fn validate_modular_anchor(&self) -> Result<()> {
        match self.t_values.first() {
            Some(&t1) if (t1 - MODULAR_T1).abs() <= 0.01 => Ok(()),
            Some(&t1) => Err(Error::Validation(format!(
                "first spectral parameter {t1} is not within 0.01 of {MODULAR_T1}"
            ))),
            None => Ok(()), // empty t-list is valid (formula degenerates)
        }
    }

    pub fn max_t(&self) -> Option<f64> {
        self.t_values.last().copied()
    }

    /// Count of spectral parameters (with multiplicity) up to T.
    pub fn count_up_to(&self, t_cap: f64) -> u64 {
        self.t_values
            .iter()
            .zip(&self.multiplicities)
            .take_while(|(t, _)| **t <= t_cap)
            .map(|(_, m)| *m as u64)
            .sum()
    }

    /// Largest admissible truncation at x: min(max t, sqrt(x)/log x).
    pub fn default_truncation(&self, x: f64) -> f64 {
        let cap = x.sqrt() / x.ln();
        self.max_t().map_or(cap, |t| t.min(cap))
    }
}

/// Truncated explicit formula for psi: exceptional terms x^{s_j}/s_j plus
/// sqrt(x) times the folded spectral sum up to T.
///
/// `allow_partial` acknowledges a dataset whose largest t falls short of T;
/// the sum then runs over what is available.
pub fn explicit_psi(
    dataset: &SpectralDataset,
    x: f64,
    t_cap: f64,
    allow_partial: bool,
) -> Result<f64> {
    let admissible = x.sqrt() / x.ln();
    if !(1.0 <= t_cap && t_cap <= admissible) {
        return Err(Error::domain(format!(
            "T = {t_cap} outside the admissible range [1, {admissible:.4}] at x = {x}"
        )));
    }
    if !allow_partial {
        match dataset.max_t() {
            Some(max_t) if max_t >= t_cap => {}
            _ => {
                return Err(Error::Coverage { x: t_cap, x_max: dataset.max_t().unwrap_or(0.0) });
            }
        }
    }
    let mut acc = Neumaier::new();
    for &sj in &dataset.exceptional {
        acc.add(x.powf(sj) / sj);
    }
    let log_x = x.ln();
    let sqrt_x = x.sqrt();
    for (&t, &m) in dataset.t_values.iter().zip(&dataset.multiplicities) {
        if t > t_cap {
            break;
        }
        let sj = Complex64::new(0.5, t);
        let phase = Complex64::new(0.0, t * log_x).exp();
        // Conjugate pair +-t folded: 2 Re(x^{it}/s_j).
        acc.add(sqrt_x * 2.0 * (phase / sj).re * m as f64);
    }
    Ok(acc.total())
}

/// A spectral exponential sum with its cancellation envelope.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpSum {
    pub value: Complex64,
    /// T^{5/4} x^{1/8} (log T)^2.
    pub envelope: f64,
}

/// sum_{t_j <= T} mult_j x^{i t_j}, reported with the envelope.
pub fn spectral_exp_sum(dataset: &SpectralDataset, x: f64, t_cap: f64) -> Result<ExpSum> {
    match dataset.max_t() {
        Some(max_t) if t_cap <= max_t => {}
        _ => {
            return Err(Error::Coverage { x: t_cap, x_max: dataset.max_t().unwrap_or(0.0) });
        }
    }
    let log_x = x.ln();
    let mut acc = ComplexNeumaier::new();
    for (&t, &m) in dataset.t_values.iter().zip(&dataset.multiplicities) {
        if t > t_cap {
            break;
        }
        acc.add(Complex64::new(0.0, t * log_x).exp() * m as f64);
    }
    let envelope = t_cap.powf(1.25) * x.powf(0.125) * t_cap.ln().powi(2);
    Ok(ExpSum { value: acc.total(), envelope })
}

fn check_strip(s: Complex64) -> Result<()> {
    if !(s.re > 0.5 && s.re <= 1.0) {
        return Err(Error::domain(format!("s = {s} outside 1/2 < Re s <= 1")));
    }
    if s.im == 0.0 && s.re == 1.0 {
        return Err(Error::domain("s = 1 is the exceptional point".to_string()));
    }
    Ok(())
}

/// Weighted psi: sum over norm^k <= x of h * 2 log eps / norm^{ks}.
pub fn weighted_psi(spectrum: &NormSpectrum, s: Complex64, x: f64) -> Result<Complex64> {
    check_strip(s)?;
    spectrum.check_coverage(x)?;
    let mut acc = ComplexNeumaier::new();
    for r in spectrum.entries() {
        if r.norm > x {
            break;
        }
        let weight = r.h as f64 * 2.0 * r.log_eps;
        let mut power = r.norm;
        let mut k = 1u32;
        while power <= x {
            acc.add(weight * (-s * power.ln()).exp());
            k += 1;
            power = r.norm.powi(k as i32);
        }
    }
    Ok(acc.total())
}

/// Estimate of -zeta'/zeta(s) from the weighted psi function:
/// weighted_psi - x^{-s} psi(x) - s x^{1-s}/(1-s). Stabilization across x is
/// the check, not a closed-form target.
pub fn logderiv_estimate(spectrum: &NormSpectrum, s: Complex64, x: f64) -> Result<Complex64> {
    check_strip(s)?;
    spectrum.check_coverage(x)?;
    let wp = weighted_psi(spectrum, s, x)?;
    let psi_x = counts::psi(spectrum, x)?;
    let x_pow = (-s * x.ln()).exp();
    let one = Complex64::new(1.0, 0.0);
    let pole_term = s * ((one - s) * x.ln()).exp() / (one - s);
    Ok(wp - x_pow * psi_x - pole_term)
}
