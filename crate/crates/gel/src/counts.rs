//! Chebyshev-style counting functions over the norm spectrum.
//!
//! theta sums h * 2 log eps over primitive norms <= x; psi extends the sum
//! to all prime powers through theta(x^{1/k}); pi counts primitive classes
//! and Pi is its 1/k-weighted all-powers companion. Evaluation at x equal to
//! a norm is inclusive. Sums run in ascending-norm order with compensated
//! accumulation.

use crate::error::Result;
use crate::quadratic::NormSpectrum;
use crate::sum::Neumaier;

/// Powers x^{1/k} below this value contribute nothing: the least primitive
/// norm is eps_5^2 = 6.854…, so stopping at 6.8 is exact.
const K_TRUNCATION_FLOOR: f64 = 6.8;

/// Log-weighted count of primitive norms <= x.
pub fn theta(spectrum: &NormSpectrum, x: f64) -> Result<f64> {
    spectrum.check_coverage(x)?;
    let end = spectrum.prefix_len(x);
    let mut acc = Neumaier::new();
    for r in &spectrum.entries()[..end] {
        acc.add(r.h as f64 * 2.0 * r.log_eps);
    }
    Ok(acc.total())
}

/// Log-weighted count over all prime powers: sum over k >= 1 of
/// theta(x^{1/k}), truncated exactly below the least norm.
pub fn psi(spectrum: &NormSpectrum, x: f64) -> Result<f64> {
    spectrum.check_coverage(x)?;
    let mut acc = Neumaier::new();
    let mut k = 1u32;
    loop {
        let root = x.powf(1.0 / k as f64);
        if root < K_TRUNCATION_FLOOR {
            break;
        }
        acc.add(theta(spectrum, root)?);
        k += 1;
    }
    Ok(acc.total())
}

/// Number of primitive classes with norm <= x (classes counted with their
/// multiplicity h).
pub fn pi_count(spectrum: &NormSpectrum, x: f64) -> Result<u64> {
    spectrum.check_coverage(x)?;
    let end = spectrum.prefix_len(x);
    Ok(spectrum.entries()[..end].iter().map(|r| r.h as u64).sum())
}

/// 1/k-weighted all-powers count: sum over k >= 1 of pi(x^{1/k}) / k.
pub fn pi_weighted(spectrum: &NormSpectrum, x: f64) -> Result<f64> {
    spectrum.check_coverage(x)?;
    let mut acc = Neumaier::new();
    let mut k = 1u32;
    loop {
        let root = x.powf(1.0 / k as f64);
        if root < K_TRUNCATION_FLOOR {
            break;
        }
        acc.add(pi_count(spectrum, root)? as f64 / k as f64);
        k += 1;
    }
    Ok(acc.total())
}

/// Normalized short-interval count [pi(x+y) - pi(x)] log x / y.
pub fn short_interval_ratio(spectrum: &NormSpectrum, x: f64, y: f64) -> Result<f64> {
    if y <= 0.0 {
        return Err(crate::error::Error::domain(format!("interval length y = {y} must be positive")));
    }
    spectrum.check_coverage(x + y)?;
    let hi = pi_count(spectrum, x + y)?;
    let lo = pi_count(spectrum, x)?;
    Ok((hi - lo) as f64 * x.ln() / y)
}

/// All counting functions at a single x, plus the prime-geodesic error
/// psi(x) - x.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CountingSnapshot {
    pub x: f64,
    pub theta: f64,
    pub psi: f64,
    pub pi_prim: u64,
    pub pi_weighted: f64,
    pub pgt_error: f64,
}

pub fn snapshot(spectrum: &NormSpectrum, x: f64) -> Result<CountingSnapshot> {
    let theta_x = theta(spectrum, x)?;
    let psi_x = psi(spectrum, x)?;
    Ok(CountingSnapshot {
        x,
        theta: theta_x,
        psi: psi_x,
        pi_prim: pi_count(spectrum, x)?,
        pi_weighted: pi_weighted(spectrum, x)?,
        pgt_error: psi_x - x,
    })
}
