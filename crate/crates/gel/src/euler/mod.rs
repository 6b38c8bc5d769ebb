//! Partial Euler products over the norm spectrum and their renormalized
//! limits: checkpointed traces, tail statistics, the geodesic Mertens
//! constant at s = 1, the double-product variant, and the dispersion-decay
//! scan that ties stabilization rates to the error exponent of the prime
//! geodesic theorem.

pub mod renorm;

pub use renorm::{case1_depth, renormalizer, renormalizer_by_name, renormalizers, RenormTag, Renormalizer};

use crate::error::{Error, Result};
use crate::quadratic::NormSpectrum;
use crate::specfun::EULER_GAMMA;
use crate::sum::ComplexNeumaier;
use num_complex::Complex64;

/// log(1 - z) with series evaluation for small |z|; each Euler factor has
/// |z| = norm^{-Re s} < 1 so the argument stays in the right half-plane.
fn log1m(z: Complex64) -> Complex64 {
    if z.norm() < 0.5 {
        let mut term = z;
        let mut acc = z;
        let mut k = 1u32;
        loop {
            k += 1;
            term *= z;
            let contrib = term / k as f64;
            acc += contrib;
            if contrib.norm() < 1e-18 * acc.norm() || k > 200 {
                break;
            }
        }
        -acc
    } else {
        (Complex64::new(1.0, 0.0) - z).ln()
    }
}

/// Log of the partial Euler product: -sum over norms <= x of
/// h log(1 - norm^{-s}), accumulated in ascending-norm order with
/// compensation.
pub fn partial_log_zeta(spectrum: &NormSpectrum, s: Complex64, x: f64) -> Result<Complex64> {
    if s.re <= 0.0 {
        return Err(Error::domain(format!("partial_log_zeta requires Re s > 0, got {s}")));
    }
    spectrum.check_coverage(x)?;
    let end = spectrum.prefix_len(x);
    let mut acc = ComplexNeumaier::new();
    for r in &spectrum.entries()[..end] {
        let z = (-s * r.norm.ln()).exp();
        acc.add(-(r.h as f64) * log1m(z));
    }
    Ok(acc.total())
}

/// One checkpoint of a renormalized trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Checkpoint {
    pub x: f64,
    /// Compensated log of the partial product at x.
    pub log_raw: Complex64,
    /// exp(log_raw - renormalizer(s, x)).
    pub renorm: Complex64,
}

/// Checkpointed values of a partial Euler product at a fixed s.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductTrace {
    pub s: Complex64,
    pub tag: RenormTag,
    pub checkpoints: Vec<Checkpoint>,
}

/// Evaluate the renormalized partial product along ascending checkpoints.
pub fn renormalized_trace(
    spectrum: &NormSpectrum,
    s: Complex64,
    checkpoints: &[f64],
    tag: RenormTag,
) -> Result<ProductTrace> {
    for pair in checkpoints.windows(2) {
        if !(pair[0] < pair[1]) {
            return Err(Error::domain(format!(
                "checkpoints must be strictly increasing: {} then {}",
                pair[0], pair[1]
            )));
        }
    }
    let renormalizer = renorm::renormalizer(tag);
    let mut out = Vec::with_capacity(checkpoints.len());
    for &x in checkpoints {
        let log_raw = partial_log_zeta(spectrum, s, x)?;
        let correction = renormalizer.log_correction(spectrum, s, x)?;
        let renorm = (log_raw - correction).exp();
        if !(renorm.re.is_finite() && renorm.im.is_finite()) {
            return Err(Error::domain(format!("renormalized value overflowed at x = {x}")));
        }
        out.push(Checkpoint { x, log_raw, renorm });
    }
    Ok(ProductTrace { s, tag, checkpoints: out })
}

/// Tail-stabilization estimate of a trace limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitEstimate {
    pub value: Complex64,
    /// +1 or -1: sign of the real part when the tail is coherently real,
    /// +1 otherwise.
    pub sign: i8,
    /// Max pairwise distance over the tail checkpoints.
    pub dispersion: f64,
}

fn tail_estimate(values: &[Complex64]) -> LimitEstimate {
    let n = values.len() as f64;
    let mean = values.iter().sum::<Complex64>() / n;
    let mut dispersion = 0.0f64;
    for (i, a) in values.iter().enumerate() {
        for b in &values[i + 1..] {
            dispersion = dispersion.max((a - b).norm());
        }
    }
    let sign = if mean.im.abs() < dispersion && mean.re < 0.0 { -1 } else { 1 };
    LimitEstimate { value: mean, sign, dispersion }
}

/// Mean and dispersion of the last `tail_count` renormalized values.
pub fn estimate_limit(trace: &ProductTrace, tail_count: usize) -> Result<LimitEstimate> {
    if tail_count < 2 || trace.checkpoints.len() < tail_count {
        return Err(Error::InsufficientCheckpoints {
            have: trace.checkpoints.len(),
            need: tail_count.max(2),
        });
    }
    let tail: Vec<Complex64> = trace.checkpoints[trace.checkpoints.len() - tail_count..]
        .iter()
        .map(|c| c.renorm)
        .collect();
    Ok(tail_estimate(&tail))
}

/// Estimate of the Mertens-type constant at the spectral pole s = 1:
/// c = zeta_{x}(1) / (e^gamma log x) across checkpoints; the tail mean and
/// dispersion are returned.
pub fn mertens_geodesic(spectrum: &NormSpectrum, checkpoints: &[f64]) -> Result<LimitEstimate> {
    if spectrum.is_empty() {
        return Err(Error::domain("mertens_geodesic needs a non-empty spectrum".to_string()));
    }
    if checkpoints.is_empty() {
        return Err(Error::InsufficientCheckpoints { have: 0, need: 1 });
    }
    let mut values = Vec::with_capacity(checkpoints.len());
    for &x in checkpoints {
        if x <= 1.0 {
            return Err(Error::domain(format!("checkpoint x = {x} must exceed 1")));
        }
        let log_raw = partial_log_zeta(spectrum, Complex64::new(1.0, 0.0), x)?;
        values.push(log_raw.exp() / (EULER_GAMMA.exp() * x.ln()));
    }
    let tail_len = values.len().min(3);
    Ok(tail_estimate(&values[values.len() - tail_len..]))
}

/// Truncated double product: exp(sum_{n=0..n_max} -partial_log_zeta(s+n, x)),
/// with a rigorous bound on the discarded log-tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoubleProduct {
    pub value: Complex64,
    pub tail_bound: f64,
}

pub fn z_partial(
    spectrum: &NormSpectrum,
    s: Complex64,
    x: f64,
    n_max: u32,
) -> Result<DoubleProduct> {
    if s.re <= 0.0 {
        return Err(Error::domain(format!("z_partial requires Re s > 0, got {s}")));
    }
    if n_max < 1 {
        return Err(Error::domain("z_partial requires n_max >= 1".to_string()));
    }
    spectrum.check_coverage(x)?;
    let mut log_acc = ComplexNeumaier::new();
    for n in 0..=n_max {
        let shifted = s + Complex64::new(n as f64, 0.0);
        log_acc.add(-partial_log_zeta(spectrum, shifted, x)?);
    }
    // Discarded factors n > n_max: |log zeta_x(s+n)| <= sum_p h norm^{-Re s - n}
    // summed geometrically over n.
    let mut tail = crate::sum::Neumaier::new();
    let end = spectrum.prefix_len(x);
    for r in &spectrum.entries()[..end] {
        let base = r.norm.powf(-(s.re + n_max as f64 + 1.0));
        tail.add(r.h as f64 * base * (r.norm / (r.norm - 1.0)));
    }
    Ok(DoubleProduct { value: log_acc.total().exp(), tail_bound: tail.total() })
}

/// One row of the stabilization-rate scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub sigma: f64,
    /// Fitted exponent beta in dispersion ~ C x^{beta - sigma}; None when the
    /// trace could not be built or has too few usable increments.
    pub beta: Option<f64>,
    /// The raw fitted decay rate beta - sigma.
    pub decay: Option<f64>,
}

/// For each sigma, fit the decay of successive renormalized increments
/// |renorm(x_{i+1}) - renorm(x_i)| against C x^{beta - sigma}. Report-only:
/// rows never fail, they carry None instead.
pub fn equivalence_scan(
    spectrum: &NormSpectrum,
    sigma_grid: &[f64],
    checkpoints: &[f64],
) -> Vec<ScanRow> {
    sigma_grid
        .iter()
        .map(|&sigma| {
            let trace = match renormalized_trace(
                spectrum,
                Complex64::new(sigma, 0.0),
                checkpoints,
                RenormTag::Ultimate,
            ) {
                Ok(t) => t,
                Err(_) => return ScanRow { sigma, beta: None, decay: None },
            };
            let mut pts = Vec::new();
            for pair in trace.checkpoints.windows(2) {
                let d = (pair[1].renorm - pair[0].renorm).norm();
                if d > 0.0 {
                    let mid = (pair[0].x * pair[1].x).sqrt();
                    pts.push((mid.ln(), d.ln()));
                }
            }
            if pts.len() < 2 {
                return ScanRow { sigma, beta: None, decay: None };
            }
            let n = pts.len() as f64;
            let sx: f64 = pts.iter().map(|p| p.0).sum();
            let sy: f64 = pts.iter().map(|p| p.1).sum();
            let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
            let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
            let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
            ScanRow { sigma, beta: Some(slope + sigma), decay: Some(slope) }
        })
        .collect()
}
