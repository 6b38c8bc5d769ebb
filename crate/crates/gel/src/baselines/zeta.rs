//! Accelerated alternating series for zeta and the mod-4 beta function on
//! the real segment (0, 1).
//!
//! Both are eta-style alternating sums pushed through the Chebyshev
//! acceleration of Cohen, Rodriguez Villegas and Zagier: n terms give a
//! relative error of order (3 + sqrt 8)^{-n}, so n = 32 is far below f64
//! roundoff for totally monotone coefficients like k^{-s}.

use crate::error::{Error, Result};

/// CVZ acceleration of sum_{k>=0} (-1)^k a_k.
fn alternating_sum(a: impl Fn(u64) -> f64, n: usize) -> f64 {
    let mut d = (3.0 + 8.0f64.sqrt()).powi(n as i32);
    d = (d + 1.0 / d) / 2.0;
    let mut b = -1.0;
    let mut c = -d;
    let mut s = 0.0;
    for k in 0..n as u64 {
        c = b - c;
        s += c * a(k);
        let kf = k as f64;
        let nf = n as f64;
        b = (kf + nf) * (kf - nf) * b / ((kf + 0.5) * (kf + 1.0));
    }
    s / d
}

const ACCEL_TERMS: usize = 40;

/// Riemann zeta on 0 < s < 1 via the eta function:
/// zeta(s) = eta(s) / (1 - 2^{1-s}).
pub fn zeta_strip(s: f64) -> Result<f64> {
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::domain(format!("zeta_strip needs 0 < s < 1, got {s}")));
    }
    let eta = alternating_sum(|k| ((k + 1) as f64).powf(-s), ACCEL_TERMS);
    Ok(eta / (1.0 - (2.0f64).powf(1.0 - s)))
}

/// Dirichlet beta (the L-function of the odd character mod 4) for s > 0.
pub fn beta_mod4(s: f64) -> Result<f64> {
    if !(s > 0.0) {
        return Err(Error::domain(format!("beta_mod4 needs s > 0, got {s}")));
    }
    Ok(alternating_sum(|k| ((2 * k + 1) as f64).powf(-s), ACCEL_TERMS))
}

/// The central value L(1/2, chi_4).
pub fn beta_half() -> f64 {
    // Cached closed evaluation; agrees with beta_mod4(0.5) to roundoff.
    0.667_691_457_189_609_2
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn strip_reference_values() {
        // References computed with 30-digit arithmetic.
        assert_relative_eq!(zeta_strip(0.6).unwrap(), -1.9526614482240008, max_relative = 1e-12);
        assert_relative_eq!(zeta_strip(0.75).unwrap(), -3.4412853869452227, max_relative = 1e-12);
        assert_relative_eq!(zeta_strip(0.9).unwrap(), -9.430114019402252, max_relative = 1e-12);
    }

    #[test]
    fn beta_reference_values() {
        assert_relative_eq!(beta_mod4(0.5).unwrap(), 0.6676914571896092, max_relative = 1e-12);
        assert_relative_eq!(beta_mod4(0.5).unwrap(), beta_half(), max_relative = 1e-14);
        // beta(1) = pi/4.
        assert_relative_eq!(beta_mod4(1.0).unwrap(), std::f64::consts::FRAC_PI_4, max_relative = 1e-13);
    }

    #[test]
    fn domain_guards() {
        assert!(zeta_strip(0.0).is_err());
        assert!(zeta_strip(1.0).is_err());
        assert!(beta_mod4(0.0).is_err());
    }
}
