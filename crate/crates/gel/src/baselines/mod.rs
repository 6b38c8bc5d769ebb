//! Rational-prime baselines: the Mertens product, the zero-corrected
//! asymptotic for partial Euler products in the critical strip, and the
//! central-point product for the character mod 4 with its sqrt(2)
//! normalization. These are the classical counterparts the geodesic
//! experiments are compared against.

pub mod kloosterman;
pub mod zeros;
pub mod zeta;

pub use kloosterman::{
    divisor_count, kloosterman, selberg_kloosterman_partial, weil_bound, weil_check,
    DirichletCharacter, KloostermanTable,
};
pub use zeros::ZerosDataset;
pub use zeta::{beta_half, beta_mod4, zeta_strip};

use crate::error::{Error, Result};
use crate::specfun::{li_power, EULER_GAMMA};
use crate::sum::Neumaier;
use num_complex::Complex64;

/// Primes up to a limit, by sieve.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    pub fn new(limit: u64) -> Result<Self> {
        if limit < 2 {
            return Err(Error::domain(format!("prime table limit {limit} must be >= 2")));
        }
        if limit > 1_000_000_000 {
            return Err(Error::ResourceLimit(format!("prime table limit {limit} too large")));
        }
        let n = limit as usize;
        let mut is_prime = vec![true; n + 1];
        is_prime[0] = false;
        is_prime[1] = false;
        let mut i = 2usize;
        while i * i <= n {
            if is_prime[i] {
                let mut j = i * i;
                while j <= n {
                    is_prime[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        let primes = (2..=n).filter(|&k| is_prime[k]).map(|k| k as u64).collect();
        Ok(PrimeTable { limit, primes })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    fn check_coverage(&self, x: f64) -> Result<()> {
        if x > self.limit as f64 {
            Err(Error::Coverage { x, x_max: self.limit as f64 })
        } else {
            Ok(())
        }
    }

    fn primes_up_to(&self, x: f64) -> &[u64] {
        let end = self.primes.partition_point(|&p| p as f64 <= x);
        &self.primes[..end]
    }
}

/// Chebyshev theta: sum of log p over p <= x.
pub fn theta_chebyshev(table: &PrimeTable, x: f64) -> Result<f64> {
    table.check_coverage(x)?;
    let mut acc = Neumaier::new();
    for &p in table.primes_up_to(x) {
        acc.add((p as f64).ln());
    }
    Ok(acc.total())
}

/// The partial Euler product of zeta at real s, in log space.
pub fn log_euler_product(table: &PrimeTable, s: f64, x: f64) -> Result<f64> {
    table.check_coverage(x)?;
    let mut acc = Neumaier::new();
    for &p in table.primes_up_to(x) {
        acc.add(-(-(p as f64).powf(-s)).ln_1p());
    }
    Ok(acc.total())
}

/// Mertens ratio: prod_{p<=x} (1 - 1/p)^{-1} / (e^gamma log x).
pub fn mertens_ratio(table: &PrimeTable, x: f64) -> Result<f64> {
    if x <= 1.0 {
        return Err(Error::domain(format!("mertens_ratio needs x > 1, got {x}")));
    }
    let log_prod = log_euler_product(table, 1.0, x)?;
    Ok(log_prod.exp() / (EULER_GAMMA.exp() * x.ln()))
}

/// Zero-corrected asymptotic for the partial Euler product at real
/// s in (1/2, 1):
/// -zeta(s) exp(Li(theta(x)^{1-s}) + 2s x^{1/2-s}/((2s-1) log x) + S_K/log x)
/// where S_K folds the first K nontrivial zeros.
pub fn ramanujan_rhs(
    table: &PrimeTable,
    s: f64,
    x: f64,
    zeros: &ZerosDataset,
    k_zeros: usize,
) -> Result<f64> {
    if !(s > 0.5 && s < 1.0) {
        return Err(Error::domain(format!("ramanujan_rhs needs 1/2 < s < 1, got {s}")));
    }
    if zeros.len() < k_zeros {
        return Err(Error::domain(format!(
            "zero dataset has {} entries, need {k_zeros}",
            zeros.len()
        )));
    }
    table.check_coverage(x)?;
    let theta = theta_chebyshev(table, x)?;
    if theta <= 1.0 {
        return Err(Error::domain(format!("theta(x) = {theta} too small at x = {x}")));
    }
    let zeta_s = zeta_strip(s)?;
    let li_term = li_power(theta, Complex64::new(1.0 - s, 0.0))?.re;
    let mid_term = 2.0 * s * x.powf(0.5 - s) / ((2.0 * s - 1.0) * x.ln());
    let mut zero_sum = Neumaier::new();
    for &gamma in &zeros.gammas[..k_zeros] {
        let rho = Complex64::new(0.5, gamma);
        // x^{rho - s} / (rho (rho - s)), conjugate pair folded.
        let term = ((rho - s) * x.ln()).exp() / (rho * (rho - s));
        zero_sum.add(2.0 * term.re);
    }
    let s_term = -s * zero_sum.total();
    Ok(-zeta_s * (li_term + mid_term + s_term / x.ln()).exp())
}

/// Both sides of the strip comparison: the direct partial product and the
/// zero-corrected asymptotic.
pub fn ramanujan_comparison(
    table: &PrimeTable,
    s: f64,
    x: f64,
    zeros: &ZerosDataset,
    k_zeros: usize,
) -> Result<(f64, f64)> {
    let lhs = log_euler_product(table, s, x)?.exp();
    let rhs = ramanujan_rhs(table, s, x, zeros, k_zeros)?;
    Ok((lhs, rhs))
}

/// Central-point ratio for the character mod 4:
/// prod_{p<=x} (1 - chi4(p) p^{-1/2})^{-1} / (sqrt 2 L(1/2, chi4)).
pub fn drh_dirichlet_ratio(table: &PrimeTable, x: f64) -> Result<f64> {
    table.check_coverage(x)?;
    let mut acc = Neumaier::new();
    for &p in table.primes_up_to(x) {
        let chi = DirichletCharacter::Chi4.eval(p);
        if chi == 0 {
            continue;
        }
        acc.add(-(-(chi as f64) * (p as f64).powf(-0.5)).ln_1p());
    }
    Ok(acc.total().exp() / (2.0f64.sqrt() * beta_half()))
}
