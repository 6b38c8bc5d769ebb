//! Partial sums of the Dirichlet series attached to a discriminant.
//!
//! For delta ≡ 0, 1 (mod 4) the series has coefficients
//! lambda_q(delta) = sum over q1^2 q2 q3 = q of mu(q2) rho_{q3}(delta),
//! where rho_q(delta) counts residues x mod 2q with x^2 ≡ delta (mod 4q).
//! At s = 1 these partial sums tie the class-number data of a fixed trace to
//! sqrt(t^2-4): the identity exercised by the acceptance suite.
//!
//! rho is evaluated through the prime factorization of 4q; the solution
//! count of x^2 ≡ delta (mod p^e) is multiplicative, with the usual
//! valuation/Hensel case split at odd p and the 2-adic table at p = 2.

use crate::error::{Error, Result};

/// Reusable sieve state for a fixed q_max: smallest prime factors to 4 q_max
/// and the Möbius function to q_max.
pub struct CurlySieve {
    q_max: u64,
    spf: Vec<u32>,
    mobius: Vec<i8>,
}

impl CurlySieve {
    pub fn new(q_max: u64) -> Result<Self> {
        if q_max < 1 {
            return Err(Error::domain("q_max must be at least 1".to_string()));
        }
        if q_max > 50_000_000 {
            return Err(Error::ResourceLimit(format!("q_max = {q_max} too large for the sieve")));
        }
        let m = (4 * q_max) as usize;
        let mut spf = vec![0u32; m + 1];
        for i in 2..=m {
            if spf[i] == 0 {
                for j in (i..=m).step_by(i) {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                }
            }
        }
        let q = q_max as usize;
        let mut mobius = vec![1i8; q + 1];
        if q >= 1 {
            mobius[0] = 0;
            for i in 2..=q {
                if spf[i] as usize == i {
                    for j in (i..=q).step_by(i) {
                        mobius[j] = -mobius[j];
                    }
                    if let Some(sq) = i.checked_mul(i) {
                        if sq <= q {
                            for j in (sq..=q).step_by(sq) {
                                mobius[j] = 0;
                            }
                        }
                    }
                }
            }
        }
        Ok(CurlySieve { q_max, spf, mobius })
    }

    pub fn q_max(&self) -> u64 {
        self.q_max
    }

    /// rho_q(delta) = #{x mod 2q : x^2 ≡ delta (mod 4q)}, computed as half
    /// the solution count mod 4q (solutions are invariant under x -> x + 2q).
    pub fn rho(&self, delta: u64, q: u64) -> u64 {
        let mut m = 4 * q;
        let mut count: u64 = 1;
        while m > 1 {
            let p = self.spf[m as usize] as u64;
            let mut e = 0u32;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            count *= square_root_count(delta, p, e);
            if count == 0 {
                return 0;
            }
        }
        count / 2
    }

    /// Partial sum sum_{q <= q_max} lambda_q(delta)/q.
    pub fn curly_l(&self, delta: u64) -> Result<f64> {
        if delta == 0 || delta % 4 > 1 {
            return Err(Error::domain(format!("delta = {delta} is not ≡ 0, 1 (mod 4)")));
        }
        let q = self.q_max as usize;
        let mut rho = vec![0i64; q + 1];
        for i in 1..=q {
            rho[i] = self.rho(delta, i as u64) as i64;
        }
        // Dirichlet convolution m = mu * rho.
        let mut conv = vec![0i64; q + 1];
        for q2 in 1..=q {
            let mu = self.mobius[q2] as i64;
            if mu == 0 {
                continue;
            }
            let mut idx = q2;
            let mut k = 1;
            while idx <= q {
                conv[idx] += mu * rho[k];
                idx += q2;
                k += 1;
            }
        }
        // lambda[n] = sum over square divisors q1^2 | n of conv[n / q1^2].
        let mut lambda = vec![0i64; q + 1];
        let mut q1 = 1usize;
        while q1 * q1 <= q {
            let step = q1 * q1;
            let mut idx = step;
            let mut k = 1;
            while idx <= q {
                lambda[idx] += conv[k];
                idx += step;
                k += 1;
            }
            q1 += 1;
        }
        let mut acc = crate::sum::Neumaier::new();
        for n in 1..=q {
            acc.add(lambda[n] as f64 / n as f64);
        }
        Ok(acc.total())
    }
}

/// #{x mod p^e : x^2 ≡ delta (mod p^e)} by valuation split and Hensel count.
fn square_root_count(delta: u64, p: u64, e: u32) -> u64 {
    let mut v = 0u32;
    let mut rest = delta;
    while v < e && rest % p == 0 {
        rest /= p;
        v += 1;
    }
    if v >= e {
        // delta ≡ 0 (mod p^e): x must vanish to order ceil(e/2).
        return p.pow(e / 2);
    }
    if v % 2 == 1 {
        return 0;
    }
    let scale = p.pow(v / 2);
    let e_rem = e - v;
    if p == 2 {
        let c = match e_rem {
            1 => 1,
            2 => {
                if rest % 4 == 1 {
                    2
                } else {
                    0
                }
            }
            _ => {
                if rest % 8 == 1 {
                    4
                } else {
                    0
                }
            }
        };
        scale * c
    } else {
        let c = if legendre(rest % p, p) == 1 { 2 } else { 0 };
        scale * c
    }
}

/// Legendre symbol (a/p) for odd prime p via Euler's criterion.
fn legendre(a: u64, p: u64) -> i64 {
    let r = pow_mod(a % p, (p - 1) / 2, p);
    if r == 0 {
        0
    } else if r == 1 {
        1
    } else {
        -1
    }
}

fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let m = modulus as u128;
    let mut result: u128 = 1;
    let mut b = (base % modulus) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    result as u64
}

/// One-shot partial sum; builds a sieve per call. Prefer [`CurlySieve`] when
/// evaluating many discriminants at the same q_max.
pub fn curly_l(delta: u64, q_max: u64) -> Result<f64> {
    CurlySieve::new(q_max)?.curly_l(delta)
}
