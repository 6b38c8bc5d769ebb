//! Kloosterman sums, Weil's bound, and partial sums of the associated
//! Dirichlet series over moduli.
//!
//! S_chi(m, n; c) = sum over invertible d mod c of chi(d) e((m dbar + n d)/c)
//! with exact modular arithmetic for d, dbar, and the exponent index; only
//! the final unit-circle evaluation is floating point.

use crate::error::{Error, Result};
use crate::sum::ComplexNeumaier;
use num_complex::Complex64;
use std::f64::consts::TAU;

/// The characters this lab sweeps: the trivial character and the odd
/// primitive character mod 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DirichletCharacter {
    Trivial,
    Chi4,
}

impl DirichletCharacter {
    pub fn modulus(self) -> u64 {
        match self {
            DirichletCharacter::Trivial => 1,
            DirichletCharacter::Chi4 => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DirichletCharacter::Trivial => "trivial",
            DirichletCharacter::Chi4 => "chi4",
        }
    }

    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "trivial" => Some(DirichletCharacter::Trivial),
            "chi4" => Some(DirichletCharacter::Chi4),
            _ => None,
        }
    }

    /// chi(d) in {-1, 0, 1}.
    pub fn eval(self, d: u64) -> i64 {
        match self {
            DirichletCharacter::Trivial => 1,
            DirichletCharacter::Chi4 => match d % 4 {
                1 => 1,
                3 => -1,
                _ => 0,
            },
        }
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Modular inverse of d mod c for gcd(d, c) = 1.
fn inverse_mod(d: u64, c: u64) -> u64 {
    let (mut old_r, mut r) = (d as i128, c as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1);
    old_s.rem_euclid(c as i128) as u64
}

/// Number of divisors of c.
pub fn divisor_count(c: u64) -> u64 {
    let mut count = 0;
    let mut i = 1;
    while i * i <= c {
        if c % i == 0 {
            count += if i * i == c { 1 } else { 2 };
        }
        i += 1;
    }
    count
}

/// Precomputed unit roots and inverses for one modulus, for sweeping many
/// (m, n) pairs at fixed c.
pub struct KloostermanTable {
    c: u64,
    /// (d, dbar) for the invertible residues.
    units: Vec<(u64, u64)>,
    /// e(j/c) for j = 0..c.
    roots: Vec<Complex64>,
}

impl KloostermanTable {
    pub fn new(c: u64) -> Result<Self> {
        if c == 0 {
            return Err(Error::domain("modulus c must be positive".to_string()));
        }
        if c > 5_000_000 {
            return Err(Error::ResourceLimit(format!("modulus c = {c} too large to tabulate")));
        }
        let units: Vec<(u64, u64)> =
            (1..=c).filter(|&d| gcd(d, c) == 1).map(|d| (d, inverse_mod(d, c))).collect();
        let roots: Vec<Complex64> = (0..c)
            .map(|j| Complex64::new(0.0, TAU * j as f64 / c as f64).exp())
            .collect();
        Ok(KloostermanTable { c, units, roots })
    }

    pub fn modulus(&self) -> u64 {
        self.c
    }

    pub fn phi(&self) -> u64 {
        self.units.len() as u64
    }

    /// S_chi(m, n; c). The character modulus must divide c.
    pub fn sum(&self, m: u64, n: u64, chi: DirichletCharacter) -> Result<Complex64> {
        if self.c % chi.modulus() != 0 {
            return Err(Error::domain(format!(
                "character modulus {} does not divide c = {}",
                chi.modulus(),
                self.c
            )));
        }
        let c128 = self.c as u128;
        let mut acc = ComplexNeumaier::new();
        for &(d, dbar) in &self.units {
            let ch = chi.eval(d);
            if ch == 0 {
                continue;
            }
            let idx = ((m as u128 * dbar as u128 + n as u128 * d as u128) % c128) as usize;
            acc.add(self.roots[idx] * ch as f64);
        }
        Ok(acc.total())
    }
}

/// One-shot Kloosterman sum.
pub fn kloosterman(m: u64, n: u64, c: u64, chi: DirichletCharacter) -> Result<Complex64> {
    KloostermanTable::new(c)?.sum(m, n, chi)
}

/// Weil's bound gcd(m,n,c)^{1/2} c^{1/2} tau(c).
pub fn weil_bound(m: u64, n: u64, c: u64) -> f64 {
    let g = gcd(gcd(m, n), c); // gcd(0, 0, c) = c
    (g as f64).sqrt() * (c as f64).sqrt() * divisor_count(c) as f64
}

/// |S_chi(m, n; c)| <= Weil bound, with an epsilon of slack for roundoff.
pub fn weil_check(m: u64, n: u64, c: u64, chi: DirichletCharacter) -> Result<bool> {
    let s = kloosterman(m, n, c, chi)?;
    Ok(s.norm() <= weil_bound(m, n, c) + 1e-9)
}

/// Partial sum of the Kloosterman Dirichlet series:
/// sum over c ≡ 0 (mod q), c <= c_max of S_chi(m, n; c) / c^{2s}.
pub fn selberg_kloosterman_partial(
    m: u64,
    n: u64,
    s: Complex64,
    q: u64,
    chi: DirichletCharacter,
    c_max: u64,
) -> Result<Complex64> {
    if s.re <= 0.5 {
        return Err(Error::domain(format!("require Re s > 1/2, got {s}")));
    }
    if q == 0 || q % chi.modulus() != 0 {
        return Err(Error::domain(format!(
            "q = {q} must be a positive multiple of the character modulus {}",
            chi.modulus()
        )));
    }
    let mut acc = ComplexNeumaier::new();
    let mut c = q;
    while c <= c_max {
        let kl = kloosterman(m, n, c, chi)?;
        acc.add(kl * (-2.0 * s * (c as f64).ln()).exp());
        c += q;
    }
    Ok(acc.total())
}
