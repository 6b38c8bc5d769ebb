//! Indefinite binary quadratic forms and their class numbers.
//!
//! A form (a, b, c) represents a x^2 + b x y + c y^2 with discriminant
//! d = b^2 - 4ac > 0 (non-square here). Proper equivalence classes are
//! counted as cycles of reduced forms under the reduction operator rho;
//! every class contains a unique such cycle, so the class number is the
//! number of cycles. All comparisons against sqrt(d) are done with squared
//! integer inequalities, never floating point.

use crate::error::{Error, Result};
use crate::quadratic::is_discriminant;

/// A primitive integral indefinite binary quadratic form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadraticForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadraticForm {
    /// Validating constructor: positive non-square discriminant, primitive.
    pub fn new(a: i64, b: i64, c: i64) -> Result<Self> {
        let form = QuadraticForm { a, b, c };
        let d = form.discriminant();
        if d <= 0 || !is_discriminant(d as u64) {
            return Err(Error::validation(format!(
                "form ({a}, {b}, {c}) has discriminant {d}, not a positive non-square discriminant"
            )));
        }
        if gcd3(a, b, c) != 1 {
            return Err(Error::validation(format!(
                "form ({a}, {b}, {c}) is not primitive"
            )));
        }
        Ok(form)
    }

    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    /// Reduced predicate |sqrt(d) - 2|a|| < b < sqrt(d), evaluated exactly.
    ///
    /// d non-square rules out equality, so strict squared comparisons decide.
    pub fn is_reduced(&self) -> bool {
        let d = self.discriminant();
        if d <= 0 || self.b <= 0 {
            return false;
        }
        let b = self.b;
        // b < sqrt(d)
        if b * b >= d {
            return false;
        }
        let two_a = 2 * self.a.abs();
        // sqrt(d) - 2|a| < b  <=>  d < (b + 2|a|)^2
        if d >= (b + two_a) * (b + two_a) {
            return false;
        }
        // 2|a| - sqrt(d) < b, vacuous unless 2|a| > b
        if two_a > b && (two_a - b) * (two_a - b) >= d {
            return false;
        }
        true
    }

    /// Reduction step: (a, b, c) -> (c, b', c') with b' ≡ -b (mod 2|c|) and
    /// sqrt(d) - 2|c| < b' < sqrt(d). Maps reduced forms to reduced forms and
    /// walks the cycle of the class.
    pub fn rho(&self) -> QuadraticForm {
        let d = self.discriminant();
        let root = (d as u64).isqrt() as i64; // floor(sqrt(d)), d non-square
        let m = 2 * self.c.abs();
        debug_assert!(m > 0);
        let r = (-self.b).rem_euclid(m);
        let b_next = r + ((root - r).div_euclid(m)) * m;
        let c_next = (b_next * b_next - d) / (4 * self.c);
        QuadraticForm {
            a: self.c,
            b: b_next,
            c: c_next,
        }
    }
}

fn gcd2(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn gcd3(a: i64, b: i64, c: i64) -> i64 {
    gcd2(gcd2(a, b), c)
}

/// All reduced primitive forms of discriminant d, in a deterministic order.
///
/// For each admissible b the product |a||c| = (d - b^2)/4 is factored by
/// trial division; both sign patterns (a, -c), (-a, c) are candidates since
/// ac < 0 for reduced indefinite forms.
pub fn reduced_forms(d: u64) -> Vec<QuadraticForm> {
    let di = d as i64;
    let root = d.isqrt() as i64;
    let mut out = Vec::new();
    for b in 1..=root {
        if (di - b * b) % 4 != 0 {
            continue;
        }
        let n = (di - b * b) / 4;
        if n <= 0 {
            continue;
        }
        let mut a = 1i64;
        while a * a <= n {
            if n % a == 0 {
                let c = n / a;
                let mut push = |p: i64, q: i64| {
                    let f = QuadraticForm { a: p, b, c: q };
                    if f.is_reduced() && gcd3(p, b, q) == 1 {
                        out.push(f);
                    }
                };
                push(a, -c);
                push(-a, c);
                if a != c {
                    push(c, -a);
                    push(-c, a);
                }
            }
            a += 1;
        }
    }
    out.sort_unstable();
    out
}

/// Class number of primitive indefinite forms of discriminant d under proper
/// equivalence, counted as rho-cycles of the reduced forms.
pub fn class_number(d: u64) -> Result<u32> {
    if !is_discriminant(d) {
        return Err(Error::domain(format!("{d} is not a discriminant")));
    }
    let forms = reduced_forms(d);
    let mut remaining: std::collections::HashSet<QuadraticForm> = forms.iter().copied().collect();
    let mut cycles = 0u32;
    for &start in &forms {
        if !remaining.contains(&start) {
            continue;
        }
        cycles += 1;
        let mut g = start;
        loop {
            remaining.remove(&g);
            g = g.rho();
            debug_assert!(g.is_reduced());
            if g == start {
                break;
            }
        }
    }
    Ok(cycles)
}
