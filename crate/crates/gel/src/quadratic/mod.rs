//! The geodesic norm spectrum of the modular group.
//!
//! Primitive hyperbolic conjugacy classes of SL(2, Z) correspond to proper
//! classes of primitive indefinite binary quadratic forms: a class of
//! discriminant d contributes a primitive norm eps_d^2 with multiplicity
//! h(d), where eps_d = (t_d + u_d sqrt(d))/2 comes from the fundamental
//! solution of t^2 - d u^2 = 4. This module builds that multiset — the
//! "pseudo-prime" spectrum — by two independent enumeration strategies and
//! keeps every membership decision in exact integer arithmetic.

pub mod builder;
pub mod curly;
pub mod forms;
pub mod pell;

pub use builder::{build_spectrum, build_spectrum_by_trace, builder_by_name, builders, BuildLimits};
pub use curly::{curly_l, CurlySieve};
pub use forms::{class_number, reduced_forms, QuadraticForm};
pub use pell::pell_fundamental;

use crate::error::{Error, Result};
use std::cmp::Ordering;

/// Membership in the discriminant set: n ≡ 0, 1 (mod 4) and n not a square.
pub fn is_discriminant(n: u64) -> bool {
    if n % 4 > 1 {
        return false;
    }
    let r = n.isqrt();
    r * r != n
}

/// One class of the geodesic spectrum: discriminant, fundamental Pell pair,
/// class number, and the derived regulator/norm.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscriminantRecord {
    pub d: u64,
    pub t: u64,
    pub u: u64,
    pub h: u32,
    /// log eps_d = ln((t + u sqrt(d))/2), always positive.
    pub log_eps: f64,
    /// The primitive norm eps_d^2 = exp(2 log_eps).
    pub norm: f64,
}

impl DiscriminantRecord {
    /// Build a record from an exact fundamental pair, validating the Pell
    /// relation, fundamentality, and h >= 1.
    pub fn new(d: u64, t: u64, u: u64, h: u32) -> Result<Self> {
        if !is_discriminant(d) || d < 5 {
            return Err(Error::validation(format!("d = {d} is not in the discriminant set")));
        }
        let lhs = (t as u128) * (t as u128);
        let rhs = (d as u128) * (u as u128) * (u as u128) + 4;
        if lhs != rhs {
            return Err(Error::validation(format!(
                "({t}, {u}) does not solve t^2 - {d} u^2 = 4"
            )));
        }
        if pell_fundamental(d, u) != Some((t, u)) {
            return Err(Error::validation(format!(
                "({t}, {u}) is not the fundamental solution for d = {d}"
            )));
        }
        if h == 0 {
            return Err(Error::validation(format!("class number for d = {d} must be positive")));
        }
        // Evaluate through u^2 d so records sharing a unit (equal power keys,
        // e.g. d = 13 and d = 117) get bit-identical regulators and norms.
        let log_eps = ((t as f64 + ((u * u * d) as f64).sqrt()) / 2.0).ln();
        let norm = (2.0 * log_eps).exp();
        Ok(DiscriminantRecord { d, t, u, h, log_eps, norm })
    }

    /// Exact algebraic identity of eps_d: two records share the same unit iff
    /// their keys (t, u^2 d) coincide, regardless of the defining d.
    pub fn power_key(&self) -> (u64, u64) {
        (self.t, self.u * self.u * self.d)
    }

    /// Exact comparison of eps = (t + sqrt(m))/2 values via power keys;
    /// no floating point is consulted.
    pub fn cmp_norm_exact(&self, other: &Self) -> Ordering {
        cmp_unit(self.power_key(), other.power_key())
    }
}

/// Compare (t1 + sqrt(m1)) against (t2 + sqrt(m2)) exactly.
fn cmp_unit(a: (u64, u64), b: (u64, u64)) -> Ordering {
    let ((t1, m1), (t2, m2)) = (a, b);
    if t1 == t2 && m1 == m2 {
        return Ordering::Equal;
    }
    if t1 >= t2 && m1 >= m2 {
        return Ordering::Greater;
    }
    if t1 <= t2 && m1 <= m2 {
        return Ordering::Less;
    }
    // Mixed case: reduce to dt + sqrt(m_small) vs sqrt(m_big) and square.
    let (flip, dt, m_small, m_big) = if t1 > t2 {
        (false, (t1 - t2) as u128, m1 as u128, m2 as u128)
    } else {
        (true, (t2 - t1) as u128, m2 as u128, m1 as u128)
    };
    // dt + sqrt(m_small) vs sqrt(m_big):
    //   dt^2 + m_small + 2 dt sqrt(m_small) vs m_big
    let lhs_rational = dt * dt + m_small;
    let ord = if lhs_rational >= m_big {
        Ordering::Greater // strict: equality impossible, m_big non-square side handled below
    } else {
        let rest = m_big - lhs_rational;
        // 2 dt sqrt(m_small) vs rest  <=>  4 dt^2 m_small vs rest^2
        (4 * dt * dt * m_small).cmp(&(rest * rest))
    };
    if flip {
        ord.reverse()
    } else {
        ord
    }
}

/// How a spectrum was enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuildMethod {
    ByDiscriminant,
    ByTrace,
}

impl BuildMethod {
    pub fn name(self) -> &'static str {
        match self {
            BuildMethod::ByDiscriminant => "by-discriminant",
            BuildMethod::ByTrace => "by-trace",
        }
    }
}

/// The complete multiset of primitive norms <= x_max, sorted ascending by
/// norm (exact unit comparison) with ties broken by d.
#[derive(Debug, Clone, PartialEq)]
pub struct NormSpectrum {
    entries: Vec<DiscriminantRecord>,
    x_max: f64,
    build_method: BuildMethod,
}

impl NormSpectrum {
    /// Assemble and validate a spectrum from records; sorts deterministically.
    pub fn from_records(
        mut entries: Vec<DiscriminantRecord>,
        x_max: f64,
        build_method: BuildMethod,
    ) -> Result<Self> {
        entries.sort_by(|a, b| a.cmp_norm_exact(b).then_with(|| a.d.cmp(&b.d)));
        for pair in entries.windows(2) {
            if pair[0].d == pair[1].d {
                return Err(Error::validation(format!(
                    "duplicate discriminant {} in spectrum",
                    pair[0].d
                )));
            }
        }
        if let Some(bad) = entries.iter().find(|r| r.norm > x_max) {
            return Err(Error::validation(format!(
                "record d = {} has norm {} beyond x_max = {}",
                bad.d, bad.norm, x_max
            )));
        }
        Ok(NormSpectrum { entries, x_max, build_method })
    }

    pub fn entries(&self) -> &[DiscriminantRecord] {
        &self.entries
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn build_method(&self) -> BuildMethod {
        self.build_method
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Smallest primitive norm, if any.
    pub fn min_norm(&self) -> Option<f64> {
        self.entries.first().map(|r| r.norm)
    }

    /// Index one past the last entry with norm <= x (entries are sorted).
    pub(crate) fn prefix_len(&self, x: f64) -> usize {
        self.entries.partition_point(|r| r.norm <= x)
    }

    /// Guard for evaluations at x: the spectrum must cover [_, x].
    pub fn check_coverage(&self, x: f64) -> Result<()> {
        if x > self.x_max {
            Err(Error::Coverage { x, x_max: self.x_max })
        } else {
            Ok(())
        }
    }
}

/// All factorizations t^2 - 4 = d u^2 with d in the discriminant set,
/// sorted by d. Every such (d, u) names the u-th solution of the Pell
/// equation for d having trace t.
pub fn decompose_trace(t: u64) -> Vec<(u64, u64)> {
    assert!(t >= 3, "trace must be at least 3");
    let n = t * t - 4;
    let mut out = Vec::new();
    let mut u = 1u64;
    while u * u <= n {
        if n % (u * u) == 0 {
            let d = n / (u * u);
            if is_discriminant(d) {
                out.push((d, u));
            }
        }
        u += 1;
    }
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discriminant_membership() {
        assert!(is_discriminant(5));
        assert!(is_discriminant(8));
        assert!(is_discriminant(12));
        assert!(!is_discriminant(7)); // 3 mod 4
        assert!(!is_discriminant(16)); // square
        assert!(!is_discriminant(1)); // square
        assert!(!is_discriminant(0));
    }

    #[test]
    fn trace_decompositions() {
        assert_eq!(decompose_trace(3), vec![(5, 1)]);
        assert_eq!(decompose_trace(4), vec![(12, 1)]); // 3 = 12/4 is not ≡ 0,1 mod 4
        assert_eq!(decompose_trace(6), vec![(8, 2), (32, 1)]);
        assert_eq!(decompose_trace(18), vec![(5, 8), (20, 4), (80, 2), (320, 1)]);
    }

    #[test]
    fn record_validation() {
        let r = DiscriminantRecord::new(5, 3, 1, 1).unwrap();
        assert!((r.norm - 6.854101966249685).abs() < 1e-12);
        assert!(r.log_eps > 0.0);
        // (7, 3) solves t^2 - 5 u^2 = 4 but is not fundamental.
        assert!(DiscriminantRecord::new(5, 7, 3, 1).is_err());
        assert!(DiscriminantRecord::new(5, 3, 1, 0).is_err());
        assert!(DiscriminantRecord::new(7, 3, 1, 1).is_err());
    }

    #[test]
    fn power_key_identifies_equal_units() {
        // eps_8 = eps_32 = 3 + 2 sqrt(2): keys (6, 32) coincide.
        let a = DiscriminantRecord::new(8, 6, 2, 1).unwrap();
        let b = DiscriminantRecord::new(32, 6, 1, 1).unwrap();
        assert_eq!(a.power_key(), b.power_key());
        assert_eq!(a.cmp_norm_exact(&b), Ordering::Equal);
    }

    #[test]
    fn exact_unit_comparison_orders_mixed_cases() {
        // eps_5 = (3+sqrt5)/2 < eps_12 = 2+sqrt3 < eps_8 = 3+2sqrt2.
        let e5 = DiscriminantRecord::new(5, 3, 1, 1).unwrap();
        let e12 = DiscriminantRecord::new(12, 4, 1, 1).unwrap();
        let e8 = DiscriminantRecord::new(8, 6, 2, 1).unwrap();
        assert_eq!(e5.cmp_norm_exact(&e12), Ordering::Less);
        assert_eq!(e12.cmp_norm_exact(&e8), Ordering::Less);
        assert_eq!(e8.cmp_norm_exact(&e5), Ordering::Greater);
        // Mixed (t up, m down): t=5, m=21 (eps_21) vs t=4, m=12 (eps_12).
        let e21 = DiscriminantRecord::new(21, 5, 1, 1).unwrap();
        assert_eq!(e21.cmp_norm_exact(&e12), Ordering::Greater);
    }
}
