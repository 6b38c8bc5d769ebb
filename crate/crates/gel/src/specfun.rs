//! Complex exponential integral and the logarithmic integral of powers.
//!
//! Ei is defined on the cut plane by the principal branch of
//! gamma + log z + sum z^n / (n n!); on the negative real axis the real part
//! is the Cauchy principal value and the function is kept real there, so
//! conj(ei(z)) = ei(conj z) holds everywhere. Li(x^w) = Ei(w ln x) extends
//! the principal-value logarithmic integral to complex exponents.
//!
//! Evaluation switches at |z| = 34 between the Taylor series and the
//! divergent asymptotic expansion e^z/z * sum k!/z^k with optimal
//! truncation; off the real axis the asymptotic branch carries the constant
//! i pi sign(Im z) of the principal branch. The Taylor sum runs in
//! double-double arithmetic: near the imaginary axis the terms reach e^|z|
//! while the sum stays O(log |z|), and plain f64 would surrender ten digits
//! to that cancellation.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Euler's constant to full binary64 precision.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const EULER_GAMMA_LO: f64 = -3.939_348_790_991_759_6e-17;

/// Series/asymptotic switch radius.
const SWITCH_RADIUS: f64 = 34.0;

// ---------------------------------------------------------------------------
// Double-double helpers (Dekker/Knuth): enough of an extended-precision
// kernel for one alternating series with e^34-scale intermediates.
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, Default)]
struct Dd {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    Dd { hi: s, lo: err }
}

#[inline]
fn two_prod(a: f64, b: f64) -> Dd {
    let p = a * b;
    let err = a.mul_add(b, -p);
    Dd { hi: p, lo: err }
}

impl Dd {
    #[inline]
    fn from(v: f64) -> Dd {
        Dd { hi: v, lo: 0.0 }
    }

    #[inline]
    fn add(self, other: Dd) -> Dd {
        let s = two_sum(self.hi, other.hi);
        let lo = s.lo + self.lo + other.lo;
        let r = two_sum(s.hi, lo);
        Dd { hi: r.hi, lo: r.lo }
    }

    #[inline]
    fn mul(self, other: Dd) -> Dd {
        let p = two_prod(self.hi, other.hi);
        let lo = p.lo + self.hi * other.lo + self.lo * other.hi;
        let r = two_sum(p.hi, lo);
        Dd { hi: r.hi, lo: r.lo }
    }

    #[inline]
    fn div_u64(self, n: u64) -> Dd {
        let n = n as f64;
        let q1 = self.hi / n;
        let p = two_prod(q1, n);
        let r = (self.hi - p.hi) - p.lo + self.lo;
        let q2 = r / n;
        let s = two_sum(q1, q2);
        Dd { hi: s.hi, lo: s.lo }
    }

    #[inline]
    fn value(self) -> f64 {
        self.hi + self.lo
    }
}

#[derive(Clone, Copy, Debug, Default)]
struct DdComplex {
    re: Dd,
    im: Dd,
}

impl DdComplex {
    #[inline]
    fn from(z: Complex64) -> DdComplex {
        DdComplex { re: Dd::from(z.re), im: Dd::from(z.im) }
    }

    #[inline]
    fn add(self, other: DdComplex) -> DdComplex {
        DdComplex { re: self.re.add(other.re), im: self.im.add(other.im) }
    }

    #[inline]
    fn mul(self, other: DdComplex) -> DdComplex {
        let ac = self.re.mul(other.re);
        let bd = self.im.mul(other.im);
        let ad = self.re.mul(other.im);
        let bc = self.im.mul(other.re);
        DdComplex {
            re: ac.add(Dd { hi: -bd.hi, lo: -bd.lo }),
            im: ad.add(bc),
        }
    }

    #[inline]
    fn div_u64(self, n: u64) -> DdComplex {
        DdComplex { re: self.re.div_u64(n), im: self.im.div_u64(n) }
    }

    #[inline]
    fn norm_estimate(self) -> f64 {
        self.re.hi.abs() + self.im.hi.abs()
    }
}

// ---------------------------------------------------------------------------
// Ei
// ---------------------------------------------------------------------------

/// Taylor-series evaluation, valid for |z| <= ~40. Exposed so the
/// series/asymptotic agreement can be cross-checked on the switch annulus.
pub fn ei_series(z: Complex64) -> Complex64 {
    // gamma + log z + sum_{n>=1} z^n/(n n!), principal log; on the negative
    // real axis the imaginary part of the log is dropped (principal value).
    let zd = DdComplex::from(z);
    let mut term = zd; // z^n / n!
    let mut acc = zd; // n = 1 contribution
    let mut n: u64 = 1;
    loop {
        n += 1;
        term = term.mul(zd).div_u64(n);
        let contrib = term.div_u64(n);
        acc = acc.add(contrib);
        if contrib.norm_estimate() < 1e-40 * (1.0 + acc.norm_estimate()) || n > 220 {
            break;
        }
    }
    let log_re = z.norm().ln();
    let log_im = if z.im == 0.0 {
        0.0 // principal value on the cut and the positive axis
    } else {
        z.im.atan2(z.re)
    };
    let re = acc.re.add(Dd { hi: EULER_GAMMA, lo: EULER_GAMMA_LO }).add(Dd::from(log_re));
    let im = acc.im.add(Dd::from(log_im));
    Complex64::new(re.value(), im.value())
}

/// Optimally truncated asymptotic expansion e^z/z * sum_k k!/z^k, valid for
/// |z| >= ~30, plus the i pi branch constant off the real axis.
pub fn ei_asymptotic(z: Complex64) -> Complex64 {
    let k_opt = z.norm().floor() as u32;
    let mut sum = Complex64::new(1.0, 0.0);
    let mut term = Complex64::new(1.0, 0.0);
    let mut prev = f64::INFINITY;
    for k in 1..=k_opt.min(300) {
        term = term * (k as f64) / z;
        let mag = term.norm();
        if mag > prev {
            break; // divergence point reached
        }
        sum += term;
        prev = mag;
        if mag < 1e-18 * sum.norm() {
            break;
        }
    }
    let mut v = z.exp() / z * sum;
    if z.im > 0.0 {
        v += Complex64::new(0.0, PI);
    } else if z.im < 0.0 {
        v -= Complex64::new(0.0, PI);
    }
    v
}

/// E1(y) for y >= 4 by the standard continued fraction (modified Lentz).
/// On the deep negative axis Ei(x) = -E1(-x) is exponentially small and the
/// Taylor sum cannot deliver relative accuracy there, so the fraction takes
/// over.
fn e1_continued_fraction(y: f64) -> f64 {
    const FPMIN: f64 = 1e-300;
    let mut b = y + 1.0;
    let mut c = 1.0 / FPMIN;
    let mut d = 1.0 / b;
    let mut h = d;
    for i in 1..200u32 {
        let a = -((i * i) as f64);
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        let del = c * d;
        h *= del;
        if (del - 1.0).abs() < 1e-16 {
            break;
        }
    }
    h * (-y).exp()
}

/// Principal-branch exponential integral; real (principal value) on the
/// real axis, including the cut.
pub fn ei(z: Complex64) -> Result<Complex64> {
    if z.re == 0.0 && z.im == 0.0 {
        return Err(Error::domain("Ei is singular at z = 0".to_string()));
    }
    let v = if z.im == 0.0 && z.re <= -4.0 {
        Complex64::new(-e1_continued_fraction(-z.re), 0.0)
    } else if z.norm() <= SWITCH_RADIUS {
        ei_series(z)
    } else {
        ei_asymptotic(z)
    };
    if !(v.re.is_finite() && v.im.is_finite()) {
        return Err(Error::domain(format!("Ei overflowed at z = {z}")));
    }
    Ok(v)
}

/// Li(x^w) = Ei(w ln x): the principal-value logarithmic integral of a
/// complex power of x.
pub fn li_power(x: f64, w: Complex64) -> Result<Complex64> {
    if !(x > 1.0) {
        return Err(Error::domain(format!("li_power requires x > 1, got {x}")));
    }
    if w.re == 0.0 && w.im == 0.0 {
        return Err(Error::domain("li_power requires w != 0".to_string()));
    }
    ei(w * x.ln())
}

/// Difference of the two logarithmic-integral terms whose joint limit as
/// s -> 1/2+ is log 2, evaluated along a sequence of s values and linearly
/// extrapolated to s = 1/2.
///
/// The combination evaluated is Li(theta_x^{1-2s}) - Li(x^{1/2-s}); in this
/// orientation the limit is +log 2 (the reversed order converges to -log 2).
pub fn log2_limit_check(x: f64, theta_x: f64, s_seq: &[f64]) -> Result<f64> {
    if x < 1e3 {
        return Err(Error::domain(format!("log2_limit_check requires x >= 1e3, got {x}")));
    }
    if !(theta_x > 1.0) {
        return Err(Error::domain(format!(
            "log2_limit_check requires theta(x) > 1, got {theta_x}"
        )));
    }
    if s_seq.is_empty() {
        return Err(Error::domain("empty s sequence".to_string()));
    }
    let mut values = Vec::with_capacity(s_seq.len());
    for &s in s_seq {
        if s <= 0.5 {
            return Err(Error::domain(format!(
                "s = {s} must approach 1/2 strictly from above"
            )));
        }
        let a = ei(Complex64::new((1.0 - 2.0 * s) * theta_x.ln(), 0.0))?;
        let b = ei(Complex64::new((0.5 - s) * x.ln(), 0.0))?;
        values.push((s - 0.5, a.re - b.re));
    }
    let n = values.len();
    if n == 1 {
        return Ok(values[0].1);
    }
    // Linear extrapolation to delta = 0 from the two smallest deltas.
    let mut sorted = values;
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (d0, v0) = sorted[0];
    let (d1, v1) = sorted[1];
    if d1 == d0 {
        return Ok(v0);
    }
    Ok(v0 + (v0 - v1) * d0 / (d1 - d0))
}
