//! Renormalizer strategies for partial Euler products.
//!
//! Each strategy supplies the additive log-correction subtracted from the
//! partial log zeta before exponentiating, valid in its own region of the
//! s-plane. They sit behind a common trait and are selected by name, both
//! from the CLI and from the experiment drivers. For the modular group the
//! exceptional-zero set is exactly {1}, so the sums over interior
//! exceptional zeros that would otherwise enter these corrections are empty.

use crate::counts;
use crate::error::{Error, Result};
use crate::quadratic::NormSpectrum;
use crate::specfun::li_power;
use num_complex::Complex64;

/// Tag naming a renormalizer variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenormTag {
    /// 0 < Re s < 1/2: sum_{v=1..n} Li(theta(x)^{1-vs})/v, n = [1 + 1/(2|sigma|)].
    Case1,
    /// Re s = 1/2: the Case3 formula on the critical line.
    Case2,
    /// Re s > 1/2: Li(theta(x)^{1-s}).
    Case3,
    /// Li(x^{1-s}): the form valid once spectral cancellation is used.
    Ultimate,
    /// No correction (raw partial product).
    None,
}

impl RenormTag {
    pub fn name(self) -> &'static str {
        match self {
            RenormTag::Case1 => "case1",
            RenormTag::Case2 => "case2",
            RenormTag::Case3 => "case3",
            RenormTag::Ultimate => "ultimate",
            RenormTag::None => "none",
        }
    }
}

/// Truncation depth for the Case1 ladder: n = [1 + 1/(2|sigma|)].
pub fn case1_depth(sigma: f64) -> u32 {
    (1.0 + 1.0 / (2.0 * sigma.abs())).floor() as u32
}

fn theta_for_renorm(spectrum: &NormSpectrum, x: f64) -> Result<f64> {
    let theta = counts::theta(spectrum, x)?;
    if theta <= 1.0 {
        return Err(Error::domain(format!(
            "theta(x) = {theta} at x = {x}: spectrum too thin to renormalize"
        )));
    }
    Ok(theta)
}

/// A log-renormalizer variant, applicable in a region of the s-plane.
pub trait Renormalizer: Sync {
    fn tag(&self) -> RenormTag;

    fn name(&self) -> &'static str {
        self.tag().name()
    }

    /// Region admissibility for s.
    fn admits(&self, s: Complex64) -> bool;

    /// The additive log-correction at (s, x).
    fn log_correction(&self, spectrum: &NormSpectrum, s: Complex64, x: f64) -> Result<Complex64>;

    /// Admissibility check with a tagged error.
    fn require_admits(&self, s: Complex64) -> Result<()> {
        if self.admits(s) {
            Ok(())
        } else {
            Err(Error::RegionMismatch { tag: self.name(), s: format!("{s}") })
        }
    }
}

struct Case1;

impl Renormalizer for Case1 {
    fn tag(&self) -> RenormTag {
        RenormTag::Case1
    }

    fn admits(&self, s: Complex64) -> bool {
        s.re > 0.0 && s.re < 0.5
    }

    fn log_correction(&self, spectrum: &NormSpectrum, s: Complex64, x: f64) -> Result<Complex64> {
        self.require_admits(s)?;
        let theta = theta_for_renorm(spectrum, x)?;
        let n = case1_depth(s.re);
        let mut acc = Complex64::new(0.0, 0.0);
        for v in 1..=n {
            let w = Complex64::new(1.0, 0.0) - s * v as f64;
            acc += li_power(theta, w)? / v as f64;
        }
        Ok(acc)
    }
}

struct Case2;

impl Renormalizer for Case2 {
    fn tag(&self) -> RenormTag {
        RenormTag::Case2
    }

    fn admits(&self, s: Complex64) -> bool {
        s.re == 0.5
    }

    fn log_correction(&self, spectrum: &NormSpectrum, s: Complex64, x: f64) -> Result<Complex64> {
        self.require_admits(s)?;
        let theta = theta_for_renorm(spectrum, x)?;
        li_power(theta, Complex64::new(1.0, 0.0) - s)
    }
}

struct Case3;

impl Renormalizer for Case3 {
    fn tag(&self) -> RenormTag {
        RenormTag::Case3
    }

    fn admits(&self, s: Complex64) -> bool {
        s.re > 0.5
    }

    fn log_correction(&self, spectrum: &NormSpectrum, s: Complex64, x: f64) -> Result<Complex64> {
        self.require_admits(s)?;
        let theta = theta_for_renorm(spectrum, x)?;
        li_power(theta, Complex64::new(1.0, 0.0) - s)
    }
}

struct Ultimate;

impl Renormalizer for Ultimate {
    fn tag(&self) -> RenormTag {
        RenormTag::Ultimate
    }

    fn admits(&self, s: Complex64) -> bool {
        // Li(x^{1-s}) is singular exactly at s = 1.
        s.re > 0.0 && !(s.re == 1.0 && s.im == 0.0)
    }

    fn log_correction(&self, _spectrum: &NormSpectrum, s: Complex64, x: f64) -> Result<Complex64> {
        self.require_admits(s)?;
        li_power(x, Complex64::new(1.0, 0.0) - s)
    }
}

struct NoRenorm;

impl Renormalizer for NoRenorm {
    fn tag(&self) -> RenormTag {
        RenormTag::None
    }

    fn admits(&self, _s: Complex64) -> bool {
        true
    }

    fn log_correction(&self, _spectrum: &NormSpectrum, _s: Complex64, _x: f64) -> Result<Complex64> {
        Ok(Complex64::new(0.0, 0.0))
    }
}

static CASE1: Case1 = Case1;
static CASE2: Case2 = Case2;
static CASE3: Case3 = Case3;
static ULTIMATE: Ultimate = Ultimate;
static NONE: NoRenorm = NoRenorm;
static RENORMALIZERS: [&dyn Renormalizer; 5] = [&CASE1, &CASE2, &CASE3, &ULTIMATE, &NONE];

/// All registered renormalizers.
pub fn renormalizers() -> &'static [&'static dyn Renormalizer] {
    &RENORMALIZERS
}

/// Look up a renormalizer by tag.
pub fn renormalizer(tag: RenormTag) -> &'static dyn Renormalizer {
    renormalizers().iter().copied().find(|r| r.tag() == tag).unwrap()
}

/// Look up a renormalizer by registry name.
pub fn renormalizer_by_name(name: &str) -> Option<&'static dyn Renormalizer> {
    renormalizers().iter().copied().find(|r| r.name() == name)
}
