//! Spectrum construction strategies.
//!
//! Two independent enumerations of the same multiset, kept behind a common
//! trait so they can be selected by name at runtime and cross-checked
//! against each other:
//!
//! * `by-discriminant` walks every candidate d and runs a bounded Pell
//!   search per d;
//! * `by-trace` walks traces t <= sqrt(x) + 1/sqrt(x), factors t^2 - 4 as
//!   d u^2, and recovers the fundamental pair per d as the minimal trace
//!   encountered.
//!
//! Both must produce identical sorted record sequences; the acceptance suite
//! enforces this for x up to 1e5.

use super::{
    class_number, decompose_trace, is_discriminant, pell_fundamental, BuildMethod,
    DiscriminantRecord, NormSpectrum,
};
use crate::error::{Error, Result};
use rayon::prelude::*;
use std::collections::HashMap;

/// Caps that keep a build from silently exploding.
#[derive(Debug, Clone, Copy)]
pub struct BuildLimits {
    /// Largest admissible candidate discriminant (the candidate range is
    /// d <= x_max + 4).
    pub max_candidate_d: u64,
}

impl Default for BuildLimits {
    fn default() -> Self {
        // d-enumeration is linear in x_max; 1e8 keeps builds in seconds.
        BuildLimits { max_candidate_d: 100_000_000 }
    }
}

/// Exact-width guard: Pell intermediates d u_max^2 + 4 and the squared unit
/// comparisons must stay inside u128.
const X_MAX_WIDTH: f64 = 1e12;

fn validate_x_max(x_max: f64, limits: &BuildLimits) -> Result<u64> {
    if !x_max.is_finite() || x_max < 6.0 {
        return Err(Error::domain(format!("x_max = {x_max} must be a finite real >= 6")));
    }
    if x_max > X_MAX_WIDTH {
        return Err(Error::ResourceLimit(format!(
            "x_max = {x_max} exceeds the exact-arithmetic width bound {X_MAX_WIDTH}"
        )));
    }
    let d_cap = x_max as u64 + 4;
    if d_cap > limits.max_candidate_d {
        return Err(Error::ResourceLimit(format!(
            "candidate discriminant range {d_cap} exceeds the configured cap {}",
            limits.max_candidate_d
        )));
    }
    Ok(d_cap)
}

/// Compute class numbers for the included discriminants in parallel,
/// keyed deterministically.
fn attach_class_numbers(pairs: Vec<(u64, u64, u64)>) -> Result<Vec<DiscriminantRecord>> {
    pairs
        .into_par_iter()
        .map(|(d, t, u)| {
            let h = class_number(d)?;
            DiscriminantRecord::new(d, t, u, h)
        })
        .collect()
}

/// An interchangeable spectrum enumeration strategy.
pub trait SpectrumBuilder: Sync {
    /// Registry name, also the CLI `--method` value.
    fn name(&self) -> &'static str;

    fn method(&self) -> BuildMethod;

    fn build(&self, x_max: f64, limits: &BuildLimits) -> Result<NormSpectrum>;
}

/// Per-discriminant bounded Pell search.
pub struct ByDiscriminant;

impl SpectrumBuilder for ByDiscriminant {
    fn name(&self) -> &'static str {
        BuildMethod::ByDiscriminant.name()
    }

    fn method(&self) -> BuildMethod {
        BuildMethod::ByDiscriminant
    }

    fn build(&self, x_max: f64, limits: &BuildLimits) -> Result<NormSpectrum> {
        let d_cap = validate_x_max(x_max, limits)?;
        let sqrt_x = x_max.sqrt();
        // Chunked so rayon gets work items without per-d task overhead;
        // ordered collect keeps the result deterministic.
        let chunks: Vec<(u64, u64)> = {
            let step = 1u64 << 14;
            (5..=d_cap).step_by(step as usize).map(|lo| (lo, (lo + step - 1).min(d_cap))).collect()
        };
        let found: Vec<Vec<(u64, u64, u64)>> = chunks
            .par_iter()
            .map(|&(lo, hi)| {
                let mut acc = Vec::new();
                for d in lo..=hi {
                    if !is_discriminant(d) {
                        continue;
                    }
                    let u_max = (2.0 * sqrt_x / (d as f64).sqrt()).floor() as u64 + 1;
                    if let Some((t, u)) = pell_fundamental(d, u_max) {
                        let log_eps = ((t as f64 + ((u * u * d) as f64).sqrt()) / 2.0).ln();
                        if (2.0 * log_eps).exp() <= x_max {
                            acc.push((d, t, u));
                        }
                    }
                }
                acc
            })
            .collect();
        let records = attach_class_numbers(found.into_iter().flatten().collect())?;
        NormSpectrum::from_records(records, x_max, BuildMethod::ByDiscriminant)
    }
}

/// Trace enumeration with fundamental-pair recovery.
pub struct ByTrace;

impl SpectrumBuilder for ByTrace {
    fn name(&self) -> &'static str {
        BuildMethod::ByTrace.name()
    }

    fn method(&self) -> BuildMethod {
        BuildMethod::ByTrace
    }

    fn build(&self, x_max: f64, limits: &BuildLimits) -> Result<NormSpectrum> {
        validate_x_max(x_max, limits)?;
        let sqrt_x = x_max.sqrt();
        // Slack on the trace bound is harmless: the final norm <= x_max test
        // below is the same comparison the other strategy makes.
        let t_cap = (sqrt_x + 1.0 / sqrt_x + 1e-9).floor() as u64;
        let mut fundamental: HashMap<u64, (u64, u64)> = HashMap::new();
        for t in 3..=t_cap {
            for (d, u) in decompose_trace(t) {
                // Traces of unit powers increase strictly, so the first
                // trace seen for d carries its fundamental pair.
                fundamental.entry(d).or_insert((t, u));
            }
        }
        let mut pairs: Vec<(u64, u64, u64)> = fundamental
            .into_iter()
            .filter(|&(d, (t, u))| {
                let log_eps = ((t as f64 + ((u * u * d) as f64).sqrt()) / 2.0).ln();
                (2.0 * log_eps).exp() <= x_max
            })
            .map(|(d, (t, u))| (d, t, u))
            .collect();
        pairs.sort_unstable();
        let records = attach_class_numbers(pairs)?;
        NormSpectrum::from_records(records, x_max, BuildMethod::ByTrace)
    }
}

static BY_DISCRIMINANT: ByDiscriminant = ByDiscriminant;
static BY_TRACE: ByTrace = ByTrace;
static BUILDERS: [&dyn SpectrumBuilder; 2] = [&BY_DISCRIMINANT, &BY_TRACE];

/// All registered strategies.
pub fn builders() -> &'static [&'static dyn SpectrumBuilder] {
    &BUILDERS
}

/// Look up a strategy by its registry name.
pub fn builder_by_name(name: &str) -> Option<&'static dyn SpectrumBuilder> {
    builders().iter().copied().find(|b| b.name() == name)
}

/// Build via the per-discriminant strategy with default limits.
pub fn build_spectrum(x_max: f64) -> Result<NormSpectrum> {
    ByDiscriminant.build(x_max, &BuildLimits::default())
}

/// Build via the trace strategy with default limits.
pub fn build_spectrum_by_trace(x_max: f64) -> Result<NormSpectrum> {
    ByTrace.build(x_max, &BuildLimits::default())
}
