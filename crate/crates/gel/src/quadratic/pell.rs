//! Bounded Pell solver for t^2 - d u^2 = 4.
//!
//! Only solutions with regulator below a known cap are ever needed, so an
//! ascending search in u with an exact perfect-square test beats continued
//! fractions here: no period bookkeeping, no chance of a rounding slip.

/// Exact integer square root test: returns `Some(r)` when `n` is a perfect
/// square `r*r`.
#[inline]
pub fn exact_sqrt(n: u128) -> Option<u64> {
    let r = n.isqrt();
    if r * r == n {
        Some(r as u64)
    } else {
        None
    }
}

/// Fundamental solution of t^2 - d u^2 = 4 with u bounded by `u_max`.
///
/// Scans u = 1, 2, … and returns the first (t, u) making d u^2 + 4 a perfect
/// square; solutions to the Pell equation are powers of the fundamental unit,
/// so the smallest admissible u is the fundamental one. Returns `None` when
/// no solution exists with u <= u_max. All arithmetic is exact in `u128`.
pub fn pell_fundamental(d: u64, u_max: u64) -> Option<(u64, u64)> {
    let d = d as u128;
    for u in 1..=u_max {
        let uu = u as u128;
        let t2 = d * uu * uu + 4;
        if let Some(t) = exact_sqrt(t2) {
            return Some((t, u));
        }
    }
    None
}
