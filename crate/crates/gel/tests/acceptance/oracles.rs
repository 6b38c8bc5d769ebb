//! Independent oracles for the acceptance suite. Everything here reaches
//! results by a different route than the library: quadrature instead of
//! series, direct scans instead of factored enumeration, character sums
//! instead of form counts. None of it calls the code paths it checks.

use gel::Complex64;

// ---------------------------------------------------------------------------
// Exponential integral by adaptive quadrature
// ---------------------------------------------------------------------------

/// (e^t - 1)/t, entire; series near 0.
fn expm1_over_t(t: Complex64) -> Complex64 {
    if t.norm() < 1e-3 {
        // 1 + t/2 + t^2/6 + t^3/24 + t^4/120
        let mut acc = Complex64::new(1.0, 0.0);
        let mut term = Complex64::new(1.0, 0.0);
        for k in 2..=8 {
            term *= t / k as f64;
            acc += term;
        }
        return acc;
    }
    ((t.exp()) - 1.0) / t
}

fn simpson(a: f64, b: f64, fa: Complex64, fm: Complex64, fb: Complex64) -> Complex64 {
    (fa + 4.0 * fm + fb) * ((b - a) / 6.0)
}

#[allow(clippy::too_many_arguments)]
fn adaptive(
    f: &impl Fn(f64) -> Complex64,
    a: f64,
    b: f64,
    fa: Complex64,
    fm: Complex64,
    fb: Complex64,
    whole: Complex64,
    tol: f64,
    depth: u32,
) -> Complex64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.norm() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    adaptive(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
        + adaptive(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

fn integrate(f: impl Fn(f64) -> Complex64, a: f64, b: f64, tol: f64) -> Complex64 {
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    let whole = simpson(a, b, fa, fm, fb);
    adaptive(&f, a, b, fa, fm, fb, whole, tol, 42)
}

/// PV exponential integral by quadrature.
///
/// Generic route: Ei(z) = gamma + Log z + int_0^1 (e^{uz} - 1)/(uz) * z du
/// along the straight segment (the integrand is entire, so the path is
/// irrelevant). Deep negative real arguments instead use
/// Ei(x) = -e^{x} int_0^inf e^{-u}/(|x| + u) du, whose positive integrand
/// keeps the relative error under control when Ei is exponentially small.
pub fn ei_quadrature(z: Complex64) -> Complex64 {
    assert!(z.norm() > 0.0);
    if z.im == 0.0 && z.re < -1.0 {
        let y = -z.re;
        let g = |u: f64| Complex64::new((-u).exp() / (y + u), 0.0);
        let hi = 60.0 + y.min(40.0);
        let tail = integrate(g, 0.0, hi, 1e-15 * hi / y);
        return Complex64::new(-(-y).exp() * tail.re, 0.0);
    }
    let seg = |u: f64| expm1_over_t(z * u) * z;
    // Tolerance proportional to the integrand scale, sampled coarsely; an
    // absolute tolerance would force full-depth recursion when e^z is huge.
    let scale = (0..=64)
        .map(|i| seg(i as f64 / 64.0).norm())
        .fold(1e-300, f64::max);
    let integral = integrate(seg, 0.0, 1.0, 1e-15 * scale);
    let log_im = if z.im == 0.0 { 0.0 } else { z.im.atan2(z.re) };
    integral + Complex64::new(gel::specfun::EULER_GAMMA + z.norm().ln(), log_im)
}

// ---------------------------------------------------------------------------
// Class-number oracle: direct scan over the reduced predicate, no divisor
// factoring, cycle partition by repeated reduction.
// ---------------------------------------------------------------------------

fn gcd3(a: i64, b: i64, c: i64) -> i64 {
    fn g(mut a: i64, mut b: i64) -> i64 {
        a = a.abs();
        b = b.abs();
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    }
    g(g(a, b), c)
}

/// Every reduced primitive form of discriminant d, found by scanning the
/// (a, b) rectangle and checking integrality of c and the reduced predicate
/// numerically-exactly via squared comparisons.
fn reduced_forms_scan(d: i64) -> Vec<(i64, i64, i64)> {
    let root = (d as f64).sqrt() as i64 + 1;
    let mut out = Vec::new();
    for b in 1..=root {
        if b * b >= d {
            break;
        }
        for a_abs in 1..=root {
            let num = b * b - d; // = 4ac < 0
            for a in [a_abs, -a_abs] {
                if num % (4 * a) != 0 {
                    continue;
                }
                let c = num / (4 * a);
                if gcd3(a, b, c) != 1 {
                    continue;
                }
                // |sqrt d - 2|a|| < b < sqrt d, squared comparisons.
                let two_a = 2 * a_abs;
                if d >= (b + two_a) * (b + two_a) {
                    continue;
                }
                if two_a > b && (two_a - b) * (two_a - b) >= d {
                    continue;
                }
                out.push((a, b, c));
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn rho_step(d: i64, f: (i64, i64, i64)) -> (i64, i64, i64) {
    let (_, b, c) = f;
    let root = (d as u64).isqrt() as i64;
    let m = 2 * c.abs();
    let r = (-b).rem_euclid(m);
    let bp = r + ((root - r).div_euclid(m)) * m;
    (c, bp, (bp * bp - d) / (4 * c))
}

/// Cycle count of the reduced forms of discriminant d.
pub fn class_number_oracle(d: u64) -> u32 {
    let d = d as i64;
    let forms = reduced_forms_scan(d);
    let mut remaining: std::collections::BTreeSet<(i64, i64, i64)> = forms.iter().copied().collect();
    let mut cycles = 0;
    while let Some(&start) = remaining.iter().next() {
        cycles += 1;
        let mut g = start;
        loop {
            remaining.remove(&g);
            g = rho_step(d, g);
            if g == start {
                break;
            }
        }
    }
    cycles
}

// ---------------------------------------------------------------------------
// Kronecker symbol and the L(1, chi_d) character sum
// ---------------------------------------------------------------------------

/// Kronecker symbol (d/n) for n >= 1.
pub fn kronecker(d: i64, n: u64) -> i64 {
    let mut a = d;
    let mut b = n as i64;
    if b == 0 {
        return i64::from(a.abs() == 1);
    }
    if a % 2 == 0 && b % 2 == 0 {
        return 0;
    }
    let mut result = 1i64;
    // Strip factors of two from b.
    let mut v = 0;
    while b % 2 == 0 {
        b /= 2;
        v += 1;
    }
    if v % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
        result = -result;
    }
    // Now b odd positive; standard reciprocity loop.
    a = a.rem_euclid(b);
    while a != 0 {
        let mut va = 0;
        while a % 2 == 0 {
            a /= 2;
            va += 1;
        }
        if va % 2 == 1 && matches!(b.rem_euclid(8), 3 | 5) {
            result = -result;
        }
        if a.rem_euclid(4) == 3 && b.rem_euclid(4) == 3 {
            result = -result;
        }
        let t = b.rem_euclid(a);
        b = a;
        a = t;
    }
    if b == 1 {
        result
    } else {
        0
    }
}

/// Is d a fundamental discriminant?
pub fn is_fundamental(d: u64) -> bool {
    fn squarefree(n: u64) -> bool {
        let mut n = n;
        let mut p = 2;
        while p * p <= n {
            if n % (p * p) == 0 {
                return false;
            }
            while n % p == 0 {
                n /= p;
            }
            p += 1;
        }
        true
    }
    match d % 4 {
        1 => squarefree(d),
        0 => {
            let m = d / 4;
            matches!(m % 4, 2 | 3) && squarefree(m)
        }
        _ => false,
    }
}

/// L(1, chi_d) by direct character sum over a whole number of periods.
pub fn l_one_chi(d: u64) -> f64 {
    let period = d;
    let terms = (4_000_000 / period) * period;
    let mut acc = 0.0f64;
    let mut comp = 0.0f64;
    for n in 1..=terms {
        let chi = kronecker(d as i64, n) as f64;
        if chi == 0.0 {
            continue;
        }
        let v = chi / n as f64;
        let t = acc + v;
        comp += if acc.abs() >= v.abs() { (acc - t) + v } else { (v - t) + acc };
        acc = t;
    }
    acc + comp
}

