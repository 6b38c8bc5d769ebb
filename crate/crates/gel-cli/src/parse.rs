//! Argument parsers: complex numbers as `a+bi` with a mandatory sign, and
//! geometric grids as `start,factor,count`.

use num_complex::Complex64;

/// Parse `a+bi` / `a-bi`. The sign between the parts is mandatory and the
/// imaginary part always ends in `i`; no expression evaluation.
pub fn parse_complex(text: &str) -> Result<Complex64, String> {
    let body = text
        .strip_suffix('i')
        .ok_or_else(|| format!("`{text}`: expected complex syntax a+bi"))?;
    // Split at the last sign that is not the leading one and not part of an
    // exponent.
    let bytes = body.as_bytes();
    let mut split = None;
    for (idx, &b) in bytes.iter().enumerate().skip(1) {
        if (b == b'+' || b == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
            split = Some(idx);
        }
    }
    let idx = split.ok_or_else(|| format!("`{text}`: missing sign between real and imaginary parts"))?;
    let re: f64 = body[..idx]
        .parse()
        .map_err(|e| format!("`{text}`: bad real part: {e}"))?;
    let im: f64 = body[idx..]
        .parse()
        .map_err(|e| format!("`{text}`: bad imaginary part: {e}"))?;
    Ok(Complex64::new(re, im))
}

/// A geometric grid `start, start*factor, …` with `count` points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub factor: f64,
    pub count: u32,
}

impl GridSpec {
    pub fn values(&self) -> Vec<f64> {
        (0..self.count).map(|k| self.start * self.factor.powi(k as i32)).collect()
    }
}

pub fn parse_grid(text: &str) -> Result<GridSpec, String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("`{text}`: expected start,factor,count"));
    }
    let start: f64 = parts[0].trim().parse().map_err(|e| format!("bad grid start: {e}"))?;
    let factor: f64 = parts[1].trim().parse().map_err(|e| format!("bad grid factor: {e}"))?;
    let count: u32 = parts[2].trim().parse().map_err(|e| format!("bad grid count: {e}"))?;
    if !(start > 0.0) {
        return Err(format!("grid start {start} must be positive"));
    }
    if !(factor > 1.0) {
        return Err(format!("grid factor {factor} must exceed 1 (ascending checkpoints)"));
    }
    Ok(GridSpec { start, factor, count })
}
