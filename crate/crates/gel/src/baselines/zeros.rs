//! Nontrivial zeta-zero ordinates as an input dataset.

use crate::error::{Error, Result};
use std::path::Path;

/// Ordinates gamma of nontrivial zeros rho = 1/2 + i gamma, ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct ZerosDataset {
    pub gammas: Vec<f64>,
}

/// The first ordinate, used as the trust anchor for any loaded file.
pub const FIRST_ZERO: f64 = 14.134725;

impl ZerosDataset {
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::Parse { line: 1, message: "empty file".to_string() })?;
        if header.trim() != "gel-zeros v1" {
            return Err(Error::Parse {
                line: 1,
                message: format!("expected `gel-zeros v1` header, found `{header}`"),
            });
        }
        let mut gammas = Vec::new();
        for (idx, raw) in lines {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let g: f64 = line
                .parse()
                .map_err(|e| Error::Parse { line: line_no, message: format!("bad ordinate: {e}") })?;
            if !(g > 0.0) || !g.is_finite() {
                return Err(Error::Validation(format!(
                    "line {line_no}: ordinate must be positive, got {g}"
                )));
            }
            if let Some(&prev) = gammas.last() {
                if g <= prev {
                    return Err(Error::Validation(format!(
                        "line {line_no}: ordinates must be strictly ascending ({g} after {prev})"
                    )));
                }
            }
            gammas.push(g);
        }
        let ds = ZerosDataset { gammas };
        ds.validate_anchor()?;
        Ok(ds)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn bundled() -> Self {
        Self::parse(include_str!("../../data/riemann_zeros.tsv"))
            .expect("bundled zeros dataset must parse")
    }

    fn validate_anchor(&self) -> Result<()> {
        match self.gammas.first() {
            None => Ok(()),
            Some(&g) if (g - FIRST_ZERO).abs() <= 1e-3 => Ok(()),
            Some(&g) => Err(Error::Validation(format!(
                "first ordinate {g} is not within 1e-3 of {FIRST_ZERO}"
            ))),
        }
    }

    pub fn len(&self) -> usize {
        self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gammas.is_empty()
    }
}
