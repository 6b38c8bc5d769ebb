//! CSV emission with a `#`-prefixed metadata header.
//!
//! Everything below the comment block is the body; identical inputs must
//! produce byte-identical bodies regardless of thread count, so all values
//! land here already computed through the library's deterministic
//! reductions.

use std::io::Write;
use std::path::Path;

pub struct Report {
    meta: Vec<String>,
    columns: String,
    rows: Vec<String>,
    trailers: Vec<String>,
}

impl Report {
    pub fn new(argv: &[String], columns: &str) -> Self {
        let mut meta = vec![
            format!("# gel {}", env!("CARGO_PKG_VERSION")),
            format!("# command: {}", argv.join(" ")),
        ];
        meta.push("# format: csv".to_string());
        Report { meta, columns: columns.to_string(), rows: Vec::new(), trailers: Vec::new() }
    }

    pub fn meta(&mut self, line: impl AsRef<str>) {
        self.meta.push(format!("# {}", line.as_ref()));
    }

    pub fn dataset_hash(&mut self, name: &str, bytes: &[u8]) {
        self.meta.push(format!("# dataset {name}: fnv1a64={:016x}", gel::datastore::fnv1a64(bytes)));
    }

    pub fn row(&mut self, cells: &[String]) {
        self.rows.push(cells.join(","));
    }

    pub fn trailer(&mut self, line: impl AsRef<str>) {
        self.trailers.push(format!("# {}", line.as_ref()));
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for m in &self.meta {
            out.push_str(m);
            out.push('\n');
        }
        out.push_str(&self.columns);
        out.push('\n');
        for r in &self.rows {
            out.push_str(r);
            out.push('\n');
        }
        for t in &self.trailers {
            out.push_str(t);
            out.push('\n');
        }
        out
    }

    pub fn write(&self, out: Option<&Path>) -> std::io::Result<()> {
        let text = self.render();
        match out {
            Some(path) => std::fs::write(path, text),
            None => {
                let stdout = std::io::stdout();
                let mut lock = stdout.lock();
                lock.write_all(text.as_bytes())
            }
        }
    }
}

/// Shortest round-trip decimal for a float cell.
pub fn fmt(v: f64) -> String {
    format!("{v}")
}

/// Fixed formatter for complex cells: two separate columns are preferred,
/// this is for labels.
pub fn fmt_complex_label(v: num_complex::Complex64) -> String {
    if v.im >= 0.0 {
        format!("{}+{}i", v.re, v.im)
    } else {
        format!("{}{}i", v.re, v.im)
    }
}
