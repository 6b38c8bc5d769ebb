//! Compensated (Neumaier) accumulation.
//!
//! Counting functions and log-products sum tens of thousands of terms of
//! wildly different magnitude; plain `f64` folds lose digits and, worse,
//! depend on partitioning. All reductions in this crate accumulate through
//! these types in a fixed order so results are reproducible bit-for-bit
//! regardless of thread count.

use num_complex::Complex64;

/// Neumaier variant of Kahan summation: exact for the running compensation
/// even when a term exceeds the running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for Neumaier {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Neumaier::new();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

/// Componentwise compensated accumulator for complex sums.
#[derive(Debug, Clone, Copy, Default)]
pub struct ComplexNeumaier {
    re: Neumaier,
    im: Neumaier,
}

impl ComplexNeumaier {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, v: Complex64) {
        self.re.add(v.re);
        self.im.add(v.im);
    }

    #[inline]
    pub fn total(&self) -> Complex64 {
        Complex64::new(self.re.total(), self.im.total())
    }
}
