//! Compensated floating-point accumulation.
//!
//! Sweeps add up to ~10^7 logarithm terms; naive summation loses about
//! three digits at that length, Kahan keeps the error at a few ulps.

/// Classic Kahan compensated accumulator.
#[derive(Clone, Copy, Debug, Default)]
pub struct KahanSum {
    sum: f64,
    err: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, v: f64) {
        let y = v - self.err;
        let t = self.sum + y;
        self.err = (t - self.sum) - y;
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum
    }
}

/// Error-free transformation: `a + b = s + e` exactly, with `s = fl(a + b)`.
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bv = s - a;
    let e = (a - (s - bv)) + (b - bv);
    (s, e)
}

/// Sum a handful of terms in double-double precision and round once at the
/// end. Used where a plain `f64` sum lands close enough to an integer that
/// a subsequent floor could be off by one.
pub fn extended_sum(terms: &[f64]) -> f64 {
    let mut hi = 0.0_f64;
    let mut lo = 0.0_f64;
    for &t in terms {
        let (s, e) = two_sum(hi, t);
        hi = s;
        lo += e;
    }
    hi + lo
}
