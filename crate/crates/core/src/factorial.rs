//! Factorial valuations, the Wallis-type product, and central binomial
//! coefficient bounds.
//!
//! The binomial comparisons run in log space: `2^(2n)` overflows any fixed
//! width integer near n = 31, while the log forms stay well conditioned to
//! n = 10^4 and beyond. Strictness is judged with a 1e-12 absolute
//! tolerance in log space, which separates genuine equality (the lower
//! bound at n = 1) from rounding noise.

use crate::arith::is_prime_u64;
use crate::error::{Error, Result};
use crate::kahan::KahanSum;
use crate::report::{classify, CheckKind, CheckOutcome, OutcomeClass};

/// Exponent of the prime `p` in `m!`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValuationResult {
    pub p: u64,
    pub m: u64,
    pub ord: u64,
}

/// Legendre's formula: `ord_p(m!) = sum over r >= 1 of floor(m / p^r)`,
/// terminated once `p^r > m`. Errors when `p` is not prime.
pub fn ord_p_factorial(p: u64, m: u64) -> Result<u64> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    let mut ord = 0u64;
    let mut q = p;
    while q <= m {
        ord += m / q;
        match q.checked_mul(p) {
            Some(next) => q = next,
            None => break, // p^(r+1) > u64::MAX >= m
        }
    }
    Ok(ord)
}

/// `P_n = product over i <= n of (2i - 1) / (2i)`, the Wallis-type product
/// equal to `C(2n, n) / 2^(2n)`.
pub fn wallis_product(n: u64) -> f64 {
    let mut p = 1.0_f64;
    for i in 1..=n {
        p *= (2 * i - 1) as f64 / (2 * i) as f64;
    }
    p
}

/// `log C(2n, n)`: exact 128-bit integer arithmetic for n <= 30, otherwise
/// the compensated sum of `log((n + i) / i)`. The two routes agree to
/// 1e-9 relative on the overlap.
pub fn log_central_binomial(n: u64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    if n <= 30 {
        return (central_binomial_exact(n) as f64).ln();
    }
    let mut sum = KahanSum::new();
    for i in 1..=n {
        sum.add(((n + i) as f64 / i as f64).ln());
    }
    sum.value()
}

/// `C(2n, n)` in exact integer arithmetic; valid for n <= 30 (the value at
/// n = 30 still fits u64, intermediates use u128).
pub fn central_binomial_exact(n: u64) -> u64 {
    debug_assert!(n <= 30);
    let mut c: u128 = 1;
    for i in 1..=n as u128 {
        c = c * (n as u128 + i) / i;
    }
    c as u64
}

/// Both central binomial bounds evaluated in log space at one `n`.
#[derive(Debug, Clone, Copy)]
pub struct BinomialBoundCheck {
    pub n: u64,
    pub log_binom: f64,
    /// `log(2^(2n) / (2 sqrt n))`
    pub log_lower: f64,
    /// `log(2^(2n) / sqrt(2n + 1))`
    pub log_upper: f64,
    pub lower_margin: f64,
    pub upper_margin: f64,
    pub lower_class: OutcomeClass,
    pub upper_class: OutcomeClass,
}

/// Check `2^(2n) / (2 sqrt n) < C(2n, n) < 2^(2n) / sqrt(2n + 1)` in log
/// space. At n = 1 the lower comparison is an exact equality and is
/// classified as boundary contact rather than pass or violation.
pub fn check_binomial_bounds(n: u64) -> BinomialBoundCheck {
    assert!(n >= 1, "check_binomial_bounds: n >= 1 required");
    let ln2 = std::f64::consts::LN_2;
    let two_n_log2 = 2.0 * n as f64 * ln2;
    let log_binom = log_central_binomial(n);
    let log_lower = two_n_log2 - ln2 - 0.5 * (n as f64).ln();
    let log_upper = two_n_log2 - 0.5 * ((2 * n + 1) as f64).ln();
    let lower_margin = log_binom - log_lower;
    let upper_margin = log_upper - log_binom;
    BinomialBoundCheck {
        n,
        log_binom,
        log_lower,
        log_upper,
        lower_margin,
        upper_margin,
        lower_class: classify(lower_margin),
        upper_class: classify(upper_margin),
    }
}

/// Check `theta(n) < 2n log 2` given `theta_n = theta(n)`.
pub fn check_theta_bound(n: u64, theta_n: f64) -> CheckOutcome {
    assert!(n >= 1, "check_theta_bound: n >= 1 required");
    let margin = 2.0 * n as f64 * std::f64::consts::LN_2 - theta_n;
    CheckOutcome::new(CheckKind::ThetaUpper, n, margin)
}
