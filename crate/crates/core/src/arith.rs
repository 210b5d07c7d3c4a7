//! Small integer helpers: exact roots, checked powers, trial-division
//! primality for single values.

use std::sync::OnceLock;

use crate::sieve::PrimeTable;

/// Odd-prime cache for trial division; covers factor candidates up to
/// 65536, i.e. exact factorization of any n < 2^32.
pub(crate) fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        PrimeTable::build(1 << 16)
            .expect("small prime table fits any sane budget")
            .iter()
            .collect()
    })
}

/// Trial-division primality, exact for all n < 2^32 (and for larger n whose
/// least factor is below 2^16).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in small_primes() {
        if p * p > n {
            return true;
        }
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    // No factor <= 2^16; fall back to odd trial division for huge inputs.
    let mut d = 65537_u64;
    while d.checked_mul(d).is_some_and(|sq| sq <= n) {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Largest r with r^k <= x, computed with an f64 seed and exact integer
/// correction so boundary cases (x an exact power) never misround.
pub fn nth_root_floor(x: u64, k: u32) -> u64 {
    if k == 0 {
        panic!("nth_root_floor: k must be >= 1");
    }
    if k == 1 || x <= 1 {
        return x;
    }
    let mut r = (x as f64).powf(1.0 / k as f64).round() as u64;
    while r > 0 && !pow_fits(r, k, x) {
        r -= 1;
    }
    while pow_fits(r + 1, k, x) {
        r += 1;
    }
    r
}

/// True iff r^k <= x without overflowing.
fn pow_fits(r: u64, k: u32, x: u64) -> bool {
    let mut acc: u64 = 1;
    for _ in 0..k {
        match acc.checked_mul(r) {
            Some(v) if v <= x => acc = v,
            _ => return false,
        }
    }
    true
}

/// Largest exponent m >= 1 with p^m <= x, by repeated checked
/// multiplication (never by floating log division, which misclassifies
/// exact powers near the boundary). Requires p >= 2 and p <= x.
pub fn max_power_exponent(p: u64, x: u64) -> u32 {
    debug_assert!(p >= 2 && p <= x);
    let mut m = 1u32;
    let mut pw = p;
    while let Some(next) = pw.checked_mul(p) {
        if next > x {
            break;
        }
        pw = next;
        m += 1;
    }
    m
}
