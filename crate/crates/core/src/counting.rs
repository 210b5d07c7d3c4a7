//! Exact prime counting by two independent routes.
//!
//! [`pi_sieve`] enumerates primes with the segmented sieve; [`pi_fast`]
//! runs the sublinear divisor recursion over the O(sqrt x) distinct values
//! of `x / n` (count composites removed per smallest prime factor), taking
//! O(x^(3/4)) time and O(sqrt x) space. The two agree everywhere both are
//! computable and serve as mutual oracles.

use crate::error::{Error, Result};
use crate::sieve::{self, memory_budget_bytes};

/// How a checkpoint count was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMethod {
    Sieve,
    Sublinear,
}

/// One `pi(x)` evaluation tagged with its method.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PiCheckpoint {
    pub x: u64,
    pub count: u64,
    pub method: CountMethod,
}

/// Count primes `<= x` by segmented enumeration.
pub fn pi_sieve(x: u64) -> Result<u64> {
    if x < 2 {
        return Ok(0);
    }
    Ok(sieve::primes_in(2, x)?.count() as u64)
}

/// Count primes `<= x` by the sublinear recursion.
///
/// Maintains S(v) = |{2 <= n <= v : n has no prime factor <= p}| + pi(p)
/// for the distinct values v of `x / k`, removing one smallest-prime-factor
/// class per sieving prime p.
pub fn pi_fast(x: u64) -> Result<u64> {
    if x < 2 {
        return Ok(0);
    }
    let r = x.isqrt();
    let needed = 16 * (r + 1);
    let budget = memory_budget_bytes();
    if needed > budget {
        return Err(Error::Capacity {
            what: "sublinear prime count",
            needed,
            budget,
        });
    }
    // small[i] = S(i); large[k] = S(x / k). Initially S(v) = v - 1.
    let mut small: Vec<u64> = (0..=r).map(|i| i.saturating_sub(1)).collect();
    let mut large: Vec<u64> = (0..=r)
        .map(|k| x.checked_div(k).map_or(0, |v| v - 1))
        .collect();
    for p in 2..=r {
        if small[p as usize] == small[(p - 1) as usize] {
            continue; // p composite: no class to remove
        }
        let count_below = small[(p - 1) as usize]; // pi(p - 1)
        let p2 = p * p;
        let kmax = r.min(x / p2);
        for k in 1..=kmax {
            // x/k/p == x/(k*p); k*p <= x/p so this cannot overflow.
            let kp = k * p;
            let removed = if kp <= r {
                large[kp as usize]
            } else {
                small[(x / kp) as usize]
            };
            large[k as usize] -= removed - count_below;
        }
        let mut v = r;
        while v >= p2 {
            large_to_small(&mut small, v, p, count_below);
            v -= 1;
        }
    }
    Ok(large[1])
}

#[inline]
fn large_to_small(small: &mut [u64], v: u64, p: u64, count_below: u64) {
    let removed = small[(v / p) as usize];
    small[v as usize] -= removed - count_below;
}

/// `pi(b) - pi(a)`: the number of primes in `(a, b]`, counted by segmented
/// enumeration of that interval alone (the range `[0, a]` is never sieved,
/// only the base primes up to `sqrt(b)`).
pub fn pi_interval(a: u64, b: u64) -> Result<u64> {
    if a > b {
        return Err(Error::Range { lo: a, hi: b });
    }
    if a == b {
        return Ok(0);
    }
    Ok(sieve::primes_in(a + 1, b)?.count() as u64)
}
