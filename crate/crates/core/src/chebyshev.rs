//! The von Mangoldt function and the classical partial sums built from it:
//! `theta(x)` (log of the primorial), `psi(x)` (one `log p` per prime power),
//! the log-factorial difference `S(x)`, and the divisor-sum identity.
//!
//! `psi` is computed two ways: by enumerating prime powers directly and by
//! the floor-exponent sum over primes. Both routes determine exponents with
//! exact integer power comparisons, never floating log division, so exact
//! powers at the boundary (x = p^m) are never misclassified.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::arith::{is_prime_u64, max_power_exponent, nth_root_floor, small_primes};
use crate::error::{Error, Result};
use crate::kahan::KahanSum;
use crate::sieve::{self, SegmentedPrimes};

/// `log p` when `n = p^k` for a prime p and k >= 1, else 0.
pub fn von_mangoldt(n: u64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    for k in 1..=n.ilog2() {
        let r = nth_root_floor(n, k);
        if r.pow(k) == n && is_prime_u64(r) {
            return (r as f64).ln();
        }
    }
    0.0
}

/// Incremental evaluator for `theta`, `psi` and `pi` at increasing
/// positions, fed by one segmented prime pass.
///
/// Prime powers with exponent >= 2 are tracked in a min-heap seeded with
/// p^2 as each prime p <= sqrt(limit) is consumed, so every `log p` term
/// enters its accumulator in increasing order of position. Restarting an
/// accumulator at any position therefore reproduces bit-identical values:
/// the add sequence is the same.
pub struct ChebyshevAccumulator {
    limit: u64,
    pos: u64,
    primes: Option<SegmentedPrimes>,
    powers: BinaryHeap<Reverse<(u64, u64)>>,
    theta: KahanSum,
    psi_extra: KahanSum,
    prime_count: u64,
}

impl ChebyshevAccumulator {
    /// Ready an accumulator able to advance up to `limit`.
    pub fn new(limit: u64) -> Result<Self> {
        let primes = if limit >= 2 {
            Some(sieve::primes_in(2, limit)?)
        } else {
            None
        };
        Ok(ChebyshevAccumulator {
            limit,
            pos: 0,
            primes,
            powers: BinaryHeap::new(),
            theta: KahanSum::new(),
            psi_extra: KahanSum::new(),
            prime_count: 0,
        })
    }

    /// Shared-base variant for partitioned sweeps.
    pub fn with_base(base: std::sync::Arc<Vec<u64>>, limit: u64) -> Result<Self> {
        let primes = if limit >= 2 {
            Some(sieve::primes_in_shared(base, 2, limit)?)
        } else {
            None
        };
        Ok(ChebyshevAccumulator {
            limit,
            pos: 0,
            primes,
            powers: BinaryHeap::new(),
            theta: KahanSum::new(),
            psi_extra: KahanSum::new(),
            prime_count: 0,
        })
    }

    /// Fold in everything in `(pos, x]`. Positions must not go backwards.
    pub fn advance_to(&mut self, x: u64) -> Result<()> {
        if x < self.pos {
            return Err(Error::Domain {
                what: "chebyshev accumulator",
                value: x,
                requirement: "positions must be nondecreasing",
            });
        }
        if x > self.limit {
            return Err(Error::Domain {
                what: "chebyshev accumulator",
                value: x,
                requirement: "position exceeds accumulator limit",
            });
        }
        if let Some(primes) = &mut self.primes {
            while let Some(p) = primes.peek() {
                if p > x {
                    break;
                }
                primes.next();
                self.theta.add((p as f64).ln());
                self.prime_count += 1;
                if p <= self.limit / p {
                    self.powers.push(Reverse((p * p, p)));
                }
            }
        }
        while let Some(&Reverse((power, p))) = self.powers.peek() {
            if power > x {
                break;
            }
            self.powers.pop();
            self.psi_extra.add((p as f64).ln());
            if power <= self.limit / p {
                self.powers.push(Reverse((power * p, p)));
            }
        }
        self.pos = x;
        Ok(())
    }

    pub fn position(&self) -> u64 {
        self.pos
    }

    /// `theta` at the current position.
    pub fn theta(&self) -> f64 {
        self.theta.value()
    }

    /// `psi` at the current position.
    pub fn psi(&self) -> f64 {
        self.theta.value() + self.psi_extra.value()
    }

    /// `pi` at the current position.
    pub fn prime_count(&self) -> u64 {
        self.prime_count
    }
}

/// `theta(x)`: compensated sum of `log p` over primes `p <= x`.
pub fn theta(x: u64) -> Result<f64> {
    let mut acc = ChebyshevAccumulator::new(x)?;
    acc.advance_to(x)?;
    Ok(acc.theta())
}

/// `psi(x)`: compensated sum of `log p` over prime powers `p^m <= x`,
/// each power contributing once.
pub fn psi(x: u64) -> Result<f64> {
    let mut acc = ChebyshevAccumulator::new(x)?;
    acc.advance_to(x)?;
    Ok(acc.psi())
}

/// `psi(x)` by the floor-exponent route: for each prime `p <= x` add
/// `m * log p` where `p^m <= x < p^(m+1)`.
pub fn psi_via_floor(x: u64) -> Result<f64> {
    if x < 2 {
        return Ok(0.0);
    }
    let mut sum = KahanSum::new();
    let root = x.isqrt();
    for p in sieve::primes_in(2, x)? {
        let m = if p > root {
            1
        } else {
            max_power_exponent(p, x)
        };
        sum.add(m as f64 * (p as f64).ln());
    }
    Ok(sum.value())
}

/// `psi(x)` reassembled from theta at integer roots:
/// `sum over k >= 1 of theta(floor(x^(1/k)))`. Diagnostic route used to
/// cross-check the power decomposition.
pub fn psi_theta_decomposition(x: u64) -> Result<f64> {
    if x < 2 {
        return Ok(0.0);
    }
    let mut sum = KahanSum::new();
    for k in 1..=x.ilog2() {
        let r = nth_root_floor(x, k);
        if r < 2 {
            break;
        }
        sum.add(theta(r)?);
    }
    Ok(sum.value())
}

/// Running evaluator for the log-factorial pair behind `S(x)`:
/// `full = sum of log n for n <= x` and `half = sum of log n for
/// n <= floor(x / 2)`, so `S(x) = full - 2 * half`.
pub struct SAccumulator {
    pos: u64,
    full: KahanSum,
    half: KahanSum,
}

impl SAccumulator {
    pub fn new() -> Self {
        SAccumulator {
            pos: 1,
            full: KahanSum::new(),
            half: KahanSum::new(),
        }
    }

    pub fn advance_to(&mut self, x: u64) {
        debug_assert!(x >= self.pos);
        for n in self.pos + 1..=x {
            self.full.add((n as f64).ln());
            if n % 2 == 0 {
                self.half.add(((n / 2) as f64).ln());
            }
        }
        self.pos = x;
    }

    /// `S` at the current position.
    pub fn s(&self) -> f64 {
        self.full.value() - 2.0 * self.half.value()
    }

    pub fn position(&self) -> u64 {
        self.pos
    }
}

impl Default for SAccumulator {
    fn default() -> Self {
        Self::new()
    }
}

/// `S(x) = sum_{n <= x} log n - 2 * sum_{n <= floor(x/2)} log n`.
pub fn s_function(x: u64) -> f64 {
    let mut acc = SAccumulator::new();
    if x >= 1 {
        acc.advance_to(x);
    }
    acc.s()
}

/// Sum of the von Mangoldt function over the divisors of `n`, evaluated
/// through the factorization `n = p1^e1 ... pl^el` as `sum of ei * log pi`.
/// Equal to `log n` for every n >= 1.
pub fn lambda_divisor_sum(n: u64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let mut rest = n;
    let mut sum = 0.0;
    for &p in small_primes() {
        if p * p > rest {
            break;
        }
        let mut e = 0u32;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        if e > 0 {
            sum += e as f64 * (p as f64).ln();
        }
    }
    if rest > 1 {
        sum += (rest as f64).ln();
    }
    sum
}

/// Joint `theta`/`psi`/`S` values at a list of checkpoints.
#[derive(Debug, Clone)]
pub struct ChebyshevSweep {
    pub xs: Vec<u64>,
    pub theta: Vec<f64>,
    pub psi: Vec<f64>,
    pub s: Vec<f64>,
}

/// Evaluate `theta`, `psi` and `S` at every checkpoint with a single sieve
/// pass instead of one per point. `xs` must be strictly increasing.
pub fn chebyshev_sweep(xs: &[u64]) -> Result<ChebyshevSweep> {
    if xs.is_empty() {
        return Err(Error::Domain {
            what: "chebyshev_sweep",
            value: 0,
            requirement: "at least one checkpoint",
        });
    }
    if xs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain {
            what: "chebyshev_sweep",
            value: 0,
            requirement: "checkpoints strictly increasing",
        });
    }
    let max = *xs.last().unwrap();
    let mut acc = ChebyshevAccumulator::new(max)?;
    let mut s_acc = SAccumulator::new();
    let mut theta = Vec::with_capacity(xs.len());
    let mut psi = Vec::with_capacity(xs.len());
    let mut s = Vec::with_capacity(xs.len());
    for &x in xs {
        acc.advance_to(x)?;
        theta.push(acc.theta());
        psi.push(acc.psi());
        if x >= 2 {
            s_acc.advance_to(x);
        }
        s.push(if x == 0 { 0.0 } else { s_acc.s() });
    }
    Ok(ChebyshevSweep {
        xs: xs.to_vec(),
        theta,
        psi,
        s,
    })
}
