//! Bit-packed sieve of Eratosthenes, monolithic and segmented.
//!
//! Only odd numbers are stored (one flag per odd integer, 2 special-cased),
//! which halves memory. Segmented construction works on fixed-size windows
//! sized for cache residency, so prime streams over `[lo, hi]` never touch
//! `[0, lo)` beyond the base primes up to `sqrt(hi)`.

use std::sync::Arc;

use crate::error::{Error, Result};

/// Flags per segment: 2 MiBit = 256 KiB of packed flags, covering a window
/// of ~4.2 million integers at one flag per odd number.
pub const SEGMENT_FLAGS: usize = 1 << 21;

const WORD_BITS: usize = 64;

/// Allocation cap for sieve tables, from `PNT_MAX_MEMORY_MB` (default 2048).
pub fn memory_budget_bytes() -> u64 {
    let mb = std::env::var("PNT_MAX_MEMORY_MB")
        .ok()
        .and_then(|v| v.parse::<u64>().ok())
        .unwrap_or(2048);
    mb.saturating_mul(1024 * 1024)
}

pub(crate) fn check_budget(what: &'static str, needed: u64) -> Result<()> {
    let budget = memory_budget_bytes();
    if needed > budget {
        return Err(Error::Capacity {
            what,
            needed,
            budget,
        });
    }
    Ok(())
}

/// Immutable primality table for `[0, limit]`, one bit per odd integer.
///
/// Bit `i` of the packed words represents `2i + 1`; the even prime 2 is
/// handled explicitly. Safe to share across threads once built.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    limit: u64,
    words: Box<[u64]>,
}

impl PrimeTable {
    /// Sieve `[0, limit]`. `limit >= 2` required.
    pub fn build(limit: u64) -> Result<PrimeTable> {
        if limit < 2 {
            return Err(Error::Domain {
                what: "build_table",
                value: limit,
                requirement: "limit >= 2",
            });
        }
        let flags = limit.div_ceil(2) as usize; // odd numbers 1, 3, ..., <= limit
        check_budget("prime table", (flags as u64).div_ceil(8))?;
        let words_len = flags.div_ceil(WORD_BITS);
        let mut words = vec![u64::MAX; words_len];
        clear_bit(&mut words, 0); // 1 is not prime
        let mut n = 3u64;
        while n * n <= limit {
            if get_bit(&words, (n / 2) as usize) {
                let mut m = n * n;
                while m <= limit {
                    clear_bit(&mut words, (m / 2) as usize);
                    m += 2 * n;
                }
            }
            n += 2;
        }
        // Mask flags beyond the limit so popcounts are exact.
        let tail = flags % WORD_BITS;
        if tail != 0 {
            *words.last_mut().unwrap() &= (1u64 << tail) - 1;
        }
        Ok(PrimeTable {
            limit,
            words: words.into_boxed_slice(),
        })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// True iff `n` is prime. Errors when `n` is beyond the table.
    pub fn is_prime(&self, n: u64) -> Result<bool> {
        if n > self.limit {
            return Err(Error::Domain {
                what: "is_prime",
                value: n,
                requirement: "n <= table limit",
            });
        }
        Ok(match n {
            0 | 1 => false,
            2 => true,
            _ if n.is_multiple_of(2) => false,
            _ => get_bit(&self.words, (n / 2) as usize),
        })
    }

    /// Number of primes `<= limit`.
    pub fn count(&self) -> u64 {
        1 + self.words.iter().map(|w| w.count_ones() as u64).sum::<u64>()
    }

    /// All primes in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        std::iter::once(2).chain(
            (0..self.words.len() * WORD_BITS)
                .filter(|&i| get_bit(&self.words, i))
                .map(|i| 2 * i as u64 + 1),
        )
    }
}

#[inline]
fn get_bit(words: &[u64], i: usize) -> bool {
    words[i / WORD_BITS] & (1 << (i % WORD_BITS)) != 0
}

#[inline]
fn clear_bit(words: &mut [u64], i: usize) {
    words[i / WORD_BITS] &= !(1 << (i % WORD_BITS));
}

/// Odd base primes up to `isqrt(hi)`, shared by segmented streams so
/// partitioned sweeps sieve the base range once.
pub fn base_primes(hi: u64) -> Result<Arc<Vec<u64>>> {
    let root = hi.isqrt();
    if root < 3 {
        return Ok(Arc::new(Vec::new()));
    }
    let table = PrimeTable::build(root)?;
    Ok(Arc::new(table.iter().skip(1).collect())) // odd primes only
}

/// One sieved window: packed flags for the odd numbers in `[lo, hi)`.
#[derive(Debug)]
pub struct Segment {
    /// First odd number represented (bit 0).
    lo: u64,
    /// Exclusive end of the window.
    hi: u64,
    words: Vec<u64>,
}

impl Segment {
    /// Sieve the odd numbers of `[lo, hi)` against `base`. `lo` must be odd
    /// and `base` must cover `isqrt(hi - 1)`.
    fn sieve(base: &[u64], lo: u64, hi: u64, words: &mut Vec<u64>) -> Segment {
        debug_assert!(lo % 2 == 1 && hi > lo);
        let flags = ((hi - lo) as usize).div_ceil(2);
        debug_assert!(flags <= SEGMENT_FLAGS);
        words.clear();
        words.resize(flags.div_ceil(WORD_BITS), u64::MAX);
        for &p in base {
            let p2 = p * p;
            if p2 >= hi {
                break;
            }
            // First odd multiple of p in [lo, hi), at least p^2.
            let mut m = p2.max(lo.div_ceil(p) * p);
            if m % 2 == 0 {
                m += p;
            }
            while m < hi {
                clear_bit(words, ((m - lo) / 2) as usize);
                m += 2 * p;
            }
        }
        let tail = flags % WORD_BITS;
        if tail != 0 {
            let last = words.len() - 1;
            words[last] &= (1u64 << tail) - 1;
        }
        Segment {
            lo,
            hi,
            words: std::mem::take(words),
        }
    }

    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }
}

/// Ordered stream of the primes in `[lo, hi]`, sieved window by window.
pub struct SegmentedPrimes {
    base: Arc<Vec<u64>>,
    hi: u64,
    pending_two: bool,
    segment: Option<Segment>,
    bit: usize,
    next_window: u64,
    scratch: Vec<u64>,
    peeked: Option<u64>,
}

/// Stream the primes in `[lo, hi]` in increasing order.
///
/// Values below 2 contribute nothing; `lo > hi` is a range error. Both the
/// window `hi - lo` and the base range `sqrt(hi)` must fit the memory
/// budget (one flag per odd integer), which also keeps runaway sweep
/// extents from being accepted.
pub fn primes_in(lo: u64, hi: u64) -> Result<SegmentedPrimes> {
    if lo > hi {
        return Err(Error::Range { lo, hi });
    }
    check_budget("prime stream window", (hi - lo).div_ceil(16))?;
    primes_in_shared(base_primes(hi)?, lo, hi)
}

/// As [`primes_in`], but with caller-provided base primes (covering
/// `isqrt(hi)`) so many streams can share one base sieve.
pub fn primes_in_shared(base: Arc<Vec<u64>>, lo: u64, hi: u64) -> Result<SegmentedPrimes> {
    if lo > hi {
        return Err(Error::Range { lo, hi });
    }
    let lo = lo.max(2);
    Ok(SegmentedPrimes {
        base,
        hi,
        pending_two: lo <= 2 && hi >= 2,
        segment: None,
        bit: 0,
        next_window: lo | 1, // first odd candidate >= lo
        scratch: Vec::new(),
        peeked: None,
    })
}

impl SegmentedPrimes {
    fn advance(&mut self) -> Option<u64> {
        if self.pending_two {
            self.pending_two = false;
            return Some(2);
        }
        loop {
            if let Some(seg) = &self.segment {
                let flags = ((seg.hi - seg.lo) as usize).div_ceil(2);
                while self.bit < flags {
                    let i = self.bit;
                    self.bit += 1;
                    if get_bit(&seg.words, i) {
                        return Some(seg.lo + 2 * i as u64);
                    }
                }
                self.scratch = std::mem::take(&mut self.segment.take().unwrap().words);
            }
            if self.next_window > self.hi {
                return None;
            }
            let lo = self.next_window;
            let span = 2 * SEGMENT_FLAGS as u64;
            let hi = lo.saturating_add(span).min(self.hi.saturating_add(1));
            self.segment = Some(Segment::sieve(&self.base, lo, hi, &mut self.scratch));
            self.bit = 0;
            self.next_window = hi | 1;
        }
    }

    /// Next prime without consuming it.
    pub fn peek(&mut self) -> Option<u64> {
        if self.peeked.is_none() {
            self.peeked = self.advance();
        }
        self.peeked
    }
}

impl Iterator for SegmentedPrimes {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        self.peeked.take().or_else(|| self.advance())
    }
}
