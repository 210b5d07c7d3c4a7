//! Prime counting and Chebyshev function toolkit.
//!
//! Everything is built on a bit-packed segmented sieve of Eratosthenes
//! ([`sieve`]) and 64-bit unsigned integers. On top of that sit:
//!
//! - [`counting`] — exact `pi(x)` by two independent methods (segmented
//!   enumeration and a sublinear divisor-recursion count) that serve as
//!   mutual oracles, plus interval counts that never re-sieve `[0, a]`.
//! - [`chebyshev`] — the von Mangoldt function, the `theta`/`psi` partial
//!   sums (two computation routes), the log-factorial difference `S(x)`,
//!   and a checkpointed sweep that evaluates all of them in one pass.
//! - [`factorial`] — prime valuations of factorials, the Wallis-type
//!   product, and central binomial coefficient bounds in log space.
//! - [`verify`] — range sweeps that check the prime-ratio window
//!   `log 2 < pi(x) log x / x < 2 log 2`, the `theta <= psi <= pi log x`
//!   chain, and the `S(x)/x` lower bound, with mergeable reports.
//! - [`gaps`] — prime counts between consecutive squares and the floor
//!   bounds conjectured for them, with margin reporting.
//!
//! All floating accumulation uses compensated summation ([`kahan`]); all
//! integer arithmetic that can overflow is checked and surfaces as
//! [`Error::Overflow`], never wraparound.

pub mod arith;
pub mod chebyshev;
pub mod counting;
pub mod error;
pub mod factorial;
pub mod gaps;
pub mod kahan;
pub mod parallel;
pub mod report;
pub mod sieve;
pub mod verify;

pub use error::{Error, Result};
pub use report::{BoundReport, CheckKind, CheckOutcome, OutcomeClass};
