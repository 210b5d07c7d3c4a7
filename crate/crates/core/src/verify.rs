//! Range sweeps for the prime-ratio window, the `theta <= psi <= pi log x`
//! chain, the `S(x)/x` lower bound, and the factorial-lemma bounds.
//!
//! Every sweep partitions its range into chunks whose boundaries depend
//! only on the range. A chunk rebuilds its prefix state from scratch in
//! the same order a sequential pass would use, so per-x values (and thus
//! the merged report) are identical for any worker count; workers change
//! wall time only.

use std::f64::consts::LN_2;

use crate::chebyshev::{ChebyshevAccumulator, SAccumulator};
use crate::counting::pi_fast;
use crate::error::{Error, Result};
use crate::factorial::check_theta_bound;
use crate::kahan::KahanSum;
use crate::parallel::{chunk_ranges, run_chunked};
use crate::report::{BoundReport, CheckKind, CheckOutcome};
use crate::sieve::{base_primes, primes_in_shared};

/// Which x values a sweep evaluates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SamplingPlan {
    /// Every integer in `[lo, hi]`.
    EveryInteger,
    /// `lo, lo + k, lo + 2k, ...`
    Stride(u64),
    /// `lo, max(x + 1, floor(x * r)), ...` — for sweeps far past 10^7
    /// where exhaustive checking is wasteful.
    Geometric(f64),
}

impl SamplingPlan {
    pub fn validate(&self) -> Result<()> {
        match *self {
            SamplingPlan::Stride(0) => Err(Error::Domain {
                what: "sampling plan",
                value: 0,
                requirement: "stride >= 1",
            }),
            SamplingPlan::Geometric(r) if r <= 1.0 || !r.is_finite() => Err(Error::Domain {
                what: "sampling plan",
                value: 0,
                requirement: "geometric ratio > 1",
            }),
            _ => Ok(()),
        }
    }

    pub fn is_exhaustive(&self) -> bool {
        matches!(self, SamplingPlan::EveryInteger | SamplingPlan::Stride(1))
    }

    /// The sampled positions for non-exhaustive plans.
    pub fn materialize(&self, lo: u64, hi: u64) -> Vec<u64> {
        match *self {
            SamplingPlan::EveryInteger => (lo..=hi).collect(),
            SamplingPlan::Stride(k) => (lo..=hi).step_by(k as usize).collect(),
            SamplingPlan::Geometric(r) => {
                let mut xs = Vec::new();
                let mut x = lo;
                while x <= hi {
                    xs.push(x);
                    x = (x + 1).max((x as f64 * r) as u64);
                }
                xs
            }
        }
    }
}

/// The three normalized prime ratios at one point, all computed from a
/// single sieve pass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioSample {
    pub x: u64,
    pub pi: u64,
    /// `pi(x) * log x / x`
    pub pi_ratio: f64,
    /// `theta(x) / x`
    pub theta_ratio: f64,
    /// `psi(x) / x`
    pub psi_ratio: f64,
}

/// The canonical evaluation of `pi(x) log x / x`; sweeps and single-point
/// sampling share it so re-evaluating an extremum reproduces it bitwise.
#[inline]
pub fn pi_ratio_value(pi: u64, x: u64) -> f64 {
    pi as f64 * (x as f64).ln() / x as f64
}

/// Evaluate one [`RatioSample`]. `x >= 2` required (`log x` must be positive).
pub fn ratio_sample(x: u64) -> Result<RatioSample> {
    let mut samples = ratio_samples_at(&[x])?;
    Ok(samples.pop().unwrap())
}

/// [`RatioSample`]s at strictly increasing positions, one sieve pass total.
pub fn ratio_samples_at(xs: &[u64]) -> Result<Vec<RatioSample>> {
    if xs.is_empty() || xs[0] < 2 {
        return Err(Error::Domain {
            what: "ratio_sample",
            value: xs.first().copied().unwrap_or(0),
            requirement: "x >= 2",
        });
    }
    if xs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain {
            what: "ratio_sample",
            value: 0,
            requirement: "positions strictly increasing",
        });
    }
    let mut acc = ChebyshevAccumulator::new(*xs.last().unwrap())?;
    xs.iter()
        .map(|&x| {
            acc.advance_to(x)?;
            Ok(RatioSample {
                x,
                pi: acc.prime_count(),
                pi_ratio: pi_ratio_value(acc.prime_count(), x),
                theta_ratio: acc.theta() / x as f64,
                psi_ratio: acc.psi() / x as f64,
            })
        })
        .collect()
}

fn window_outcomes(x: u64, ratio: f64) -> [CheckOutcome; 2] {
    [
        CheckOutcome::new(CheckKind::RatioLower, x, ratio - LN_2),
        CheckOutcome::new(CheckKind::RatioUpper, x, 2.0 * LN_2 - ratio),
    ]
}

/// A ratio sweep: the merged report plus the sample rows worth emitting
/// (all samples for sampled plans; extrema, boundary and violation points
/// for exhaustive ones).
#[derive(Debug, Clone)]
pub struct RatioVerification {
    pub report: BoundReport,
    pub samples: Vec<RatioSample>,
}

/// Check `log 2 < pi(x) log x / x < 2 log 2` at every sampled x in
/// `[lo, hi]`. `lo >= 3` required: x = 2 sits below the window and x = 4
/// touches it, so the report distinguishes boundary contact from
/// violation rather than asserting a threshold.
pub fn verify_ratio_window(
    lo: u64,
    hi: u64,
    plan: &SamplingPlan,
    workers: usize,
) -> Result<RatioVerification> {
    if lo < 3 {
        return Err(Error::Domain {
            what: "verify_ratio_window",
            value: lo,
            requirement: "lo >= 3",
        });
    }
    if lo > hi {
        return Err(Error::Range { lo, hi });
    }
    plan.validate()?;

    if !plan.is_exhaustive() {
        let xs = plan.materialize(lo, hi);
        let samples = ratio_samples_at(&xs)?;
        let mut report = BoundReport::empty(lo, hi);
        for s in &samples {
            for o in window_outcomes(s.x, s.pi_ratio) {
                report.record(o);
            }
            report.observe(s.x, s.pi_ratio);
            report.samples_checked += 1;
        }
        return Ok(RatioVerification { report, samples });
    }

    let base = base_primes(hi)?;
    let chunks = chunk_ranges(lo, hi, 4096);
    let reports = run_chunked(&chunks, workers, |a, b| {
        let mut report = BoundReport::empty(a, b);
        let mut count = pi_fast(a - 1)?;
        let mut primes = primes_in_shared(base.clone(), a, b)?;
        for x in a..=b {
            if primes.peek() == Some(x) {
                primes.next();
                count += 1;
            }
            let ratio = pi_ratio_value(count, x);
            for o in window_outcomes(x, ratio) {
                report.record(o);
            }
            report.observe(x, ratio);
            report.samples_checked += 1;
        }
        Ok(report)
    })?;
    let report = reports
        .into_iter()
        .reduce(BoundReport::merge)
        .expect("at least one chunk");

    let mut xs: Vec<u64> = report
        .violations
        .iter()
        .chain(report.boundary_contacts.iter())
        .map(|o| o.x)
        .collect();
    if let Some(e) = report.extrema {
        xs.push(e.argmin_x);
        xs.push(e.argmax_x);
    }
    xs.sort_unstable();
    xs.dedup();
    let samples = ratio_samples_at(&xs)?;
    Ok(RatioVerification { report, samples })
}

fn chain_outcomes(x: u64, theta: f64, psi: f64, pi: u64, s: f64) -> [CheckOutcome; 3] {
    [
        CheckOutcome::new(CheckKind::ThetaLePsi, x, psi - theta),
        CheckOutcome::new(CheckKind::PsiLePiLog, x, pi as f64 * (x as f64).ln() - psi),
        CheckOutcome::new(CheckKind::SLePsi, x, psi - s),
    ]
}

/// The inequality chain at a single point: `theta(x) <= psi(x)`,
/// `psi(x) <= pi(x) log x` and `S(x) <= psi(x)`, each with its margin.
pub fn verify_chain(x: u64) -> Result<Vec<CheckOutcome>> {
    if x < 2 {
        return Err(Error::Domain {
            what: "verify_chain",
            value: x,
            requirement: "x >= 2",
        });
    }
    let mut acc = ChebyshevAccumulator::new(x)?;
    acc.advance_to(x)?;
    let mut s_acc = SAccumulator::new();
    s_acc.advance_to(x);
    Ok(chain_outcomes(x, acc.theta(), acc.psi(), acc.prime_count(), s_acc.s()).to_vec())
}

/// Sweep [`verify_chain`] over a range. For sampled plans the returned
/// outcome list carries every evaluated check; for exhaustive sweeps the
/// interesting outcomes are already in the report's violation and
/// boundary lists and the list stays empty.
pub fn verify_chain_range(
    lo: u64,
    hi: u64,
    plan: &SamplingPlan,
    workers: usize,
) -> Result<(BoundReport, Vec<CheckOutcome>)> {
    if lo < 2 {
        return Err(Error::Domain {
            what: "verify_chain",
            value: lo,
            requirement: "lo >= 2",
        });
    }
    sweep_with_accumulators(lo, hi, plan, workers, |x, acc, s_acc| {
        chain_outcomes(x, acc.theta(), acc.psi(), acc.prime_count(), s_acc.s()).to_vec()
    })
}

/// The explicit lower bound `log(x/(x+2)) - (2/x) log(x+2) + log 2`
/// compared against `S(x)/x`.
pub fn s_lower_bound_rhs(x: u64) -> f64 {
    assert!(x >= 1, "s_lower_bound_rhs: x >= 1 required");
    let xf = x as f64;
    (xf / (xf + 2.0)).ln() - (2.0 / xf) * (xf + 2.0).ln() + LN_2
}

/// Check `S(x)/x > s_lower_bound_rhs(x)` for every sampled integer in
/// `[lo, hi]`, `lo >= 1`.
pub fn verify_s_bound(
    lo: u64,
    hi: u64,
    plan: &SamplingPlan,
    workers: usize,
) -> Result<(BoundReport, Vec<CheckOutcome>)> {
    if lo < 1 {
        return Err(Error::Domain {
            what: "verify_s_bound",
            value: lo,
            requirement: "lo >= 1",
        });
    }
    if lo > hi {
        return Err(Error::Range { lo, hi });
    }
    plan.validate()?;
    let chunks = plan_chunks(lo, hi, plan);
    let results = run_chunked(&chunks, workers, |a, b| {
        let mut s_acc = SAccumulator::new();
        s_acc.advance_to((a - 1).max(1));
        let mut report = BoundReport::empty(a, b);
        let mut emitted = Vec::new();
        for x in positions(lo, a, b, plan) {
            s_acc.advance_to(x);
            let margin = s_acc.s() / x as f64 - s_lower_bound_rhs(x);
            let outcome = CheckOutcome::new(CheckKind::SRatioLower, x, margin);
            report.record(outcome);
            report.observe(x, margin);
            report.samples_checked += 1;
            if !plan.is_exhaustive() {
                emitted.push(outcome);
            }
        }
        Ok((report, emitted))
    })?;
    Ok(merge_chunk_results(results))
}

/// Sweep the factorial-lemma checks over `n` in `[lo, hi]`: both central
/// binomial bounds (strict, log space) and `theta(n) < 2n log 2`.
///
/// The binomial log is carried incrementally via
/// `log C(2(n+1), n+1) = log C(2n, n) + log(2(2n+1)/(n+1))`
/// with compensated addition; each chunk replays the recurrence from n = 1
/// so chunk boundaries do not perturb values.
pub fn verify_factorial_bounds(
    lo: u64,
    hi: u64,
    plan: &SamplingPlan,
    workers: usize,
) -> Result<(BoundReport, Vec<CheckOutcome>)> {
    if lo < 1 {
        return Err(Error::Domain {
            what: "verify_factorial_bounds",
            value: lo,
            requirement: "lo >= 1",
        });
    }
    if lo > hi {
        return Err(Error::Range { lo, hi });
    }
    plan.validate()?;
    let base = base_primes(hi)?;
    let chunks = plan_chunks(lo, hi, plan);
    let results = run_chunked(&chunks, workers, |a, b| {
        let mut acc = ChebyshevAccumulator::with_base(base.clone(), b)?;
        acc.advance_to(a - 1)?;
        let mut log_binom = LogBinomialAccumulator::new();
        log_binom.advance_to(a);
        let mut report = BoundReport::empty(a, b);
        let mut emitted = Vec::new();
        for n in positions(lo, a, b, plan) {
            acc.advance_to(n)?;
            log_binom.advance_to(n);
            let ln2 = LN_2;
            let two_n_log2 = 2.0 * n as f64 * ln2;
            let lower = CheckOutcome::new(
                CheckKind::BinomialLower,
                n,
                log_binom.value() - (two_n_log2 - ln2 - 0.5 * (n as f64).ln()),
            );
            let upper = CheckOutcome::new(
                CheckKind::BinomialUpper,
                n,
                (two_n_log2 - 0.5 * ((2 * n + 1) as f64).ln()) - log_binom.value(),
            );
            let theta_bound = check_theta_bound(n, acc.theta());
            let worst = lower.margin.min(upper.margin).min(theta_bound.margin);
            for o in [lower, upper, theta_bound] {
                report.record(o);
                if !plan.is_exhaustive() {
                    emitted.push(o);
                }
            }
            report.observe(n, worst);
            report.samples_checked += 1;
        }
        Ok((report, emitted))
    })?;
    Ok(merge_chunk_results(results))
}

/// Running `log C(2n, n)` via the ratio recurrence.
struct LogBinomialAccumulator {
    n: u64,
    sum: KahanSum,
}

impl LogBinomialAccumulator {
    fn new() -> Self {
        let mut sum = KahanSum::new();
        sum.add(2f64.ln()); // log C(2, 1)
        LogBinomialAccumulator { n: 1, sum }
    }

    fn advance_to(&mut self, n: u64) {
        debug_assert!(n >= self.n);
        while self.n < n {
            let m = self.n as f64;
            self.sum.add(((4.0 * m + 2.0) / (m + 1.0)).ln());
            self.n += 1;
        }
    }

    fn value(&self) -> f64 {
        self.sum.value()
    }
}

/// The three ratios per requested point plus the largest
/// `|psi_ratio - theta_ratio|` over the tail half of the list — the
/// convergence diagnostic for the limit equalities that are not finitely
/// checkable.
#[derive(Debug, Clone)]
pub struct ConvergenceTable {
    pub samples: Vec<RatioSample>,
    pub tail_max_gap: f64,
}

pub fn convergence_table(xs: &[u64]) -> Result<ConvergenceTable> {
    let samples = ratio_samples_at(xs)?;
    let tail = &samples[samples.len() / 2..];
    let tail_max_gap = tail
        .iter()
        .map(|s| (s.psi_ratio - s.theta_ratio).abs())
        .fold(0.0, f64::max);
    Ok(ConvergenceTable {
        samples,
        tail_max_gap,
    })
}

/// Chunk layout for a plan: exhaustive plans chunk the integer range,
/// sampled plans run as one sequential chunk (their cost is the single
/// sieve pass, not the samples).
fn plan_chunks(lo: u64, hi: u64, plan: &SamplingPlan) -> Vec<(u64, u64)> {
    if plan.is_exhaustive() {
        chunk_ranges(lo, hi, 4096)
    } else {
        vec![(lo, hi)]
    }
}

/// The sampled positions of `plan` that fall in `[a, b]`, given the sweep
/// starts at `lo`. Exhaustive and stride plans enumerate arithmetically;
/// geometric plans regenerate the global sequence and filter.
fn positions(lo: u64, a: u64, b: u64, plan: &SamplingPlan) -> Vec<u64> {
    match *plan {
        SamplingPlan::EveryInteger => (a..=b).collect(),
        SamplingPlan::Stride(k) => {
            let first = a.max(lo + (a.saturating_sub(lo)).div_ceil(k) * k);
            (first..=b).step_by(k as usize).collect()
        }
        SamplingPlan::Geometric(_) => plan
            .materialize(lo, b)
            .into_iter()
            .filter(|&x| x >= a)
            .collect(),
    }
}

fn merge_chunk_results(
    results: Vec<(BoundReport, Vec<CheckOutcome>)>,
) -> (BoundReport, Vec<CheckOutcome>) {
    let mut report: Option<BoundReport> = None;
    let mut outcomes = Vec::new();
    for (r, mut o) in results {
        report = Some(match report {
            Some(prev) => BoundReport::merge(prev, r),
            None => r,
        });
        outcomes.append(&mut o);
    }
    (report.expect("at least one chunk"), outcomes)
}

/// Shared driver for the chain sweep (the only sweep needing both the
/// Chebyshev and log-factorial accumulators).
fn sweep_with_accumulators<F>(
    lo: u64,
    hi: u64,
    plan: &SamplingPlan,
    workers: usize,
    eval: F,
) -> Result<(BoundReport, Vec<CheckOutcome>)>
where
    F: Fn(u64, &ChebyshevAccumulator, &SAccumulator) -> Vec<CheckOutcome> + Sync,
{
    if lo > hi {
        return Err(Error::Range { lo, hi });
    }
    plan.validate()?;
    let base = base_primes(hi)?;
    let chunks = plan_chunks(lo, hi, plan);
    let results = run_chunked(&chunks, workers, |a, b| {
        let mut acc = ChebyshevAccumulator::with_base(base.clone(), b)?;
        acc.advance_to(a - 1)?;
        let mut s_acc = SAccumulator::new();
        s_acc.advance_to((a - 1).max(1));
        let mut report = BoundReport::empty(a, b);
        let mut emitted = Vec::new();
        for x in positions(lo, a, b, plan) {
            acc.advance_to(x)?;
            s_acc.advance_to(x);
            let outcomes = eval(x, &acc, &s_acc);
            let worst = outcomes
                .iter()
                .map(|o| o.margin)
                .fold(f64::INFINITY, f64::min);
            for o in outcomes {
                report.record(o);
                if !plan.is_exhaustive() {
                    emitted.push(o);
                }
            }
            report.observe(x, worst);
            report.samples_checked += 1;
        }
        Ok((report, emitted))
    })?;
    Ok(merge_chunk_results(results))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::OutcomeClass;

    #[test]
    fn ratio_sample_examples() {
        let s = ratio_sample(3).unwrap();
        assert_eq!(s.pi, 2);
        assert!((s.pi_ratio - 0.7324081924454066).abs() < 1e-12);

        let s = ratio_sample(2).unwrap();
        assert!((s.pi_ratio - LN_2 / 2.0).abs() < 1e-12); // below log 2

        assert!(ratio_sample(1).is_err());
    }

    #[test]
    fn ratio_sample_x4_touches_log2_exactly() {
        let s = ratio_sample(4).unwrap();
        assert_eq!(s.pi_ratio, LN_2);
    }

    #[test]
    fn window_single_points() {
        let v = verify_ratio_window(3, 3, &SamplingPlan::EveryInteger, 1).unwrap();
        assert_eq!(v.report.samples_checked, 1);
        assert!(v.report.violations.is_empty());
        let e = v.report.extrema.unwrap();
        assert_eq!(e.argmin_x, 3);
        assert!((e.min - 0.7324081924454066).abs() < 1e-12);
        assert_eq!(e.min, e.max);

        // x = 4: exact boundary contact on the lower side, not a violation.
        let v = verify_ratio_window(4, 4, &SamplingPlan::EveryInteger, 1).unwrap();
        assert!(v.report.violations.is_empty());
        assert_eq!(v.report.boundary_contacts.len(), 1);
        let b = &v.report.boundary_contacts[0];
        assert_eq!((b.x, b.check), (4, CheckKind::RatioLower));
        assert_eq!(b.margin, 0.0);
        assert_eq!(b.class, OutcomeClass::Boundary);

        assert!(verify_ratio_window(2, 5, &SamplingPlan::EveryInteger, 1).is_err());
    }

    #[test]
    fn window_sweep_small_range() {
        let v = verify_ratio_window(3, 10_000, &SamplingPlan::EveryInteger, 4).unwrap();
        assert!(v.report.violations.is_empty());
        assert_eq!(v.report.boundary_contacts.len(), 1); // x = 4 only
        assert_eq!(v.report.samples_checked, 9_998);
        let e = v.report.extrema.unwrap();
        assert_eq!(e.argmax_x, 113);
        // Emitted rows reproduce the report extrema bitwise.
        let min_row = v.samples.iter().find(|s| s.x == e.argmin_x).unwrap();
        let max_row = v.samples.iter().find(|s| s.x == e.argmax_x).unwrap();
        assert_eq!(min_row.pi_ratio, e.min);
        assert_eq!(max_row.pi_ratio, e.max);
    }

    #[test]
    fn window_sweep_worker_counts_agree() {
        let a = verify_ratio_window(3, 50_000, &SamplingPlan::EveryInteger, 1).unwrap();
        let b = verify_ratio_window(3, 50_000, &SamplingPlan::EveryInteger, 8).unwrap();
        assert_eq!(a.report, b.report);
        assert_eq!(a.samples.len(), b.samples.len());
        for (x, y) in a.samples.iter().zip(&b.samples) {
            assert_eq!(x, y);
        }
    }

    #[test]
    fn window_merge_matches_union_range() {
        let plan = SamplingPlan::EveryInteger;
        let whole = verify_ratio_window(3, 40_000, &plan, 3).unwrap().report;
        let left = verify_ratio_window(3, 17_389, &plan, 2).unwrap().report;
        let right = verify_ratio_window(17_390, 40_000, &plan, 5).unwrap().report;
        assert_eq!(BoundReport::merge(left, right), whole);
    }

    #[test]
    fn window_sampled_plans() {
        let v = verify_ratio_window(10, 10_000, &SamplingPlan::Stride(97), 1).unwrap();
        assert_eq!(v.samples.len(), v.report.samples_checked as usize);
        assert_eq!(v.samples[0].x, 10);
        assert_eq!(v.samples[1].x, 107);
        assert!(v.report.violations.is_empty());

        let v = verify_ratio_window(10, 100_000, &SamplingPlan::Geometric(3.0), 1).unwrap();
        let xs: Vec<u64> = v.samples.iter().map(|s| s.x).collect();
        assert_eq!(xs, vec![10, 30, 90, 270, 810, 2430, 7290, 21870, 65610]);
    }

    #[test]
    fn chain_examples() {
        let outcomes = verify_chain(10).unwrap();
        assert_eq!(outcomes.len(), 3);
        // theta ~ 5.347 <= psi ~ 7.832 <= 4 log 10 ~ 9.210; S(10) = log 252.
        let psi10 = 2520f64.ln();
        let theta10 = 210f64.ln();
        let s10 = 252f64.ln();
        assert!((outcomes[0].margin - (psi10 - theta10)).abs() < 1e-9);
        assert!((outcomes[1].margin - (4.0 * 10f64.ln() - psi10)).abs() < 1e-9);
        assert!((outcomes[2].margin - (psi10 - s10)).abs() < 1e-9);
        assert!(outcomes.iter().all(|o| o.class == OutcomeClass::Pass));

        // x = 2: theta = psi = log 2 <= 1 * log 2; zero margins throughout.
        let outcomes = verify_chain(2).unwrap();
        assert!(outcomes.iter().all(|o| o.class == OutcomeClass::Boundary));

        // x = 3: theta = psi = log 6 <= 2 log 3.
        let outcomes = verify_chain(3).unwrap();
        assert_eq!(outcomes[0].class, OutcomeClass::Boundary);
        assert!((outcomes[1].margin - (9f64.ln() - 6f64.ln())).abs() < 1e-12);

        assert!(verify_chain(1).is_err());
    }

    #[test]
    fn chain_range_no_violations_small() {
        let (report, _) =
            verify_chain_range(2, 20_000, &SamplingPlan::EveryInteger, 4).unwrap();
        assert!(report.violations.is_empty());
        assert_eq!(report.samples_checked, 19_999);
        // Known exact contacts at x = 2 and x = 3 only.
        let xs: Vec<u64> = report.boundary_contacts.iter().map(|o| o.x).collect();
        assert!(xs.iter().all(|&x| x <= 3));
    }

    #[test]
    fn s_rhs_examples() {
        assert!((s_lower_bound_rhs(2) - (-(4f64).ln())).abs() < 1e-12);
        assert!((s_lower_bound_rhs(1) - (2f64 / 27.0).ln()).abs() < 1e-12);
        let rhs = s_lower_bound_rhs(1_000_000);
        assert!(rhs < LN_2 && LN_2 - rhs < 3.0e-5);
    }

    #[test]
    fn s_bound_sweep_small() {
        let (report, _) = verify_s_bound(2, 5_000, &SamplingPlan::EveryInteger, 4).unwrap();
        assert!(report.violations.is_empty());
        assert!(report.boundary_contacts.is_empty());

        // Single points from the worked examples.
        let (r2, _) = verify_s_bound(2, 2, &SamplingPlan::EveryInteger, 1).unwrap();
        let m = r2.extrema.unwrap();
        assert!((m.min - (2f64.ln() / 2.0 - s_lower_bound_rhs(2))).abs() < 1e-12);

        let (r4, _) = verify_s_bound(4, 4, &SamplingPlan::EveryInteger, 1).unwrap();
        let expected = 6f64.ln() / 4.0 - ((4f64 / 6.0).ln() - 0.5 * 6f64.ln() + LN_2);
        assert!((r4.extrema.unwrap().min - expected).abs() < 1e-12);
    }

    #[test]
    fn factorial_bounds_sweep() {
        let (report, _) =
            verify_factorial_bounds(1, 2_000, &SamplingPlan::EveryInteger, 4).unwrap();
        assert!(report.violations.is_empty());
        // n = 1 is the single boundary contact (binomial lower bound).
        assert_eq!(report.boundary_contacts.len(), 1);
        assert_eq!(report.boundary_contacts[0].x, 1);
        assert_eq!(report.boundary_contacts[0].check, CheckKind::BinomialLower);
    }

    #[test]
    fn factorial_sweep_matches_pointwise_ops() {
        use crate::factorial::check_binomial_bounds;
        let (_, outcomes) =
            verify_factorial_bounds(2, 600, &SamplingPlan::Stride(7), 1).unwrap();
        for o in outcomes.iter().filter(|o| o.check == CheckKind::BinomialLower) {
            let c = check_binomial_bounds(o.x);
            assert!(
                (o.margin - c.lower_margin).abs() <= 1e-9,
                "n = {}: sweep {} vs pointwise {}",
                o.x,
                o.margin,
                c.lower_margin
            );
        }
    }

    #[test]
    fn convergence_gap_shrinks() {
        let t = convergence_table(&[10_000, 100_000, 1_000_000]).unwrap();
        let gaps: Vec<f64> = t
            .samples
            .iter()
            .map(|s| (s.psi_ratio - s.theta_ratio).abs())
            .collect();
        assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2]);
        assert_eq!(t.tail_max_gap, gaps[1].max(gaps[2]));

        // x = 2: psi and theta coincide.
        let t = convergence_table(&[2]).unwrap();
        assert_eq!(t.samples[0].psi_ratio, t.samples[0].theta_ratio);
    }

    #[test]
    fn stride_positions_cover_chunks_consistently() {
        // Positions generated chunk-by-chunk equal the global sequence.
        let lo = 5u64;
        let hi = 1000u64;
        let plan = SamplingPlan::Stride(7);
        let global = plan.materialize(lo, hi);
        let mut from_chunks = Vec::new();
        for (a, b) in chunk_ranges(lo, hi, 100) {
            from_chunks.extend(positions(lo, a, b, &plan));
        }
        assert_eq!(global, from_chunks);
    }
}
