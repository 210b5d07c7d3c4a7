//! Prime counts in the gaps between consecutive squares and the floor
//! bounds proposed for them.
//!
//! `F(x) = pi((x+1)^2) - pi(x^2)` is compared against
//! `floor(main(x) - log^2 x / log log x)` from below and
//! `floor(main(x) + log^2 x * log log x)` from above, where `main(x)` is
//! the half-difference `((x+1)^2/log(x+1) - x^2/log x) / 2`. The domain is
//! integer x >= 3: `log log x` must be positive for the corrections to
//! keep their sign, and x = 3 is the smallest such integer.
//!
//! The upper bound is a conjecture; violations are reported with margins,
//! never suppressed, so sweeps map its empirical validity region.

use crate::counting::pi_interval;
use crate::error::{Error, Result};
use crate::kahan::extended_sum;
use crate::parallel::{chunk_ranges, run_chunked};
use crate::report::{BoundReport, CheckKind, CheckOutcome};
use crate::sieve::{base_primes, primes_in_shared};
use crate::verify::SamplingPlan;

/// One gap evaluation with both bounds and their margins.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapRecord {
    pub x: u64,
    /// `F(x) = pi((x+1)^2) - pi(x^2)`
    pub f: u64,
    pub main_term: f64,
    pub lower: i64,
    pub upper: i64,
    /// `f - lower`
    pub lower_margin: i64,
    /// `upper - f`
    pub upper_margin: i64,
    /// True when a bound expression landed within 1e-9 of an integer and
    /// was re-evaluated with extended-precision summation before flooring.
    pub floor_sensitive: bool,
}

/// `F(x)`: number of primes in `(x^2, (x+1)^2]`.
pub fn gap_count(x: u64) -> Result<u64> {
    if x < 1 {
        return Err(Error::Domain {
            what: "gap_count",
            value: x,
            requirement: "x >= 1",
        });
    }
    let hi = checked_square(x + 1)?;
    pi_interval(x * x, hi)
}

/// The asymptotic main term `((x+1)^2/log(x+1) - x^2/log x) / 2`.
/// Requires x >= 2 so both logarithms are positive.
pub fn main_term(x: u64) -> Result<f64> {
    if x < 2 {
        return Err(Error::Domain {
            what: "main_term",
            value: x,
            requirement: "x >= 2",
        });
    }
    let (a, b) = main_term_halves(x)?;
    Ok(a + b)
}

/// The two halves `(x+1)^2/(2 log(x+1))` and `-x^2/(2 log x)`; bound
/// expressions sum these with the correction term so the floor guard can
/// replay the exact same parts in extended precision.
fn main_term_halves(x: u64) -> Result<(f64, f64)> {
    let sq_hi = checked_square(x + 1)? as f64;
    let sq_lo = (x * x) as f64;
    let xf = x as f64;
    Ok((
        0.5 * sq_hi / (xf + 1.0).ln(),
        -0.5 * sq_lo / xf.ln(),
    ))
}

fn checked_square(v: u64) -> Result<u64> {
    v.checked_mul(v).ok_or(Error::Overflow("(x+1)^2"))
}

/// Floor of a bound expression given as its constituent terms. If the
/// plain sum lands within 1e-9 of an integer the terms are re-summed in
/// extended precision first: floors amplify last-ulp errors into
/// off-by-one bound values.
fn floor_bound(terms: [f64; 3]) -> (i64, bool) {
    let plain = (terms[0] + terms[1]) + terms[2];
    let sensitive = (plain - plain.round()).abs() <= 1e-9;
    let value = if sensitive { extended_sum(&terms) } else { plain };
    (value.floor() as i64, sensitive)
}

fn gap_domain(what: &'static str, x: u64) -> Result<()> {
    if x < 3 {
        return Err(Error::Domain {
            what,
            value: x,
            requirement: "x >= 3 (log log x must be positive)",
        });
    }
    Ok(())
}

/// `floor(main(x) - log^2 x / log log x)`, toward minus infinity.
pub fn lower_bound(x: u64) -> Result<i64> {
    gap_domain("lower_bound", x)?;
    Ok(lower_bound_parts(x)?.0)
}

fn lower_bound_parts(x: u64) -> Result<(i64, bool)> {
    let (a, b) = main_term_halves(x)?;
    let lx = (x as f64).ln();
    Ok(floor_bound([a, b, -lx * lx / lx.ln()]))
}

/// `floor(main(x) + log^2 x * log log x)` — the conjectured upper bound.
pub fn upper_bound(x: u64) -> Result<i64> {
    gap_domain("upper_bound", x)?;
    Ok(upper_bound_parts(x)?.0)
}

fn upper_bound_parts(x: u64) -> Result<(i64, bool)> {
    let (a, b) = main_term_halves(x)?;
    let lx = (x as f64).ln();
    Ok(floor_bound([a, b, lx * lx * lx.ln()]))
}

/// Assemble the record for one x given its gap count.
pub fn gap_record(x: u64, f: u64) -> Result<GapRecord> {
    gap_domain("gap_record", x)?;
    let (lower, ls) = lower_bound_parts(x)?;
    let (upper, us) = upper_bound_parts(x)?;
    let f_signed = i64::try_from(f).map_err(|_| Error::Overflow("gap count"))?;
    Ok(GapRecord {
        x,
        f,
        main_term: main_term(x)?,
        lower,
        upper,
        lower_margin: f_signed - lower,
        upper_margin: upper - f_signed,
        floor_sensitive: ls || us,
    })
}

/// A gap sweep: per-x records plus the merged report. The report's
/// extrema track the worst of the two margins at each x.
#[derive(Debug, Clone)]
pub struct GapVerification {
    pub report: BoundReport,
    pub records: Vec<GapRecord>,
}

/// Check `lower(x) <= F(x) <= upper(x)` for every sampled x in `[lo, hi]`,
/// `lo >= 3`. Partitions share one set of base primes covering `hi + 1`;
/// each partition sieves only its own square window.
pub fn verify_gap_range(
    lo: u64,
    hi: u64,
    plan: &SamplingPlan,
    workers: usize,
) -> Result<GapVerification> {
    gap_domain("verify_gap_range", lo)?;
    if lo > hi {
        return Err(Error::Range { lo, hi });
    }
    plan.validate()?;
    let top = checked_square(hi + 1)?;
    // The sweep's windows tile (lo^2, (hi+1)^2]; that whole extent must fit
    // the sieve budget.
    crate::sieve::check_budget("gap sweep window", (top - lo * lo).div_ceil(16))?;
    let base = base_primes(top)?;

    if !plan.is_exhaustive() {
        let mut report = BoundReport::empty(lo, hi);
        let mut records = Vec::new();
        for x in plan.materialize(lo, hi) {
            let rec = gap_record(x, gap_count(x)?)?;
            absorb(&mut report, &rec);
            records.push(rec);
        }
        return Ok(GapVerification { report, records });
    }

    let chunks = chunk_ranges(lo, hi, 16);
    let results = run_chunked(&chunks, workers, |a, b| {
        let window_lo = a * a;
        let window_hi = checked_square(b + 1)?;
        let mut primes = primes_in_shared(base.clone(), window_lo + 1, window_hi)?;
        let mut report = BoundReport::empty(a, b);
        let mut records = Vec::with_capacity((b - a + 1) as usize);
        for x in a..=b {
            let end = (x + 1) * (x + 1);
            let mut f = 0u64;
            while let Some(p) = primes.peek() {
                if p > end {
                    break;
                }
                primes.next();
                f += 1;
            }
            let rec = gap_record(x, f)?;
            absorb(&mut report, &rec);
            records.push(rec);
        }
        Ok((report, records))
    })?;

    let mut report: Option<BoundReport> = None;
    let mut records = Vec::new();
    for (r, mut recs) in results {
        report = Some(match report {
            Some(prev) => BoundReport::merge(prev, r),
            None => r,
        });
        records.append(&mut recs);
    }
    Ok(GapVerification {
        report: report.expect("at least one chunk"),
        records,
    })
}

fn absorb(report: &mut BoundReport, rec: &GapRecord) {
    let lower = CheckOutcome::new_int(CheckKind::GapLower, rec.x, rec.lower_margin);
    let upper = CheckOutcome::new_int(CheckKind::GapUpper, rec.x, rec.upper_margin);
    report.record(lower);
    report.record(upper);
    report.observe(rec.x, rec.lower_margin.min(rec.upper_margin) as f64);
    report.samples_checked += 1;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::pi_sieve;
    use crate::report::OutcomeClass;

    #[test]
    fn gap_count_examples() {
        assert_eq!(gap_count(1).unwrap(), 2); // 2, 3 in (1, 4]
        assert_eq!(gap_count(3).unwrap(), 2); // 11, 13 in (9, 16]
        assert_eq!(gap_count(4).unwrap(), 3); // 17, 19, 23 in (16, 25]
        assert!(gap_count(0).is_err());
    }

    #[test]
    fn gap_count_overflow_guard() {
        assert!(matches!(
            gap_count(u64::MAX - 1),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn main_term_examples() {
        assert!((main_term(3).unwrap() - 1.6747036437350857).abs() < 1e-12);
        assert!((main_term(2).unwrap() - 1.210686438042841).abs() < 1e-12);
        assert!((main_term(10).unwrap() - 3.515735586004311).abs() < 1e-12);
        assert!(main_term(1).is_err());
    }

    #[test]
    fn bound_examples() {
        assert_eq!(lower_bound(3).unwrap(), -12);
        assert_eq!(lower_bound(10).unwrap(), -3);
        assert_eq!(upper_bound(3).unwrap(), 1);
        assert_eq!(upper_bound(10).unwrap(), 7);
        assert!(lower_bound(2).is_err());
        assert!(upper_bound(2).is_err());
    }

    #[test]
    fn floor_discretization_shifts_by_one() {
        // Shifting the inner expression by +1 moves the floor by exactly 1.
        for x in [3u64, 10, 100, 977, 2500] {
            let (a, b) = main_term_halves(x).unwrap();
            let lx = (x as f64).ln();
            let corr = lx * lx * lx.ln();
            let (v, _) = floor_bound([a, b, corr]);
            let (v1, _) = floor_bound([a + 1.0, b, corr]);
            assert_eq!(v1, v + 1, "x = {x}");
        }
    }

    #[test]
    fn record_margins_are_consistent() {
        let rec = gap_record(10, gap_count(10).unwrap()).unwrap();
        assert_eq!(rec.f, 5); // pi(121) - pi(100) = 30 - 25
        assert_eq!(rec.lower, -3);
        assert_eq!(rec.upper, 7);
        assert_eq!(rec.lower_margin, 8);
        assert_eq!(rec.upper_margin, 2);
    }

    #[test]
    fn sweep_finds_known_upper_violations() {
        // x = 3: F = 2 > floor(1.675 + 0.113) = 1. The proposal also fails
        // at x = 4 (F = 4 windows... F(4) = 3 > floor(1.996 + 0.628) = 2).
        let v = verify_gap_range(3, 3, &SamplingPlan::EveryInteger, 1).unwrap();
        assert_eq!(v.report.violations.len(), 1);
        let o = &v.report.violations[0];
        assert_eq!((o.check, o.x, o.margin), (CheckKind::GapUpper, 3, -1.0));
        assert_eq!(v.records[0].lower_margin, 14); // 2 - (-12)

        let v = verify_gap_range(3, 100, &SamplingPlan::EveryInteger, 4).unwrap();
        let viol_xs: Vec<u64> = v.report.violations.iter().map(|o| o.x).collect();
        assert_eq!(viol_xs, vec![3, 4]);
        assert!(v
            .report
            .violations
            .iter()
            .all(|o| o.check == CheckKind::GapUpper));
        // The lower bound holds everywhere.
        assert!(v
            .records
            .iter()
            .all(|r| r.lower_margin >= 0));
        // x = 6 touches the upper bound exactly: F(6) = 4 = upper(6).
        assert!(v
            .report
            .boundary_contacts
            .iter()
            .any(|o| o.x == 6 && o.check == CheckKind::GapUpper));
    }

    #[test]
    fn sweep_counts_agree_with_prefix_pi() {
        let v = verify_gap_range(3, 60, &SamplingPlan::EveryInteger, 2).unwrap();
        for rec in &v.records {
            let expected = pi_sieve((rec.x + 1) * (rec.x + 1)).unwrap()
                - pi_sieve(rec.x * rec.x).unwrap();
            assert_eq!(rec.f, expected, "x = {}", rec.x);
        }
    }

    #[test]
    fn sweep_worker_counts_agree() {
        let a = verify_gap_range(3, 200, &SamplingPlan::EveryInteger, 1).unwrap();
        let b = verify_gap_range(3, 200, &SamplingPlan::EveryInteger, 8).unwrap();
        assert_eq!(a.report, b.report);
        assert_eq!(a.records, b.records);
    }

    #[test]
    fn sampled_sweep_matches_exhaustive_points() {
        let sampled = verify_gap_range(3, 99, &SamplingPlan::Stride(8), 1).unwrap();
        let full = verify_gap_range(3, 99, &SamplingPlan::EveryInteger, 1).unwrap();
        for rec in &sampled.records {
            let same = full.records.iter().find(|r| r.x == rec.x).unwrap();
            assert_eq!(rec, same);
        }
    }

    #[test]
    fn lower_always_below_upper() {
        for x in 3..=500u64 {
            assert!(lower_bound(x).unwrap() < upper_bound(x).unwrap(), "x = {x}");
        }
    }

    #[test]
    fn class_semantics_for_integer_margins() {
        let v = verify_gap_range(6, 6, &SamplingPlan::EveryInteger, 1).unwrap();
        // Zero margin on a non-strict bound: boundary contact, not violation.
        assert!(v.report.violations.is_empty());
        assert_eq!(v.report.boundary_contacts.len(), 1);
        assert_eq!(v.report.boundary_contacts[0].class, OutcomeClass::Boundary);
    }
}
