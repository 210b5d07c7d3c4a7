//! Property tests for report merging and the sweep/oracle agreements the
//! fixed-seed tests do not already pin down.

use proptest::prelude::*;

use pnt_core::counting::{pi_fast, pi_interval, pi_sieve};
use pnt_core::gaps::{lower_bound, upper_bound, verify_gap_range};
use pnt_core::report::BoundReport;
use pnt_core::sieve::{primes_in, PrimeTable};
use pnt_core::verify::{verify_ratio_window, verify_s_bound, SamplingPlan};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ratio_reports_merge_like_union(split in 4u64..9_000, hi in 9_001u64..20_000) {
        let plan = SamplingPlan::EveryInteger;
        let whole = verify_ratio_window(3, hi, &plan, 2).unwrap().report;
        let left = verify_ratio_window(3, split, &plan, 1).unwrap().report;
        let right = verify_ratio_window(split + 1, hi, &plan, 3).unwrap().report;
        prop_assert_eq!(BoundReport::merge(left, right), whole);
    }

    #[test]
    fn merge_commutes(split in 4u64..4_000, hi in 4_001u64..8_000) {
        let plan = SamplingPlan::EveryInteger;
        let left = verify_ratio_window(3, split, &plan, 1).unwrap().report;
        let right = verify_ratio_window(split + 1, hi, &plan, 1).unwrap().report;
        prop_assert_eq!(
            BoundReport::merge(left.clone(), right.clone()),
            BoundReport::merge(right, left)
        );
    }

    #[test]
    fn interval_equals_prefix_difference(a in 0u64..50_000, len in 0u64..20_000) {
        let b = a + len;
        prop_assert_eq!(
            pi_interval(a, b).unwrap(),
            pi_sieve(b).unwrap() - pi_sieve(a).unwrap()
        );
    }

    #[test]
    fn sublinear_is_monotone(x in 0u64..500_000) {
        prop_assert!(pi_fast(x).unwrap() <= pi_fast(x + 1).unwrap());
        prop_assert!(pi_fast(x + 1).unwrap() <= pi_fast(x).unwrap() + 1);
    }

    #[test]
    fn windows_match_table(lo in 2u64..99_000, len in 0u64..1_000) {
        let table = PrimeTable::build(100_000).unwrap();
        let hi = (lo + len).min(100_000);
        let streamed: Vec<u64> = primes_in(lo, hi).unwrap().collect();
        let flagged: Vec<u64> = (lo..=hi).filter(|&n| table.is_prime(n).unwrap()).collect();
        prop_assert_eq!(streamed, flagged);
    }

    #[test]
    fn gap_bounds_keep_order(x in 3u64..5_000) {
        prop_assert!(lower_bound(x).unwrap() < upper_bound(x).unwrap());
    }

    #[test]
    fn s_bound_margins_positive(lo in 2u64..2_000, len in 0u64..500) {
        let (report, _) = verify_s_bound(lo, lo + len, &SamplingPlan::EveryInteger, 2).unwrap();
        prop_assert!(report.violations.is_empty());
    }
}

#[test]
fn gap_reports_merge_like_union() {
    let plan = SamplingPlan::EveryInteger;
    let whole = verify_gap_range(3, 400, &plan, 2).unwrap();
    let left = verify_gap_range(3, 157, &plan, 1).unwrap();
    let right = verify_gap_range(158, 400, &plan, 4).unwrap();
    assert_eq!(
        BoundReport::merge(left.report, right.report),
        whole.report
    );
    let mut combined = left.records;
    combined.extend(right.records);
    assert_eq!(combined, whole.records);
}
