//! Identity and inequality checks for the Chebyshev-function routes over
//! ranges larger than the in-module unit tests cover.

use pnt_core::chebyshev::{
    chebyshev_sweep, lambda_divisor_sum, psi, psi_theta_decomposition, psi_via_floor, theta,
};
use pnt_core::counting::pi_sieve;

#[test]
fn divisor_sum_identity_to_1e5() {
    for n in 1..=100_000u64 {
        let diff = (lambda_divisor_sum(n) - (n as f64).ln()).abs();
        assert!(diff <= 1e-9, "n = {n}: |sum - log n| = {diff:e}");
    }
    // log 1 = 0 exactly.
    assert_eq!(lambda_divisor_sum(1), 0.0);
}

#[test]
fn psi_routes_agree_on_geometric_grid_to_1e7() {
    let mut x = 2u64;
    while x <= 10_000_000 {
        let direct = psi(x).unwrap();
        let floored = psi_via_floor(x).unwrap();
        let decomposed = psi_theta_decomposition(x).unwrap();
        assert!(
            (direct - floored).abs() <= 1e-6,
            "x = {x}: psi {direct} vs floor route {floored}"
        );
        assert!(
            (direct - decomposed).abs() <= 1e-6,
            "x = {x}: psi {direct} vs theta decomposition {decomposed}"
        );
        x = x.saturating_mul(3);
    }
}

#[test]
fn chain_inequalities_on_sampled_points() {
    let xs: Vec<u64> = vec![2, 3, 4, 5, 10, 50, 100, 1000, 10_000, 100_000, 1_000_000];
    let sweep = chebyshev_sweep(&xs).unwrap();
    for (i, &x) in xs.iter().enumerate() {
        let pi = pi_sieve(x).unwrap();
        assert!(sweep.theta[i] <= sweep.psi[i], "theta > psi at {x}");
        assert!(
            sweep.psi[i] <= pi as f64 * (x as f64).ln() + 1e-9,
            "psi > pi log x at {x}"
        );
        assert!(sweep.s[i] <= sweep.psi[i] + 1e-9, "S > psi at {x}");
    }
}

#[test]
fn s_below_psi_exhaustively_to_1e4() {
    let xs: Vec<u64> = (1..=10_000).collect();
    let sweep = chebyshev_sweep(&xs).unwrap();
    for (i, &x) in xs.iter().enumerate() {
        assert!(sweep.s[i] <= sweep.psi[i] + 1e-9, "S(x) > psi(x) at x = {x}");
    }
}

#[test]
fn theta_matches_prime_log_sum_directly() {
    // Independent evaluation: sum logs of a hard-coded prime list.
    let primes_to_50 = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];
    let expected: f64 = primes_to_50.iter().map(|&p| (p as f64).ln()).sum();
    assert!((theta(50).unwrap() - expected).abs() < 1e-12);
}
