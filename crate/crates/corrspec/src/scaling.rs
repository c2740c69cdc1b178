//! The scalar scaling functions `g_n`, `s` and `s_n` and the legal domain of
//! characteristics.
//!
//! `g_n` pulls a value toward 1 with weight `1/n`; `s` lifts a share above
//! one half once the squared mass concentrates. Together they translate the
//! characteristic `(c, sigma)` into spectral statements.

use crate::error::{Error, Result};

/// Slack accepted on the boundary of `[0, 1]` arguments before rejecting.
const DOMAIN_SLACK: f64 = 1e-12;

/// `g_n(x) = ((n - 1) x + 1) / n`.
pub fn g_n(n: usize, x: f64) -> f64 {
    ((n as f64 - 1.0) * x + 1.0) / n as f64
}

/// Piecewise share bound: `x` below one half, `(1 + sqrt(2x - 1)) / 2` above.
///
/// Defined on `[0, 1]`; arguments within `1e-12` of the boundary are clamped.
pub fn s(x: f64) -> Result<f64> {
    if !(-DOMAIN_SLACK..=1.0 + DOMAIN_SLACK).contains(&x) {
        return Err(Error::Domain(format!("s(x) requires x in [0, 1], got {x}")));
    }
    let x = x.clamp(0.0, 1.0);
    if x >= 0.5 {
        Ok(0.5 * (1.0 + (2.0 * x - 1.0).sqrt()))
    } else {
        Ok(x)
    }
}

/// `s_n(x) = s(g_n(x))`.
pub fn s_n(n: usize, x: f64) -> Result<f64> {
    if !(-DOMAIN_SLACK..=1.0 + DOMAIN_SLACK).contains(&x) {
        return Err(Error::Domain(format!(
            "s_n(x) requires x in [0, 1], got {x}"
        )));
    }
    s(g_n(n, x.clamp(0.0, 1.0)))
}

/// Smallest mean correlation an `n x n` correlation matrix can have: `1 / (1 - n)`.
pub fn min_mean_correlation(n: usize) -> f64 {
    debug_assert!(n >= 2);
    1.0 / (1.0 - n as f64)
}

/// Whether `(c, sigma)` is attainable by some `n x n` correlation matrix:
/// `sigma >= 0`, `|c| <= 1`, `sigma <= 1`, `c^2 + sigma^2 <= 1` and
/// `c >= 1 / (1 - n)`.
///
/// Boundaries carry `1e-12` slack: characteristics measured from boundary
/// families (rank-one, all-ones) land an ulp outside the closed disc and
/// are attained by definition.
pub fn legal_domain(n: usize, c: f64, sigma: f64) -> bool {
    sigma >= 0.0
        && c.abs() <= 1.0 + DOMAIN_SLACK
        && sigma <= 1.0 + DOMAIN_SLACK
        && c * c + sigma * sigma <= 1.0 + DOMAIN_SLACK
        && c >= min_mean_correlation(n) - DOMAIN_SLACK
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_n_fixed_point_and_formula() {
        assert_eq!(g_n(12, 1.0), 1.0);
        assert_eq!(g_n(2, 0.0), 0.5);
        // 57.7 / 406 from the n = 406 worked example.
        assert!((g_n(406, 0.14) - 57.7 / 406.0).abs() < 1e-12);
    }

    #[test]
    fn s_branches() {
        assert_eq!(s(0.3).unwrap(), 0.3);
        assert_eq!(s(0.5).unwrap(), 0.5);
        assert_eq!(s(1.0).unwrap(), 1.0);
        assert!(s(-0.1).is_err());
        assert!(s(1.1).is_err());
    }

    #[test]
    fn s_continuous_at_one_half() {
        let below = s(0.5 - 1e-12).unwrap();
        let above = s(0.5 + 1e-12).unwrap();
        assert!((below - above).abs() < 1e-5);
    }

    #[test]
    fn s_n_values() {
        for n in [2usize, 5, 50] {
            assert_eq!(s_n(n, 1.0).unwrap(), 1.0);
        }
        assert_eq!(s_n(2, 0.0).unwrap(), 0.5);
        // g_406(0.019889) = 0.022303... < 1/2, lower branch.
        let v = s_n(406, 0.019889).unwrap();
        assert!((v - g_n(406, 0.019889)).abs() < 1e-15);
        assert!((v - 0.02230).abs() < 5e-6);
    }

    #[test]
    fn minimum_mean_correlation_values() {
        assert_eq!(min_mean_correlation(2), -1.0);
        assert_eq!(min_mean_correlation(3), -0.5);
        // Rounded to two decimals this cannot be negative once n >= 202.
        assert!((min_mean_correlation(202) - (-1.0 / 201.0)).abs() < 1e-15);
        assert!(min_mean_correlation(202) > -0.005);
        assert!(min_mean_correlation(201) <= -0.005);
    }

    #[test]
    fn legal_domain_examples() {
        assert!(legal_domain(12, 0.6, 0.3));
        assert!(!legal_domain(12, 0.8, 0.8));
        // c = -0.02 is below 1 / (1 - 100) = -0.0101...
        assert!(!legal_domain(100, -0.02, 0.1));
        assert!(legal_domain(100, -0.01, 0.1));
        assert!(!legal_domain(5, 0.5, -0.1));
    }

    #[test]
    fn scaling_monotone_in_n() {
        for x in [0.0, 0.1, 0.37, 0.5, 0.9, 1.0] {
            for n in 1..40usize {
                let a = g_n(n, x);
                let b = g_n(n + 1, x);
                assert!(a >= b - 1e-15, "g_{n}({x}) < g_{}({x})", n + 1);
                assert!(b >= x - 1e-15);
                assert!(s_n(n, x).unwrap() >= s(x).unwrap() - 1e-15);
            }
        }
    }

    #[test]
    fn g_n_distance_to_identity_bounded() {
        for n in 1..100usize {
            let sup = (0..=100)
                .map(|i| {
                    let x = i as f64 / 100.0;
                    (g_n(n, x) - x).abs()
                })
                .fold(0.0f64, f64::max);
            assert!(sup <= 1.0 / n as f64 + 1e-15);
        }
    }
}
