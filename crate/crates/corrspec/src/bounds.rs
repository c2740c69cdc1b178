//! Closed-form lower bounds on the largest eigenvalue and the diagonal
//! alignment, evaluated from `(n, c, sigma)` alone.
//!
//! Every bound here needs nothing but the characteristic; the eigensolver in
//! [`crate::spectral`] only enters as the independent cross-check.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::SquareMat;
use crate::scaling::{g_n, min_mean_correlation, s, s_n};
use crate::spectral::sym_eigen;

/// Which argument of a two-branch max (or min) produced the bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Branch {
    /// The `s_n`-based argument (ties resolve here).
    Scaled,
    /// The `g_n(c)`-based argument, or the `sigma^2 / c^2` deficit for `w_1`.
    Mean,
}

/// Measured characteristics of boundary families (rank-one, all-ones) can
/// land an ulp outside the closed disc; accept that much.
const BOUNDARY_SLACK: f64 = 1e-12;

fn require_legal(n: usize, c: f64, sigma: f64) -> Result<()> {
    if n < 2 {
        return Err(Error::Precondition(format!(
            "n must be at least 2, got {n}"
        )));
    }
    if sigma < 0.0 {
        return Err(Error::Precondition(format!(
            "sigma must be nonnegative, got {sigma}"
        )));
    }
    if c.abs() > 1.0 + BOUNDARY_SLACK || sigma > 1.0 + BOUNDARY_SLACK {
        return Err(Error::Precondition(format!(
            "|c| and sigma must not exceed 1, got ({c}, {sigma})"
        )));
    }
    if c * c + sigma * sigma > 1.0 + BOUNDARY_SLACK {
        return Err(Error::Precondition(format!(
            "c^2 + sigma^2 must not exceed 1, got {}",
            c * c + sigma * sigma
        )));
    }
    if c < min_mean_correlation(n) - BOUNDARY_SLACK {
        return Err(Error::Precondition(format!(
            "c = {c} is below the minimal mean correlation 1/(1-n) = {}",
            min_mean_correlation(n)
        )));
    }
    Ok(())
}

fn require_not_origin(c: f64, sigma: f64) -> Result<()> {
    if c == 0.0 && sigma == 0.0 {
        Err(Error::IdentityCharacteristic)
    } else {
        Ok(())
    }
}

fn max_with_branch(scaled: f64, mean: f64) -> (f64, Branch) {
    if scaled >= mean {
        (scaled, Branch::Scaled)
    } else {
        (mean, Branch::Mean)
    }
}

/// Lower bound on the largest eigenvalue itself (not divided by `n`):
/// `n * max{ s_n(c^2 + sigma^2), g_n(c) }`.
pub fn lambda1_bound(n: usize, c: f64, sigma: f64) -> Result<f64> {
    lambda1_bound_with_branch(n, c, sigma).map(|(v, _)| v)
}

pub fn lambda1_bound_with_branch(n: usize, c: f64, sigma: f64) -> Result<(f64, Branch)> {
    require_legal(n, c, sigma)?;
    require_not_origin(c, sigma)?;
    let (v, branch) = max_with_branch(s_n(n, c * c + sigma * sigma)?, g_n(n, c));
    Ok((n as f64 * v, branch))
}

/// Lower bound on the largest weight: `max{ s_n(c^2/(c^2+sigma^2)), g_n(c) }`.
pub fn wmax_bound(n: usize, c: f64, sigma: f64) -> Result<f64> {
    wmax_bound_with_branch(n, c, sigma).map(|(v, _)| v)
}

pub fn wmax_bound_with_branch(n: usize, c: f64, sigma: f64) -> Result<(f64, Branch)> {
    require_legal(n, c, sigma)?;
    require_not_origin(c, sigma)?;
    let ratio = c * c / (c * c + sigma * sigma);
    Ok(max_with_branch(s_n(n, ratio)?, g_n(n, c)))
}

/// Lower bound on the weight of the top eigenvector, defined for `c > 0`:
/// `1 - min{ (n-1)/n * sigma^2/c^2, (1 - g_n(c)) / s_n(c^2 + sigma^2) }`.
///
/// The value may be negative (a vacuous bound) and is returned as-is.
pub fn w1_bound(n: usize, c: f64, sigma: f64) -> Result<f64> {
    w1_bound_with_branch(n, c, sigma).map(|(v, _)| v)
}

pub fn w1_bound_with_branch(n: usize, c: f64, sigma: f64) -> Result<(f64, Branch)> {
    require_legal(n, c, sigma)?;
    if c <= 0.0 {
        return Err(Error::Unsupported(format!(
            "the w_1 bound requires a positive mean correlation, got c = {c}"
        )));
    }
    let mean_deficit = (n as f64 - 1.0) / n as f64 * sigma * sigma / (c * c);
    let scaled_deficit = (1.0 - g_n(n, c)) / s_n(n, c * c + sigma * sigma)?;
    // Smaller deficit wins; Scaled still names the s_n-based argument.
    let (deficit, branch) = if scaled_deficit <= mean_deficit {
        (scaled_deficit, Branch::Scaled)
    } else {
        (mean_deficit, Branch::Mean)
    };
    Ok((1.0 - deficit, branch))
}

/// Dimension-free versions of the three bounds.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct UniversalBounds {
    pub lambda1_over_n: f64,
    pub wmax: f64,
    /// Only defined for `c > 0`.
    pub w1: Option<f64>,
}

/// `lambda_1/n >= max{c, s(c^2+sigma^2)}`, `wmax >= max{c, s(c^2/(c^2+sigma^2))}`
/// and, for `c > 0`, `w_1 >= 1 - min{sigma^2/c^2, (1-c)/s(c^2+sigma^2)}`.
pub fn universal_bounds(c: f64, sigma: f64) -> Result<UniversalBounds> {
    if c * c + sigma * sigma > 1.0 + BOUNDARY_SLACK {
        return Err(Error::Precondition(format!(
            "c^2 + sigma^2 must not exceed 1, got {}",
            c * c + sigma * sigma
        )));
    }
    require_not_origin(c, sigma)?;
    let r_sq = c * c + sigma * sigma;
    let lambda1_over_n = f64::max(c, s(r_sq)?);
    let wmax = f64::max(c, s(c * c / r_sq)?);
    let w1 = if c > 0.0 {
        Some(1.0 - f64::min(sigma * sigma / (c * c), (1.0 - c) / s(r_sq)?))
    } else {
        None
    };
    Ok(UniversalBounds {
        lambda1_over_n,
        wmax,
        w1,
    })
}

/// Polar coordinates of `(c, sigma)` in the characteristic plane.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Polar {
    pub r_c: f64,
    /// `arccos(c / r_c)`, in `[0, pi]`.
    pub phi_c: f64,
}

pub fn polar(c: f64, sigma: f64) -> Result<Polar> {
    if sigma < 0.0 {
        return Err(Error::Precondition(format!(
            "sigma must be nonnegative, got {sigma}"
        )));
    }
    require_not_origin(c, sigma)?;
    let r_c = (c * c + sigma * sigma).sqrt();
    let phi_c = (c / r_c).clamp(-1.0, 1.0).acos();
    Ok(Polar { r_c, phi_c })
}

/// Upper bound on the smallest angle between the diagonal vector and any
/// eigenvector: `arccos(sqrt(s_n(cos^2 phi_c)))`.
///
/// The dimension-free relaxation is `theta_min <= phi_c`, available from
/// [`polar`].
pub fn theta_min_bound(n: usize, c: f64, sigma: f64) -> Result<f64> {
    require_legal(n, c, sigma)?;
    require_not_origin(c, sigma)?;
    let cos_sq_phi = c * c / (c * c + sigma * sigma);
    Ok(s_n(n, cos_sq_phi)?.sqrt().clamp(-1.0, 1.0).acos())
}

/// Alignment bound from an eigenvalue bracket `n*a <= lambda_1 <= n*b`:
/// `(g_n(c) + a - 1) / (b + a - 1)`.
pub fn w1_bracket_bound(n: usize, c: f64, a: f64, b: f64) -> Result<f64> {
    if a < 0.0 || b < 0.0 {
        return Err(Error::Precondition(format!(
            "a and b must be nonnegative, got ({a}, {b})"
        )));
    }
    if a + b <= 1.0 {
        return Err(Error::Precondition(format!(
            "a + b must exceed 1, got {}",
            a + b
        )));
    }
    Ok((g_n(n, c) + a - 1.0) / (b + a - 1.0))
}

/// Top-eigenvalue bound for a general symmetric positive semi-definite
/// matrix from its trace and squared Frobenius norm:
/// `trace * s(frob_sq / trace^2)`.
pub fn psd_top_eig_bound_from_moments(trace: f64, frob_sq: f64) -> Result<f64> {
    if trace <= 0.0 {
        return Err(Error::Precondition(format!(
            "the trace of a nonzero PSD matrix must be positive, got {trace}"
        )));
    }
    Ok(trace * s(frob_sq / (trace * trace))?)
}

/// Convenience form of [`psd_top_eig_bound_from_moments`] that computes the
/// moments from the matrix.
pub fn psd_top_eig_bound(a: &SquareMat) -> Result<f64> {
    if !a.is_symmetric(1e-12) {
        return Err(Error::Precondition("matrix must be symmetric".into()));
    }
    psd_top_eig_bound_from_moments(a.trace(), a.frob_sq())
}

/// Asymptotic comparator `1 - 4 sigma^2 / c^2` for `c > 0`.
///
/// Holds in probability for random matrices as the dimension grows; it is a
/// reference value, not a guarantee for a fixed matrix.
pub fn fueredi_komlos_reference(c: f64, sigma: f64) -> Result<f64> {
    if c <= 0.0 {
        return Err(Error::Unsupported(format!(
            "the comparator requires a positive mean correlation, got c = {c}"
        )));
    }
    Ok(1.0 - 4.0 * sigma * sigma / (c * c))
}

/// One residual inequality of the perturbation check.
#[derive(Debug, Clone, Serialize)]
pub struct WielandEntry {
    /// Index of the eigenpair of `B` being tested.
    pub eigen_index: usize,
    /// Index of the reference eigenvector of `A`.
    pub k: usize,
    /// `min_{j != k} |lambda - alpha_j|`.
    pub eta: f64,
    /// `<v, xi_k>^2`.
    pub alignment_sq: f64,
    /// `eta^2 (1 - alignment_sq)`, which must stay below the Frobenius gap.
    pub lhs: f64,
    /// `frob_sq - lhs`; negative means the inequality failed.
    pub slack: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct WielandReport {
    pub frob_sq: f64,
    pub worst_slack: f64,
    /// Whether every inequality holds up to the `1e-8` tolerance.
    pub all_hold: bool,
    pub entries: Vec<WielandEntry>,
}

const WIELAND_TOL: f64 = 1e-8;

/// For each eigenpair `(lambda, v)` of `B` and each eigenvector `xi_k` of
/// `A`, verify `eta_k^2 (1 - <v, xi_k>^2) <= ||B - A||_F^2 + 1e-8` where
/// `eta_k = min_{j != k} |lambda - alpha_j|`.
pub fn wieland_residual_check(a: &SquareMat, b: &SquareMat) -> Result<WielandReport> {
    if a.n() != b.n() {
        return Err(Error::Dimension {
            rows: a.n(),
            cols: b.n(),
        });
    }
    if !a.is_symmetric(1e-12) || !b.is_symmetric(1e-12) {
        return Err(Error::Precondition(
            "both matrices must be symmetric".into(),
        ));
    }
    let n = a.n();
    let (alpha, xi) = sym_eigen(a)?;
    let (lambda, v) = sym_eigen(b)?;
    let frob_sq = b.sub(a)?.frob_sq();

    let mut entries = Vec::with_capacity(n * n);
    let mut worst_slack = f64::INFINITY;
    for e in 0..n {
        for (k, xi_k) in xi.iter().enumerate() {
            let eta = (0..n)
                .filter(|&j| j != k)
                .map(|j| (lambda[e] - alpha[j]).abs())
                .fold(f64::INFINITY, f64::min);
            let dot: f64 = v[e].iter().zip(xi_k).map(|(x, y)| x * y).sum();
            let alignment_sq = dot * dot;
            let lhs = eta * eta * (1.0 - alignment_sq);
            let slack = frob_sq - lhs;
            worst_slack = worst_slack.min(slack);
            entries.push(WielandEntry {
                eigen_index: e,
                k,
                eta,
                alignment_sq,
                lhs,
                slack,
            });
        }
    }
    Ok(WielandReport {
        frob_sq,
        worst_slack,
        all_hold: worst_slack >= -WIELAND_TOL,
        entries,
    })
}

/// Every closed-form bound evaluated at one `(n, c, sigma)`.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub c: f64,
    pub sigma: f64,
    /// Best lower bound on `lambda_1 / n`.
    pub lambda1_over_n: f64,
    pub wmax_lb: f64,
    /// Absent for `c <= 0`.
    pub w1_lb: Option<f64>,
    pub r_c: f64,
    pub phi_c: f64,
    pub theta_min_ub: f64,
    pub lambda1_branch: Branch,
    pub wmax_branch: Branch,
    pub w1_branch: Option<Branch>,
}

pub fn bound_report(n: usize, c: f64, sigma: f64) -> Result<BoundReport> {
    let (lambda1, lambda1_branch) = lambda1_bound_with_branch(n, c, sigma)?;
    let (wmax_lb, wmax_branch) = wmax_bound_with_branch(n, c, sigma)?;
    let (w1_lb, w1_branch) = if c > 0.0 {
        let (v, b) = w1_bound_with_branch(n, c, sigma)?;
        (Some(v), Some(b))
    } else {
        (None, None)
    };
    let p = polar(c, sigma)?;
    Ok(BoundReport {
        n,
        c,
        sigma,
        lambda1_over_n: lambda1 / n as f64,
        wmax_lb,
        w1_lb,
        r_c: p.r_c,
        phi_c: p.phi_c,
        theta_min_ub: theta_min_bound(n, c, sigma)?,
        lambda1_branch,
        wmax_branch,
        w1_branch,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn worked_example_lambda1() {
        // n = 406, (c, sigma) = (0.14, 0.017): the mean branch gives 57.7.
        let (v, branch) = lambda1_bound_with_branch(406, 0.14, 0.017).unwrap();
        assert!((v - 57.7).abs() < 1e-9, "{v}");
        assert_eq!(branch, Branch::Mean);
    }

    #[test]
    fn worked_example_w1() {
        let v = w1_bound(406, 0.14, 0.017).unwrap();
        assert!((v - 0.98529).abs() < 5e-6, "{v}");
        // The dimension-free version is slightly weaker.
        let u = universal_bounds(0.14, 0.017).unwrap().w1.unwrap();
        assert!((u - 0.985255).abs() < 1e-6, "{u}");
        assert!(u < v);
    }

    #[test]
    fn worked_example_wmax() {
        let v = wmax_bound(406, 0.14, 0.017).unwrap();
        // Independent route: s((405 * (0.0196/0.019889) + 1) / 406).
        let ratio = 0.14f64.powi(2) / (0.14f64.powi(2) + 0.017f64.powi(2));
        let g = (405.0 * ratio + 1.0) / 406.0;
        let expected = 0.5 * (1.0 + (2.0 * g - 1.0).sqrt());
        assert!((v - expected).abs() < 1e-14);
        assert!((v - 0.9927).abs() < 5e-5, "{v}");
    }

    #[test]
    fn all_ones_characteristic_saturates() {
        assert!((lambda1_bound(9, 1.0, 0.0).unwrap() - 9.0).abs() < 1e-12);
        assert!((wmax_bound(9, 1.0, 0.0).unwrap() - 1.0).abs() < 1e-12);
        assert!((w1_bound(9, 1.0, 0.0).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn block_counterexample_point_is_tight_for_lambda1() {
        // (c, sigma) = (0, sqrt(1/2)) at n = 4 gives 4 * s(0.625) = 3,
        // exactly the top eigenvalue of the 4x4 block counterexample.
        let v = lambda1_bound(4, 0.0, 0.5f64.sqrt()).unwrap();
        assert!((v - 3.0).abs() < 1e-12, "{v}");
        let w = wmax_bound(4, 0.0, 0.5f64.sqrt()).unwrap();
        assert!((w - 0.25).abs() < 1e-12, "{w}");
    }

    #[test]
    fn w1_bound_can_be_vacuous() {
        let (v, branch) = w1_bound_with_branch(10, 0.1, 0.5).unwrap();
        assert!((v - (1.0 - 0.81 / 0.334)).abs() < 1e-12, "{v}");
        assert!(v < -1.42 && v > -1.43);
        assert_eq!(branch, Branch::Scaled);
    }

    #[test]
    fn w1_bound_requires_positive_mean() {
        assert!(matches!(w1_bound(10, 0.0, 0.5), Err(Error::Unsupported(_))));
        assert!(matches!(
            w1_bound(10, -0.05, 0.5),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn origin_is_rejected() {
        assert!(matches!(
            lambda1_bound(5, 0.0, 0.0),
            Err(Error::IdentityCharacteristic)
        ));
        assert!(matches!(
            wmax_bound(5, 0.0, 0.0),
            Err(Error::IdentityCharacteristic)
        ));
        assert!(matches!(
            polar(0.0, 0.0),
            Err(Error::IdentityCharacteristic)
        ));
    }

    #[test]
    fn illegal_characteristic_names_the_constraint() {
        let err = lambda1_bound(100, -0.02, 0.1).unwrap_err();
        assert!(
            err.to_string().contains("minimal mean correlation"),
            "{err}"
        );
    }

    #[test]
    fn universal_bounds_examples() {
        let u = universal_bounds(1.0, 0.0).unwrap();
        assert_eq!((u.lambda1_over_n, u.wmax, u.w1), (1.0, 1.0, Some(1.0)));

        let u = universal_bounds(0.0, 0.9).unwrap();
        let expected = 0.5 * (1.0 + 0.62f64.sqrt());
        assert!((u.lambda1_over_n - expected).abs() < 1e-12);
        assert!((u.lambda1_over_n - 0.8937).abs() < 5e-5);
        assert!(u.w1.is_none());
    }

    #[test]
    fn polar_examples() {
        let p = polar(1.0, 0.0).unwrap();
        assert_eq!((p.r_c, p.phi_c), (1.0, 0.0));
        let p = polar(0.0, 0.5).unwrap();
        assert!((p.r_c - 0.5).abs() < 1e-15 && (p.phi_c - FRAC_PI_2).abs() < 1e-15);
        let p = polar(0.3, 0.4).unwrap();
        assert!((p.r_c - 0.5).abs() < 1e-15);
        assert!((p.phi_c - 0.6f64.acos()).abs() < 1e-15);
        assert!((p.phi_c - 0.9273).abs() < 1e-4);
    }

    #[test]
    fn theta_min_examples() {
        assert!(theta_min_bound(12, 1.0, 0.0).unwrap().abs() < 1e-12);
        // c = 0: s_n(0) = g_n(0) = 1/n, angle arccos(1/sqrt(n)) -> pi/2.
        for n in [4usize, 100, 10_000] {
            let t = theta_min_bound(n, 0.0, 0.3).unwrap();
            let expected = (1.0 / (n as f64).sqrt()).acos();
            assert!((t - expected).abs() < 1e-12);
        }
        // Relaxation theta_min <= phi_c for c >= 0.
        for &(c, sigma) in &[(0.3, 0.4), (0.05, 0.8), (0.7, 0.1)] {
            let t = theta_min_bound(50, c, sigma).unwrap();
            let p = polar(c, sigma).unwrap();
            assert!(t <= p.phi_c + 1e-12);
        }
    }

    #[test]
    fn bracket_bound_examples() {
        let v = w1_bracket_bound(6, 0.3, 1.0, 1.0).unwrap();
        assert!((v - g_n(6, 0.3)).abs() < 1e-15);
        let v = w1_bracket_bound(4, 0.5, 0.8, 1.0).unwrap();
        assert!((v - 0.53125).abs() < 1e-12);
        assert!(w1_bracket_bound(4, 0.5, 0.4, 0.5).is_err());
        // a = s_n(c^2 + sigma^2), b = 1 reproduces the scaled w_1 branch.
        let (c, sigma, n) = (0.3, 0.2, 12usize);
        let a = s_n(n, c * c + sigma * sigma).unwrap();
        let via_bracket = w1_bracket_bound(n, c, a, 1.0).unwrap();
        let direct = 1.0 - (1.0 - g_n(n, c)) / a;
        assert!((via_bracket - direct).abs() < 1e-12);
    }

    #[test]
    fn psd_bound_tight_cases() {
        let id = SquareMat::identity(6);
        assert!((psd_top_eig_bound(&id).unwrap() - 1.0).abs() < 1e-12);

        let mut ones = SquareMat::zeros(5);
        for i in 0..5 {
            for j in 0..5 {
                ones.set(i, j, 1.0);
            }
        }
        assert!((psd_top_eig_bound(&ones).unwrap() - 5.0).abs() < 1e-12);

        let mut diag = SquareMat::zeros(3);
        diag.set(0, 0, 3.0);
        diag.set(1, 1, 1.0);
        assert!((psd_top_eig_bound(&diag).unwrap() - 3.0).abs() < 1e-12);

        assert!(psd_top_eig_bound(&SquareMat::zeros(3)).is_err());
    }

    #[test]
    fn comparator_values() {
        assert!((fueredi_komlos_reference(0.14, 0.017).unwrap() - 0.94102).abs() < 5e-6);
        assert_eq!(fueredi_komlos_reference(0.4, 0.0).unwrap(), 1.0);
        assert_eq!(fueredi_komlos_reference(0.1, 0.1).unwrap(), -3.0);
        assert!(fueredi_komlos_reference(0.0, 0.1).is_err());
    }

    #[test]
    fn wieland_holds_for_equal_matrices() {
        let mut a = SquareMat::identity(4);
        a.set(0, 1, 0.3);
        a.set(1, 0, 0.3);
        let report = wieland_residual_check(&a, &a).unwrap();
        assert!(report.all_hold);
        assert_eq!(report.frob_sq, 0.0);
    }

    #[test]
    fn wieland_reproduces_alignment_chain() {
        // A is the constant matrix at the mean of B, a one-flip sign matrix:
        // the k = 0 inequality gives back 1 - w_1 <= (n-1)/n * sigma^2/c^2.
        let n = 8usize;
        let signs: Vec<f64> = (0..n).map(|i| if i == 0 { -1.0 } else { 1.0 }).collect();
        let mut b = SquareMat::zeros(n);
        for i in 0..n {
            for j in 0..n {
                b.set(i, j, signs[i] * signs[j]);
            }
        }
        let c = 0.5; // mean correlation of b
        let mut a = SquareMat::identity(n);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    a.set(i, j, c);
                }
            }
        }
        let report = wieland_residual_check(&a, &b).unwrap();
        assert!(report.all_hold, "worst slack {}", report.worst_slack);
        assert!((report.frob_sq - 42.0).abs() < 1e-9); // n(n-1) sigma^2 = 56 * 0.75

        let top = report
            .entries
            .iter()
            .find(|e| e.eigen_index == 0 && e.k == 0)
            .unwrap();
        // eta_0 = |8 - (1 - c)| = 7.5 and alignment g_8(0.5) = 0.5625.
        assert!((top.eta - 7.5).abs() < 1e-9);
        assert!((top.alignment_sq - 0.5625).abs() < 1e-9);
        let w1_deficit = 1.0 - top.alignment_sq;
        let claimed = (n as f64 - 1.0) / n as f64 * 0.75 / (c * c);
        assert!(w1_deficit <= claimed + 1e-12);
    }

    #[test]
    fn report_is_consistent() {
        let r = bound_report(12, 0.3, 0.2).unwrap();
        assert!((r.r_c * r.r_c - (0.3f64 * 0.3 + 0.2 * 0.2)).abs() < 1e-14);
        assert!(r.lambda1_over_n >= 1.0 / 12.0 && r.lambda1_over_n <= 1.0);
        assert!(r.wmax_lb >= 0.0 && r.wmax_lb <= 1.0);
        assert!(r.w1_lb.unwrap() <= 1.0);
        assert!(r.theta_min_ub <= r.phi_c + 1e-12);
    }
}
