//! Classification of `(n, c, sigma)` points into guarantee and
//! counterexample domains.
//!
//! The guarantee conditions certify `w_1 > 1/2` (and hence `w_1 = w_max`)
//! for every matrix with that characteristic; the counterexample regions are
//! where explicit matrices with `w_1 < w_max` can be built. In between lies
//! territory the classifier honestly reports as unknown.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scaling::{g_n, legal_domain, min_mean_correlation, s_n};

/// Identifier of the first satisfied guarantee condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ConditionId {
    I,
    II,
    III,
}

fn require_positive_mean(n: usize, c: f64, sigma: f64) -> Result<()> {
    if c <= 0.0 {
        return Err(Error::Unsupported(format!(
            "the guarantee conditions assume a positive mean correlation, got c = {c}"
        )));
    }
    if !legal_domain(n, c, sigma) {
        return Err(Error::Precondition(format!(
            "({c}, {sigma}) is outside the legal domain for n = {n}"
        )));
    }
    Ok(())
}

/// The three dimension-aware-but-simple conditions:
/// (I) `c >= 1/2`, (II) `c >= sigma + 1/sqrt(n)`, (III) `c >= 2^(1/4) sigma`.
pub fn theorem_simple_conditions(n: usize, c: f64, sigma: f64) -> Result<[bool; 3]> {
    require_positive_mean(n, c, sigma)?;
    Ok([
        c >= 0.5,
        c >= sigma + 1.0 / (n as f64).sqrt(),
        c >= std::f64::consts::SQRT_2.sqrt() * sigma,
    ])
}

/// First satisfied simple condition in the order I, II, III, if any.
///
/// A hit certifies `w_1 > 1/2`, hence `w_1 = w_max`, for every `n x n`
/// correlation matrix with this characteristic.
pub fn theorem3_guarantee(n: usize, c: f64, sigma: f64) -> Result<Option<ConditionId>> {
    Ok(first_hit(theorem_simple_conditions(n, c, sigma)?))
}

/// The sharper scaled conditions: (I) `g_n(c) > 1/2`,
/// (II) `g_n(c)^2 / g_n(c^2 + sigma^2) > 1/2`,
/// (III) `s_n(c^2/(c^2+sigma^2)) > (n-1)/n * sigma^2/c^2`.
pub fn theorem_scaled_conditions(n: usize, c: f64, sigma: f64) -> Result<[bool; 3]> {
    require_positive_mean(n, c, sigma)?;
    let r_sq = c * c + sigma * sigma;
    let g = g_n(n, c);
    Ok([
        g > 0.5,
        g * g / g_n(n, r_sq) > 0.5,
        s_n(n, c * c / r_sq)? > (n as f64 - 1.0) / n as f64 * sigma * sigma / (c * c),
    ])
}

/// First satisfied scaled condition in the order I, II, III, if any.
pub fn theorem5_guarantee(n: usize, c: f64, sigma: f64) -> Result<Option<ConditionId>> {
    Ok(first_hit(theorem_scaled_conditions(n, c, sigma)?))
}

fn first_hit(conds: [bool; 3]) -> Option<ConditionId> {
    match conds {
        [true, _, _] => Some(ConditionId::I),
        [_, true, _] => Some(ConditionId::II),
        [_, _, true] => Some(ConditionId::III),
        _ => None,
    }
}

/// Membership flags for the open regions of the characteristic plane.
///
/// The regions themselves do not depend on `n`; the optional dimension is
/// carried only to annotate reports.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RegionFlags {
    pub n: Option<usize>,
    pub a: bool,
    pub a1: bool,
    pub a2: bool,
    pub b1: bool,
    pub b2: bool,
}

/// `A`: `c, sigma > 0` and `c^2 + sigma^2 < 1`;
/// `A1`: in `A` and (`c >= 1/2` or `sigma < c`);
/// `A2`: in `A` and (`sigma > sqrt(3) c` or `c < sigma < 1 - c`);
/// `B1`: `0 < c < sigma < 1 - c`;
/// `B2`: `sigma > sqrt(3) c`, `c, sigma > 0`, `c^2 + sigma^2 < 1`.
pub fn region_membership(n: Option<usize>, c: f64, sigma: f64) -> RegionFlags {
    let a = c > 0.0 && sigma > 0.0 && c * c + sigma * sigma < 1.0;
    let a1 = a && (c >= 0.5 || sigma < c);
    let a2 = a && (sigma > 3.0f64.sqrt() * c || (c < sigma && sigma < 1.0 - c));
    let b1 = c > 0.0 && c < sigma && sigma < 1.0 - c;
    let b2 = sigma > 3.0f64.sqrt() * c && c > 0.0 && sigma > 0.0 && c * c + sigma * sigma < 1.0;
    RegionFlags {
        n,
        a,
        a1,
        a2,
        b1,
        b2,
    }
}

/// Whether `(c, sigma)` lies in the even-dimension constructive triangle
/// `max{ -sqrt(n(n-2)) c, sqrt(n/(n-2)) c } < sigma <= sqrt((n-2)/n) (1 - c)`.
pub fn counterexample_triangle(n: usize, c: f64, sigma: f64) -> Result<bool> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(Error::Precondition(format!(
            "the triangle construction needs an even dimension >= 4, got {n}"
        )));
    }
    let nf = n as f64;
    let lower = f64::max(-(nf * (nf - 2.0)).sqrt() * c, (nf / (nf - 2.0)).sqrt() * c);
    let upper = ((nf - 2.0) / nf).sqrt() * (1.0 - c);
    Ok(lower < sigma && sigma <= upper)
}

/// Largest admissible mixing weight for the perturbed rank-one construction:
/// `min{ (1/sqrt(2) - sqrt(g_n(c))) / 6, 1 - sqrt(2/3) }` when
/// `1/n < g_n(c) < 1/2`, none otherwise.
pub fn perturbation_mu_max(n: usize, c: f64) -> Option<f64> {
    let g = g_n(n, c);
    if g <= 1.0 / n as f64 || g >= 0.5 {
        return None;
    }
    Some(f64::min(
        (0.5f64.sqrt() - g.sqrt()) / 6.0,
        1.0 - (2.0f64 / 3.0).sqrt(),
    ))
}

/// All sign-vector counts `k` whose rank-one mean correlation
/// `(n (2k/n - 1)^2 - 1) / (n - 1)` falls strictly inside `(c_lo, c_hi)`.
pub fn rank_one_feasible_k(n: usize, c_lo: f64, c_hi: f64) -> Vec<usize> {
    (0..=n)
        .filter(|&k| {
            let c = rank_one_mean(n, k);
            c_lo < c && c < c_hi
        })
        .collect()
}

/// Mean correlation of the rank-one matrix with `k` flipped signs.
pub fn rank_one_mean(n: usize, k: usize) -> f64 {
    let nf = n as f64;
    let t = 2.0 * k as f64 / nf - 1.0;
    (nf * t * t - 1.0) / (nf - 1.0)
}

/// Whether `(c, sigma)` lies inside one of the perturbation triangles spanned
/// by a feasible rank-one point `(c_k, sigma_k)` on the unit circle, the
/// segment down to `(c_k, (1 - mu_max) sigma_k)` and the origin.
pub fn in_perturbation_triangle(n: usize, c: f64, sigma: f64) -> bool {
    if c <= 0.0 || sigma <= 0.0 {
        return false;
    }
    for k in 0..=n {
        let c_hat = rank_one_mean(n, k);
        if c_hat <= 0.0 {
            continue;
        }
        let Some(mu_cap) = perturbation_mu_max(n, c_hat) else {
            continue;
        };
        let sigma_hat = (1.0 - c_hat * c_hat).sqrt();
        let t = c / c_hat;
        if t <= 0.0 || t > 1.0 {
            continue;
        }
        let sigma_on_circle = sigma / t;
        if sigma_on_circle < sigma_hat && sigma_on_circle > (1.0 - mu_cap) * sigma_hat {
            return true;
        }
    }
    false
}

/// Combined classification of one `(n, c, sigma)` point.
#[derive(Debug, Clone, Serialize)]
pub struct GuaranteeReport {
    pub n: usize,
    pub c: f64,
    pub sigma: f64,
    /// First simple condition that fired, if any (requires `c > 0`).
    pub theorem3: Option<ConditionId>,
    /// First scaled condition that fired, if any (requires `c > 0`).
    pub theorem5: Option<ConditionId>,
    pub in_a: bool,
    pub in_a1: bool,
    pub in_a2: bool,
    pub in_b1: bool,
    pub in_b2: bool,
    /// Even dimensions only; `None` for odd `n`.
    pub triangle_feasible: Option<bool>,
    pub perturbation_mu_max: Option<f64>,
}

pub fn guarantee_report(n: usize, c: f64, sigma: f64) -> Result<GuaranteeReport> {
    if !legal_domain(n, c, sigma) {
        return Err(Error::Precondition(format!(
            "({c}, {sigma}) is outside the legal domain for n = {n} (c >= {} required)",
            min_mean_correlation(n)
        )));
    }
    let (theorem3, theorem5) = if c > 0.0 {
        (
            theorem3_guarantee(n, c, sigma)?,
            theorem5_guarantee(n, c, sigma)?,
        )
    } else {
        (None, None)
    };
    let regions = region_membership(Some(n), c, sigma);
    let triangle_feasible = if n >= 4 && n.is_multiple_of(2) {
        Some(counterexample_triangle(n, c, sigma)?)
    } else {
        None
    };
    Ok(GuaranteeReport {
        n,
        c,
        sigma,
        theorem3,
        theorem5,
        in_a: regions.a,
        in_a1: regions.a1,
        in_a2: regions.a2,
        in_b1: regions.b1,
        in_b2: regions.b2,
        triangle_feasible,
        perturbation_mu_max: perturbation_mu_max(n, c),
    })
}
