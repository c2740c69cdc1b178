//! Explicit correlation-matrix families and seeded random ensembles.
//!
//! Each constructor returns a matrix whose characteristic and spectrum are
//! known in closed form, which makes them the test bed for the bounds and
//! the building blocks of the counterexample constructions.

use serde::{Deserialize, Serialize};

use crate::domains::{counterexample_triangle, perturbation_mu_max, rank_one_mean};
use crate::error::{Error, Result};
use crate::matrix::{CorrelationMatrix, SquareMat};
use crate::rng::SeededRng;
use crate::scaling::g_n;
use crate::spectral::{self, W1VsWmax};

/// The identity matrix, characteristic `(0, 0)`.
pub fn identity(n: usize) -> Result<CorrelationMatrix> {
    if n < 2 {
        return Err(Error::Dimension { rows: n, cols: n });
    }
    Ok(CorrelationMatrix::from_trusted(SquareMat::identity(n)))
}

/// Constant off-diagonal coefficients `c0`, valid for `1/(1-n) <= c0 <= 1`.
pub fn constant(n: usize, c0: f64) -> Result<CorrelationMatrix> {
    if n < 2 {
        return Err(Error::Dimension { rows: n, cols: n });
    }
    let min_eig = f64::min(1.0 + (n as f64 - 1.0) * c0, 1.0 - c0);
    if min_eig < 0.0 {
        return Err(Error::NotPsd {
            min_eigenvalue: min_eig,
        });
    }
    let mut m = SquareMat::identity(n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                m.set(i, j, c0);
            }
        }
    }
    Ok(CorrelationMatrix::from_trusted(m))
}

/// Rank-one matrix `x x^T` from a vector of signs; `c^2 + sigma^2 = 1`.
pub fn rank_one(signs: &[i8]) -> Result<CorrelationMatrix> {
    let n = signs.len();
    if n < 2 {
        return Err(Error::Dimension { rows: n, cols: n });
    }
    if signs.iter().any(|&s| s != 1 && s != -1) {
        return Err(Error::Precondition("signs must be +1 or -1".into()));
    }
    let mut m = SquareMat::zeros(n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, (signs[i] * signs[j]) as f64);
        }
    }
    Ok(CorrelationMatrix::from_trusted(m))
}

/// Rank-one matrix with the first `k` signs flipped; mean correlation
/// `(n (2k/n - 1)^2 - 1) / (n - 1)` and `sigma = sqrt(1 - c^2)`.
pub fn rank_one_k(n: usize, k: usize) -> Result<CorrelationMatrix> {
    if k > n {
        return Err(Error::Precondition(format!(
            "k must lie in [0, n], got k = {k}, n = {n}"
        )));
    }
    let signs: Vec<i8> = (0..n).map(|i| if i < k { -1 } else { 1 }).collect();
    rank_one(&signs)
}

/// Kronecker product; the product of correlation matrices is one again.
pub fn tensor_product(c1: &CorrelationMatrix, c2: &CorrelationMatrix) -> CorrelationMatrix {
    let (n, m) = (c1.n(), c2.n());
    let mut out = SquareMat::zeros(n * m);
    for i in 0..n {
        for j in 0..n {
            let a = c1.entry(i, j);
            for k in 0..m {
                for l in 0..m {
                    out.set(i * m + k, j * m + l, a * c2.entry(k, l));
                }
            }
        }
    }
    CorrelationMatrix::from_trusted(out)
}

/// Two all-ones diagonal blocks of size `n/2` coupled by `-eps`.
///
/// Eigenvalues are `n(1+eps)/2`, `n(1-eps)/2` and zeros; the eigenvector of
/// the *second* eigenvalue is the diagonal vector, so `w_1 < w_max`.
pub fn block_counterexample(n: usize, eps: f64) -> Result<CorrelationMatrix> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(Error::Precondition(format!(
            "the block construction needs an even dimension >= 4, got {n}"
        )));
    }
    if !(0.0..1.0).contains(&eps) || eps == 0.0 {
        return Err(Error::Precondition(format!(
            "eps must lie in (0, 1), got {eps}"
        )));
    }
    let half = n / 2;
    let mut m = SquareMat::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let same_block = (i < half) == (j < half);
            m.set(i, j, if same_block { 1.0 } else { -eps });
        }
    }
    Ok(CorrelationMatrix::from_trusted(m))
}

/// `(1 - mu) C + mu Id`: scales the characteristic by `1 - mu` and maps each
/// eigenvalue to `(1 - mu) lambda + mu` with unchanged eigenvectors.
pub fn convex_with_identity(c: &CorrelationMatrix, mu: f64) -> Result<CorrelationMatrix> {
    if !(0.0..=1.0).contains(&mu) {
        return Err(Error::Precondition(format!(
            "mu must lie in [0, 1], got {mu}"
        )));
    }
    let n = c.n();
    let mut m = SquareMat::identity(n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                m.set(i, j, (1.0 - mu) * c.entry(i, j));
            }
        }
    }
    Ok(CorrelationMatrix::from_trusted(m))
}

/// Entry-wise convex combination `(1 - mu) A + mu B` of two matrices of the
/// same dimension. The mean correlation mixes linearly; `sigma` does not.
pub fn convex_combination(
    a: &CorrelationMatrix,
    b: &CorrelationMatrix,
    mu: f64,
) -> Result<CorrelationMatrix> {
    if a.n() != b.n() {
        return Err(Error::Dimension {
            rows: a.n(),
            cols: b.n(),
        });
    }
    if !(0.0..=1.0).contains(&mu) {
        return Err(Error::Precondition(format!(
            "mu must lie in [0, 1], got {mu}"
        )));
    }
    let n = a.n();
    let mut m = SquareMat::identity(n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                m.set(i, j, (1.0 - mu) * a.entry(i, j) + mu * b.entry(i, j));
            }
        }
    }
    Ok(CorrelationMatrix::from_trusted(m))
}

/// Block-diagonal extension by one uncorrelated coordinate.
///
/// The characteristic transfers as `c = (n-1)/(n+1) c'` and
/// `c^2 + sigma^2 = (n-1)/(n+1) (c'^2 + sigma'^2)`; `w_1 < w_max` survives
/// whenever no eigenvalue of the input equals one.
pub fn embed(c: &CorrelationMatrix) -> CorrelationMatrix {
    let n = c.n();
    let mut m = SquareMat::identity(n + 1);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, c.entry(i, j));
        }
    }
    CorrelationMatrix::from_trusted(m)
}

/// Characteristic `(c', sigma')` an `n x n` matrix must have so that its
/// embedding hits `(c, sigma)`; `None` when the radicand turns negative.
pub fn inverse_embedding_characteristic(
    n: usize,
    c: f64,
    sigma: f64,
) -> Result<Option<(f64, f64)>> {
    if sigma <= 0.0 {
        return Err(Error::Precondition(format!(
            "sigma must be positive, got {sigma}"
        )));
    }
    let nf = n as f64;
    let ratio = (nf + 1.0) / (nf - 1.0);
    let radicand = 1.0 - 2.0 / (nf - 1.0) * c * c / (sigma * sigma);
    if radicand < 0.0 {
        return Ok(None);
    }
    Ok(Some((ratio * c, sigma * ratio.sqrt() * radicand.sqrt())))
}

/// `(1 - mu) R + mu C0` where `R` is the rank-one matrix with `k` flips and
/// `C0` the constant matrix at its mean correlation `c`.
///
/// Feasible when `1/n < g_n(c) < 1/2` and `0 < mu <` the cap from
/// [`perturbation_mu_max`]; the characteristic is `(c, (1 - mu) sqrt(1 - c^2))`
/// and the result satisfies `w_1 < w_max`, re-verified by an eigensolve.
pub fn perturbed_rank_one(n: usize, k: usize, mu: f64) -> Result<CorrelationMatrix> {
    if k > n {
        return Err(Error::Precondition(format!(
            "k must lie in [0, n], got k = {k}, n = {n}"
        )));
    }
    let c = rank_one_mean(n, k);
    let Some(mu_cap) = perturbation_mu_max(n, c) else {
        return Err(Error::Precondition(format!(
            "g_n(c) = {} is outside (1/n, 1/2); no admissible perturbation for n = {n}, k = {k}",
            g_n(n, c)
        )));
    };
    if mu <= 0.0 || mu >= mu_cap {
        return Err(Error::Precondition(format!(
            "mu must lie in (0, {mu_cap:.6}), got {mu}"
        )));
    }
    let out = convex_combination(&rank_one_k(n, k)?, &constant(n, c)?, mu)?;
    // The cap guards the proof; rounding near it is re-checked numerically.
    match spectral::w1_vs_wmax(&out, spectral::default_degeneracy_tol(n))? {
        W1VsWmax::W1LessThanWmax => Ok(out),
        other => Err(Error::SelfCheck(format!(
            "perturbed rank-one construction failed its alignment check: {other:?}"
        ))),
    }
}

/// Matrix with characteristic `(c, sigma)` and `w_1 < w_max` for any point
/// of the even-dimension triangle: the ray through the origin is traced to
/// the block-counterexample edge, then mixed back with the identity.
pub fn counterexample_for(n: usize, c: f64, sigma: f64) -> Result<CorrelationMatrix> {
    if !counterexample_triangle(n, c, sigma)? {
        return Err(Error::Precondition(format!(
            "({c}, {sigma}) lies outside the constructive triangle for n = {n}"
        )));
    }
    let q = ((n as f64 - 2.0) / n as f64).sqrt();
    let scale = q / (sigma + q * c);
    let (c_edge, sigma_edge) = (scale * c, scale * sigma);
    let eps = 1.0 - 2.0 * g_n(n, c_edge);
    let base = block_counterexample(n, eps)?;
    let mu = if c > 0.0 {
        1.0 - c / c_edge
    } else {
        1.0 - sigma / sigma_edge
    };
    let out = convex_with_identity(&base, mu.clamp(0.0, 1.0))?;

    let ch = out.characteristic();
    if (ch.c - c).abs() > 1e-9 || (ch.sigma - sigma).abs() > 1e-9 {
        return Err(Error::SelfCheck(format!(
            "triangle construction missed its target characteristic: got ({}, {})",
            ch.c, ch.sigma
        )));
    }
    Ok(out)
}

/// Default number of sample rows for [`random_correlation`].
pub fn default_gram_rows(n: usize) -> usize {
    2 * n
}

/// Gram matrix of `n` normalised standard-normal columns of length `rows`;
/// deterministic per seed.
pub fn random_correlation(n: usize, rows: usize, seed: u64) -> Result<CorrelationMatrix> {
    if rows == 0 {
        return Err(Error::Precondition(
            "at least one sample row is required".into(),
        ));
    }
    let mut rng = SeededRng::new(seed);
    let columns: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..rows).map(|_| rng.normal()).collect())
        .collect();
    crate::matrix::gram_from_columns(&columns)
}

/// Expected values a recipe can carry; checked to `1e-9` after construction.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Expected {
    pub c: f64,
    pub sigma: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eigenvalues: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w1_lt_wmax: Option<bool>,
}

/// Serializable description of one constructed matrix.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConstructionRecipe {
    #[serde(flatten)]
    pub kind: RecipeKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RecipeKind {
    Identity {
        n: usize,
    },
    Constant {
        n: usize,
        c0: f64,
    },
    RankOne {
        signs: Vec<i8>,
    },
    Tensor {
        left: Box<ConstructionRecipe>,
        right: Box<ConstructionRecipe>,
    },
    BlockCex {
        n: usize,
        eps: f64,
    },
    ConvexId {
        inner: Box<ConstructionRecipe>,
        mu: f64,
    },
    ConvexPair {
        a: Box<ConstructionRecipe>,
        b: Box<ConstructionRecipe>,
        mu: f64,
    },
    Embed {
        inner: Box<ConstructionRecipe>,
    },
    PerturbedRankOne {
        n: usize,
        k: usize,
        mu: f64,
    },
    TriangleCex {
        n: usize,
        c: f64,
        sigma: f64,
    },
    RandomGram {
        n: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        rows: Option<usize>,
        seed: u64,
    },
}

/// Build the matrix a recipe describes, ignoring its `expected` block.
pub fn build(recipe: &ConstructionRecipe) -> Result<CorrelationMatrix> {
    match &recipe.kind {
        RecipeKind::Identity { n } => identity(*n),
        RecipeKind::Constant { n, c0 } => constant(*n, *c0),
        RecipeKind::RankOne { signs } => rank_one(signs),
        RecipeKind::Tensor { left, right } => Ok(tensor_product(&build(left)?, &build(right)?)),
        RecipeKind::BlockCex { n, eps } => block_counterexample(*n, *eps),
        RecipeKind::ConvexId { inner, mu } => convex_with_identity(&build(inner)?, *mu),
        RecipeKind::ConvexPair { a, b, mu } => convex_combination(&build(a)?, &build(b)?, *mu),
        RecipeKind::Embed { inner } => Ok(embed(&build(inner)?)),
        RecipeKind::PerturbedRankOne { n, k, mu } => perturbed_rank_one(*n, *k, *mu),
        RecipeKind::TriangleCex { n, c, sigma } => counterexample_for(*n, *c, *sigma),
        RecipeKind::RandomGram { n, rows, seed } => {
            random_correlation(*n, rows.unwrap_or_else(|| default_gram_rows(*n)), *seed)
        }
    }
}

const EXPECT_TOL: f64 = 1e-9;

/// Build and, when the recipe carries expectations, verify them.
pub fn build_verified(recipe: &ConstructionRecipe) -> Result<CorrelationMatrix> {
    let m = build(recipe)?;
    if let Some(exp) = &recipe.expected {
        let ch = m.characteristic();
        if (ch.c - exp.c).abs() > EXPECT_TOL || (ch.sigma - exp.sigma).abs() > EXPECT_TOL {
            return Err(Error::SelfCheck(format!(
                "expected characteristic ({}, {}), constructed ({}, {})",
                exp.c, exp.sigma, ch.c, ch.sigma
            )));
        }
        if exp.eigenvalues.is_some() || exp.w1_lt_wmax.is_some() {
            let s = spectral::eigendecompose(&m)?;
            if let Some(eigs) = &exp.eigenvalues {
                if eigs.len() != s.eigenvalues.len() {
                    return Err(Error::SelfCheck(format!(
                        "expected {} eigenvalues, matrix has {}",
                        eigs.len(),
                        s.eigenvalues.len()
                    )));
                }
                for (got, want) in s.eigenvalues.iter().zip(eigs) {
                    if (got - want).abs() > EXPECT_TOL {
                        return Err(Error::SelfCheck(format!(
                            "expected eigenvalue {want}, constructed {got}"
                        )));
                    }
                }
            }
            if let Some(want) = exp.w1_lt_wmax {
                let rel = spectral::w1_vs_wmax_from(&s, spectral::default_degeneracy_tol(m.n()));
                let got = rel == W1VsWmax::W1LessThanWmax;
                if got != want {
                    return Err(Error::SelfCheck(format!(
                        "expected w1 < wmax to be {want}, classification was {rel:?}"
                    )));
                }
            }
        }
    }
    Ok(m)
}
