//! Symmetric eigendecomposition and the diagonal-alignment weights.
//!
//! The solver is a cyclic Jacobi iteration; quadratic convergence makes it
//! dependable for the dense desk-scale matrices this crate targets. All
//! spectra are reported in descending order with a deterministic tie-break
//! and sign convention so reports and golden files are reproducible.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{Characteristic, CorrelationMatrix, SquareMat};
use crate::scaling::g_n;

const MAX_SWEEPS: usize = 50;

/// Default gap below which two eigenvalues count as degenerate.
pub fn default_degeneracy_tol(n: usize) -> f64 {
    1e-7 * n as f64
}

/// Eigendecomposition of a correlation matrix, ordered for reporting.
#[derive(Debug, Clone, Serialize)]
pub struct SpectralData {
    pub n: usize,
    /// Descending; ties broken by descending weight, then original index.
    pub eigenvalues: Vec<f64>,
    /// `eigenvectors[j]` pairs with `eigenvalues[j]`; each has
    /// `<v_j, delta_n> >= 0`, an exact zero resolved by making the
    /// largest-magnitude entry positive.
    pub eigenvectors: Vec<Vec<f64>>,
    /// `w_j = <v_j, delta_n>^2`.
    pub weights: Vec<f64>,
    /// `eigenvalues / n`.
    pub normalized_eigenvalues: Vec<f64>,
}

/// Squared alignments of each vector with the normalised diagonal vector.
pub fn weights(vectors: &[Vec<f64>]) -> Vec<f64> {
    vectors
        .iter()
        .map(|v| {
            let s: f64 = v.iter().sum();
            s * s / v.len() as f64
        })
        .collect()
}

/// Full symmetric eigendecomposition with descending eigenvalues.
pub fn eigendecompose(c: &CorrelationMatrix) -> Result<SpectralData> {
    let n = c.n();
    let (raw_eigs, raw_vecs) = jacobi(c.as_square())?;
    let raw_weights = weights(&raw_vecs);

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        raw_eigs[b]
            .partial_cmp(&raw_eigs[a])
            .unwrap()
            .then(raw_weights[b].partial_cmp(&raw_weights[a]).unwrap())
            .then(a.cmp(&b))
    });

    let mut eigenvalues = Vec::with_capacity(n);
    let mut eigenvectors = Vec::with_capacity(n);
    for &idx in &order {
        eigenvalues.push(raw_eigs[idx]);
        eigenvectors.push(fix_sign(raw_vecs[idx].clone()));
    }
    let w = weights(&eigenvectors);
    let normalized = eigenvalues.iter().map(|l| l / n as f64).collect();
    Ok(SpectralData {
        n,
        eigenvalues,
        eigenvectors,
        weights: w,
        normalized_eigenvalues: normalized,
    })
}

fn fix_sign(mut v: Vec<f64>) -> Vec<f64> {
    let s: f64 = v.iter().sum();
    let flip = if s != 0.0 {
        s < 0.0
    } else {
        let lead = v
            .iter()
            .cloned()
            .max_by(|a, b| a.abs().partial_cmp(&b.abs()).unwrap())
            .unwrap_or(0.0);
        lead < 0.0
    };
    if flip {
        for x in &mut v {
            *x = -*x;
        }
    }
    v
}

impl SpectralData {
    /// Largest entry-wise error of `sum_j lambda_j v_j v_j^T` against `m`.
    pub fn reconstruction_error(&self, m: &SquareMat) -> f64 {
        let n = self.n;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0.0;
                for (l, v) in self.eigenvalues.iter().zip(&self.eigenvectors) {
                    acc += l * v[i] * v[j];
                }
                worst = worst.max((acc - m.get(i, j)).abs());
            }
        }
        worst
    }
}

/// Residuals of the two characteristic identities
/// `<lambda~, w> = g_n(c)` and `||lambda~||^2 = g_n(c^2 + sigma^2)`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct IdentityResiduals {
    pub r1: f64,
    pub r2: f64,
}

pub fn characteristic_identity_residuals(c: &CorrelationMatrix) -> Result<IdentityResiduals> {
    let spectral = eigendecompose(c)?;
    Ok(identity_residuals_from(&spectral, &c.characteristic()))
}

/// Same residuals from parts already at hand (avoids a second eigensolve).
pub fn identity_residuals_from(s: &SpectralData, ch: &Characteristic) -> IdentityResiduals {
    let dot: f64 = s
        .normalized_eigenvalues
        .iter()
        .zip(&s.weights)
        .map(|(l, w)| l * w)
        .sum();
    let norm_sq: f64 = s.normalized_eigenvalues.iter().map(|l| l * l).sum();
    IdentityResiduals {
        r1: (dot - g_n(ch.n, ch.c)).abs(),
        r2: (norm_sq - g_n(ch.n, ch.c * ch.c + ch.sigma * ch.sigma)).abs(),
    }
}

/// One cluster of near-equal eigenvalues with its eigenspace weight.
#[derive(Debug, Clone, Serialize)]
pub struct EigenspaceWeight {
    pub eigenvalue: f64,
    pub multiplicity: usize,
    /// Squared norm of the projection of `delta_n` onto the cluster's
    /// eigenspace; independent of the basis chosen inside the cluster.
    pub weight: f64,
}

/// Group eigenvalues whose consecutive gaps stay below `degeneracy_tol` and
/// sum the member weights per group.
pub fn eigenspace_weights(s: &SpectralData, degeneracy_tol: f64) -> Vec<EigenspaceWeight> {
    let mut clusters = Vec::new();
    let mut start = 0;
    for j in 1..=s.n {
        let gap_opens = j == s.n || (s.eigenvalues[j - 1] - s.eigenvalues[j]) >= degeneracy_tol;
        if gap_opens {
            let members = start..j;
            let weight = members.clone().map(|k| s.weights[k]).sum();
            let mean = members.clone().map(|k| s.eigenvalues[k]).sum::<f64>() / (j - start) as f64;
            clusters.push(EigenspaceWeight {
                eigenvalue: mean,
                multiplicity: j - start,
                weight,
            });
            start = j;
        }
    }
    clusters
}

/// Relation between the top weight `w_1` and the largest eigenspace weight.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum W1VsWmax {
    W1IsMax,
    W1LessThanWmax,
    /// The largest eigenvalue is degenerate; the relation depends on the
    /// eigenbasis chosen inside its eigenspace.
    AmbiguousDegenerate,
}

pub fn w1_vs_wmax(c: &CorrelationMatrix, degeneracy_tol: f64) -> Result<W1VsWmax> {
    let spectral = eigendecompose(c)?;
    Ok(w1_vs_wmax_from(&spectral, degeneracy_tol))
}

pub fn w1_vs_wmax_from(s: &SpectralData, degeneracy_tol: f64) -> W1VsWmax {
    let clusters = eigenspace_weights(s, degeneracy_tol);
    if clusters[0].multiplicity > 1 {
        return W1VsWmax::AmbiguousDegenerate;
    }
    let w1 = s.weights[0];
    let rest_max = clusters[1..]
        .iter()
        .map(|c| c.weight)
        .fold(0.0f64, f64::max);
    if w1 < rest_max {
        W1VsWmax::W1LessThanWmax
    } else {
        W1VsWmax::W1IsMax
    }
}

/// Eigenvalues only, for validation paths.
pub(crate) fn sym_eigenvalues(m: &SquareMat) -> Result<Vec<f64>> {
    jacobi(m).map(|(eigs, _)| eigs)
}

/// Eigendecomposition of a general symmetric matrix, descending order,
/// without the correlation-specific tie-break or sign convention.
pub fn sym_eigen(m: &SquareMat) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let (eigs, vecs) = jacobi(m)?;
    let mut order: Vec<usize> = (0..m.n()).collect();
    order.sort_by(|&a, &b| eigs[b].partial_cmp(&eigs[a]).unwrap().then(a.cmp(&b)));
    Ok((
        order.iter().map(|&i| eigs[i]).collect(),
        order.iter().map(|&i| vecs[i].clone()).collect(),
    ))
}

/// Cyclic Jacobi with the classic threshold schedule; returns unsorted
/// eigenvalues and the matching eigenvectors.
fn jacobi(m: &SquareMat) -> Result<(Vec<f64>, Vec<Vec<f64>>)> {
    let n = m.n();
    let mut a = m.clone();
    let mut v = SquareMat::identity(n);
    let mut d: Vec<f64> = (0..n).map(|i| a.get(i, i)).collect();
    let mut b = d.clone();
    let mut z = vec![0.0; n];

    for sweep in 0..MAX_SWEEPS {
        let mut off_sum = 0.0;
        for p in 0..n - 1 {
            for q in p + 1..n {
                off_sum += a.get(p, q).abs();
            }
        }
        if off_sum == 0.0 {
            let vectors = (0..n)
                .map(|j| (0..n).map(|i| v.get(i, j)).collect())
                .collect();
            return Ok((d, vectors));
        }
        let tresh = if sweep < 3 {
            0.2 * off_sum / (n * n) as f64
        } else {
            0.0
        };

        for p in 0..n - 1 {
            for q in p + 1..n {
                let g = 100.0 * a.get(p, q).abs();
                // After a few sweeps, skip entries that no longer move the
                // diagonal at working precision and zero them out.
                if sweep > 3 && d[p].abs() + g == d[p].abs() && d[q].abs() + g == d[q].abs() {
                    a.set(p, q, 0.0);
                    continue;
                }
                if a.get(p, q).abs() <= tresh {
                    continue;
                }

                let h = d[q] - d[p];
                let t = if h.abs() + g == h.abs() {
                    a.get(p, q) / h
                } else {
                    let theta = 0.5 * h / a.get(p, q);
                    let mut t = 1.0 / (theta.abs() + (1.0 + theta * theta).sqrt());
                    if theta < 0.0 {
                        t = -t;
                    }
                    t
                };
                let cos = 1.0 / (1.0 + t * t).sqrt();
                let sin = t * cos;
                let tau = sin / (1.0 + cos);
                let h = t * a.get(p, q);
                z[p] -= h;
                z[q] += h;
                d[p] -= h;
                d[q] += h;
                a.set(p, q, 0.0);

                let rotate = |mat: &mut SquareMat, i1: usize, j1: usize, i2: usize, j2: usize| {
                    let g = mat.get(i1, j1);
                    let h = mat.get(i2, j2);
                    mat.set(i1, j1, g - sin * (h + g * tau));
                    mat.set(i2, j2, h + sin * (g - h * tau));
                };
                for j in 0..p {
                    rotate(&mut a, j, p, j, q);
                }
                for j in p + 1..q {
                    rotate(&mut a, p, j, j, q);
                }
                for j in q + 1..n {
                    rotate(&mut a, p, j, q, j);
                }
                for j in 0..n {
                    rotate(&mut v, j, p, j, q);
                }
            }
        }
        for p in 0..n {
            b[p] += z[p];
            d[p] = b[p];
            z[p] = 0.0;
        }
    }

    let mut off_sum = 0.0;
    for p in 0..n - 1 {
        for q in p + 1..n {
            off_sum += a.get(p, q).abs();
        }
    }
    Err(Error::NoConvergence {
        sweeps: MAX_SWEEPS,
        off_sum,
    })
}
