//! Core matrix types: dense symmetric storage, correlation-matrix validation
//! and the characteristic `(c, sigma)` of the off-diagonal coefficients.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral;

/// Input asymmetry below this is averaged away on ingest, above it is rejected.
pub const ASYMMETRY_TOL: f64 = 1e-12;
/// Allowed slack on the unit diagonal and the `[-1, 1]` coefficient range.
pub const ENTRY_TOL: f64 = 1e-12;

/// Default slack on the smallest eigenvalue, relative to the dimension.
///
/// Empirical and rounded matrices routinely carry eigenvalues a few ulps
/// below zero; the returned matrix is accepted when the smallest eigenvalue
/// is at least `-default_psd_tol(n)`.
pub fn default_psd_tol(n: usize) -> f64 {
    1e-8 * n as f64
}

/// Dense square matrix with row-major storage.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMat {
    n: usize,
    data: Vec<f64>,
}

impl SquareMat {
    /// Build from a flat row-major buffer; `data.len()` must equal `n * n`.
    pub fn from_flat(n: usize, data: Vec<f64>) -> Result<Self> {
        if n < 2 || data.len() != n * n {
            let rows = data.len().checked_div(n).unwrap_or(0);
            return Err(Error::Dimension { rows, cols: n });
        }
        Ok(Self { n, data })
    }

    /// Build from nested rows, checking squareness.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        for row in &rows {
            if row.len() != n {
                return Err(Error::Dimension {
                    rows: n,
                    cols: row.len(),
                });
            }
        }
        Self::from_flat(n, rows.into_iter().flatten().collect())
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// Squared Frobenius norm, the sum of all squared entries.
    pub fn frob_sq(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum()
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if (self.get(i, j) - self.get(j, i)).abs() > tol {
                    return false;
                }
            }
        }
        true
    }

    /// Entry-wise difference `self - other`.
    pub fn sub(&self, other: &SquareMat) -> Result<SquareMat> {
        if self.n != other.n {
            return Err(Error::Dimension {
                rows: self.n,
                cols: other.n,
            });
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(SquareMat { n: self.n, data })
    }

    /// Replace each pair `(i, j), (j, i)` by its average.
    pub(crate) fn symmetrize(&mut self) {
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let avg = 0.5 * (self.get(i, j) + self.get(j, i));
                self.set(i, j, avg);
                self.set(j, i, avg);
            }
        }
    }
}

/// Which correlation-matrix condition a violation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ViolationKind {
    Asymmetry,
    Diagonal,
    Range,
    NotPsd,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub detail: String,
    /// Worst observed magnitude for this kind.
    pub magnitude: f64,
}

/// Outcome of [`validate_correlation`]: one entry per violated condition.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValidationReport {
    pub is_valid: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    fn from_violations(violations: Vec<Violation>) -> Self {
        Self {
            is_valid: violations.is_empty(),
            violations,
        }
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_valid {
            return write!(f, "valid");
        }
        let parts: Vec<String> = self
            .violations
            .iter()
            .map(|v| format!("{:?}: {}", v.kind, v.detail))
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Check the three correlation-matrix conditions on a raw square matrix.
///
/// Symmetry, unit diagonal and the coefficient range are compared against
/// fixed slacks; positive semi-definiteness is checked with a full symmetric
/// eigendecomposition of the symmetrised matrix against `psd_tol`.
pub fn validate_correlation(m: &SquareMat, psd_tol: f64) -> ValidationReport {
    let n = m.n();
    let mut violations = Vec::new();

    if let Some((i, j)) = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| !m.get(i, j).is_finite())
    {
        violations.push(Violation {
            kind: ViolationKind::Range,
            detail: format!("non-finite entry at ({i}, {j})"),
            magnitude: f64::INFINITY,
        });
        return ValidationReport::from_violations(violations);
    }

    let mut worst_asym = 0.0f64;
    let mut asym_at = (0, 0);
    let mut worst_range = 0.0f64;
    let mut range_at = (0, 0);
    for i in 0..n {
        for j in (i + 1)..n {
            let asym = (m.get(i, j) - m.get(j, i)).abs();
            if asym > worst_asym {
                worst_asym = asym;
                asym_at = (i, j);
            }
            let excess = m.get(i, j).abs() - 1.0;
            if excess > worst_range {
                worst_range = excess;
                range_at = (i, j);
            }
        }
    }
    if worst_asym > ASYMMETRY_TOL {
        violations.push(Violation {
            kind: ViolationKind::Asymmetry,
            detail: format!(
                "entries ({}, {}) and ({}, {}) differ by {:.3e}",
                asym_at.0, asym_at.1, asym_at.1, asym_at.0, worst_asym
            ),
            magnitude: worst_asym,
        });
    }

    let (worst_diag, diag_at) = (0..n)
        .map(|i| ((m.get(i, i) - 1.0).abs(), i))
        .fold((0.0f64, 0), |acc, x| if x.0 > acc.0 { x } else { acc });
    if worst_diag > ENTRY_TOL {
        violations.push(Violation {
            kind: ViolationKind::Diagonal,
            detail: format!(
                "diagonal entry {} is {:.12}",
                diag_at,
                m.get(diag_at, diag_at)
            ),
            magnitude: worst_diag,
        });
    }

    if worst_range > ENTRY_TOL {
        violations.push(Violation {
            kind: ViolationKind::Range,
            detail: format!(
                "entry ({}, {}) = {:.12} lies outside [-1, 1]",
                range_at.0,
                range_at.1,
                m.get(range_at.0, range_at.1)
            ),
            magnitude: worst_range,
        });
    }

    let mut sym = m.clone();
    sym.symmetrize();
    match spectral::sym_eigenvalues(&sym) {
        Ok(eigs) => {
            let min_eig = eigs.iter().copied().fold(f64::INFINITY, f64::min);
            if min_eig < -psd_tol {
                violations.push(Violation {
                    kind: ViolationKind::NotPsd,
                    detail: format!("smallest eigenvalue {min_eig:.6e}"),
                    magnitude: -min_eig,
                });
            }
        }
        Err(e) => violations.push(Violation {
            kind: ViolationKind::NotPsd,
            detail: format!("eigensolver failed: {e}"),
            magnitude: f64::INFINITY,
        }),
    }

    ValidationReport::from_violations(violations)
}

/// Validated correlation matrix: exactly symmetric, unit diagonal, entries in
/// `[-1, 1]` and positive semi-definite up to the ingest slack.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    inner: SquareMat,
}

impl CorrelationMatrix {
    /// Validate a raw square matrix and normalise it into a correlation
    /// matrix (asymmetry averaged away, diagonal snapped to exactly one).
    pub fn from_square(m: SquareMat) -> Result<Self> {
        let tol = default_psd_tol(m.n());
        Self::from_square_with_tol(m, tol)
    }

    pub fn from_square_with_tol(mut m: SquareMat, psd_tol: f64) -> Result<Self> {
        let report = validate_correlation(&m, psd_tol);
        if !report.is_valid {
            return Err(Error::Invalid(report));
        }
        m.symmetrize();
        for i in 0..m.n() {
            m.set(i, i, 1.0);
        }
        Ok(Self { inner: m })
    }

    /// Wrap a matrix that is symmetric with unit diagonal by construction.
    pub(crate) fn from_trusted(m: SquareMat) -> Self {
        debug_assert!(
            m.is_symmetric(0.0),
            "trusted matrix must be exactly symmetric"
        );
        debug_assert!((0..m.n()).all(|i| m.get(i, i) == 1.0));
        Self { inner: m }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.inner.n()
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.inner.get(i, j)
    }

    pub fn as_square(&self) -> &SquareMat {
        &self.inner
    }

    pub fn into_square(self) -> SquareMat {
        self.inner
    }

    /// Mean and standard deviation of the off-diagonal coefficients.
    ///
    /// Two-pass: the one-pass form `mean_sq - c^2` cancels catastrophically
    /// for near-constant matrices and would blur sigma to ~1e-8.
    pub fn characteristic(&self) -> Characteristic {
        let n = self.n();
        let factor = 2.0 / (n * (n - 1)) as f64;
        let mut sum = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                sum += self.entry(i, j);
            }
        }
        let c = factor * sum;
        let mut sum_sq_dev = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                let d = self.entry(i, j) - c;
                sum_sq_dev += d * d;
            }
        }
        let sigma = (factor * sum_sq_dev).sqrt();
        Characteristic { n, c, sigma }
    }
}

/// The pair `(c, sigma)` together with the matrix dimension it came from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Characteristic {
    pub n: usize,
    pub c: f64,
    pub sigma: f64,
}

impl Characteristic {
    pub fn new(n: usize, c: f64, sigma: f64) -> Self {
        Self { n, c, sigma }
    }
}

/// Normalise the columns of `columns` to unit norm and return their Gram
/// matrix, which is a correlation matrix by construction.
pub fn gram_from_columns(columns: &[Vec<f64>]) -> Result<CorrelationMatrix> {
    let n = columns.len();
    if n < 2 {
        return Err(Error::Dimension {
            rows: columns.first().map_or(0, Vec::len),
            cols: n,
        });
    }
    let rows = columns[0].len();
    if rows == 0 || columns.iter().any(|c| c.len() != rows) {
        return Err(Error::Dimension { rows, cols: n });
    }

    let mut unit: Vec<Vec<f64>> = Vec::with_capacity(n);
    for (idx, col) in columns.iter().enumerate() {
        let norm = col.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroColumn(idx));
        }
        unit.push(col.iter().map(|x| x / norm).collect());
    }

    let mut m = SquareMat::identity(n);
    for i in 0..n {
        for j in (i + 1)..n {
            let dot: f64 = unit[i].iter().zip(&unit[j]).map(|(a, b)| a * b).sum();
            let dot = dot.clamp(-1.0, 1.0);
            m.set(i, j, dot);
            m.set(j, i, dot);
        }
    }
    Ok(CorrelationMatrix::from_trusted(m))
}
