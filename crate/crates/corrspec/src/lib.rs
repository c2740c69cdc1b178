//! Spectral structure of correlation matrices from the mean and standard
//! deviation of their coefficients.
//!
//! A correlation matrix is characterised here by the pair `(c, sigma)`: the
//! mean and the standard deviation of its off-diagonal coefficients. That
//! pair alone pins down a surprising amount of the spectrum. This crate
//! computes the characteristic, evaluates closed-form lower bounds on the
//! largest eigenvalue and on the diagonal alignment of its eigenvector,
//! classifies `(c, sigma)` points into guarantee and counterexample domains,
//! and constructs the explicit matrix families that realise those domains,
//! all cross-checked against a dense symmetric eigensolver.
//!
//! ```
//! use corrspec::{bounds, construct};
//!
//! let c = construct::constant(5, 0.2).unwrap();
//! let ch = c.characteristic();
//! assert!((ch.c - 0.2).abs() < 1e-12 && ch.sigma < 1e-12);
//!
//! // The eigenvalue bound is tight for constant matrices: lambda_1 = 1.8.
//! let lb = bounds::lambda1_bound(5, ch.c, ch.sigma).unwrap();
//! assert!((lb - 1.8).abs() < 1e-12);
//! ```

pub mod bounds;
pub mod construct;
pub mod domains;
mod error;
pub mod io;
pub mod matrix;
pub mod rng;
pub mod scaling;
pub mod spectral;

pub use error::{Error, Result};
pub use matrix::{
    gram_from_columns, validate_correlation, Characteristic, CorrelationMatrix, SquareMat,
    ValidationReport, Violation, ViolationKind,
};
pub use scaling::{g_n, legal_domain, min_mean_correlation, s, s_n};
pub use spectral::{eigendecompose, SpectralData, W1VsWmax};

// The book chapters double as doc-tests so their snippets stay honest.
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            mod $name {}
        };
    }
    chapter!(introduction, "../../../book/src/introduction.md");
    chapter!(characteristic, "../../../book/src/characteristic.md");
    chapter!(scaling, "../../../book/src/scaling.md");
    chapter!(spectra, "../../../book/src/spectra.md");
    chapter!(bounds, "../../../book/src/bounds.md");
    chapter!(domains, "../../../book/src/domains.md");
    chapter!(constructions, "../../../book/src/constructions.md");
    chapter!(cli, "../../../book/src/cli.md");
}
