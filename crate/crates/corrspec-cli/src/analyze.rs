//! The single-matrix and single-point subcommands.

use std::path::PathBuf;

use serde::Serialize;

use corrspec::bounds::{bound_report, universal_bounds, BoundReport, UniversalBounds};
use corrspec::construct::ConstructionRecipe;
use corrspec::domains::{guarantee_report, GuaranteeReport};
use corrspec::matrix::{validate_correlation, Characteristic, CorrelationMatrix};
use corrspec::spectral::{eigendecompose, eigenspace_weights, w1_vs_wmax_from, W1VsWmax};
use corrspec::SquareMat;

use crate::{load_square, matrix_format, read_file, CliError, FileFormat, GlobalOpts};

pub fn validate(global: &GlobalOpts, path: &PathBuf) -> Result<(), CliError> {
    let m = load_square(global, path)?;
    let report = validate_correlation(&m, global.psd_tol_for(m.n()));
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
    if report.is_valid {
        Ok(())
    } else {
        Err(CliError::Invalid)
    }
}

#[derive(Serialize)]
struct SpectrumSummary {
    lambda1: f64,
    lambda2: Option<f64>,
    lambda_min: f64,
    lambda1_simple: bool,
    w1: f64,
    wmax_eigenspace: f64,
    eigenspaces: Vec<corrspec::spectral::EigenspaceWeight>,
}

#[derive(Serialize)]
struct Slack {
    lambda1: f64,
    wmax: f64,
    w1: Option<f64>,
}

#[derive(Serialize)]
struct AnalyzeReport {
    n: usize,
    characteristic: Characteristic,
    spectrum: SpectrumSummary,
    w1_vs_wmax: W1VsWmax,
    /// Absent when the characteristic is (0, 0), where the bound formulas
    /// exclude the identity matrix.
    bounds: Option<BoundReport>,
    universal: Option<UniversalBounds>,
    guarantee: Option<GuaranteeReport>,
    /// Actual minus lower bound; nonnegative up to solver tolerance.
    slack: Option<Slack>,
    #[serde(skip_serializing_if = "Option::is_none")]
    spectral_data: Option<corrspec::SpectralData>,
}

pub fn analyze(global: &GlobalOpts, path: &PathBuf, dump_spectrum: bool) -> Result<(), CliError> {
    let raw = load_square(global, path)?;
    let n = raw.n();
    let matrix = match CorrelationMatrix::from_square_with_tol(raw, global.psd_tol_for(n)) {
        Ok(m) => m,
        Err(corrspec::Error::Invalid(report)) => {
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            return Err(CliError::Invalid);
        }
        Err(e) => return Err(e.into()),
    };
    let report = build_analysis(global, &matrix, dump_spectrum)?;
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
    Ok(())
}

fn build_analysis(
    global: &GlobalOpts,
    matrix: &CorrelationMatrix,
    dump_spectrum: bool,
) -> Result<AnalyzeReport, CliError> {
    let n = matrix.n();
    let ch = matrix.characteristic();
    let spectral = eigendecompose(matrix)?;
    let tol = global.degeneracy_tol_for(n);
    let clusters = eigenspace_weights(&spectral, tol);
    let relation = w1_vs_wmax_from(&spectral, tol);

    let wmax_eigenspace = clusters.iter().map(|c| c.weight).fold(0.0f64, f64::max);
    let lambda1_simple = clusters[0].multiplicity == 1;
    let summary = SpectrumSummary {
        lambda1: spectral.eigenvalues[0],
        lambda2: spectral.eigenvalues.get(1).copied(),
        lambda_min: spectral.eigenvalues[n - 1],
        lambda1_simple,
        w1: spectral.weights[0],
        wmax_eigenspace,
        eigenspaces: clusters,
    };

    let at_origin = ch.c == 0.0 && ch.sigma == 0.0;
    let (bounds, universal, guarantee, slack) = if at_origin {
        (None, None, None, None)
    } else {
        let b = bound_report(n, ch.c, ch.sigma)?;
        let slack = Slack {
            lambda1: summary.lambda1 - b.lambda1_over_n * n as f64,
            wmax: summary.wmax_eigenspace - b.wmax_lb,
            w1: b.w1_lb.map(|lb| summary.w1 - lb),
        };
        (
            Some(b),
            Some(universal_bounds(ch.c, ch.sigma)?),
            Some(guarantee_report(n, ch.c, ch.sigma)?),
            Some(slack),
        )
    };

    Ok(AnalyzeReport {
        n,
        characteristic: ch,
        spectrum: summary,
        w1_vs_wmax: relation,
        bounds,
        universal,
        guarantee,
        slack,
        spectral_data: dump_spectrum.then_some(spectral),
    })
}

#[derive(Serialize)]
struct PointReport {
    bounds: BoundReport,
    universal: UniversalBounds,
    guarantee: GuaranteeReport,
}

pub fn bounds(n: usize, c: f64, sigma: f64) -> Result<(), CliError> {
    let report = PointReport {
        bounds: bound_report(n, c, sigma)?,
        universal: universal_bounds(c, sigma)?,
        guarantee: guarantee_report(n, c, sigma)?,
    };
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
    Ok(())
}

pub fn construct(global: &GlobalOpts, recipe_path: &PathBuf) -> Result<(), CliError> {
    let text = read_file(recipe_path)?;
    let recipe: ConstructionRecipe =
        serde_json::from_str(&text).map_err(|e| CliError::Parse(e.to_string()))?;
    let matrix = corrspec::construct::build_verified(&recipe)?;
    write_matrix_out(global, matrix.as_square())
}

fn write_matrix_out(global: &GlobalOpts, m: &SquareMat) -> Result<(), CliError> {
    let format = match (&global.out, global.format) {
        (_, Some(FileFormat::Json)) => corrspec::io::MatrixFormat::Json,
        (_, Some(FileFormat::Csv)) => corrspec::io::MatrixFormat::Csv,
        (Some(path), None) => matrix_format(global, path),
        (None, None) => corrspec::io::MatrixFormat::Csv,
    };
    let text = corrspec::io::write_matrix(m, format);
    match &global.out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(path.clone(), e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
