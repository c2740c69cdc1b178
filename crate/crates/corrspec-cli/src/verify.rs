//! Ensemble verification: runs every cross-module property on seeded random
//! matrices and the closed-form families, reporting the worst slack each.

use std::path::PathBuf;

use clap::Args;
use serde::Serialize;

use corrspec::bounds;
use corrspec::construct;
use corrspec::domains;
use corrspec::io::fmt_sig12;
use corrspec::matrix::{validate_correlation, CorrelationMatrix};
use corrspec::rng::SeededRng;
use corrspec::scaling::{g_n, min_mean_correlation};
use corrspec::spectral::{
    eigendecompose, eigenspace_weights, identity_residuals_from, w1_vs_wmax_from, W1VsWmax,
};

use crate::{load_square, CliError, FileFormat, GlobalOpts};

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Number of random Gram matrices to draw.
    #[arg(long, default_value_t = 1000)]
    pub ensemble_size: usize,
    /// Smallest matrix dimension in the ensemble.
    #[arg(long, default_value_t = 2)]
    pub n_min: usize,
    /// Largest matrix dimension in the ensemble.
    #[arg(long, default_value_t = 50)]
    pub n_max: usize,
    /// Sample rows per matrix as a multiple of n.
    #[arg(long, default_value_t = 2)]
    pub n_multiplier: usize,
    /// Fold an external matrix file into the checks.
    #[arg(long)]
    pub include: Option<PathBuf>,
}

/// Worst observed value of one property against its limit.
#[derive(Debug, Serialize)]
struct PropertyOutcome {
    name: &'static str,
    /// Worst slack; positive means margin, negative means violation.
    worst_slack: f64,
    cases: usize,
    pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<String>,
}

struct Tracker {
    name: &'static str,
    /// Slack left after subtracting the allowed tolerance.
    worst: f64,
    cases: usize,
    offender: Option<(u64, CorrelationMatrix)>,
}

impl Tracker {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            worst: f64::INFINITY,
            cases: 0,
            offender: None,
        }
    }

    /// Record `slack` (>= 0 is healthy) for the member with `seed`.
    fn record(&mut self, slack: f64, seed: u64, matrix: &CorrelationMatrix) {
        self.cases += 1;
        if slack < self.worst {
            self.worst = slack;
            if slack < 0.0 && self.offender.is_none() {
                self.offender = Some((seed, matrix.clone()));
            }
        }
    }

    fn finish(self) -> PropertyOutcome {
        let pass = self.cases == 0 || self.worst >= 0.0;
        let detail = match &self.offender {
            Some((seed, m)) => Some(format!(
                "first violation at seed {seed}; matrix:\n{}",
                corrspec::io::write_matrix_csv(m.as_square())
            )),
            None if self.cases == 0 => Some("no cases exercised this property".into()),
            None => None,
        };
        PropertyOutcome {
            name: self.name,
            worst_slack: if self.cases == 0 {
                f64::NAN
            } else {
                self.worst
            },
            cases: self.cases,
            pass,
            detail,
        }
    }
}

pub fn run(global: &GlobalOpts, args: &VerifyArgs) -> Result<(), CliError> {
    if args.ensemble_size == 0 || args.n_min < 2 || args.n_min > args.n_max {
        return Err(CliError::Domain(
            "ensemble size and n range must be sensible".into(),
        ));
    }
    let mut outcomes = Vec::new();
    outcomes.extend(ensemble_checks(global, args));
    outcomes.extend(constructor_checks());
    if let Some(path) = &args.include {
        outcomes.push(include_check(global, path)?);
    }

    let json = matches!(global.format, Some(FileFormat::Json));
    if json {
        println!("{}", serde_json::to_string_pretty(&outcomes).unwrap());
    } else {
        for o in &outcomes {
            println!(
                "{} {:<28} worst_slack={:<20} cases={}",
                if o.pass { "PASS" } else { "FAIL" },
                o.name,
                fmt_sig12(o.worst_slack),
                o.cases
            );
            if let Some(detail) = &o.detail {
                println!("  {detail}");
            }
        }
    }
    if outcomes.iter().all(|o| o.pass) {
        Ok(())
    } else {
        Err(CliError::VerifyFailed)
    }
}

fn ensemble_checks(global: &GlobalOpts, args: &VerifyArgs) -> Vec<PropertyOutcome> {
    let mut validity = Tracker::new("member_validity");
    let mut corollary1 = Tracker::new("minimum_mean_correlation");
    let mut residual_r1 = Tracker::new("characteristic_residual_r1");
    let mut residual_r2 = Tracker::new("characteristic_residual_r2");
    let mut reconstruction = Tracker::new("eigen_reconstruction");
    let mut lambda1 = Tracker::new("lambda1_soundness");
    let mut wmax = Tracker::new("wmax_soundness");
    let mut w1 = Tracker::new("w1_soundness");
    let mut theorem3 = Tracker::new("theorem3_enforcement");
    let mut wieland = Tracker::new("wieland_residual");

    let mut rng = SeededRng::new(global.seed);
    for _ in 0..args.ensemble_size {
        let n = rng.uniform_usize(args.n_min, args.n_max);
        let seed = rng.next_u64();
        let m = construct::random_correlation(n, args.n_multiplier.max(1) * n, seed)
            .expect("gram construction");

        let report = validate_correlation(m.as_square(), global.psd_tol_for(n));
        let worst_violation = report
            .violations
            .iter()
            .map(|v| v.magnitude)
            .fold(0.0f64, f64::max);
        validity.record(
            if report.is_valid {
                0.0
            } else {
                -worst_violation
            },
            seed,
            &m,
        );

        let ch = m.characteristic();
        corollary1.record(ch.c - min_mean_correlation(n) + 1e-12, seed, &m);

        let s = eigendecompose(&m).expect("eigensolver");
        let res = identity_residuals_from(&s, &ch);
        residual_r1.record(1e-9 - res.r1, seed, &m);
        residual_r2.record(1e-9 - res.r2, seed, &m);
        reconstruction.record(1e-8 - s.reconstruction_error(m.as_square()), seed, &m);

        if ch.c != 0.0 || ch.sigma != 0.0 {
            let tol = global.degeneracy_tol_for(n);
            let clusters = eigenspace_weights(&s, tol);
            let lb = bounds::lambda1_bound(n, ch.c, ch.sigma).expect("legal");
            lambda1.record((s.eigenvalues[0] - lb) / n as f64 + 1e-9, seed, &m);

            let max_cluster = clusters.iter().map(|c| c.weight).fold(0.0f64, f64::max);
            let wb = bounds::wmax_bound(n, ch.c, ch.sigma).expect("legal");
            wmax.record(max_cluster - wb + 1e-9, seed, &m);

            let simple = s.eigenvalues[0] - s.eigenvalues[1] >= tol;
            if ch.c > 0.0 && simple {
                let w1b = bounds::w1_bound(n, ch.c, ch.sigma).expect("legal");
                w1.record(s.weights[0] - w1b + 1e-9, seed, &m);
            }
            if ch.c > 0.0
                && domains::theorem3_guarantee(n, ch.c, ch.sigma)
                    .expect("legal")
                    .is_some()
            {
                theorem3.record(s.weights[0] - 0.5, seed, &m);
            }
            if ch.c > 1e-6 {
                let reference = construct::constant(n, ch.c).expect("legal mean");
                let wr = bounds::wieland_residual_check(reference.as_square(), m.as_square())
                    .expect("same dimension");
                wieland.record(wr.worst_slack + 1e-8, seed, &m);
            }
        }
    }

    vec![
        validity.finish(),
        corollary1.finish(),
        residual_r1.finish(),
        residual_r2.finish(),
        reconstruction.finish(),
        lambda1.finish(),
        wmax.finish(),
        w1.finish(),
        theorem3.finish(),
        wieland.finish(),
    ]
}

fn constructor_checks() -> Vec<PropertyOutcome> {
    let mut block = Tracker::new("block_closed_forms");
    let mut block_alignment = Tracker::new("block_misalignment");
    for n in (4..=20usize).step_by(2) {
        for e in 1..=9usize {
            let eps = e as f64 / 10.0;
            let m = construct::block_counterexample(n, eps).expect("valid parameters");
            let s = eigendecompose(&m).expect("eigensolver");
            let mut expected = vec![0.0; n];
            expected[0] = n as f64 * (1.0 + eps) / 2.0;
            expected[1] = n as f64 * (1.0 - eps) / 2.0;
            let eig_err = s
                .eigenvalues
                .iter()
                .zip(&expected)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0f64, f64::max);
            let ch = m.characteristic();
            let sigma_err = (ch.sigma - ((n as f64 - 2.0) / n as f64).sqrt() * (1.0 - ch.c)).abs();
            block.record(1e-10 - eig_err.max(sigma_err), eps.to_bits(), &m);
            let rel = w1_vs_wmax_from(&s, corrspec::spectral::default_degeneracy_tol(n));
            block_alignment.record(
                if rel == W1VsWmax::W1LessThanWmax {
                    1.0
                } else {
                    -1.0
                },
                eps.to_bits(),
                &m,
            );
        }
    }

    let mut rank_lambda = Tracker::new("rank_one_lambda1");
    let mut rank_align = Tracker::new("rank_one_alignment");
    for n in 2..=16usize {
        for k in 0..=n {
            let m = construct::rank_one_k(n, k).expect("valid parameters");
            let s = eigendecompose(&m).expect("eigensolver");
            rank_lambda.record(1e-10 - (s.eigenvalues[0] - n as f64).abs(), k as u64, &m);
            let t = 1.0 - 2.0 * k as f64 / n as f64;
            let err = (g_n(n, m.characteristic().c) - t * t).abs();
            rank_align.record(1e-12 - err, k as u64, &m);
        }
    }

    let mut tensor = Tracker::new("tensor_identities");
    let mut rng = SeededRng::new(0x7e45_0000);
    for _ in 0..100 {
        let n = rng.uniform_usize(2, 6);
        let m_dim = rng.uniform_usize(2, 6);
        let seed = rng.next_u64();
        let a = construct::random_correlation(n, 2 * n, seed).expect("gram");
        let b = construct::random_correlation(m_dim, 2 * m_dim, rng.next_u64()).expect("gram");
        let t = construct::tensor_product(&a, &b);
        let (ca, cb, ct) = (a.characteristic(), b.characteristic(), t.characteristic());
        let e1 = (g_n(n * m_dim, ct.c) - g_n(n, ca.c) * g_n(m_dim, cb.c)).abs();
        let e2 = (g_n(n * m_dim, ct.c * ct.c + ct.sigma * ct.sigma)
            - g_n(n, ca.c * ca.c + ca.sigma * ca.sigma)
                * g_n(m_dim, cb.c * cb.c + cb.sigma * cb.sigma))
        .abs();
        tensor.record(1e-12 - e1.max(e2), seed, &t);
    }

    let mut embed_transfer = Tracker::new("embedding_transfer");
    let mut embed_preserve = Tracker::new("embedding_misalignment");
    let mut produced = 0usize;
    let mut trial = 0usize;
    while produced < 20 && trial < 200 {
        trial += 1;
        let n = [4, 6, 8][trial % 3];
        let c = 0.02 + 0.015 * (trial % 12) as f64;
        let nf = n as f64;
        let lower = (nf / (nf - 2.0)).sqrt() * c;
        let upper = ((nf - 2.0) / nf).sqrt() * (1.0 - c);
        let sigma = lower + (0.15 + 0.04 * (trial % 17) as f64) * (upper - lower);
        let Ok(inner) = construct::counterexample_for(n, c, sigma) else {
            continue;
        };
        let s = eigendecompose(&inner).expect("eigensolver");
        if s.eigenvalues.iter().any(|l| (l - 1.0).abs() < 1e-9) {
            continue;
        }
        produced += 1;
        let outer = construct::embed(&inner);
        let (ci, co) = (inner.characteristic(), outer.characteristic());
        let ratio = (nf - 1.0) / (nf + 1.0);
        let e1 = (co.c - ratio * ci.c).abs();
        let e2 =
            (co.c * co.c + co.sigma * co.sigma - ratio * (ci.c * ci.c + ci.sigma * ci.sigma)).abs();
        embed_transfer.record(1e-12 - e1.max(e2), trial as u64, &outer);
        let rel = w1_vs_wmax_from(
            &eigendecompose(&outer).expect("eigensolver"),
            corrspec::spectral::default_degeneracy_tol(n + 1),
        );
        embed_preserve.record(
            if rel == W1VsWmax::W1LessThanWmax {
                1.0
            } else {
                -1.0
            },
            trial as u64,
            &outer,
        );
    }

    vec![
        block.finish(),
        block_alignment.finish(),
        rank_lambda.finish(),
        rank_align.finish(),
        tensor.finish(),
        embed_transfer.finish(),
        embed_preserve.finish(),
    ]
}

fn include_check(global: &GlobalOpts, path: &PathBuf) -> Result<PropertyOutcome, CliError> {
    let m = load_square(global, path)?;
    let report = validate_correlation(&m, global.psd_tol_for(m.n()));
    let worst = report
        .violations
        .iter()
        .map(|v| v.magnitude)
        .fold(0.0f64, f64::max);
    Ok(PropertyOutcome {
        name: "included_matrix",
        worst_slack: -worst,
        cases: 1,
        pass: report.is_valid,
        detail: (!report.is_valid).then(|| report.to_string()),
    })
}
