//! Deterministic CSV grids over the characteristic plane: bound surfaces,
//! domain maps, the collapsed polar curves, and per-n domain scalings.

use std::path::PathBuf;

use clap::{Args, ValueEnum};

use corrspec::bounds;
use corrspec::construct;
use corrspec::domains;
use corrspec::io::fmt_sig12;
use corrspec::scaling::{legal_domain, min_mean_correlation, s, s_n};

use crate::{CliError, GlobalOpts};

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    #[arg(long, default_value_t = -1.0)]
    pub c_min: f64,
    #[arg(long, default_value_t = 1.0)]
    pub c_max: f64,
    #[arg(long, default_value_t = 201)]
    pub c_steps: usize,
    #[arg(long, default_value_t = 0.0)]
    pub sigma_min: f64,
    #[arg(long, default_value_t = 1.0)]
    pub sigma_max: f64,
    #[arg(long, default_value_t = 101)]
    pub sigma_steps: usize,
    /// Matrix dimensions to evaluate; repeat or comma-separate.
    #[arg(long = "n", value_delimiter = ',', default_values_t = vec![2, 6, 12, 100])]
    pub n_list: Vec<usize>,
    /// Which files to emit; defaults to all of them.
    #[arg(long = "outputs", value_delimiter = ',', value_enum)]
    pub outputs: Vec<ScanOutput>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScanOutput {
    BoundSurfaces,
    DomainMap,
    SphericalCurves,
    ScalingDomains,
}

impl ScanArgs {
    fn validate(&self) -> Result<(), CliError> {
        if self.c_steps < 2 || self.sigma_steps < 2 {
            return Err(CliError::Domain("grid steps must be at least 2".into()));
        }
        if self.c_min < -1.0 || self.c_max > 1.0 || self.c_min >= self.c_max {
            return Err(CliError::Domain(
                "c range must be ordered within [-1, 1]".into(),
            ));
        }
        if self.sigma_min < 0.0 || self.sigma_max > 1.0 || self.sigma_min >= self.sigma_max {
            return Err(CliError::Domain(
                "sigma range must be ordered within [0, 1]".into(),
            ));
        }
        if self.n_list.iter().any(|&n| n < 2) {
            return Err(CliError::Domain("every n must be at least 2".into()));
        }
        Ok(())
    }

    fn c_values(&self) -> Vec<f64> {
        grid(self.c_min, self.c_max, self.c_steps)
    }

    fn sigma_values(&self) -> Vec<f64> {
        grid(self.sigma_min, self.sigma_max, self.sigma_steps)
    }

    fn dims(&self) -> Vec<usize> {
        let mut out = self.n_list.clone();
        out.sort_unstable();
        out.dedup();
        out
    }

    fn wanted(&self) -> Vec<ScanOutput> {
        if self.outputs.is_empty() {
            vec![
                ScanOutput::BoundSurfaces,
                ScanOutput::DomainMap,
                ScanOutput::SphericalCurves,
                ScanOutput::ScalingDomains,
            ]
        } else {
            let mut out = self.outputs.clone();
            out.dedup();
            out
        }
    }
}

fn grid(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    (0..steps)
        .map(|i| lo + (hi - lo) * i as f64 / (steps - 1) as f64)
        .collect()
}

fn flag(b: bool) -> &'static str {
    if b {
        "1"
    } else {
        "0"
    }
}

fn branch_name(b: bounds::Branch) -> &'static str {
    match b {
        bounds::Branch::Scaled => "SCALED",
        bounds::Branch::Mean => "MEAN",
    }
}

fn condition_name(c: Option<domains::ConditionId>) -> &'static str {
    match c {
        Some(domains::ConditionId::I) => "I",
        Some(domains::ConditionId::II) => "II",
        Some(domains::ConditionId::III) => "III",
        None => "",
    }
}

pub fn run(global: &GlobalOpts, args: &ScanArgs) -> Result<(), CliError> {
    args.validate()?;
    let dir = global.out.clone().unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&dir).map_err(|e| CliError::Io(dir.clone(), e))?;

    for output in args.wanted() {
        let (name, text) = match output {
            ScanOutput::BoundSurfaces => ("bound_surfaces.csv", bound_surfaces(args)),
            ScanOutput::DomainMap => ("domain_map.csv", domain_map(args)),
            ScanOutput::SphericalCurves => ("spherical_curves.csv", spherical_curves(args)),
            ScanOutput::ScalingDomains => ("scaling_domains.csv", scaling_domains(args)),
        };
        let path = dir.join(name);
        std::fs::write(&path, &text).map_err(|e| CliError::Io(path.clone(), e))?;
        println!(
            "wrote {} ({} rows)",
            path.display(),
            text.matches('\n').count() - 1
        );
    }
    Ok(())
}

fn bound_surfaces(args: &ScanArgs) -> String {
    let mut out = String::from(
        "c,sigma,n,lambda1_lb_over_n,wmax_lb,w1_lb,lambda1_branch,wmax_branch,w1_branch,\
         dash_lambda1,dash_wmax,dash_w1\n",
    );
    for &n in &args.dims() {
        for &c in &args.c_values() {
            for &sigma in &args.sigma_values() {
                out.push_str(&fmt_sig12(c));
                out.push(',');
                out.push_str(&fmt_sig12(sigma));
                out.push_str(&format!(",{n}"));
                let masked = !legal_domain(n, c, sigma) || (c == 0.0 && sigma == 0.0);
                if masked {
                    out.push_str(",,,,,,,,,\n");
                    continue;
                }
                let report = bounds::bound_report(n, c, sigma).expect("legal grid point");
                out.push(',');
                out.push_str(&fmt_sig12(report.lambda1_over_n));
                out.push(',');
                out.push_str(&fmt_sig12(report.wmax_lb));
                out.push(',');
                if let Some(w1) = report.w1_lb {
                    out.push_str(&fmt_sig12(w1));
                }
                out.push(',');
                out.push_str(branch_name(report.lambda1_branch));
                out.push(',');
                out.push_str(branch_name(report.wmax_branch));
                out.push(',');
                if let Some(b) = report.w1_branch {
                    out.push_str(branch_name(b));
                }

                // Dashed-curve indicators of the dimension-free surfaces.
                let r_sq = c * c + sigma * sigma;
                out.push(',');
                out.push_str(flag(c >= s(r_sq).expect("in range")));
                out.push(',');
                out.push_str(flag(c <= s(c * c / r_sq).expect("in range")));
                out.push(',');
                if c > 0.0 {
                    let deficit = (1.0 - c) / s(r_sq).expect("in range");
                    out.push_str(flag(sigma * sigma / (c * c) <= deficit));
                }
                out.push('\n');
            }
        }
    }
    out
}

fn domain_map(args: &ScanArgs) -> String {
    let mut out = String::from("c,sigma,n,theorem3,theorem5,in_a,in_a1,in_a2,in_b1,in_b2\n");
    for &n in &args.dims() {
        for &c in &args.c_values() {
            for &sigma in &args.sigma_values() {
                let regions = domains::region_membership(Some(n), c, sigma);
                let (t3, t5) = if c > 0.0 && legal_domain(n, c, sigma) {
                    (
                        domains::theorem3_guarantee(n, c, sigma).expect("legal point"),
                        domains::theorem5_guarantee(n, c, sigma).expect("legal point"),
                    )
                } else {
                    (None, None)
                };
                out.push_str(&format!(
                    "{},{},{n},{},{},{},{},{},{},{}\n",
                    fmt_sig12(c),
                    fmt_sig12(sigma),
                    condition_name(t3),
                    condition_name(t5),
                    flag(regions.a),
                    flag(regions.a1),
                    flag(regions.a2),
                    flag(regions.b1),
                    flag(regions.b2),
                ));
            }
        }
    }
    out
}

fn spherical_curves(args: &ScanArgs) -> String {
    let mut out = String::from("curve,n,x,y\n");
    for &n in &args.dims() {
        for &r in &grid(0.0, 1.0, args.sigma_steps) {
            let y = s_n(n, r * r).expect("in range");
            out.push_str(&format!(
                "lambda1_vs_r,{n},{},{}\n",
                fmt_sig12(r),
                fmt_sig12(y)
            ));
        }
        for &phi in &grid(0.0, std::f64::consts::PI, args.c_steps) {
            let cos_sq = phi.cos().powi(2);
            let y = s_n(n, cos_sq.min(1.0)).expect("in range");
            out.push_str(&format!(
                "wmax_vs_phi,{n},{},{}\n",
                fmt_sig12(phi),
                fmt_sig12(y)
            ));
        }
    }
    out
}

fn scaling_domains(args: &ScanArgs) -> String {
    let mut out = String::from(
        "n,c,sigma,legal,forbidden,theorem3_fires,theorem5_fires,triangle_cex,perturbation_cex\n",
    );
    for &n in &args.dims() {
        for &c in &args.c_values() {
            for &sigma in &args.sigma_values() {
                let legal = legal_domain(n, c, sigma);
                let forbidden = c < min_mean_correlation(n);
                out.push_str(&format!(
                    "{n},{},{},{},{}",
                    fmt_sig12(c),
                    fmt_sig12(sigma),
                    flag(legal),
                    flag(forbidden)
                ));
                if !legal {
                    out.push_str(",,,,\n");
                    continue;
                }
                let (t3, t5) = if c > 0.0 {
                    (
                        domains::theorem3_guarantee(n, c, sigma)
                            .expect("legal point")
                            .is_some(),
                        domains::theorem5_guarantee(n, c, sigma)
                            .expect("legal point")
                            .is_some(),
                    )
                } else {
                    (false, false)
                };
                out.push_str(&format!(
                    ",{},{},{},{}\n",
                    flag(t3),
                    flag(t5),
                    flag(triangle_constructible(n, c, sigma)),
                    flag(domains::in_perturbation_triangle(n, c, sigma)),
                ));
            }
        }
    }
    out
}

/// Even dimensions use the triangle directly; odd ones go through the
/// embedding of an (n-1)-dimensional construction.
fn triangle_constructible(n: usize, c: f64, sigma: f64) -> bool {
    if n >= 4 && n.is_multiple_of(2) {
        return domains::counterexample_triangle(n, c, sigma).expect("even n");
    }
    if n >= 5 && sigma > 0.0 {
        let m = n - 1;
        if let Ok(Some((c_prime, sigma_prime))) =
            construct::inverse_embedding_characteristic(m, c, sigma)
        {
            // Positive mean keeps the even-dimensional construction free of
            // unit eigenvalues, which the embedding needs.
            return c_prime > 0.0
                && domains::counterexample_triangle(m, c_prime, sigma_prime).expect("even m");
        }
    }
    false
}
