//! `corrspec`: validate correlation matrices, evaluate the spectral bounds,
//! scan the characteristic plane, and build the explicit matrix families.

mod analyze;
mod scan;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "corrspec", version, about)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args, Clone)]
struct GlobalOpts {
    /// Matrix file format; defaults to the file extension on input and CSV
    /// on output.
    #[arg(long, global = true, env = "CORRSPEC_FORMAT", value_enum)]
    format: Option<FileFormat>,

    /// Seed for anything randomised.
    #[arg(long, global = true, env = "CORRSPEC_SEED", default_value_t = 20_406)]
    seed: u64,

    /// Slack on the smallest eigenvalue; defaults to 1e-8 * n.
    #[arg(long, global = true, env = "CORRSPEC_PSD_TOL")]
    psd_tol: Option<f64>,

    /// Gap below which eigenvalues count as degenerate; defaults to 1e-7 * n.
    #[arg(long, global = true, env = "CORRSPEC_DEGENERACY_TOL")]
    degeneracy_tol: Option<f64>,

    /// Output file (construct) or directory (scan); stdout when omitted.
    #[arg(long, global = true, env = "CORRSPEC_OUT")]
    out: Option<PathBuf>,
}

impl GlobalOpts {
    fn psd_tol_for(&self, n: usize) -> f64 {
        self.psd_tol
            .unwrap_or_else(|| corrspec::matrix::default_psd_tol(n))
    }

    fn degeneracy_tol_for(&self, n: usize) -> f64 {
        self.degeneracy_tol
            .unwrap_or_else(|| corrspec::spectral::default_degeneracy_tol(n))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FileFormat {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a matrix file against the correlation-matrix conditions.
    Validate { path: PathBuf },
    /// Full report: characteristic, spectrum, bounds, domains, alignment.
    Analyze {
        path: PathBuf,
        /// Include the complete eigendecomposition in the report.
        #[arg(long)]
        dump_spectrum: bool,
    },
    /// Evaluate every closed-form bound at one (n, c, sigma).
    Bounds { n: usize, c: f64, sigma: f64 },
    /// Emit CSV grids and curves over the characteristic plane.
    Scan(scan::ScanArgs),
    /// Run the ensemble property checks and report worst slacks.
    Verify(verify::VerifyArgs),
    /// Build a matrix from a recipe file and write it out.
    Construct { recipe: PathBuf },
}

/// Failures split by exit code: 1 for domain or validation trouble, 2 for
/// I/O and parse trouble.
#[derive(Debug)]
enum CliError {
    Io(PathBuf, std::io::Error),
    Parse(String),
    Domain(String),
    Invalid,
    VerifyFailed,
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(..) | CliError::Parse(_) => 2,
            CliError::Domain(_) | CliError::Invalid | CliError::VerifyFailed => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Io(path, e) => write!(f, "{}: {e}", path.display()),
            CliError::Parse(msg) => write!(f, "parse error: {msg}"),
            CliError::Domain(msg) => write!(f, "{msg}"),
            CliError::Invalid => write!(f, "matrix failed validation"),
            CliError::VerifyFailed => write!(f, "one or more properties failed"),
        }
    }
}

impl From<corrspec::Error> for CliError {
    fn from(e: corrspec::Error) -> Self {
        CliError::Domain(e.to_string())
    }
}

fn read_file(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(path.clone(), e))
}

fn matrix_format(global: &GlobalOpts, path: &std::path::Path) -> corrspec::io::MatrixFormat {
    match global.format {
        Some(FileFormat::Csv) => corrspec::io::MatrixFormat::Csv,
        Some(FileFormat::Json) => corrspec::io::MatrixFormat::Json,
        None => corrspec::io::format_for_path(path),
    }
}

fn load_square(global: &GlobalOpts, path: &PathBuf) -> Result<corrspec::SquareMat, CliError> {
    let text = read_file(path)?;
    corrspec::io::parse_matrix(&text, matrix_format(global, path)).map_err(|e| match e {
        corrspec::io::IoError::Parse(p) => CliError::Parse(p.to_string()),
        corrspec::io::IoError::Shape(s) => CliError::Domain(s.to_string()),
    })
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Validate { ref path } => analyze::validate(&cli.global, path),
        Command::Analyze {
            ref path,
            dump_spectrum,
        } => analyze::analyze(&cli.global, path, dump_spectrum),
        Command::Bounds { n, c, sigma } => analyze::bounds(n, c, sigma),
        Command::Scan(ref args) => scan::run(&cli.global, args),
        Command::Verify(ref args) => verify::run(&cli.global, args),
        Command::Construct { ref recipe } => analyze::construct(&cli.global, recipe),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            // Validation details have already been printed as JSON.
            if !matches!(e, CliError::Invalid) {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
