//! `ckgeom`: distances, angles, triangles, volumes and transforms in any of
//! the Cayley-Klein spaces, with JSON or CSV output.

mod commands;
mod error;
mod input;

use std::io::Write;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use crate::error::{CliError, EXIT_INTERNAL};

#[derive(Parser, Debug)]
#[command(name = "ckgeom", version, about = "Measurements in the Cayley-Klein spaces")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Signature, e.g. `ee`, `hp`, `1,0,-1` or `[-1,1]`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub space: Option<String>,
    /// Absolute tolerance for degeneracy checks.
    #[arg(long, global = true, default_value_t = ckgeom::DEFAULT_TOL)]
    pub tol: f64,
    /// Seed for every random choice (default 0).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    pub output: Output,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Output {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Distance between two points, or between the pairs of a CSV file.
    Dist(DistArgs),
    /// Angle between two m-planes given as column arrays.
    Angle(AngleArgs),
    /// Build a triangle from two sides and the included angle and measure it.
    Triangle(TriangleArgs),
    /// Monte Carlo volume of a geodesic simplex.
    Volume(VolumeArgs),
    /// Build, validate or apply a generalized orthogonal transform.
    Transform(TransformArgs),
}

#[derive(Args, Debug)]
pub struct DistArgs {
    /// First point, `x0,x1,..` or a JSON array.
    #[arg(long, required_unless_present = "pairs", requires = "q")]
    pub p: Option<String>,
    #[arg(long)]
    pub q: Option<String>,
    /// CSV file with one pair per row: the 2(n+1) coordinates of p then q.
    #[arg(long, conflicts_with_all = ["p", "q"])]
    pub pairs: Option<String>,
    /// Identify antipodal points (elliptic distance only).
    #[arg(long)]
    pub projective: bool,
}

#[derive(Args, Debug)]
pub struct AngleArgs {
    /// First plane as a JSON array of columns, inline or a file path.
    #[arg(long)]
    pub x: String,
    #[arg(long)]
    pub y: String,
}

#[derive(Args, Debug)]
pub struct TriangleArgs {
    #[arg(long, requires_all = ["alpha", "c"], conflicts_with_all = ["random", "legs"])]
    pub b: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub c: Option<f64>,
    /// Draw the sides and angle at random; the seed defaults to `--seed`.
    #[arg(long, num_args = 0..=1, value_name = "SEED", conflicts_with = "legs")]
    pub random: Option<Option<u64>>,
    /// Right triangle with legs `a,b`, reporting the right-triangle identities.
    #[arg(long, value_name = "A,B")]
    pub legs: Option<String>,
    /// Evaluate the triangle laws on the measured elements.
    #[arg(long)]
    pub laws: bool,
}

#[derive(Args, Debug)]
pub struct VolumeArgs {
    /// JSON array of the n+1 vertices, or an object with `vertices` and
    /// optionally `signature`, `samples` and `seed`; inline or a file path.
    #[arg(long)]
    pub vertices: String,
    #[arg(long)]
    pub samples: Option<usize>,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("source").args(["random", "givens", "matrix"])))]
pub struct TransformArgs {
    /// Seeded random word of Givens rotations; the seed defaults to `--seed`.
    #[arg(long, num_args = 0..=1, value_name = "SEED")]
    pub random: Option<Option<u64>>,
    /// Givens rotation `i,j,t`; repeat to compose left to right.
    #[arg(long, value_name = "I,J,T", allow_hyphen_values = true)]
    pub givens: Vec<String>,
    /// Matrix document `{"n", "matrix", "word"}`, inline or a file path.
    #[arg(long)]
    pub matrix: Option<String>,
    /// Points and planes to map: a point array, an array of points, or
    /// `{"points": [..], "planes": [..]}`; inline or a file path.
    #[arg(long)]
    pub apply: Option<String>,
    /// Check the matrix against the orthogonality condition.
    #[arg(long)]
    pub validate: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = std::panic::catch_unwind(|| commands::run(&cli));
    match outcome {
        Ok(Ok(text)) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(EXIT_INTERNAL);
            }
            ExitCode::SUCCESS
        }
        Ok(Err(failure)) => {
            if let Some(report) = &failure.report {
                print!("{report}");
            }
            report_error(&failure.error);
            ExitCode::from(failure.error.exit_code())
        }
        Err(_) => ExitCode::from(EXIT_INTERNAL),
    }
}

fn report_error(e: &CliError) {
    let payload = serde_json::to_string(&e.payload()).unwrap_or_else(|_| e.to_string());
    eprintln!("{payload}");
}
