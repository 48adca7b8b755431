use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "lband", version, about = "Closed-form L-banded matrix algebra")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Scalar arithmetic.
    #[arg(long, value_enum, default_value_t = Mode::Float, global = true)]
    pub mode: Mode,
    /// Relative tolerance for float equality.
    #[arg(long, global = true)]
    pub eq_tol: Option<f64>,
    /// Absolute tolerance for float zero tests.
    #[arg(long, global = true)]
    pub zero_tol: Option<f64>,
    /// Seed for randomized verify and bench runs.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Vector inputs are JSON arrays rather than one value per line.
    #[arg(long, global = true)]
    pub json: bool,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Float,
    Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Plain,
}

#[derive(Debug, Clone, Args)]
pub struct BandArg {
    /// Band vector file.
    #[arg(long)]
    pub band: PathBuf,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Determinant.
    Det(BandArg),
    /// Tridiagonal inverse.
    Inv(BandArg),
    /// x^T A x.
    Quadform {
        #[command(flatten)]
        band: BandArg,
        #[arg(long)]
        x: PathBuf,
    },
    /// Definiteness class.
    Definiteness(BandArg),
    /// LDL^T factors.
    Ldl(BandArg),
    /// Cholesky factor.
    Chol(BandArg),
    /// One cofactor and minor, or the whole cofactor matrix.
    Cofactor {
        #[command(flatten)]
        band: BandArg,
        #[arg(long, requires = "col")]
        row: Option<usize>,
        #[arg(long, requires = "row")]
        col: Option<usize>,
    },
    /// Determinant with column k replaced by b.
    Colsub {
        #[command(flatten)]
        band: BandArg,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        b: PathBuf,
    },
    /// Characteristic polynomial coefficients, ascending.
    Charpoly {
        #[command(flatten)]
        band: BandArg,
        /// Use dense elimination when the matrix is singular.
        #[arg(long)]
        dense_fallback: bool,
    },
    /// Band of H A for the structured upper-triangular H built from h.
    Hprod {
        #[command(flatten)]
        band: BandArg,
        #[arg(long)]
        h: PathBuf,
    },
    /// A^2 as a dense matrix.
    Square(BandArg),
    /// Damping vector of a covariance matrix given as CSV.
    Damp {
        #[arg(long)]
        matrix: PathBuf,
        /// Also report the damped covariance and its band.
        #[arg(long)]
        covariance: bool,
    },
    /// Check every closed form against its dense oracle on random inputs.
    Verify {
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Time closed-form and dense implementations and fit scaling exponents.
    Bench {
        /// det, inv, quadform, definiteness, ldl or chol.
        #[arg(long)]
        op: String,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 5)]
        reps: usize,
        #[arg(long, value_enum, default_value_t = ImplChoice::Both)]
        implementation: ImplChoice,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ImplChoice {
    ClosedForm,
    DenseOracle,
    Both,
}
