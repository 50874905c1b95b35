//! `pdmcs` — command-line front end for the position-dependent-mass
//! factorization toolkit.

mod commands;

use clap::{Args, Parser, Subcommand};
use pdmcs_core::error::Error as CoreError;

/// Exit codes, also listed in `--help`: 0 ok, 2 config/parameter error,
/// 3 admissibility error, 4 verification failure, 5 numeric error.
pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_ADMISSIBILITY: i32 = 3;
pub const EXIT_VERIFICATION: i32 = 4;
pub const EXIT_NUMERIC: i32 = 5;

#[derive(Parser)]
#[command(
    name = "pdmcs",
    version,
    about = "Factorization, spectra and coherent states for position-dependent-mass Schrödinger operators",
    after_help = "Exit codes: 0 success; 2 config or parameter error; 3 admissibility error \
                  (window outside the deformed-coordinate image); 4 verification failure; \
                  5 numeric error.\n\
                  The environment variable PDMCS_THREADS caps verification parallelism."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Catalog operations.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Sample the potential, ground state and structure function of an entry.
    Derive(DeriveArgs),
    /// Emit coherent-state samples and the uncertainty report.
    Coherent(CoherentArgs),
    /// Lowest eigenvalues of the divergence-form operator for an entry.
    Spectrum(SpectrumArgs),
    /// Pseudo-Hermitian checks for the quadratic non-Hermitian Hamiltonian.
    Swanson(SwansonArgs),
    /// Run the cross-check suite and emit a machine-readable report.
    Verify(VerifyArgs),
}

#[derive(Subcommand)]
pub enum CatalogAction {
    /// List the registry: names, families, constraints, fixtures.
    List {
        #[arg(long, default_value = "table", value_parser = ["table", "json"])]
        format: String,
    },
}

#[derive(Args, Clone)]
pub struct EntryParamArgs {
    /// Catalog entry name (see `catalog list`).
    #[arg(long)]
    pub entry: String,
    /// Deformation strength; defaults to the entry fixture.
    #[arg(long, allow_negative_numbers = true)]
    pub kappa: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub k0: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub k1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub b: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub c: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub d: Option<f64>,
}

#[derive(Args, Clone)]
pub struct MassArgs {
    /// Bundled mass profile id: constant, cauchy-squared-inverse,
    /// quartic-growth, half-line-constant.
    #[arg(long, default_value = "constant")]
    pub mass: String,
    /// Custom mass profile m(x) as an expression (overrides --mass).
    /// Grammar: x, literals, + - * / ^, parentheses, sin cos tan sinh cosh
    /// tanh exp ln sqrt abs atan, constants pi and e.
    #[arg(long)]
    pub mass_expr: Option<String>,
}

#[derive(Args, Clone)]
pub struct GridArgs {
    /// Left grid endpoint; defaults to the entry's canonical window.
    #[arg(long, allow_negative_numbers = true)]
    pub xmin: Option<f64>,
    /// Right grid endpoint; defaults to the entry's canonical window.
    #[arg(long, allow_negative_numbers = true)]
    pub xmax: Option<f64>,
    /// Grid points (>= 64).
    #[arg(long, default_value_t = 4097)]
    pub n: usize,
}

#[derive(Args, Clone)]
pub struct DeriveArgs {
    #[command(flatten)]
    pub entry: EntryParamArgs,
    #[command(flatten)]
    pub mass: MassArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Write CSV here instead of stdout.
    #[arg(long)]
    pub output: Option<std::path::PathBuf>,
}

#[derive(Args, Clone)]
pub struct CoherentArgs {
    #[command(flatten)]
    pub entry: EntryParamArgs,
    #[command(flatten)]
    pub mass: MassArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Imaginary part of the displacement parameter xi.
    #[arg(long, default_value_t = 0.3, allow_negative_numbers = true)]
    pub xi_im: f64,
    /// Which state to sample.
    #[arg(long, default_value = "hcs", value_parser = ["hcs", "phcs"])]
    pub state: String,
    /// Write CSV here; the uncertainty JSON always goes to stdout.
    #[arg(long)]
    pub output: Option<std::path::PathBuf>,
}

#[derive(Args, Clone)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub entry: EntryParamArgs,
    #[command(flatten)]
    pub mass: MassArgs,
    #[command(flatten)]
    pub grid: GridArgs,
    /// How many eigenvalues (1..=10).
    #[arg(long, default_value_t = 4)]
    pub k: usize,
    #[arg(long, default_value = "json", value_parser = ["table", "json"])]
    pub format: String,
}

#[derive(Args, Clone)]
pub struct SwansonArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: f64,
    #[command(flatten)]
    pub mass: MassArgs,
    /// Superpotential family as JSON, e.g.
    /// '{"class":1,"a":0,"b":0,"c":1,"d":0,"k0":1,"k1":0}'.
    /// Defaults to the linear family (W = mu).
    #[arg(long)]
    pub w_class: Option<String>,
    #[arg(long, default_value_t = -8.0, allow_negative_numbers = true)]
    pub xmin: f64,
    #[arg(long, default_value_t = 8.0, allow_negative_numbers = true)]
    pub xmax: f64,
    #[arg(long, default_value_t = 2049)]
    pub n: usize,
}

#[derive(Args, Clone)]
pub struct VerifyArgs {
    /// Entry name, or "all".
    #[arg(long, default_value = "all")]
    pub entry: String,
    #[command(flatten)]
    pub mass: MassArgs,
    #[arg(long, default_value = "json", value_parser = ["table", "json"])]
    pub format: String,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub output: Option<std::path::PathBuf>,
}

fn exit_code_for(err: &CoreError) -> i32 {
    match err {
        CoreError::Admissibility(_) => EXIT_ADMISSIBILITY,
        CoreError::Numeric(_) | CoreError::Singularity { .. } | CoreError::Normalizability(_) => {
            EXIT_NUMERIC
        }
        _ => EXIT_CONFIG,
    }
}

fn main() {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Catalog {
            action: CatalogAction::List { format },
        } => commands::catalog_list(&format),
        Command::Derive(args) => commands::derive(&args),
        Command::Coherent(args) => commands::coherent(&args),
        Command::Spectrum(args) => commands::spectrum(&args),
        Command::Swanson(args) => commands::swanson(&args),
        Command::Verify(args) => commands::verify(&args),
    };
    match outcome {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("pdmcs: {err}");
            std::process::exit(exit_code_for(&err));
        }
    }
}
