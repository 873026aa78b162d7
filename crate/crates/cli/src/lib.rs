//! Command-line surface for the `firstorder` engine.
//!
//! Commands return their stdout as a `String` so tests can drive them
//! without spawning a process; `main.rs` only prints and sets the exit code.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use firstorder::models::DEFAULT_QUADRATURE_INTERVALS;
use firstorder::perturbation::{PerturbedSystem, StateVector, Tolerances};
use firstorder::textio::{format_matrix, parse_matrix, parse_vector};
use firstorder::verify::{log_grid, Sweep, DEFAULT_GRID, NOISE_FLOOR};
use firstorder::{
    box_hamiltonian, box_potential_matrix, jacobi_eigendecompose, random_hermitian, BoxModelSpec,
    HermitianMatrix, Potential, DEFAULT_MAX_SWEEPS,
};
use thiserror::Error;

pub mod report;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] firstorder::Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn name(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.name(),
            CliError::Io { .. } => "IoError",
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(
    name = "firstorder",
    version,
    about = "First-order perturbation theory over a Hermitian eigenbasis"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the eigenvalues and phase-fixed eigenvectors of a matrix file.
    Spectrum { matrix: PathBuf },
    /// First-order energies and state for one strength.
    Perturb(PerturbArgs),
    /// Compare first-order levels with exact diagonalization over a strength grid (CSV).
    Sweep(SweepArgs),
    /// Write model Hamiltonians as matrix files.
    Model {
        #[command(subcommand)]
        model: ModelCommand,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct StateArgs {
    /// Use the eigenstate φ_n of H.
    #[arg(long)]
    pub level: Option<usize>,
    /// Use the eigenbasis coefficients in this vector file.
    #[arg(long)]
    pub state: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ToleranceArgs {
    /// Relative threshold below which E − E_m counts as zero.
    #[arg(long, default_value_t = 1e-9)]
    pub tol_degen: f64,
    /// Relative threshold below which a numerator counts as zero.
    #[arg(long, default_value_t = 1e-9)]
    pub tol_num: f64,
}

impl ToleranceArgs {
    fn tolerances(&self) -> Tolerances {
        Tolerances {
            degen: self.tol_degen,
            num: self.tol_num,
        }
    }
}

#[derive(Debug, Args)]
pub struct PerturbArgs {
    pub h: PathBuf,
    pub hp: PathBuf,
    /// Perturbation strength.
    #[arg(long, allow_negative_numbers = true)]
    pub x: f64,
    #[command(flatten)]
    pub state: StateArgs,
    #[command(flatten)]
    pub tol: ToleranceArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    pub h: PathBuf,
    pub hp: PathBuf,
    /// Smallest strength of a log-spaced grid [default: 1e-3].
    #[arg(long)]
    pub x_min: Option<f64>,
    /// Largest strength of a log-spaced grid [default: 1e-1].
    #[arg(long)]
    pub x_max: Option<f64>,
    /// Number of grid points [default: 5].
    #[arg(long)]
    pub points: Option<usize>,
    #[command(flatten)]
    pub state: StateArgs,
    #[command(flatten)]
    pub tol: ToleranceArgs,
}

#[derive(Debug, Subcommand)]
pub enum ModelCommand {
    /// Particle in a box: diagonal H and a quadrature-built potential H'.
    Box {
        #[arg(long)]
        levels: usize,
        #[arg(long)]
        width: f64,
        /// One of const:<v>, linear:<l>, quadratic:<k>.
        #[arg(long)]
        potential: String,
        #[arg(long, default_value_t = DEFAULT_QUADRATURE_INTERVALS)]
        quadrature_points: usize,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Seeded random Hermitian matrix.
    Random {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// File stem of the written matrix.
        #[arg(long, default_value = "h")]
        name: String,
    },
}

pub fn run(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Spectrum { matrix } => run_spectrum(&matrix),
        Command::Perturb(args) => run_solve(&args),
        Command::Sweep(args) => run_sweep(&args),
        Command::Model { model } => run_model(&model),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn read_matrix(path: &Path) -> Result<HermitianMatrix> {
    Ok(parse_matrix(&read(path)?)?)
}

fn load_system(h: &Path, hp: &Path) -> Result<PerturbedSystem> {
    Ok(PerturbedSystem::new(read_matrix(h)?, read_matrix(hp)?)?)
}

fn load_state(args: &StateArgs, dim: usize) -> Result<StateVector> {
    let state = match (&args.level, &args.state) {
        (Some(n), _) => StateVector::basis(dim, *n)?,
        (None, Some(path)) => parse_vector(&read(path)?)?,
        (None, None) => unreachable!("clap enforces exactly one state source"),
    };
    if state.dim() != dim {
        return Err(firstorder::Error::DimensionMismatch {
            expected: dim,
            found: state.dim(),
        }
        .into());
    }
    Ok(state)
}

pub fn run_spectrum(path: &Path) -> Result<String> {
    let a = read_matrix(path)?;
    let spec = jacobi_eigendecompose(&a, DEFAULT_MAX_SWEEPS)?;
    Ok(report::spectrum(&spec))
}

pub fn run_solve(args: &PerturbArgs) -> Result<String> {
    let sys = load_system(&args.h, &args.hp)?;
    let state = load_state(&args.state, sys.dim())?;
    let result = sys.first_order(&state, args.x, args.tol.tolerances())?;
    let residual = sys.residual(&result)?;
    Ok(report::first_order(
        &result,
        state.as_basis_level(),
        residual,
    ))
}

pub fn run_sweep(args: &SweepArgs) -> Result<String> {
    let grid = if args.x_min.is_none() && args.x_max.is_none() && args.points.is_none() {
        DEFAULT_GRID.to_vec()
    } else {
        log_grid(
            args.x_min.unwrap_or(1e-3),
            args.x_max.unwrap_or(1e-1),
            args.points.unwrap_or(5),
        )?
    };
    let sys = load_system(&args.h, &args.hp)?;
    let state = load_state(&args.state, sys.dim())?;
    let sweep = Sweep::run(&sys, &state, &grid, args.tol.tolerances())?;
    let orders = sweep.orders(NOISE_FLOOR)?;
    Ok(report::sweep_csv(&sweep, &orders))
}

/// Parses `const:<v>`, `linear:<l>` or `quadratic:<k>`.
pub fn parse_potential(spec: &str) -> firstorder::Result<Potential> {
    let bad = |reason: String| firstorder::Error::ParseError { line: 0, reason };
    let (kind, value) = spec
        .split_once(':')
        .ok_or_else(|| bad(format!("potential `{spec}` must look like kind:value")))?;
    let value: f64 = value
        .parse()
        .ok()
        .filter(|v: &f64| v.is_finite())
        .ok_or_else(|| bad(format!("invalid potential parameter `{value}`")))?;
    match kind {
        "const" => Ok(Potential::Constant(value)),
        "linear" => Ok(Potential::Linear(value)),
        "quadratic" => Ok(Potential::Quadratic(value)),
        other => Err(bad(format!("unsupported potential kind `{other}`"))),
    }
}

pub fn run_model(model: &ModelCommand) -> Result<String> {
    let mut written = Vec::new();
    match model {
        ModelCommand::Box {
            levels,
            width,
            potential,
            quadrature_points,
            out,
        } => {
            let spec = BoxModelSpec::new(*levels, *width, parse_potential(potential)?)?;
            let h_path = out.join("h.txt");
            let hp_path = out.join("hp.txt");
            write(&h_path, &format_matrix(&box_hamiltonian(&spec)))?;
            write(
                &hp_path,
                &format_matrix(&box_potential_matrix(&spec, *quadrature_points)),
            )?;
            written.extend([h_path, hp_path]);
        }
        ModelCommand::Random {
            seed,
            dim,
            scale,
            out,
            name,
        } => {
            let path = out.join(format!("{name}.txt"));
            write(
                &path,
                &format_matrix(&random_hermitian(*seed, *dim, *scale)?),
            )?;
            written.push(path);
        }
    }
    Ok(written
        .iter()
        .map(|p| format!("wrote {}\n", p.display()))
        .collect())
}
