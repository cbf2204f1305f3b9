//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use ptosc_core::{GridSpec, DEFAULT_QUAD_ORDER};

use crate::format::Format;
use crate::parse;

#[derive(Debug, Parser)]
#[command(name = "ptosc", version, about = "Complexified 2D harmonic oscillator: figure data, grids and identity checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format for grids and tables.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,

    /// Output file for tables and reports (stdout when absent), or output
    /// directory for grid-producing commands (current directory when absent).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Gauss–Hermite order used by quadrature-based commands.
    #[arg(long, default_value_t = DEFAULT_QUAD_ORDER, global = true)]
    pub quad_order: usize,

    /// Also write a gnuplot script next to each data file.
    #[arg(long, global = true)]
    pub emit_plot_script: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// |V|/(mω²/2) on a circle of radius r against the polar angle.
    Potential(PotentialArgs),
    /// ψ² grids for single eigenstates.
    Density(DensityArgs),
    /// Re[ψ_00²] along y at fixed x.
    Slice(SliceArgs),
    /// Φ_N² grids for fixed-N coherent states.
    Coherent(CoherentArgs),
    /// Time-evolved Glauber states: coefficients and density grids.
    Evolve(EvolveArgs),
    /// Classical trajectory (t, x, y).
    Classical(ClassicalArgs),
    /// Run the integral identity suite and write a JSON report.
    Verify(VerifyArgs),
}

fn real(s: &str) -> Result<f64, String> {
    parse::real(s)
}

fn grid(s: &str) -> Result<GridSpec, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 6 {
        return Err(format!("expected x0,x1,y0,y1,nx,ny, got {s:?}"));
    }
    let r = |k: usize| parse::real(parts[k]);
    let c = |k: usize| parts[k].trim().parse::<usize>().map_err(|e| format!("bad count {:?}: {e}", parts[k]));
    GridSpec::new(r(0)?, r(1)?, r(2)?, r(3)?, c(4)?, c(5)?).map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
pub struct PotentialArgs {
    /// Λ values, comma separated.
    #[arg(long, value_parser = real, value_delimiter = ',', allow_hyphen_values = true)]
    pub lambda: Vec<f64>,
    #[arg(long, value_parser = real)]
    pub r: Option<f64>,
    /// Number of φ samples on [0, 2π].
    #[arg(long)]
    pub phi_samples: Option<usize>,
    /// Preset: r = 1 and Λ ∈ {0, 0.5, 1, 2, 3} (the defaults).
    #[arg(long)]
    pub fig1: bool,
}

#[derive(Debug, Args)]
pub struct DensityArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, value_parser = real, allow_hyphen_values = true)]
    pub lambda: Option<f64>,
    /// x0,x1,y0,y1,nx,ny
    #[arg(long, value_parser = grid, allow_hyphen_values = true)]
    pub grid: Option<GridSpec>,
    /// Preset panels: (n, m) ∈ {00, 01, 10, 11} at Λ ∈ {0, 1.5}.
    #[arg(long)]
    pub fig2: bool,
}

#[derive(Debug, Args)]
pub struct SliceArgs {
    #[arg(long, value_parser = real, value_delimiter = ',', allow_hyphen_values = true)]
    pub lambda: Vec<f64>,
    #[arg(long, value_parser = real, value_delimiter = ',', allow_hyphen_values = true)]
    pub x: Vec<f64>,
    #[arg(long, value_parser = real, allow_hyphen_values = true)]
    pub y_min: Option<f64>,
    #[arg(long, value_parser = real, allow_hyphen_values = true)]
    pub y_max: Option<f64>,
    #[arg(long)]
    pub y_samples: Option<usize>,
    /// Preset: Λ ∈ {0, 0.5, 1, 1.5, 2}, x ∈ {0, 1} (the defaults).
    #[arg(long)]
    pub fig3: bool,
}

#[derive(Debug, Args)]
pub struct CoherentArgs {
    #[arg(long = "N")]
    pub n_total: Option<usize>,
    #[arg(long = "A", value_parser = real)]
    pub amplitude: Option<f64>,
    #[arg(long, value_parser = real, allow_hyphen_values = true)]
    pub theta: Option<f64>,
    #[arg(long, value_parser = real, allow_hyphen_values = true)]
    pub lambda: Option<f64>,
    #[arg(long, value_parser = grid, allow_hyphen_values = true)]
    pub grid: Option<GridSpec>,
    /// N = 3 sweep over (A, θ) ∈ {(1, π/2), (2, π/2), (1, π/4)} and Λ ∈ {0, 1.5, 3}.
    #[arg(long, conflicts_with = "fig5")]
    pub fig4: bool,
    /// Same sweep at N = 12 on a wider grid.
    #[arg(long)]
    pub fig5: bool,
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    #[arg(long, value_parser = real, default_value = "0.8")]
    pub beta: f64,
    #[arg(long, value_parser = real, default_value = "0.8")]
    pub gamma: f64,
    #[arg(long, value_parser = real, default_value = "0", allow_hyphen_values = true)]
    pub theta_x: f64,
    #[arg(long, value_parser = real, default_value = "pi/2", allow_hyphen_values = true)]
    pub theta_y: f64,
    /// Largest shell n + m kept.
    #[arg(long, default_value_t = ptosc_core::coherent::DEFAULT_GLAUBER_CUTOFF)]
    pub cutoff: usize,
    #[arg(long, value_parser = real, default_value = "0", allow_hyphen_values = true)]
    pub lambda: f64,
    /// Times, comma separated; multiples of π may be written as `pi/2`, `2pi`.
    #[arg(long, value_parser = real, value_delimiter = ',', default_value = "0,pi/2,pi,2pi", allow_hyphen_values = true)]
    pub t: Vec<f64>,
    #[arg(long, value_parser = grid, allow_hyphen_values = true)]
    pub grid: Option<GridSpec>,
    /// Use e^{-(N+1)t} instead of the unitary phase e^{-i(N+1)t}.
    #[arg(long)]
    pub paper_literal_decay: bool,
}

#[derive(Debug, Args)]
pub struct ClassicalArgs {
    #[arg(long, value_parser = real, default_value = "1")]
    pub beta: f64,
    #[arg(long, value_parser = real, default_value = "1")]
    pub gamma: f64,
    #[arg(long, value_parser = real, default_value = "0", allow_hyphen_values = true)]
    pub theta_x: f64,
    #[arg(long, value_parser = real, default_value = "pi/2", allow_hyphen_values = true)]
    pub theta_y: f64,
    #[arg(long, value_parser = real, default_value = "2pi")]
    pub t_max: f64,
    #[arg(long, default_value_t = 201)]
    pub steps: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Largest n and m in the inner-product tables and real-plane checks.
    #[arg(long, default_value_t = 4)]
    pub max_index: usize,
    #[arg(long, value_parser = real, value_delimiter = ',', default_value = "0,1,2.5")]
    pub lambda: Vec<f64>,
    /// Simpson samples per axis for the real-plane integrals.
    #[arg(long, default_value_t = 4001)]
    pub samples: usize,
}
