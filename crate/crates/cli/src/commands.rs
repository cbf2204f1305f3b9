//! Subcommand bodies. Data-building functions are public so tests can call
//! them directly; [`run`] adds flag handling and file output.

use std::f64::consts::PI;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use ptosc_core::{
    classical_trajectory, evolve_coherent_with, potential_polar_magnitude, sample_coherent_density,
    sample_density, sample_glauber_density, CoherentSpec, EigenState, FieldGrid, FieldParams,
    GlauberSpec, GridSpec, TimeEvolution,
};

use crate::cli::{Cli, ClassicalArgs, CoherentArgs, Command, DensityArgs, EvolveArgs, PotentialArgs, SliceArgs, VerifyArgs};
use crate::error::{CliError, Result};
use crate::format::{grid_to_string, views_to_csv, Format, Table};
use crate::output::{grid_plot_script, script_path, slug, table_plot_script, views_path, write_atomic};
use crate::presets;
use crate::verify::{self, VerifyConfig};

fn column_name(prefix: &str, v: f64) -> String {
    format!("{prefix}={v}")
}

/// Rows `(φ, |V|/(mω²/2) per Λ)` on `phi_samples` equally spaced angles
/// covering `[0, 2π]`.
pub fn potential_table(lambdas: &[f64], r: f64, phi_samples: usize) -> Result<Table> {
    if phi_samples < 8 {
        return Err(CliError::Usage(format!("--phi-samples must be at least 8, got {phi_samples}")));
    }
    if lambdas.is_empty() {
        return Err(CliError::Usage("no Λ values given".into()));
    }
    let mut columns = vec!["phi".to_string()];
    columns.extend(lambdas.iter().map(|&l| column_name("lambda", l)));
    let mut table = Table::new("potential", columns).with_meta("r", r);
    for k in 0..phi_samples {
        // the ratio is exact at the midpoint and the end, so π and 2π are hit exactly
        let phi = PI * ((2 * k) as f64 / (phi_samples - 1) as f64);
        let mut row = vec![phi];
        for &l in lambdas {
            row.push(potential_polar_magnitude(r, phi, l)?);
        }
        table.rows.push(row);
    }
    Ok(table)
}

/// Rows `(y, Re[ψ_00(x, y)²] per (Λ, x))`.
pub fn slice_table(lambdas: &[f64], xs: &[f64], y_min: f64, y_max: f64, samples: usize) -> Result<Table> {
    if samples < 2 || !(y_max > y_min) {
        return Err(CliError::Usage(format!("bad y range [{y_min}, {y_max}] with {samples} samples")));
    }
    let mut columns = vec!["y".to_string()];
    let mut states = Vec::new();
    for &l in lambdas {
        for &x in xs {
            columns.push(format!("lambda={l};x={x}"));
            states.push((EigenState::new(0, 0, l)?, x));
        }
    }
    let mut table = Table::new("slice", columns).with_meta("n", 0).with_meta("m", 0);
    let h = (y_max - y_min) / (samples - 1) as f64;
    for j in 0..samples {
        let y = if j + 1 == samples { y_max } else { y_min + j as f64 * h };
        let mut row = vec![y];
        for (s, x) in &states {
            let psi = s.eval(*x, ptosc_core::ComplexScalar::new(y, 0.0));
            row.push((psi * psi).re);
        }
        table.rows.push(row);
    }
    Ok(table)
}

pub fn classical_table(beta: f64, gamma: f64, theta_x: f64, theta_y: f64, t_max: f64, steps: usize) -> Result<Table> {
    let traj = classical_trajectory(beta, gamma, theta_x, theta_y, t_max, steps)?;
    let mut table = Table::new("classical", vec!["t".into(), "x".into(), "y".into()])
        .with_meta("beta", beta)
        .with_meta("gamma", gamma)
        .with_meta("theta_x", theta_x)
        .with_meta("theta_y", theta_y);
    for ((t, x), y) in traj.times.iter().zip(&traj.xs).zip(&traj.ys) {
        table.rows.push(vec![*t, *x, *y]);
    }
    Ok(table)
}

pub fn density_grids(panels: &[(usize, usize, f64)], spec: &GridSpec) -> Result<Vec<FieldGrid>> {
    panels
        .iter()
        .map(|&(n, m, l)| Ok(sample_density(&EigenState::new(n, m, l)?, spec)?))
        .collect()
}

pub fn coherent_grids(panels: &[(usize, f64, f64, f64)], spec: &GridSpec) -> Result<Vec<FieldGrid>> {
    panels
        .iter()
        .map(|&(n, a, th, l)| Ok(sample_coherent_density(&CoherentSpec::new(n, a, th, l)?, spec)?))
        .collect()
}

/// Everything `evolve` writes.
#[derive(Debug, Clone, PartialEq)]
pub struct Evolution {
    /// One row per `(t, n, m)`.
    pub coefficients: Table,
    /// `(t, Σ|c|²)` per requested time.
    pub norms: Table,
    pub grids: Vec<FieldGrid>,
}

pub fn evolve(
    glauber: &GlauberSpec,
    lambda: f64,
    times: &[f64],
    mode: TimeEvolution,
    spec: &GridSpec,
) -> Result<Evolution> {
    let mode_name = match mode {
        TimeEvolution::Unitary => "unitary",
        TimeEvolution::PaperLiteralDecay => "paper_literal_decay",
    };
    let mut coefficients = Table::new("evolve_coefficients", ["t", "n", "m", "re", "im"].map(String::from).to_vec())
        .with_meta("evolution", mode_name)
        .with_meta("lambda", lambda);
    let mut norms = Table::new("evolve_norms", vec!["t".into(), "norm_sqr".into()]).with_meta("evolution", mode_name);
    let mut grids = Vec::with_capacity(times.len());
    for &t in times {
        let c = evolve_coherent_with(glauber, t, mode)?;
        for ((n, m), v) in c.iter() {
            coefficients.rows.push(vec![t, n as f64, m as f64, v.re, v.im]);
        }
        norms.rows.push(vec![t, c.norm_sqr()]);
        grids.push(sample_glauber_density(glauber, lambda, t, mode, spec)?);
    }
    Ok(Evolution { coefficients, norms, grids })
}

/// File name for a grid, derived from its parameters. `index` separates
/// grids whose parameters only differ in time.
pub fn grid_file_name(grid: &FieldGrid, index: usize, format: Format) -> String {
    let stem = match grid.params {
        FieldParams::Eigen { n, m, lambda } => format!("{}_n{n}_m{m}_lambda{}", grid.quantity.as_str(), slug(lambda)),
        FieldParams::Coherent { n_total, amplitude, theta, lambda } => format!(
            "coherent_N{n_total}_A{}_theta{}_lambda{}",
            slug(amplitude),
            slug((theta * 1e6).round() / 1e6),
            slug(lambda)
        ),
        FieldParams::Glauber { lambda, .. } => format!("evolve_{index:03}_lambda{}", slug(lambda)),
        FieldParams::Potential { lambda } => format!("potential_lambda{}", slug(lambda)),
    };
    format!("{stem}.{}", format.extension())
}

fn note(path: &Path) {
    eprintln!("wrote {}", path.display());
}

/// Writes each grid, its `.views.csv` companion and, if asked, a plot script.
pub fn write_grids(grids: &[FieldGrid], dir: &Path, format: Format, plot: bool) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    for (k, grid) in grids.iter().enumerate() {
        let path = dir.join(grid_file_name(grid, k, format));
        write_atomic(&path, grid_to_string(grid, format).as_bytes())?;
        let views = views_path(&path);
        write_atomic(&views, views_to_csv(grid).as_bytes())?;
        written.push(path.clone());
        written.push(views.clone());
        if plot {
            let script = script_path(&path);
            write_atomic(&script, grid_plot_script(&views, grid).as_bytes())?;
            written.push(script);
        }
    }
    Ok(written)
}

/// Writes a table to `out`, or to stdout when `out` is `None`.
pub fn emit_table(table: &Table, out: Option<&Path>, format: Format, plot: bool) -> Result<Vec<PathBuf>> {
    let text = table.to_string(format);
    match out {
        Some(path) => {
            write_atomic(path, text.as_bytes())?;
            let mut written = vec![path.to_path_buf()];
            if plot && format == Format::Csv {
                let script = script_path(path);
                write_atomic(&script, table_plot_script(path, table).as_bytes())?;
                written.push(script);
            }
            Ok(written)
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|e| CliError::io("<stdout>", e))?;
            Ok(Vec::new())
        }
    }
}

fn or_default<T: Clone>(given: &[T], default: &[T]) -> Vec<T> {
    if given.is_empty() {
        default.to_vec()
    } else {
        given.to_vec()
    }
}

fn out_dir(cli: &Cli) -> PathBuf {
    cli.out.clone().unwrap_or_else(|| PathBuf::from("."))
}

fn run_potential(cli: &Cli, a: &PotentialArgs) -> Result<Vec<PathBuf>> {
    let lambdas = if a.fig1 { presets::FIG1_LAMBDAS.to_vec() } else { or_default(&a.lambda, &presets::FIG1_LAMBDAS) };
    let r = a.r.unwrap_or(presets::FIG1_R);
    let table = potential_table(&lambdas, r, a.phi_samples.unwrap_or(presets::FIG1_PHI_SAMPLES))?;
    emit_table(&table, cli.out.as_deref(), cli.format, cli.emit_plot_script)
}

fn run_density(cli: &Cli, a: &DensityArgs) -> Result<Vec<PathBuf>> {
    let spec = a.grid.unwrap_or_default();
    let single = a.n.is_some() || a.m.is_some() || a.lambda.is_some();
    let panels = if a.fig2 || !single {
        if a.fig2 && single {
            return Err(CliError::Usage("--fig2 cannot be combined with --n/--m/--lambda".into()));
        }
        presets::fig2_panels()
    } else {
        vec![(a.n.unwrap_or(0), a.m.unwrap_or(0), a.lambda.unwrap_or(0.0))]
    };
    let grids = density_grids(&panels, &spec)?;
    write_grids(&grids, &out_dir(cli), cli.format, cli.emit_plot_script)
}

fn run_slice(cli: &Cli, a: &SliceArgs) -> Result<Vec<PathBuf>> {
    let (lambdas, xs) = if a.fig3 {
        (presets::FIG3_LAMBDAS.to_vec(), presets::FIG3_XS.to_vec())
    } else {
        (or_default(&a.lambda, &presets::FIG3_LAMBDAS), or_default(&a.x, &presets::FIG3_XS))
    };
    let (y0, y1, ny) = presets::FIG3_Y_RANGE;
    let table = slice_table(&lambdas, &xs, a.y_min.unwrap_or(y0), a.y_max.unwrap_or(y1), a.y_samples.unwrap_or(ny))?;
    emit_table(&table, cli.out.as_deref(), cli.format, cli.emit_plot_script)
}

fn run_coherent(cli: &Cli, a: &CoherentArgs) -> Result<Vec<PathBuf>> {
    let single = a.n_total.is_some() || a.amplitude.is_some() || a.theta.is_some() || a.lambda.is_some();
    if (a.fig4 || a.fig5) && single {
        return Err(CliError::Usage("--fig4/--fig5 cannot be combined with --N/--A/--theta/--lambda".into()));
    }
    let (panels, default_grid) = if a.fig5 {
        (presets::coherent_panels(presets::FIG5_N), presets::fig5_grid())
    } else if a.fig4 || !single {
        (presets::coherent_panels(presets::FIG4_N), GridSpec::default())
    } else {
        let p = (
            a.n_total.unwrap_or(presets::FIG4_N),
            a.amplitude.unwrap_or(1.0),
            a.theta.unwrap_or(std::f64::consts::FRAC_PI_2),
            a.lambda.unwrap_or(0.0),
        );
        (vec![p], GridSpec::default())
    };
    let grids = coherent_grids(&panels, &a.grid.unwrap_or(default_grid))?;
    write_grids(&grids, &out_dir(cli), cli.format, cli.emit_plot_script)
}

fn run_evolve(cli: &Cli, a: &EvolveArgs) -> Result<Vec<PathBuf>> {
    let glauber = GlauberSpec {
        beta_abs: a.beta,
        gamma_abs: a.gamma,
        theta_x: a.theta_x,
        theta_y: a.theta_y,
        n_cutoff: a.cutoff,
    };
    let mode = if a.paper_literal_decay { TimeEvolution::PaperLiteralDecay } else { TimeEvolution::Unitary };
    let ev = evolve(&glauber, a.lambda, &a.t, mode, &a.grid.unwrap_or_default())?;
    let dir = out_dir(cli);
    let ext = cli.format.extension();
    let mut written = emit_table(
        &ev.coefficients,
        Some(&dir.join(format!("evolve_coefficients.{ext}"))),
        cli.format,
        false,
    )?;
    written.extend(emit_table(&ev.norms, Some(&dir.join(format!("evolve_norms.{ext}"))), cli.format, false)?);
    written.extend(write_grids(&ev.grids, &dir, cli.format, cli.emit_plot_script)?);
    Ok(written)
}

fn run_classical(cli: &Cli, a: &ClassicalArgs) -> Result<Vec<PathBuf>> {
    let table = classical_table(a.beta, a.gamma, a.theta_x, a.theta_y, a.t_max, a.steps)?;
    emit_table(&table, cli.out.as_deref(), cli.format, cli.emit_plot_script)
}

fn run_verify(cli: &Cli, a: &VerifyArgs) -> Result<Vec<PathBuf>> {
    let cfg = VerifyConfig {
        max_index: a.max_index,
        lambdas: a.lambda.clone(),
        simpson_samples: a.samples,
        quad_order: cli.quad_order,
        ..VerifyConfig::default()
    };
    let report = verify::run(&cfg)?;
    let text = serde_json::to_string_pretty(&report).expect("report serialization cannot fail") + "\n";
    let written = match &cli.out {
        Some(path) => {
            write_atomic(path, text.as_bytes())?;
            vec![path.clone()]
        }
        None => {
            print!("{text}");
            Vec::new()
        }
    };
    for p in &written {
        note(p);
    }
    if report.passed {
        Ok(written)
    } else {
        Err(CliError::VerificationFailed(report.failing()))
    }
}

/// Runs one invocation and returns the paths written.
pub fn run(cli: &Cli) -> Result<Vec<PathBuf>> {
    if cli.quad_order == 0 || cli.quad_order > ptosc_core::quadrature::MAX_QUAD_ORDER {
        return Err(CliError::Usage(format!(
            "--quad-order must be in 1..={}, got {}",
            ptosc_core::quadrature::MAX_QUAD_ORDER,
            cli.quad_order
        )));
    }
    let written = match &cli.command {
        Command::Potential(a) => run_potential(cli, a)?,
        Command::Density(a) => run_density(cli, a)?,
        Command::Slice(a) => run_slice(cli, a)?,
        Command::Coherent(a) => run_coherent(cli, a)?,
        Command::Evolve(a) => run_evolve(cli, a)?,
        Command::Classical(a) => run_classical(cli, a)?,
        Command::Verify(a) => return run_verify(cli, a),
    };
    for p in &written {
        note(p);
    }
    Ok(written)
}
