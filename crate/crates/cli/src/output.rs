//! Atomic file output and optional gnuplot scripts.

use std::io::Write;
use std::path::{Path, PathBuf};

use ptosc_core::{FieldGrid, Quantity};

use crate::error::{CliError, Result};
use crate::format::Table;

/// Writes `contents` to a temporary file next to `path` and renames it into
/// place, so readers never observe a partial file.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::io(dir, e))?;
    tmp.write_all(contents).map_err(|e| CliError::io(path, e))?;
    tmp.as_file().sync_all().map_err(|e| CliError::io(path, e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}

/// Replaces characters that are awkward in file names.
pub fn slug(v: f64) -> String {
    format!("{v}").replace('-', "m").replace('.', "p")
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!("{stem}{suffix}"))
}

pub fn views_path(grid_path: &Path) -> PathBuf {
    with_suffix(grid_path, ".views.csv")
}

pub fn script_path(data_path: &Path) -> PathBuf {
    with_suffix(data_path, ".gp")
}

fn file_name(path: &Path) -> String {
    path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

/// Heat maps of the three views, read from the `.views.csv` companion.
pub fn grid_plot_script(views: &Path, grid: &FieldGrid) -> String {
    let data = file_name(views);
    let png = with_suffix(views, "");
    let png = file_name(&png);
    let last = match grid.quantity {
        Quantity::Density | Quantity::CoherentDensity => "|psi|^2",
        _ => "|value|^2",
    };
    format!(
        "set datafile separator ','\n\
         set terminal pngcairo size 1500,450\n\
         set output '{png}.png'\n\
         set view map\n\
         set size ratio -1\n\
         set xlabel 'x'\n\
         set ylabel 'y'\n\
         set multiplot layout 1,3\n\
         set title 'Re'\n\
         splot '{data}' skip 2 using 1:2:3 with image notitle\n\
         set title 'Im'\n\
         splot '{data}' skip 2 using 1:2:4 with image notitle\n\
         set title '{last}'\n\
         splot '{data}' skip 2 using 1:2:5 with image notitle\n\
         unset multiplot\n"
    )
}

/// One curve per data column against the first column.
pub fn table_plot_script(data: &Path, table: &Table) -> String {
    let name = file_name(data);
    let png = file_name(&with_suffix(data, ""));
    let curves: Vec<String> = (2..=table.columns.len())
        .map(|k| format!("'{name}' skip 2 using 1:{k} with lines title '{}'", table.columns[k - 1]))
        .collect();
    format!(
        "set datafile separator ','\n\
         set terminal pngcairo size 900,600\n\
         set output '{png}.png'\n\
         set xlabel '{}'\n\
         plot {}\n",
        table.columns[0],
        curves.join(", \\\n     ")
    )
}
