//! On-disk formats for grids and tables.
//!
//! Grid CSV: one metadata line
//!
//! ```text
//! # quantity=<q> n=<..> m=<..> N=<..> A=<..> theta=<..> lambda=<..> nx=<..> ny=<..> x_min=<..> x_max=<..> y_min=<..> y_max=<..> [glauber keys] generated_by=<..>
//! ```
//!
//! followed by rows `x,y,re,im`, `y` outer and `x` inner, every number
//! printed with 17 significant digits. Keys that do not apply carry `-`.
//! Grid JSON mirrors [`FieldGrid`] with `values` as a flat row-major array
//! of `[re, im]` pairs.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use ptosc_core::{ComplexScalar, FieldGrid, FieldParams, GlauberSpec, GridSpec, Quantity, TimeEvolution};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};
use crate::GENERATED_BY;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(&self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// Full precision, 17 significant digits.
pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn key_num(v: f64) -> String {
    // shortest round-trip representation
    format!("{v}")
}

const DASH: &str = "-";

fn header_pairs(grid: &FieldGrid) -> Vec<(&'static str, String)> {
    let dash = || DASH.to_string();
    let (mut n, mut m, mut big_n, mut a, mut theta) = (dash(), dash(), dash(), dash(), dash());
    let mut extra: Vec<(&'static str, String)> = Vec::new();
    match grid.params {
        FieldParams::Eigen { n: nn, m: mm, .. } => {
            n = nn.to_string();
            m = mm.to_string();
        }
        FieldParams::Coherent { n_total, amplitude, theta: th, .. } => {
            big_n = n_total.to_string();
            a = key_num(amplitude);
            theta = key_num(th);
        }
        FieldParams::Glauber { glauber, t, evolution, .. } => {
            extra.push(("beta", key_num(glauber.beta_abs)));
            extra.push(("gamma", key_num(glauber.gamma_abs)));
            extra.push(("theta_x", key_num(glauber.theta_x)));
            extra.push(("theta_y", key_num(glauber.theta_y)));
            extra.push(("cutoff", glauber.n_cutoff.to_string()));
            extra.push(("t", key_num(t)));
            extra.push(("evolution", evolution_str(evolution).to_string()));
        }
        FieldParams::Potential { .. } => {}
    }
    let s = grid.spec;
    let mut pairs = vec![
        ("quantity", grid.quantity.as_str().to_string()),
        ("n", n),
        ("m", m),
        ("N", big_n),
        ("A", a),
        ("theta", theta),
        ("lambda", key_num(grid.params.lambda())),
        ("nx", s.nx.to_string()),
        ("ny", s.ny.to_string()),
        ("x_min", key_num(s.x_min)),
        ("x_max", key_num(s.x_max)),
        ("y_min", key_num(s.y_min)),
        ("y_max", key_num(s.y_max)),
    ];
    pairs.extend(extra);
    pairs.push(("generated_by", GENERATED_BY.to_string()));
    pairs
}

fn evolution_str(e: TimeEvolution) -> &'static str {
    match e {
        TimeEvolution::Unitary => "unitary",
        TimeEvolution::PaperLiteralDecay => "paper_literal_decay",
    }
}

pub fn grid_to_csv(grid: &FieldGrid) -> String {
    let mut out = String::with_capacity(grid.values.len() * 96 + 256);
    out.push('#');
    for (k, v) in header_pairs(grid) {
        let _ = write!(out, " {k}={v}");
    }
    out.push('\n');
    let spec = grid.spec;
    for j in 0..spec.ny {
        let y = num(spec.y(j));
        for i in 0..spec.nx {
            let v = grid.value(i, j);
            let _ = writeln!(out, "{},{},{},{}", num(spec.x(i)), y, num(v.re), num(v.im));
        }
    }
    out
}

fn parse_err(path: &Path, reason: impl Into<String>) -> CliError {
    CliError::Parse { path: path.to_path_buf(), reason: reason.into() }
}

fn get<'a>(keys: &'a BTreeMap<&str, &str>, path: &Path, key: &str) -> Result<&'a str> {
    keys.get(key).copied().ok_or_else(|| parse_err(path, format!("missing header key {key}")))
}

fn get_parsed<T: FromStr>(keys: &BTreeMap<&str, &str>, path: &Path, key: &str) -> Result<T> {
    let raw = get(keys, path, key)?;
    raw.parse::<T>().map_err(|_| parse_err(path, format!("bad value {raw:?} for {key}")))
}

/// Parses a grid CSV back into the exact in-memory grid. `path` is only
/// used in error messages.
pub fn grid_from_csv(text: &str, path: &Path) -> Result<FieldGrid> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .and_then(|l| l.strip_prefix('#'))
        .ok_or_else(|| parse_err(path, "missing '#' header line"))?;
    let mut keys = BTreeMap::new();
    for token in header.split_whitespace() {
        let (k, v) = token.split_once('=').ok_or_else(|| parse_err(path, format!("bad header token {token:?}")))?;
        keys.insert(k, v);
    }
    let quantity = Quantity::from_str(get(&keys, path, "quantity")?).map_err(|e| parse_err(path, e.to_string()))?;
    let spec = GridSpec::new(
        get_parsed(&keys, path, "x_min")?,
        get_parsed(&keys, path, "x_max")?,
        get_parsed(&keys, path, "y_min")?,
        get_parsed(&keys, path, "y_max")?,
        get_parsed(&keys, path, "nx")?,
        get_parsed(&keys, path, "ny")?,
    )
    .map_err(|e| parse_err(path, e.to_string()))?;
    let lambda: f64 = get_parsed(&keys, path, "lambda")?;
    let params = match quantity {
        Quantity::Wavefunction | Quantity::Density => FieldParams::Eigen {
            n: get_parsed(&keys, path, "n")?,
            m: get_parsed(&keys, path, "m")?,
            lambda,
        },
        Quantity::PotentialAbs => FieldParams::Potential { lambda },
        Quantity::CoherentDensity if keys.contains_key("beta") => FieldParams::Glauber {
            glauber: GlauberSpec {
                beta_abs: get_parsed(&keys, path, "beta")?,
                gamma_abs: get_parsed(&keys, path, "gamma")?,
                theta_x: get_parsed(&keys, path, "theta_x")?,
                theta_y: get_parsed(&keys, path, "theta_y")?,
                n_cutoff: get_parsed(&keys, path, "cutoff")?,
            },
            lambda,
            t: get_parsed(&keys, path, "t")?,
            evolution: match get(&keys, path, "evolution")? {
                "unitary" => TimeEvolution::Unitary,
                "paper_literal_decay" => TimeEvolution::PaperLiteralDecay,
                other => return Err(parse_err(path, format!("unknown evolution {other:?}"))),
            },
        },
        Quantity::CoherentDensity => FieldParams::Coherent {
            n_total: get_parsed(&keys, path, "N")?,
            amplitude: get_parsed(&keys, path, "A")?,
            theta: get_parsed(&keys, path, "theta")?,
            lambda,
        },
    };

    let mut values = Vec::with_capacity(spec.len());
    for (k, line) in lines.filter(|l| !l.trim().is_empty()).enumerate() {
        let fields: Vec<f64> = line
            .split(',')
            .map(|f| f.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|_| parse_err(path, format!("bad data row {}", k + 2)))?;
        if fields.len() != 4 {
            return Err(parse_err(path, format!("row {} has {} columns, expected 4", k + 2, fields.len())));
        }
        let (i, j) = (k % spec.nx, k / spec.nx);
        if j >= spec.ny || fields[0] != spec.x(i) || fields[1] != spec.y(j) {
            return Err(parse_err(path, format!("row {} does not match grid position ({i}, {j})", k + 2)));
        }
        values.push(ComplexScalar::new(fields[2], fields[3]));
    }
    if values.len() != spec.len() {
        return Err(parse_err(path, format!("expected {} rows, found {}", spec.len(), values.len())));
    }
    Ok(FieldGrid { spec, quantity, params, values })
}

#[derive(Serialize, Deserialize)]
struct GridDocument {
    generated_by: String,
    #[serde(flatten)]
    grid: FieldGrid,
}

pub fn grid_to_json(grid: &FieldGrid) -> String {
    let doc = GridDocument { generated_by: GENERATED_BY.to_string(), grid: grid.clone() };
    serde_json::to_string(&doc).expect("grid serialization cannot fail")
}

pub fn grid_from_json(text: &str, path: &Path) -> Result<FieldGrid> {
    let doc: GridDocument = serde_json::from_str(text).map_err(|e| parse_err(path, e.to_string()))?;
    let grid = doc.grid;
    grid.spec.validate().map_err(|e| parse_err(path, e.to_string()))?;
    if grid.values.len() != grid.spec.len() {
        return Err(parse_err(path, format!("expected {} values, found {}", grid.spec.len(), grid.values.len())));
    }
    Ok(grid)
}

pub fn grid_to_string(grid: &FieldGrid, format: Format) -> String {
    match format {
        Format::Csv => grid_to_csv(grid),
        Format::Json => grid_to_json(grid),
    }
}

/// Reads a grid file, choosing the parser by extension.
pub fn read_grid(path: &Path) -> Result<FieldGrid> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    match path.extension().and_then(|e| e.to_str()) {
        Some("json") => grid_from_json(&text, path),
        _ => grid_from_csv(&text, path),
    }
}

/// Companion file with `x,y,re,im,<abs2>` per cell. For densities the last
/// column is `|ψ|²`, which equals `|ρ|`; for other quantities it is
/// `|value|²`.
pub fn views_to_csv(grid: &FieldGrid) -> String {
    let density = matches!(grid.quantity, Quantity::Density | Quantity::CoherentDensity);
    let mut out = String::new();
    let _ = writeln!(out, "# views quantity={} generated_by={}", grid.quantity.as_str(), GENERATED_BY);
    let _ = writeln!(out, "x,y,re,im,{}", if density { "psi_abs2" } else { "abs2" });
    let spec = grid.spec;
    for j in 0..spec.ny {
        for i in 0..spec.nx {
            let v = grid.value(i, j);
            let last = if density { v.norm() } else { v.norm_sqr() };
            let _ = writeln!(out, "{},{},{},{},{}", num(spec.x(i)), num(spec.y(j)), num(v.re), num(v.im), num(last));
        }
    }
    out
}

/// Column-oriented numeric table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub table: String,
    pub meta: BTreeMap<String, String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(name: &str, columns: Vec<String>) -> Self {
        Self { table: name.to_string(), meta: BTreeMap::new(), columns, rows: Vec::new() }
    }

    pub fn with_meta(mut self, key: &str, value: impl ToString) -> Self {
        self.meta.insert(key.to_string(), value.to_string());
        self
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!("# table={}", self.table);
        for (k, v) in &self.meta {
            let _ = write!(out, " {k}={v}");
        }
        let _ = writeln!(out, " generated_by={GENERATED_BY}");
        let _ = writeln!(out, "{}", self.columns.join(","));
        for row in &self.rows {
            let _ = writeln!(out, "{}", row.iter().map(|&v| num(v)).collect::<Vec<_>>().join(","));
        }
        out
    }

    pub fn from_csv(text: &str, path: &Path) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .and_then(|l| l.strip_prefix("# "))
            .ok_or_else(|| parse_err(path, "missing '#' header line"))?;
        let mut table = String::new();
        let mut meta = BTreeMap::new();
        for token in header.split_whitespace() {
            let (k, v) = token.split_once('=').ok_or_else(|| parse_err(path, format!("bad header token {token:?}")))?;
            match k {
                "table" => table = v.to_string(),
                "generated_by" => {}
                _ => {
                    meta.insert(k.to_string(), v.to_string());
                }
            }
        }
        let columns: Vec<String> = lines
            .next()
            .ok_or_else(|| parse_err(path, "missing column line"))?
            .split(',')
            .map(str::to_string)
            .collect();
        let rows = lines
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                l.split(',')
                    .map(|f| f.trim().parse::<f64>())
                    .collect::<Result<Vec<f64>, _>>()
                    .map_err(|_| parse_err(path, format!("bad row {l:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if rows.iter().any(|r| r.len() != columns.len()) {
            return Err(parse_err(path, "row width does not match column count"));
        }
        Ok(Self { table, meta, columns, rows })
    }

    pub fn to_json(&self) -> String {
        let mut value = serde_json::to_value(self).expect("table serialization cannot fail");
        value["generated_by"] = serde_json::Value::from(GENERATED_BY);
        serde_json::to_string_pretty(&value).expect("table serialization cannot fail")
    }

    pub fn to_string(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ptosc_core::{sample_density, sample_glauber_density, EigenState};

    #[test]
    fn csv_header_layout() {
        let spec = GridSpec::new(-1.0, 1.0, -2.0, 2.0, 3, 5).unwrap();
        let grid = sample_density(&EigenState::new(1, 2, 1.5).unwrap(), &spec).unwrap();
        let csv = grid_to_csv(&grid);
        let first = csv.lines().next().unwrap();
        assert_eq!(
            first,
            format!(
                "# quantity=density n=1 m=2 N=- A=- theta=- lambda=1.5 nx=3 ny=5 x_min=-1 x_max=1 y_min=-2 y_max=2 generated_by={GENERATED_BY}"
            )
        );
        let second = csv.lines().nth(1).unwrap();
        assert!(second.starts_with("-1.0000000000000000e0,-2.0000000000000000e0,"));
        assert_eq!(csv.lines().count(), 1 + 15);
    }

    #[test]
    fn glauber_header_roundtrip() {
        let spec = GridSpec::new(-2.0, 2.0, -2.0, 2.0, 5, 5).unwrap();
        let g = GlauberSpec { beta_abs: 0.8, gamma_abs: 0.5, theta_x: 0.1, theta_y: -0.3, n_cutoff: 10 };
        let grid = sample_glauber_density(&g, 0.5, 1.25, TimeEvolution::PaperLiteralDecay, &spec).unwrap();
        let back = grid_from_csv(&grid_to_csv(&grid), Path::new("mem")).unwrap();
        assert_eq!(back, grid);
        let back = grid_from_json(&grid_to_json(&grid), Path::new("mem")).unwrap();
        assert_eq!(back, grid);
    }

    #[test]
    fn rejects_malformed() {
        let p = Path::new("mem");
        assert!(grid_from_csv("", p).is_err());
        assert!(grid_from_csv("quantity=density\n", p).is_err());
        let spec = GridSpec::new(-1.0, 1.0, -1.0, 1.0, 2, 2).unwrap();
        let grid = sample_density(&EigenState::new(0, 0, 0.0).unwrap(), &spec).unwrap();
        let csv = grid_to_csv(&grid);
        let truncated: String = csv.lines().take(3).map(|l| format!("{l}\n")).collect();
        assert!(grid_from_csv(&truncated, p).is_err());
        let swapped = csv.replacen("-1.0000000000000000e0,-1.0000000000000000e0", "1.0000000000000000e0,-1.0000000000000000e0", 1);
        assert!(grid_from_csv(&swapped, p).is_err());
    }

    #[test]
    fn table_roundtrip() {
        let mut t = Table::new("demo", vec!["a".into(), "b".into()]).with_meta("r", 1);
        t.rows.push(vec![0.1, -2.5e-300]);
        t.rows.push(vec![f64::MAX, 0.0]);
        let back = Table::from_csv(&t.to_csv(), Path::new("mem")).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.column("b").unwrap(), vec![-2.5e-300, 0.0]);
    }
}
