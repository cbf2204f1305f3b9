//! Sampling of wavefunctions, densities and potential magnitudes onto
//! rectangular grids.
//!
//! Values are stored row-major with `y` outer and `x` inner: the value at
//! `(x_i, y_j)` sits at index `j * nx + i`. Densities are `ψ²` (not `|ψ|²`)
//! and stay complex; [`view`] extracts the real, imaginary or squared
//! magnitude part on demand.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coherent::{self, CoherentSpec, GlauberSpec, TimeEvolution};
use crate::complexmath::ComplexScalar;
use crate::error::{Error, Result};
use crate::oscillator::{check_lambda, potential_cartesian, EigenState};
use crate::quadrature::simpson_weights;

/// Inclusive-endpoint sampling lattice.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub nx: usize,
    pub ny: usize,
}

impl Default for GridSpec {
    /// `[-5, 5]²` at 201 × 201.
    fn default() -> Self {
        Self { x_min: -5.0, x_max: 5.0, y_min: -5.0, y_max: 5.0, nx: 201, ny: 201 }
    }
}

impl GridSpec {
    pub fn new(x_min: f64, x_max: f64, y_min: f64, y_max: f64, nx: usize, ny: usize) -> Result<Self> {
        let spec = Self { x_min, x_max, y_min, y_max, nx, ny };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.x_min, self.x_max, self.y_min, self.y_max].iter().all(|v| v.is_finite());
        if !finite || !(self.x_min < self.x_max) || !(self.y_min < self.y_max) {
            return Err(Error::domain("grid", format!("bounds must be finite with min < max: {self:?}")));
        }
        if self.nx < 2 || self.ny < 2 {
            return Err(Error::domain("grid", format!("need at least 2 points per axis, got {}x{}", self.nx, self.ny)));
        }
        Ok(())
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / (self.nx - 1) as f64
    }

    pub fn dy(&self) -> f64 {
        (self.y_max - self.y_min) / (self.ny - 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        if i == self.nx - 1 {
            self.x_max
        } else {
            self.x_min + i as f64 * self.dx()
        }
    }

    pub fn y(&self, j: usize) -> f64 {
        if j == self.ny - 1 {
            self.y_max
        } else {
            self.y_min + j as f64 * self.dy()
        }
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    Wavefunction,
    Density,
    CoherentDensity,
    PotentialAbs,
}

impl Quantity {
    pub fn as_str(&self) -> &'static str {
        match self {
            Quantity::Wavefunction => "wavefunction",
            Quantity::Density => "density",
            Quantity::CoherentDensity => "coherent_density",
            Quantity::PotentialAbs => "potential_abs",
        }
    }
}

impl std::str::FromStr for Quantity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "wavefunction" => Quantity::Wavefunction,
            "density" => Quantity::Density,
            "coherent_density" => Quantity::CoherentDensity,
            "potential_abs" => Quantity::PotentialAbs,
            other => return Err(Error::domain("quantity", format!("unknown quantity {other:?}"))),
        })
    }
}

/// Everything needed to regenerate a grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldParams {
    Eigen { n: usize, m: usize, lambda: f64 },
    Coherent { n_total: usize, amplitude: f64, theta: f64, lambda: f64 },
    Glauber { glauber: GlauberSpec, lambda: f64, t: f64, evolution: TimeEvolution },
    Potential { lambda: f64 },
}

impl FieldParams {
    pub fn lambda(&self) -> f64 {
        match *self {
            FieldParams::Eigen { lambda, .. }
            | FieldParams::Coherent { lambda, .. }
            | FieldParams::Glauber { lambda, .. }
            | FieldParams::Potential { lambda } => lambda,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldGrid {
    pub spec: GridSpec,
    pub quantity: Quantity,
    pub params: FieldParams,
    pub values: Vec<ComplexScalar>,
}

impl FieldGrid {
    pub fn value(&self, i: usize, j: usize) -> ComplexScalar {
        self.values[j * self.spec.nx + i]
    }

    /// Samples the grid again from `quantity` and `params`.
    pub fn resample(&self) -> Result<FieldGrid> {
        let spec = self.spec;
        match (self.quantity, self.params) {
            (Quantity::Wavefunction, FieldParams::Eigen { n, m, lambda }) => {
                sample_wavefunction(&EigenState::new(n, m, lambda)?, &spec)
            }
            (Quantity::Density, FieldParams::Eigen { n, m, lambda }) => {
                sample_density(&EigenState::new(n, m, lambda)?, &spec)
            }
            (Quantity::CoherentDensity, FieldParams::Coherent { n_total, amplitude, theta, lambda }) => {
                sample_coherent_density(&CoherentSpec::new(n_total, amplitude, theta, lambda)?, &spec)
            }
            (Quantity::CoherentDensity, FieldParams::Glauber { glauber, lambda, t, evolution }) => {
                sample_glauber_density(&glauber, lambda, t, evolution, &spec)
            }
            (Quantity::PotentialAbs, FieldParams::Potential { lambda }) => sample_potential_abs(lambda, &spec),
            (q, p) => Err(Error::domain("field", format!("quantity {} cannot be built from {p:?}", q.as_str()))),
        }
    }
}

fn sample<F>(spec: &GridSpec, f: F) -> Result<Vec<ComplexScalar>>
where
    F: Fn(f64, f64) -> ComplexScalar + Sync,
{
    spec.validate()?;
    let nx = spec.nx;
    let mut values = vec![ComplexScalar::new(0.0, 0.0); spec.len()];
    values.par_chunks_mut(nx).enumerate().for_each(|(j, row)| {
        let y = spec.y(j);
        for (i, v) in row.iter_mut().enumerate() {
            *v = f(spec.x(i), y);
        }
    });
    Ok(values)
}

pub fn sample_wavefunction(state: &EigenState, spec: &GridSpec) -> Result<FieldGrid> {
    let values = sample(spec, |x, y| state.eval(x, ComplexScalar::new(y, 0.0)))?;
    Ok(FieldGrid {
        spec: *spec,
        quantity: Quantity::Wavefunction,
        params: FieldParams::Eigen { n: state.n(), m: state.m(), lambda: state.lambda() },
        values,
    })
}

/// `ρ = ψ²` at real grid points.
pub fn sample_density(state: &EigenState, spec: &GridSpec) -> Result<FieldGrid> {
    let values = sample(spec, |x, y| {
        let psi = state.eval(x, ComplexScalar::new(y, 0.0));
        psi * psi
    })?;
    Ok(FieldGrid {
        spec: *spec,
        quantity: Quantity::Density,
        params: FieldParams::Eigen { n: state.n(), m: state.m(), lambda: state.lambda() },
        values,
    })
}

/// `Φ_N²` at real grid points.
pub fn sample_coherent_density(spec_c: &CoherentSpec, spec: &GridSpec) -> Result<FieldGrid> {
    let coeffs = coherent::coherent_coefficients(spec_c);
    let values = sample(spec, |x, y| {
        let phi = coherent::eval_with_coefficients(&coeffs, spec_c, x, ComplexScalar::new(y, 0.0));
        phi * phi
    })?;
    Ok(FieldGrid {
        spec: *spec,
        quantity: Quantity::CoherentDensity,
        params: FieldParams::Coherent {
            n_total: spec_c.n_total(),
            amplitude: spec_c.amplitude_ratio(),
            theta: spec_c.phase(),
            lambda: spec_c.lambda(),
        },
        values,
    })
}

/// Square of the time-evolved Glauber state at real grid points.
pub fn sample_glauber_density(
    glauber: &GlauberSpec,
    lambda: f64,
    t: f64,
    evolution: TimeEvolution,
    spec: &GridSpec,
) -> Result<FieldGrid> {
    check_lambda(lambda)?;
    let coeffs = coherent::evolve_coherent_with(glauber, t, evolution)?;
    let terms: Vec<(EigenState, ComplexScalar)> = coeffs
        .iter()
        .map(|((n, m), c)| Ok((EigenState::new(n, m, lambda)?, c)))
        .collect::<Result<_>>()?;
    let values = sample(spec, |x, y| {
        let y = ComplexScalar::new(y, 0.0);
        let psi: ComplexScalar = terms.iter().map(|(s, c)| c * s.eval(x, y)).sum();
        psi * psi
    })?;
    Ok(FieldGrid {
        spec: *spec,
        quantity: Quantity::CoherentDensity,
        params: FieldParams::Glauber { glauber: *glauber, lambda, t, evolution },
        values,
    })
}

/// `|V(x, y)|` stored as a real-valued complex grid.
pub fn sample_potential_abs(lambda: f64, spec: &GridSpec) -> Result<FieldGrid> {
    check_lambda(lambda)?;
    let values = sample(spec, |x, y| ComplexScalar::new(potential_cartesian(x, y, lambda).norm(), 0.0))?;
    Ok(FieldGrid { spec: *spec, quantity: Quantity::PotentialAbs, params: FieldParams::Potential { lambda }, values })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum View {
    Re,
    Im,
    Abs2,
}

/// Real-valued grid with the same layout as [`FieldGrid::values`].
#[derive(Debug, Clone, PartialEq)]
pub struct RealField {
    pub spec: GridSpec,
    pub data: Vec<f64>,
}

impl RealField {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[j * self.spec.nx + i]
    }

    pub fn min(&self) -> f64 {
        self.data.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.data.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Grid indices `(i, j)` of the first maximum.
    pub fn argmax(&self) -> (usize, usize) {
        let (idx, _) = self
            .data
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (k, &v)| if v > best.1 { (k, v) } else { best });
        (idx % self.spec.nx, idx / self.spec.nx)
    }

    /// Two dimensional composite Simpson sum over the grid rectangle.
    pub fn simpson_integral(&self) -> Result<f64> {
        let (nx, ny) = (self.spec.nx, self.spec.ny);
        if nx % 2 == 0 || ny % 2 == 0 || nx < 3 || ny < 3 {
            return Err(Error::Resolution { reason: format!("Simpson needs odd point counts, got {nx}x{ny}") });
        }
        let wx = simpson_weights(nx, self.spec.dx());
        let wy = simpson_weights(ny, self.spec.dy());
        Ok(wy
            .iter()
            .enumerate()
            .map(|(j, &w)| w * self.data[j * nx..(j + 1) * nx].iter().zip(&wx).map(|(v, w)| v * w).sum::<f64>())
            .sum())
    }

    /// Number of strict interior local maxima (8-neighbour) above
    /// `threshold`.
    pub fn local_maxima(&self, threshold: f64) -> usize {
        let (nx, ny) = (self.spec.nx, self.spec.ny);
        let mut count = 0;
        for j in 1..ny.saturating_sub(1) {
            for i in 1..nx.saturating_sub(1) {
                let v = self.get(i, j);
                if v <= threshold {
                    continue;
                }
                let is_peak = (-1i64..=1).all(|dj| {
                    (-1i64..=1).all(|di| {
                        (di == 0 && dj == 0) || self.get((i as i64 + di) as usize, (j as i64 + dj) as usize) < v
                    })
                });
                if is_peak {
                    count += 1;
                }
            }
        }
        count
    }
}

pub fn view(grid: &FieldGrid, which: View) -> RealField {
    let data = grid
        .values
        .iter()
        .map(|v| match which {
            View::Re => v.re,
            View::Im => v.im,
            View::Abs2 => v.norm_sqr(),
        })
        .collect();
    RealField { spec: grid.spec, data }
}
