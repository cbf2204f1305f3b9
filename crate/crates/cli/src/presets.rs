//! Parameter sets behind the figure presets.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use ptosc_core::GridSpec;

pub const FIG1_LAMBDAS: [f64; 5] = [0.0, 0.5, 1.0, 2.0, 3.0];
pub const FIG1_R: f64 = 1.0;
pub const FIG1_PHI_SAMPLES: usize = 361;

/// `(n, m)` panels, each drawn at every Λ of [`FIG2_LAMBDAS`].
pub const FIG2_STATES: [(usize, usize); 4] = [(0, 0), (0, 1), (1, 0), (1, 1)];
pub const FIG2_LAMBDAS: [f64; 2] = [0.0, 1.5];

pub const FIG3_LAMBDAS: [f64; 5] = [0.0, 0.5, 1.0, 1.5, 2.0];
pub const FIG3_XS: [f64; 2] = [0.0, 1.0];
pub const FIG3_Y_RANGE: (f64, f64, usize) = (-5.0, 5.0, 401);

pub const FIG4_N: usize = 3;
pub const FIG5_N: usize = 12;
/// `(A, θ)` pairs swept by the coherent presets.
pub const COHERENT_SHAPES: [(f64, f64); 3] = [(1.0, FRAC_PI_2), (2.0, FRAC_PI_2), (1.0, FRAC_PI_4)];
pub const COHERENT_LAMBDAS: [f64; 3] = [0.0, 1.5, 3.0];

pub fn fig2_panels() -> Vec<(usize, usize, f64)> {
    FIG2_STATES
        .iter()
        .flat_map(|&(n, m)| FIG2_LAMBDAS.iter().map(move |&l| (n, m, l)))
        .collect()
}

/// `(N, A, θ, Λ)` for one coherent preset.
pub fn coherent_panels(n_total: usize) -> Vec<(usize, f64, f64, f64)> {
    COHERENT_SHAPES
        .iter()
        .flat_map(|&(a, th)| COHERENT_LAMBDAS.iter().map(move |&l| (n_total, a, th, l)))
        .collect()
}

/// Wider window for the N = 12 states, whose ring sits near radius 5.
pub fn fig5_grid() -> GridSpec {
    GridSpec { x_min: -8.0, x_max: 8.0, y_min: -8.0, y_max: 8.0, nx: 321, ny: 321 }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn panel_counts() {
        assert_eq!(fig2_panels().len(), 8);
        assert_eq!(coherent_panels(FIG4_N).len(), 9);
        fig5_grid().validate().unwrap();
    }
}
