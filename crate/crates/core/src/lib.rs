//! Numerical core for a two dimensional harmonic oscillator whose potential
//! carries a complex linear term, `V = (Λ(x + iy) + x² + y²) / 2`.
//!
//! The Hamiltonian is not Hermitian, but it is invariant under the combined
//! phase reflection `y → -y` and complex conjugation (called ΠT here). Its
//! spectrum is real and equal to that of the ordinary isotropic oscillator,
//! while the eigenfunctions are complex. This crate provides:
//!
//! * [`complexmath`]: physicists' Hermite polynomials over complex arguments
//!   and log-space factorials.
//! * [`oscillator`]: the potential, the ΠT transform, the eigenfunctions and
//!   the energy spectrum.
//! * [`quadrature`]: Gauss–Hermite rules, the indefinite ΠT inner product,
//!   the CΠT norm evaluated on the shifted contour `Im y = -Λ/2`, and a
//!   direct real-plane Simpson route used as an independent check.
//! * [`coherent`]: fixed-N binomial coherent states, Glauber coefficients,
//!   their time evolution and the classical trajectories.
//! * [`fields`]: sampling of wavefunctions and densities onto rectangular
//!   grids.
//!
//! All quantities use natural units `ħ = m = ω = 1`.

pub mod coherent;
pub mod complexmath;
pub mod error;
pub mod fields;
pub mod oscillator;
pub mod quadrature;

pub use coherent::{
    classical_trajectory, coherent_coefficients, coherent_cpt_norm, eval_coherent,
    evolve_coherent, evolve_coherent_with, glauber_coefficients, ClassicalTrajectory,
    CoherentSpec, FockCoefficients, GlauberSpec, TimeEvolution,
};
pub use complexmath::{hermite_eval, log_factorial, ComplexScalar, HermiteSequence};
pub use error::{Error, Result};
pub use fields::{
    sample_coherent_density, sample_density, sample_glauber_density, sample_potential_abs,
    sample_wavefunction, view, FieldGrid, FieldParams, GridSpec, Quantity, RealField, View,
};
pub use oscillator::{
    energy, eval_eigenstate, pit_transform, potential_cartesian, potential_polar_magnitude,
    EigenState, EnergyPair, UnitsConvention,
};
pub use quadrature::{
    cpt_inner_product, cpt_norm, gauss_hermite, pit_inner_product, real_plane_density_integrals,
    NormMethod, NormReport, QuadratureRule, DEFAULT_QUAD_ORDER,
};
