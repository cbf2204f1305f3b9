//! The deformed potential, the ΠT transform, the eigenfunctions and the
//! spectrum of the complexified 2D oscillator.
//!
//! With `x̃ = x + Λ/2` and `ỹ = y + iΛ/2` the Hamiltonian separates into two
//! shifted 1D oscillators, so
//!
//! ```text
//! ψ_nm(x, y) = H_n(x̃) H_m(ỹ) exp(-(x² + y² + Λ(x + iy))/2) / sqrt(2ⁿ 2ᵐ n! m! π)
//! ```
//!
//! with energy `n + m + 1` independent of `Λ`.

use std::f64::consts::{LN_2, PI};

use serde::{Deserialize, Serialize};

use crate::complexmath::{hermite_recurrence, log_factorial, ComplexScalar};
use crate::error::{Error, Result};

/// Largest quantum number supported per axis.
pub const MAX_QUANTUM_NUMBER: usize = 24;

/// Natural units. Every field is fixed to one, so `α = mω/ħ = 1` and the
/// coordinate shifts carry no `√α` factors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitsConvention {
    pub hbar: f64,
    pub mass: f64,
    pub omega: f64,
}

impl UnitsConvention {
    pub const NATURAL: UnitsConvention = UnitsConvention { hbar: 1.0, mass: 1.0, omega: 1.0 };

    pub fn alpha(&self) -> f64 {
        self.mass * self.omega / self.hbar
    }
}

impl Default for UnitsConvention {
    fn default() -> Self {
        Self::NATURAL
    }
}

/// Quantum numbers `(n, m)` and deformation strength `Λ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenState {
    n: usize,
    m: usize,
    lambda: f64,
}

pub(crate) fn check_lambda(lambda: f64) -> Result<()> {
    if !lambda.is_finite() || lambda < 0.0 {
        return Err(Error::domain("lambda", format!("{lambda} is not a finite nonnegative real")));
    }
    Ok(())
}

impl EigenState {
    pub fn new(n: usize, m: usize, lambda: f64) -> Result<Self> {
        if n > MAX_QUANTUM_NUMBER || m > MAX_QUANTUM_NUMBER {
            return Err(Error::QuantumNumber { n, m, max: MAX_QUANTUM_NUMBER });
        }
        check_lambda(lambda)?;
        Ok(Self { n, m, lambda })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Eigenvalue of the ΠT operator on this state, `(-1)^m`.
    pub fn pit_parity(&self) -> f64 {
        if self.m.is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    }

    /// `ψ_nm(x, y)`; `y` may be complex so the same routine serves the real
    /// plane and the shifted contour.
    pub fn eval(&self, x: f64, y: ComplexScalar) -> ComplexScalar {
        let lambda = self.lambda;
        let hx = hermite_recurrence(ComplexScalar::new(x + 0.5 * lambda, 0.0), self.n)[self.n];
        let hy = hermite_recurrence(y + ComplexScalar::new(0.0, 0.5 * lambda), self.m)[self.m];
        let exponent = -0.5 * (x * x + y * y + lambda * (x + ComplexScalar::i() * y));
        let log_norm = -0.5
            * ((self.n + self.m) as f64 * LN_2
                + log_factorial(self.n).expect("n bounded by MAX_QUANTUM_NUMBER")
                + log_factorial(self.m).expect("m bounded by MAX_QUANTUM_NUMBER")
                + PI.ln());
        hx * hy * (exponent + log_norm).exp()
    }

    /// Normalized x factor `X_n(x) = H_n(x̃) e^{-x̃²/2} / sqrt(2ⁿ n! √π)`.
    pub fn x_factor(&self, x: f64) -> f64 {
        let xt = x + 0.5 * self.lambda;
        let h = hermite_recurrence(ComplexScalar::new(xt, 0.0), self.n)[self.n].re;
        h * (-0.5 * xt * xt - 0.5 * axis_log_norm(self.n)).exp()
    }

    /// Normalized y factor `Y_m(y) = H_m(ỹ) e^{-ỹ²/2} / sqrt(2ᵐ m! √π)` with
    /// `ỹ = y + iΛ/2`.
    pub fn y_factor(&self, y: ComplexScalar) -> ComplexScalar {
        let yt = y + ComplexScalar::new(0.0, 0.5 * self.lambda);
        let h = hermite_recurrence(yt, self.m)[self.m];
        h * (-0.5 * yt * yt - 0.5 * axis_log_norm(self.m)).exp()
    }
}

/// `ln(2ᵏ k! √π)`.
fn axis_log_norm(k: usize) -> f64 {
    k as f64 * LN_2 + log_factorial(k).expect("bounded quantum number") + 0.5 * PI.ln()
}

/// Separated energies in units of `ħω`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyPair {
    pub ex: f64,
    pub ey: f64,
    pub total: f64,
}

pub fn energy(state: &EigenState) -> EnergyPair {
    let ex = state.n as f64 + 0.5;
    let ey = state.m as f64 + 0.5;
    EnergyPair { ex, ey, total: ex + ey }
}

pub fn eval_eigenstate(state: &EigenState, x: f64, y: ComplexScalar) -> ComplexScalar {
    state.eval(x, y)
}

/// `V(x, y) = (Λ(x + iy) + x² + y²) / 2`.
pub fn potential_cartesian(x: f64, y: f64, lambda: f64) -> ComplexScalar {
    ComplexScalar::new(0.5 * (lambda * x + x * x + y * y), 0.5 * lambda * y)
}

/// `|Λ r e^{iφ} + r²|`, the polar potential divided by `mω²/2`.
pub fn potential_polar_magnitude(r: f64, phi: f64, lambda: f64) -> Result<f64> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::domain("r", format!("radius must be positive and finite, got {r}")));
    }
    Ok(r * (r * r + 2.0 * lambda * r * phi.cos() + lambda * lambda).max(0.0).sqrt())
}

/// ΠT acting on a function of `(x, y)`: `g(x, y) = conj(f(x, -conj(y)))`.
///
/// On the real plane this is `conj(f(x, -y))`. Writing it through
/// `-conj(y)` keeps `g` analytic in `y`, so it can be evaluated on the
/// shifted contour as well.
pub fn pit_transform<F>(f: F) -> impl Fn(f64, ComplexScalar) -> ComplexScalar
where
    F: Fn(f64, ComplexScalar) -> ComplexScalar,
{
    move |x, y| f(x, -y.conj()).conj()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn real(y: f64) -> ComplexScalar {
        ComplexScalar::new(y, 0.0)
    }

    fn grid21() -> impl Iterator<Item = (f64, f64)> {
        (0..21).flat_map(|i| (0..21).map(move |j| (-3.0 + 0.3 * i as f64, -3.0 + 0.3 * j as f64)))
    }

    #[test]
    fn units() {
        assert_eq!(UnitsConvention::default().alpha(), 1.0);
    }

    #[test]
    fn state_validation() {
        assert!(EigenState::new(24, 24, 0.0).is_ok());
        assert_eq!(EigenState::new(25, 0, 1.0), Err(Error::QuantumNumber { n: 25, m: 0, max: 24 }));
        assert!(EigenState::new(0, 0, f64::NAN).is_err());
        assert!(EigenState::new(0, 0, f64::INFINITY).is_err());
        assert!(EigenState::new(0, 0, -0.5).is_err());
    }

    #[test]
    fn potential_examples() {
        assert_eq!(potential_cartesian(1.0, 0.0, 0.0), ComplexScalar::new(0.5, 0.0));
        assert_eq!(potential_cartesian(0.0, 1.0, 2.0), ComplexScalar::new(0.5, 1.0));
        assert_eq!(potential_cartesian(1.0, 1.0, 1.0), ComplexScalar::new(1.5, 0.5));
    }

    #[test]
    fn polar_magnitude_examples() {
        for k in 0..16 {
            let phi = k as f64 * 0.4;
            assert_relative_eq!(potential_polar_magnitude(1.0, phi, 0.0).unwrap(), 1.0, epsilon = 1e-15);
        }
        assert!(potential_polar_magnitude(1.0, PI, 1.0).unwrap().abs() < 1e-15);
        assert_relative_eq!(potential_polar_magnitude(1.0, 0.0, 3.0).unwrap(), 4.0, epsilon = 1e-15);
        assert!(potential_polar_magnitude(0.0, 0.0, 1.0).is_err());
        assert!(potential_polar_magnitude(-1.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn polar_matches_cartesian() {
        for &lambda in &[0.0, 0.5, 1.0, 2.0, 3.0] {
            for k in 0..12 {
                let (r, phi) = (0.3 + 0.2 * k as f64, 0.55 * k as f64);
                let v = 2.0 * potential_cartesian(r * phi.cos(), r * phi.sin(), lambda);
                assert_relative_eq!(
                    potential_polar_magnitude(r, phi, lambda).unwrap(),
                    v.norm(),
                    max_relative = 1e-13
                );
            }
        }
    }

    #[test]
    fn potential_is_pit_invariant() {
        for &lambda in &[0.0, 0.5, 1.5, 3.0] {
            let v = |x: f64, y: ComplexScalar| potential_cartesian(x, y.re, lambda);
            let g = pit_transform(v);
            for (x, y) in grid21() {
                assert!((g(x, real(y)) - v(x, real(y))).norm() <= 1e-14);
            }
        }
    }

    #[test]
    fn potential_is_not_pt_symmetric() {
        // PT: (x, y) -> (-x, -y) with conjugation.
        let lambda = 1.0;
        let pt = potential_cartesian(-1.0, 0.0, lambda).conj();
        let v = potential_cartesian(1.0, 0.0, lambda);
        assert_relative_eq!((v - pt).norm(), 1.0, epsilon = 1e-15);
        // the full potential (mω² = 1 factor of two) differs by Λ·2x = 2
        assert_relative_eq!((2.0 * (v - pt)).norm(), 2.0, epsilon = 1e-15);
    }

    #[test]
    fn eigenstate_examples() {
        let s = EigenState::new(0, 0, 0.0).unwrap();
        assert_relative_eq!(s.eval(0.0, real(0.0)).re, 1.0 / PI.sqrt(), max_relative = 1e-15);
        assert_eq!(s.eval(0.0, real(0.0)).im, 0.0);

        let s = EigenState::new(1, 0, 0.0).unwrap();
        assert_eq!(s.eval(0.0, real(0.0)).norm(), 0.0);

        // On the contour y = u - iΛ/2 the ground state is a real Gaussian.
        for &lambda in &[0.5, 1.5, 3.0] {
            let s = EigenState::new(0, 0, lambda).unwrap();
            for &(x, u) in &[(0.0, 0.0), (0.7, -1.2), (-2.0, 0.4)] {
                let v = s.eval(x, ComplexScalar::new(u, -0.5 * lambda));
                let xt: f64 = x + 0.5 * lambda;
                let expect = (-(xt * xt + u * u) / 2.0).exp() / PI.sqrt();
                assert!(v.re > 0.0);
                assert_relative_eq!(v.re, expect, max_relative = 1e-13);
                assert!(v.im.abs() <= 1e-15 * v.re);
            }
        }
    }

    #[test]
    fn energy_examples() {
        let e = energy(&EigenState::new(0, 0, 0.0).unwrap());
        assert_eq!((e.ex, e.ey, e.total), (0.5, 0.5, 1.0));
        assert_eq!(energy(&EigenState::new(1, 2, 0.0).unwrap()).total, 4.0);
        assert_eq!(
            energy(&EigenState::new(0, 1, 3.0).unwrap()),
            energy(&EigenState::new(0, 1, 0.0).unwrap())
        );
    }

    #[test]
    fn pit_eigenrelation() {
        for n in 0..=6 {
            for m in 0..=6 {
                for &lambda in &[0.0, 0.5, 1.5, 3.0] {
                    let s = EigenState::new(n, m, lambda).unwrap();
                    let psi = |x: f64, y: ComplexScalar| s.eval(x, y);
                    let g = pit_transform(psi);
                    let max = grid21().map(|(x, y)| psi(x, real(y)).norm()).fold(0.0, f64::max);
                    for (x, y) in grid21() {
                        let diff = g(x, real(y)) - s.pit_parity() * psi(x, real(y));
                        assert!(diff.norm() <= 1e-10 * max, "n={n} m={m} Λ={lambda}");
                    }
                }
            }
        }
    }

    #[test]
    fn pit_examples() {
        let s00 = EigenState::new(0, 0, 0.0).unwrap();
        let g = pit_transform(|x, y| s00.eval(x, y));
        assert_eq!(g(0.4, real(-0.9)), s00.eval(0.4, real(-0.9)));

        let s01 = EigenState::new(0, 1, 1.3).unwrap();
        let g = pit_transform(|x, y| s01.eval(x, y));
        let (a, b) = (g(0.4, real(-0.9)), -s01.eval(0.4, real(-0.9)));
        assert!((a - b).norm() <= 1e-15 * b.norm());
    }

    #[test]
    fn separable_factors_match() {
        for n in 0..=8 {
            for m in 0..=8 {
                for &lambda in &[0.0, 1.0, 2.5] {
                    let s = EigenState::new(n, m, lambda).unwrap();
                    for (x, y) in grid21() {
                        let direct = s.eval(x, real(y));
                        let product = s.x_factor(x) * s.y_factor(real(y));
                        assert!(
                            (direct - product).norm() <= 1e-12 * direct.norm().max(1e-300),
                            "n={n} m={m} Λ={lambda} ({x},{y}): {direct} vs {product}"
                        );
                    }
                }
            }
        }
    }

    /// Five-point Laplacian oracle: `-∇²ψ/2 + Vψ` must equal `(n+m+1)ψ`.
    #[test]
    fn schrodinger_residual() {
        let h = 1e-3;
        for n in 0..=3 {
            for m in 0..=3 {
                for &lambda in &[0.0, 1.0] {
                    let s = EigenState::new(n, m, lambda).unwrap();
                    let psi = |x: f64, y: f64| s.eval(x, real(y));
                    let e = energy(&s).total;
                    let pts: Vec<(f64, f64)> = (1..20)
                        .flat_map(|i| (1..20).map(move |j| (-2.0 + 0.2 * i as f64, -2.0 + 0.2 * j as f64)))
                        .collect();
                    let max = pts.iter().map(|&(x, y)| psi(x, y).norm()).fold(0.0, f64::max);
                    for &(x, y) in &pts {
                        let c = psi(x, y);
                        let lap = (psi(x + h, y) + psi(x - h, y) + psi(x, y + h) + psi(x, y - h) - 4.0 * c)
                            / (h * h);
                        let residual = -0.5 * lap + potential_cartesian(x, y, lambda) * c - e * c;
                        assert!(residual.norm() <= 1e-4 * max, "n={n} m={m} Λ={lambda}");
                    }
                }
            }
        }
    }
}
