//! Coherent states: the fixed-N binomial superposition `Φ_N`, Glauber
//! coefficients and their time evolution, and classical trajectories.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::complexmath::{log_binomial, log_factorial, ComplexScalar};
use crate::error::{Error, Result};
use crate::oscillator::{check_lambda, EigenState, MAX_QUANTUM_NUMBER};
use crate::quadrature::{contour_integral, NormMethod, NormReport, QuadratureRule};

/// Parameters of `Φ_N = (1+A²)^{-N/2} Σ_K C(N,K)^{1/2} (A e^{iθ})^K ψ_{K,N-K}`.
///
/// `A` is the nonnegative modulus of `β/γ`; the relative phase lives
/// entirely in `θ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoherentSpec {
    n_total: usize,
    amplitude_ratio: f64,
    phase: f64,
    lambda: f64,
}

impl CoherentSpec {
    pub fn new(n_total: usize, amplitude_ratio: f64, phase: f64, lambda: f64) -> Result<Self> {
        if n_total > MAX_QUANTUM_NUMBER {
            return Err(Error::QuantumNumber { n: n_total, m: 0, max: MAX_QUANTUM_NUMBER });
        }
        if !amplitude_ratio.is_finite() || amplitude_ratio < 0.0 {
            return Err(Error::domain(
                "amplitude ratio",
                format!("{amplitude_ratio} is not a finite nonnegative real"),
            ));
        }
        if !phase.is_finite() {
            return Err(Error::domain("phase", format!("{phase} is not finite")));
        }
        check_lambda(lambda)?;
        Ok(Self { n_total, amplitude_ratio, phase, lambda })
    }

    pub fn n_total(&self) -> usize {
        self.n_total
    }

    pub fn amplitude_ratio(&self) -> f64 {
        self.amplitude_ratio
    }

    pub fn phase(&self) -> f64 {
        self.phase
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Same state with `θ → -θ`, i.e. with conjugated coefficients.
    pub fn conjugate_phase(&self) -> Self {
        Self { phase: -self.phase, ..*self }
    }

    /// Component states `ψ_{K, N-K}` for `K = 0..=N`.
    pub fn components(&self) -> impl Iterator<Item = EigenState> + '_ {
        (0..=self.n_total).map(move |k| {
            EigenState::new(k, self.n_total - k, self.lambda).expect("validated at construction")
        })
    }
}

/// `c_K = (1+A²)^{-N/2} C(N,K)^{1/2} (A e^{iθ})^K`, `K = 0..=N`.
pub fn coherent_coefficients(spec: &CoherentSpec) -> Vec<ComplexScalar> {
    let n = spec.n_total;
    let a = spec.amplitude_ratio;
    let log_scale = -0.5 * n as f64 * (1.0 + a * a).ln();
    (0..=n)
        .map(|k| {
            if k > 0 && a == 0.0 {
                return ComplexScalar::new(0.0, 0.0);
            }
            let log_binom = log_binomial(n, k).expect("n bounded by MAX_QUANTUM_NUMBER");
            let log_mod = log_scale + 0.5 * log_binom + if k == 0 { 0.0 } else { k as f64 * a.ln() };
            ComplexScalar::from_polar(log_mod.exp(), k as f64 * spec.phase)
        })
        .collect()
}

/// `Φ_N(x, y)` at a real or contour point.
pub fn eval_coherent(spec: &CoherentSpec, x: f64, y: ComplexScalar) -> ComplexScalar {
    coherent_coefficients(spec)
        .into_iter()
        .zip(spec.components())
        .map(|(c, state)| c * state.eval(x, y))
        .sum()
}

/// Evaluates with precomputed coefficients; used by grid sampling.
pub(crate) fn eval_with_coefficients(
    coeffs: &[ComplexScalar],
    spec: &CoherentSpec,
    x: f64,
    y: ComplexScalar,
) -> ComplexScalar {
    coeffs.iter().zip(spec.components()).map(|(&c, state)| c * state.eval(x, y)).sum()
}

/// `∫dx ∫_C dy (CΠTΦ_N) Φ_N`.
///
/// `CΠTΦ_N` is `Φ_N` with `θ → -θ` and each component replaced by
/// `CΠTψ_{K,N-K}`, which equals `ψ_{K,N-K}` on the contour.
pub fn coherent_cpt_norm(spec: &CoherentSpec, rule: &QuadratureRule) -> Result<NormReport> {
    let required = spec.n_total + 4;
    if rule.order() < required {
        return Err(Error::Exactness { order: rule.order(), required });
    }
    let coeffs = coherent_coefficients(spec);
    let conj_spec = spec.conjugate_phase();
    let conj_coeffs = coherent_coefficients(&conj_spec);
    let total = contour_integral(rule, spec.lambda, |x, y| {
        let cpt_phi = eval_with_coefficients(&conj_coeffs, &conj_spec, x, y);
        cpt_phi * eval_with_coefficients(&coeffs, spec, x, y)
    });
    Ok(NormReport {
        real_part: total.re,
        imag_part: total.im,
        method: NormMethod::ContourShift,
        order_used: rule.order(),
        estimated_error: 4.0 * f64::EPSILON * (rule.order() * (spec.n_total + 1)) as f64,
    })
}

/// Product of two 1D Glauber states `|β⟩|γ⟩` expanded in `ψ_nm`, truncated
/// to `n + m ≤ n_cutoff`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GlauberSpec {
    pub beta_abs: f64,
    pub gamma_abs: f64,
    pub theta_x: f64,
    pub theta_y: f64,
    pub n_cutoff: usize,
}

/// Largest tolerated probability mass beyond the cutoff.
pub const GLAUBER_TAIL_LIMIT: f64 = 1e-8;

pub const DEFAULT_GLAUBER_CUTOFF: usize = 12;

impl GlauberSpec {
    pub fn beta(&self) -> ComplexScalar {
        ComplexScalar::from_polar(self.beta_abs, self.theta_x)
    }

    pub fn gamma(&self) -> ComplexScalar {
        ComplexScalar::from_polar(self.gamma_abs, self.theta_y)
    }

    /// `e^{-s} Σ_{N > cutoff} s^N / N!` with `s = |β|² + |γ|²`: the shells
    /// of the double series are Poisson weighted by the binomial theorem.
    pub fn tail_mass(&self) -> f64 {
        let s = self.beta_abs * self.beta_abs + self.gamma_abs * self.gamma_abs;
        if s == 0.0 {
            return 0.0;
        }
        let mut tail = 0.0;
        let mut n = self.n_cutoff + 1;
        loop {
            let log_term = -s + n as f64 * s.ln() - ln_gamma_int(n + 1);
            let term = log_term.exp();
            tail += term;
            if (n as f64 > s && term <= 1e-18 * tail.max(f64::MIN_POSITIVE)) || n > 10_000 {
                break;
            }
            n += 1;
        }
        tail
    }

    fn validate(&self) -> Result<()> {
        for (name, v) in [("|β|", self.beta_abs), ("|γ|", self.gamma_abs)] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::domain("glauber amplitude", format!("{name} = {v}")));
            }
        }
        if !self.theta_x.is_finite() || !self.theta_y.is_finite() {
            return Err(Error::domain("glauber phase", "phases must be finite"));
        }
        if self.n_cutoff > MAX_QUANTUM_NUMBER {
            return Err(Error::QuantumNumber { n: self.n_cutoff, m: 0, max: MAX_QUANTUM_NUMBER });
        }
        let tail = self.tail_mass();
        if tail >= GLAUBER_TAIL_LIMIT {
            return Err(Error::Truncation { cutoff: self.n_cutoff, tail, limit: GLAUBER_TAIL_LIMIT });
        }
        Ok(())
    }
}

/// `ln((n-1)!)` for the Poisson tail, which may run past the factorial table.
fn ln_gamma_int(n: usize) -> f64 {
    (2..n).map(|k| (k as f64).ln()).sum()
}

/// Coefficients of `ψ_nm` keyed by `(n, m)`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct FockCoefficients {
    map: BTreeMap<(usize, usize), ComplexScalar>,
}

impl FockCoefficients {
    pub fn get(&self, n: usize, m: usize) -> Option<ComplexScalar> {
        self.map.get(&(n, m)).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), ComplexScalar)> + '_ {
        self.map.iter().map(|(&k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// `Σ |c_nm|²`.
    pub fn norm_sqr(&self) -> f64 {
        self.map.values().map(|c| c.norm_sqr()).sum()
    }

    /// `Σ c_nm ψ_nm(x, y)` with every component at deformation `lambda`.
    pub fn eval(&self, lambda: f64, x: f64, y: ComplexScalar) -> Result<ComplexScalar> {
        let mut total = ComplexScalar::new(0.0, 0.0);
        for (&(n, m), &c) in &self.map {
            total += c * EigenState::new(n, m, lambda)?.eval(x, y);
        }
        Ok(total)
    }
}

/// `c_nm = e^{-(|β|²+|γ|²)/2} βⁿ γᵐ / sqrt(n! m!)` for `n + m ≤ n_cutoff`.
pub fn glauber_coefficients(spec: &GlauberSpec) -> Result<FockCoefficients> {
    spec.validate()?;
    let (b, g) = (spec.beta_abs, spec.gamma_abs);
    let log_pref = -0.5 * (b * b + g * g);
    let mut map = BTreeMap::new();
    for total in 0..=spec.n_cutoff {
        for n in 0..=total {
            let m = total - n;
            let c = if (n > 0 && b == 0.0) || (m > 0 && g == 0.0) {
                ComplexScalar::new(0.0, 0.0)
            } else {
                let log_mod = log_pref + n as f64 * safe_ln(b, n) + m as f64 * safe_ln(g, m)
                    - 0.5 * (log_factorial(n)? + log_factorial(m)?);
                let arg = n as f64 * spec.theta_x + m as f64 * spec.theta_y;
                ComplexScalar::from_polar(log_mod.exp(), arg)
            };
            map.insert((n, m), c);
        }
    }
    Ok(FockCoefficients { map })
}

fn safe_ln(v: f64, power: usize) -> f64 {
    if power == 0 {
        0.0
    } else {
        v.ln()
    }
}

/// How each energy shell picks up time dependence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TimeEvolution {
    /// `e^{-i(N+1)t}`, the Schrödinger phase of energy `N + 1`.
    #[default]
    Unitary,
    /// `e^{-(N+1)t}`, the real exponential as typeset in the source
    /// derivation. Kept for comparison; it does not preserve the norm.
    PaperLiteralDecay,
}

/// Glauber coefficients at time `t`, regrouped by shell `N = n + m`.
pub fn evolve_coherent(spec: &GlauberSpec, t: f64) -> Result<FockCoefficients> {
    evolve_coherent_with(spec, t, TimeEvolution::Unitary)
}

pub fn evolve_coherent_with(spec: &GlauberSpec, t: f64, mode: TimeEvolution) -> Result<FockCoefficients> {
    if !t.is_finite() {
        return Err(Error::domain("time", format!("{t} is not finite")));
    }
    let base = glauber_coefficients(spec)?;
    let mut map = BTreeMap::new();
    for shell in 0..=spec.n_cutoff {
        let factor = shell_factor(shell, t, mode);
        for k in 0..=shell {
            let key = (k, shell - k);
            let c = base.map[&key];
            map.insert(key, factor.map_or(c, |f| c * f));
        }
    }
    Ok(FockCoefficients { map })
}

/// `None` means the factor is exactly one.
fn shell_factor(shell: usize, t: f64, mode: TimeEvolution) -> Option<ComplexScalar> {
    let energy = (shell + 1) as f64;
    match mode {
        TimeEvolution::Unitary => {
            // Reduce the phase in turns so whole periods give exactly 1.
            let turns = (energy * (t / TAU)).rem_euclid(1.0);
            if turns == 0.0 {
                None
            } else {
                Some(ComplexScalar::from_polar(1.0, -TAU * turns))
            }
        }
        TimeEvolution::PaperLiteralDecay => {
            if t == 0.0 {
                None
            } else {
                Some(ComplexScalar::new((-energy * t).exp(), 0.0))
            }
        }
    }
}

/// Sampled classical motion `x̃(t) = |β| sqrt(1/2) cos(t - θx)`,
/// `ỹ(t) = |γ| sqrt(1/2) cos(t - θy)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassicalTrajectory {
    pub times: Vec<f64>,
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
}

pub fn classical_position(beta_abs: f64, gamma_abs: f64, theta_x: f64, theta_y: f64, t: f64) -> (f64, f64) {
    let amp = std::f64::consts::FRAC_1_SQRT_2;
    (beta_abs * amp * (t - theta_x).cos(), gamma_abs * amp * (t - theta_y).cos())
}

/// `steps` equally spaced samples on `[0, t_max]`.
pub fn classical_trajectory(
    beta_abs: f64,
    gamma_abs: f64,
    theta_x: f64,
    theta_y: f64,
    t_max: f64,
    steps: usize,
) -> Result<ClassicalTrajectory> {
    if steps < 2 {
        return Err(Error::domain("steps", format!("need at least 2 samples, got {steps}")));
    }
    if !t_max.is_finite() {
        return Err(Error::domain("t_max", format!("{t_max} is not finite")));
    }
    let dt = t_max / (steps - 1) as f64;
    let times: Vec<f64> = (0..steps).map(|i| i as f64 * dt).collect();
    let (xs, ys) = times
        .iter()
        .map(|&t| classical_position(beta_abs, gamma_abs, theta_x, theta_y, t))
        .unzip();
    Ok(ClassicalTrajectory { times, xs, ys })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oscillator::pit_transform;
    use crate::quadrature::{gauss_hermite, DEFAULT_QUAD_ORDER};
    use approx::assert_relative_eq;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn real(y: f64) -> ComplexScalar {
        ComplexScalar::new(y, 0.0)
    }

    #[test]
    fn coefficient_examples() {
        let c = coherent_coefficients(&CoherentSpec::new(0, 1.3, 0.2, 1.0).unwrap());
        assert_eq!(c, vec![ComplexScalar::new(1.0, 0.0)]);

        let c = coherent_coefficients(&CoherentSpec::new(1, 1.0, 0.0, 0.0).unwrap());
        let s = 0.5f64.sqrt();
        assert_eq!(c.len(), 2);
        for v in c {
            assert_relative_eq!(v.re, s, max_relative = 1e-15);
            assert_eq!(v.im, 0.0);
        }

        let c = coherent_coefficients(&CoherentSpec::new(2, 0.0, 0.4, 0.0).unwrap());
        assert_eq!(c, vec![ComplexScalar::new(1.0, 0.0), ComplexScalar::new(0.0, 0.0), ComplexScalar::new(0.0, 0.0)]);
    }

    #[test]
    fn spec_validation() {
        assert!(CoherentSpec::new(25, 1.0, 0.0, 0.0).is_err());
        assert!(CoherentSpec::new(3, -1.0, 0.0, 0.0).is_err());
        assert!(CoherentSpec::new(3, f64::NAN, 0.0, 0.0).is_err());
        assert!(CoherentSpec::new(3, 1.0, 0.0, -2.0).is_err());
    }

    #[test]
    fn coefficient_normalization() {
        for n in 0..=24 {
            for &a in &[0.0, 0.5, 1.0, 2.0, 10.0] {
                let c = coherent_coefficients(&CoherentSpec::new(n, a, 0.7, 0.0).unwrap());
                let sum: f64 = c.iter().map(|v| v.norm_sqr()).sum();
                assert!((sum - 1.0).abs() <= 1e-13, "N={n} A={a}: {sum}");
            }
        }
    }

    #[test]
    fn eval_matches_hand_expansion() {
        let spec = CoherentSpec::new(3, 1.0, FRAC_PI_2, 0.0).unwrap();
        let i = ComplexScalar::i();
        // (1/√8) Σ √C(3,K) i^K ψ_{K,3-K}
        let binom = [1.0f64, 3.0, 3.0, 1.0];
        for &(x, y) in &[(0.0, 0.0), (0.5, -0.3), (-1.1, 0.9)] {
            let mut expect = ComplexScalar::new(0.0, 0.0);
            for k in 0..=3 {
                let psi = EigenState::new(k, 3 - k, 0.0).unwrap().eval(x, real(y));
                expect += binom[k].sqrt() * i.powu(k as u32) * psi / 8f64.sqrt();
            }
            let got = eval_coherent(&spec, x, real(y));
            assert!((got - expect).norm() <= 1e-15, "{got} vs {expect}");
        }
        let ground = EigenState::new(0, 0, 0.8).unwrap();
        let spec0 = CoherentSpec::new(0, 2.0, 1.0, 0.8).unwrap();
        assert_eq!(eval_coherent(&spec0, 0.3, real(0.2)), ground.eval(0.3, real(0.2)));
    }

    #[test]
    fn cpt_norm_examples() {
        let rule = gauss_hermite(DEFAULT_QUAD_ORDER).unwrap();
        let r = coherent_cpt_norm(&CoherentSpec::new(0, 1.0, 0.0, 0.0).unwrap(), &rule).unwrap();
        assert!((r.real_part - 1.0).abs() <= 1e-12);
        let r = coherent_cpt_norm(&CoherentSpec::new(3, 2.0, 1.1, 1.5).unwrap(), &rule).unwrap();
        assert!((r.real_part - 1.0).abs() <= 1e-10 && r.imag_part.abs() <= 1e-10);
        let r = coherent_cpt_norm(&CoherentSpec::new(12, 1.0, FRAC_PI_2, 3.0).unwrap(), &rule).unwrap();
        assert!((r.real_part - 1.0).abs() <= 1e-9 && r.imag_part.abs() <= 1e-9);
        let small = gauss_hermite(6).unwrap();
        assert!(matches!(
            coherent_cpt_norm(&CoherentSpec::new(3, 1.0, 0.0, 0.0).unwrap(), &small),
            Err(Error::Exactness { required: 7, .. })
        ));
    }

    #[test]
    fn pit_action_on_phi() {
        for &(n, a, theta, lambda) in &[(3, 1.0, FRAC_PI_2, 0.0), (4, 2.0, 0.3, 1.5), (5, 0.5, -1.0, 3.0)] {
            let spec = CoherentSpec::new(n, a, theta, lambda).unwrap();
            let g = pit_transform(|x, y| eval_coherent(&spec, x, y));
            let conj = coherent_coefficients(&spec.conjugate_phase());
            for i in 0..21 {
                for j in 0..21 {
                    let (x, y) = (-3.0 + 0.3 * i as f64, -3.0 + 0.3 * j as f64);
                    let expect: ComplexScalar = conj
                        .iter()
                        .zip(spec.components())
                        .map(|(c, s)| c * s.pit_parity() * s.eval(x, real(y)))
                        .sum();
                    assert!((g(x, real(y)) - expect).norm() <= 1e-10);
                }
            }
        }
    }

    /// At Λ = 0 the components are products of real 1D oscillator states
    /// `φ_n(x) = H_n(x) e^{-x²/2} / sqrt(2ⁿ n! √π)`, written out here without
    /// going through `EigenState`.
    #[test]
    fn hermitian_limit_matches_textbook_states() {
        fn phi(n: usize, x: f64) -> f64 {
            let (mut h0, mut h1) = (1.0, 2.0 * x);
            let h = match n {
                0 => 1.0,
                _ => {
                    for k in 1..n {
                        let h2 = 2.0 * x * h1 - 2.0 * k as f64 * h0;
                        h0 = h1;
                        h1 = h2;
                    }
                    h1
                }
            };
            let norm = (2f64.powi(n as i32) * (1..=n).product::<usize>() as f64 * PI.sqrt()).sqrt();
            h * (-x * x / 2.0).exp() / norm
        }
        for &(n, a, theta) in &[(3, 1.0, FRAC_PI_2), (6, 0.5, 1.2), (12, 2.0, 0.0)] {
            let spec = CoherentSpec::new(n, a, theta, 0.0).unwrap();
            for &(x, y) in &[(0.0, 0.0), (0.8, -0.4), (-1.7, 1.3), (2.5, 0.1)] {
                let mut expect = ComplexScalar::new(0.0, 0.0);
                for k in 0..=n {
                    let binom = (0..k).fold(1.0, |b, j| b * (n - j) as f64 / (j + 1) as f64);
                    let c = (1.0 + a * a).powf(-(n as f64) / 2.0)
                        * binom.sqrt()
                        * ComplexScalar::from_polar(a.powi(k as i32), k as f64 * theta);
                    expect += c * phi(k, x) * phi(n - k, y);
                }
                let got = eval_coherent(&spec, x, real(y));
                assert!((got - expect).norm() <= 1e-12 * expect.norm().max(1.0), "{got} vs {expect}");
            }
        }
    }

    fn glauber(b: f64, g: f64, cutoff: usize) -> GlauberSpec {
        GlauberSpec { beta_abs: b, gamma_abs: g, theta_x: 0.3, theta_y: -1.1, n_cutoff: cutoff }
    }

    #[test]
    fn vacuum() {
        let c = glauber_coefficients(&glauber(0.0, 0.0, 12)).unwrap();
        assert_eq!(c.get(0, 0), Some(ComplexScalar::new(1.0, 0.0)));
        assert!(c.iter().filter(|&(k, _)| k != (0, 0)).all(|(_, v)| v.norm() == 0.0));
    }

    #[test]
    fn annihilation_recursion() {
        let spec = glauber(0.9, 0.6, 14);
        let (beta, gamma) = (spec.beta(), spec.gamma());
        let c = glauber_coefficients(&spec).unwrap();
        for ((n, m), v) in c.iter() {
            if let Some(next) = c.get(n + 1, m) {
                let lhs = ((n + 1) as f64).sqrt() * next;
                assert!((lhs - beta * v).norm() <= 1e-13 * v.norm());
            }
            if let Some(next) = c.get(n, m + 1) {
                let lhs = ((m + 1) as f64).sqrt() * next;
                assert!((lhs - gamma * v).norm() <= 1e-13 * v.norm());
            }
        }
    }

    /// Oracle: Poisson tail `e^{-2} Σ_{N>c} 2^N / N!` by term ratios.
    fn poisson_tail_unit(cutoff: usize) -> f64 {
        let mut term = (-2.0f64).exp();
        for n in 1..=cutoff {
            term *= 2.0 / n as f64;
        }
        let mut tail = 0.0;
        let mut n = cutoff + 1;
        while term > 1e-30 {
            term *= 2.0 / n as f64;
            tail += term;
            n += 1;
        }
        tail
    }

    #[test]
    fn tail_mass_at_unit_amplitudes() {
        // Frozen from the oracle (cross-checked at 30 digits): P(N > 12) for
        // Poisson(2) is 2.0734695813702571e-7,
        // so cutoff 12 is insufficient at |β| = |γ| = 1; 14 is the first
        // cutoff below 1e-8.
        let t12 = poisson_tail_unit(12);
        assert_relative_eq!(t12, 2.0734695813702571e-7, max_relative = 1e-12);
        assert_relative_eq!(poisson_tail_unit(14), 3.8712304046002928e-9, max_relative = 1e-12);
        assert_relative_eq!(glauber(1.0, 1.0, 12).tail_mass(), t12, max_relative = 1e-10);
        assert_relative_eq!(glauber(1.0, 1.0, 14).tail_mass(), poisson_tail_unit(14), max_relative = 1e-10);
        assert!(matches!(glauber_coefficients(&glauber(1.0, 1.0, 12)), Err(Error::Truncation { cutoff: 12, .. })));
        assert!(matches!(glauber_coefficients(&glauber(1.0, 1.0, 13)), Err(Error::Truncation { .. })));
        let c = glauber_coefficients(&glauber(1.0, 1.0, 14)).unwrap();
        assert!((c.norm_sqr() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn evolution() {
        let spec = glauber(0.8, 0.8, 12);
        let c0 = glauber_coefficients(&spec).unwrap();
        assert_eq!(evolve_coherent(&spec, 0.0).unwrap(), c0);
        assert_eq!(evolve_coherent(&spec, TAU).unwrap(), c0);
        assert_eq!(evolve_coherent(&spec, 2.0 * TAU).unwrap(), c0);
        let n0 = c0.norm_sqr();
        for &t in &[0.1, 1.0, PI, 5.5, 100.0] {
            let ct = evolve_coherent(&spec, t).unwrap();
            assert!((ct.norm_sqr() - n0).abs() <= 1e-14);
            // phases by direct evaluation
            for ((n, m), v) in ct.iter() {
                let expect = c0.get(n, m).unwrap() * ComplexScalar::new(0.0, -((n + m + 1) as f64) * t).exp();
                assert!((v - expect).norm() <= 1e-12);
            }
        }
        let decayed = evolve_coherent_with(&spec, 1.0, TimeEvolution::PaperLiteralDecay).unwrap();
        assert!(decayed.norm_sqr() < 0.5 * n0);
    }

    #[test]
    fn trajectories() {
        let t = classical_trajectory(1.4, 1.4, 0.2, 0.2 + FRAC_PI_2, 2.0 * TAU, 200).unwrap();
        let r2 = t.xs[0] * t.xs[0] + t.ys[0] * t.ys[0];
        assert_relative_eq!(r2, 1.4 * 1.4 / 2.0, max_relative = 1e-12);
        for (x, y) in t.xs.iter().zip(&t.ys) {
            assert!((x * x + y * y - r2).abs() <= 1e-12);
        }

        let t = classical_trajectory(2.0, 0.5, 0.7, 0.7, 10.0, 101).unwrap();
        for (x, y) in t.xs.iter().zip(&t.ys) {
            if x.abs() > 1e-6 {
                assert_relative_eq!(y / x, 0.25, max_relative = 1e-12);
            }
        }

        for &time in &[0.0, 0.3, 2.2, 9.9] {
            let a = classical_position(1.1, 0.4, 0.5, 2.0, time);
            let b = classical_position(1.1, 0.4, 0.5, 2.0, time + TAU);
            assert!((a.0 - b.0).abs() <= 1e-14 && (a.1 - b.1).abs() <= 1e-14);
        }
        assert!(classical_trajectory(1.0, 1.0, 0.0, 0.0, 1.0, 1).is_err());
    }
}
