//! Gauss–Hermite rules and the integral functionals of the model.
//!
//! The production route for every inner product is the contour shift
//! `y = u - iΛ/2` combined with the node translation `x = t - Λ/2`. After
//! both substitutions an integrand made of eigenfunctions is exactly a
//! polynomial times `e^{-t² - u²}`, so a Gauss–Hermite rule of sufficient
//! order integrates it to rounding error.
//!
//! The real-plane route ([`real_plane_density_integrals`]) keeps the
//! oscillatory factor `e^{-iΛy}` and is integrated by truncated composite
//! Simpson. It is an independent check of the contour deformation, not a
//! production path.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::complexmath::ComplexScalar;
use crate::error::{Error, Result};
use crate::oscillator::EigenState;

/// Order used when callers do not ask for one. Degree `2·48 - 1 = 95` covers
/// every shipped integrand (at most degree 48 in either variable).
pub const DEFAULT_QUAD_ORDER: usize = 48;

pub const MAX_QUAD_ORDER: usize = 128;

const NEWTON_MAX_ITER: usize = 100;

/// Gauss–Hermite nodes (ascending) and positive weights for the weight
/// function `e^{-x²}`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    order: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Highest polynomial degree integrated exactly, `2Q - 1`.
    pub fn exact_degree(&self) -> usize {
        2 * self.order - 1
    }

    /// `Σ w_i f(x_i) ≈ ∫ f(x) e^{-x²} dx`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    /// Weights multiplied by `e^{x_i²}`, for integrands that already carry
    /// their own Gaussian factor.
    fn unweighted(&self) -> Vec<f64> {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * (x * x).exp()).collect()
    }
}

/// Orthonormal Hermite polynomials `p_k = H_k / sqrt(2ᵏ k! √π)` at `x`,
/// returning `(p_order, p_{order-1})`. This scaling keeps the recurrence
/// finite for orders where `H_k²` itself overflows.
fn orthonormal_hermite_pair(x: f64, order: usize) -> (f64, f64) {
    let mut p_prev = 0.0;
    let mut p = PI.powf(-0.25);
    for j in 1..=order {
        let jf = j as f64;
        let next = x * (2.0 / jf).sqrt() * p - ((jf - 1.0) / jf).sqrt() * p_prev;
        p_prev = p;
        p = next;
    }
    (p, p_prev)
}

/// Builds the `order`-point Gauss–Hermite rule.
///
/// Roots of `H_Q` are found by Newton iteration from the usual asymptotic
/// starting guesses, largest root first. The weights are
/// `w_i = 2^{Q-1} Q! √π / (Q² H_{Q-1}(x_i)²)`; in orthonormal scaling this
/// reads `1 / (Q p_{Q-1}(x_i)²)`, evaluated through logarithms.
pub fn gauss_hermite(order: usize) -> Result<QuadratureRule> {
    if order == 0 || order > MAX_QUAD_ORDER {
        return Err(Error::InvalidOrder { order, max: MAX_QUAD_ORDER });
    }
    let q = order as f64;
    let half = order.div_ceil(2);
    let mut positive: Vec<(f64, f64)> = Vec::with_capacity(half);
    let mut z = 0.0;
    for i in 0..half {
        z = match i {
            0 => (2.0 * q + 1.0).sqrt() - 1.85575 * (2.0 * q + 1.0).powf(-1.0 / 6.0),
            1 => z - 1.14 * q.powf(0.426) / z,
            2 => 1.86 * z - 0.86 * positive[0].0,
            3 => 1.91 * z - 0.91 * positive[1].0,
            _ => 2.0 * z - positive[i - 2].0,
        };
        if order % 2 == 1 && i == half - 1 {
            // odd rules have an exact root at the origin
            z = 0.0;
        } else {
            z = newton_root(z, order).ok_or(Error::RuleGeneration { order, root: i })?;
        }
        let (_, p_prev) = orthonormal_hermite_pair(z, order);
        let log_w = -q.ln() - 2.0 * p_prev.abs().ln();
        positive.push((z, log_w.exp()));
    }

    let mut nodes = Vec::with_capacity(order);
    let mut weights = Vec::with_capacity(order);
    for &(x, w) in &positive {
        nodes.push(-x);
        weights.push(w);
    }
    let skip_center = order % 2;
    for &(x, w) in positive.iter().rev().skip(skip_center) {
        nodes.push(x);
        weights.push(w);
    }
    // `positive` is descending, so `-x` ascends; the mirrored half follows.
    if skip_center == 1 {
        nodes[half - 1] = 0.0;
    }
    Ok(QuadratureRule { order, nodes, weights })
}

fn newton_root(mut z: f64, order: usize) -> Option<f64> {
    let q = order as f64;
    for _ in 0..NEWTON_MAX_ITER {
        let (p, p_prev) = orthonormal_hermite_pair(z, order);
        let dp = (2.0 * q).sqrt() * p_prev;
        let step = p / dp;
        if !step.is_finite() {
            return None;
        }
        z -= step;
        if step.abs() <= 4.0 * f64::EPSILON * z.abs().max(1.0) {
            return Some(z);
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NormMethod {
    ContourShift,
    RealPlaneDirect,
}

/// Value of a normalization-type integral together with how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormReport {
    pub real_part: f64,
    pub imag_part: f64,
    pub method: NormMethod,
    /// Quadrature order, or Simpson samples per axis for the direct route.
    pub order_used: usize,
    pub estimated_error: f64,
}

/// `∫dx ∫_C dy f(x, y)` over the real x axis and the contour
/// `Im y = -Λ/2`, for integrands that decay like `e^{-x̃² - ỹ²}` there.
///
/// Nodes are translated so the Gaussian centres on `x̃ = 0` and the contour
/// parameter `u` is the real part of `y`.
pub fn contour_integral<F>(rule: &QuadratureRule, lambda: f64, f: F) -> ComplexScalar
where
    F: Fn(f64, ComplexScalar) -> ComplexScalar,
{
    let w = rule.unweighted();
    let mut total = ComplexScalar::new(0.0, 0.0);
    for (&t, &wx) in rule.nodes().iter().zip(&w) {
        let x = t - 0.5 * lambda;
        let mut row = ComplexScalar::new(0.0, 0.0);
        for (&u, &wy) in rule.nodes().iter().zip(&w) {
            row += wy * f(x, ComplexScalar::new(u, -0.5 * lambda));
        }
        total += wx * row;
    }
    total
}

/// `∫dx ∫_C dy f(x, y)` on the real plane, `Λ = 0`, integrated directly
/// by Gauss–Hermite. Used for the Hermitian-limit comparison.
pub fn real_plane_gauss_integral<F>(rule: &QuadratureRule, f: F) -> ComplexScalar
where
    F: Fn(f64, ComplexScalar) -> ComplexScalar,
{
    contour_integral(rule, 0.0, f)
}

fn require_order(rule: &QuadratureRule, required: usize) -> Result<()> {
    if rule.order() < required {
        return Err(Error::Exactness { order: rule.order(), required });
    }
    Ok(())
}

fn require_same_lambda(a: &EigenState, b: &EigenState) -> Result<()> {
    if a.lambda() != b.lambda() {
        return Err(Error::IncompatibleStates { a: a.lambda(), b: b.lambda() });
    }
    Ok(())
}

/// The indefinite ΠT inner product `∫∫ (ΠTψ_a) ψ_b dx dy`.
///
/// `ΠTψ_a` is formed by [`crate::oscillator::pit_transform`] and continued
/// onto the contour, where the integral is evaluated. The result is
/// `δ_{n n'} δ_{m m'} (-1)^{m_a}`.
pub fn pit_inner_product(a: &EigenState, b: &EigenState, rule: &QuadratureRule) -> Result<ComplexScalar> {
    require_same_lambda(a, b)?;
    require_order(rule, (a.n() + b.n()).max(a.m() + b.m()) + 4)?;
    let pit_a = crate::oscillator::pit_transform(|x, y| a.eval(x, y));
    Ok(contour_integral(rule, a.lambda(), |x, y| pit_a(x, y) * b.eval(x, y)))
}

/// The positive-definite CΠT inner product `∫dx ∫_C dy (CΠTψ_a) ψ_b`.
///
/// The charge operator acts on each eigenstate as its ΠT sign `(-1)^m`,
/// which cancels the sign produced by ΠT.
pub fn cpt_inner_product(a: &EigenState, b: &EigenState, rule: &QuadratureRule) -> Result<ComplexScalar> {
    require_same_lambda(a, b)?;
    require_order(rule, (a.n() + b.n()).max(a.m() + b.m()) + 4)?;
    let pit_a = crate::oscillator::pit_transform(|x, y| a.eval(x, y));
    let charge = a.pit_parity();
    Ok(contour_integral(rule, a.lambda(), |x, y| charge * pit_a(x, y) * b.eval(x, y)))
}

/// CΠT norm `∫dx ∫_C dy (CΠTψ)ψ`.
///
/// On the contour `CΠTψ = ψ` and `ψ(x, u - iΛ/2)` is real, so the
/// integrand is `ψ²` with no imaginary part; `imag_part` is reported as
/// exactly zero and the discarded rounding residue goes into
/// `estimated_error`.
pub fn cpt_norm(state: &EigenState, rule: &QuadratureRule) -> Result<NormReport> {
    require_order(rule, state.n() + state.m() + 4)?;
    let total = contour_integral(rule, state.lambda(), |x, y| {
        let psi = state.eval(x, y);
        psi * psi
    });
    Ok(NormReport {
        real_part: total.re,
        imag_part: 0.0,
        method: NormMethod::ContourShift,
        order_used: rule.order(),
        estimated_error: total.im.abs() + 4.0 * f64::EPSILON * rule.order() as f64,
    })
}

/// Composite Simpson weights for `samples` equally spaced points with
/// spacing `h`. `samples` must be odd.
pub(crate) fn simpson_weights(samples: usize, h: f64) -> Vec<f64> {
    debug_assert!(samples >= 3 && samples % 2 == 1);
    (0..samples)
        .map(|i| {
            let c = if i == 0 || i == samples - 1 {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            c * h / 3.0
        })
        .collect()
}

pub const MIN_SIMPSON_SAMPLES: usize = 2001;

fn simpson_square(state: &EigenState, half_width: f64, samples: usize) -> ComplexScalar {
    let h = 2.0 * half_width / (samples - 1) as f64;
    let w = simpson_weights(samples, h);
    let coord = |i: usize| -half_width + i as f64 * h;
    // Tensor-product Simpson: the double sum of w_i w_j X(x_i)² Y(y_j)²
    // factorises into two axis sums.
    let sx: f64 = (0..samples)
        .map(|i| {
            let v = state.x_factor(coord(i));
            w[i] * v * v
        })
        .sum();
    let sy: ComplexScalar = (0..samples)
        .map(|j| {
            let v = state.y_factor(ComplexScalar::new(coord(j), 0.0));
            w[j] * v * v
        })
        .sum();
    sx * sy
}

/// `∫∫ ψ² dx dy` over the real square `[-W, W]²` by composite Simpson.
///
/// `samples` points per axis, which must satisfy `samples ≡ 1 (mod 4)` so
/// that the half-resolution comparison grid is also a Simpson grid. The
/// reported error is the Richardson estimate `|I_h - I_2h| / 15`.
pub fn real_plane_density_integrals(state: &EigenState, half_width: f64, samples: usize) -> Result<NormReport> {
    let min_width = 8.0 + state.lambda();
    if !(half_width >= min_width) || !half_width.is_finite() {
        return Err(Error::Resolution {
            reason: format!("half width {half_width} below 8 + Λ = {min_width}"),
        });
    }
    if samples < MIN_SIMPSON_SAMPLES || samples % 4 != 1 {
        return Err(Error::Resolution {
            reason: format!("{samples} samples per axis; need at least {MIN_SIMPSON_SAMPLES} and samples ≡ 1 (mod 4)"),
        });
    }
    let fine = simpson_square(state, half_width, samples);
    let coarse = simpson_square(state, half_width, samples.div_ceil(2));
    Ok(NormReport {
        real_part: fine.re,
        imag_part: fine.im,
        method: NormMethod::RealPlaneDirect,
        order_used: samples,
        estimated_error: (fine - coarse).norm() / 15.0,
    })
}
