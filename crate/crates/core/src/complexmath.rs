//! Complex scalars, Hermite polynomials of complex argument, and factorials
//! in log space.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Base scalar for every wavefunction value.
pub type ComplexScalar = Complex64;

/// Highest Hermite degree accepted by [`hermite_eval`]. Coefficients of
/// `H_k` grow like `2^k k!`, so degrees beyond this lose meaning in f64 on
/// any argument of interest.
pub const MAX_HERMITE_DEGREE: usize = 64;

/// Largest `n` for which `n!` is finite in f64.
pub const MAX_FACTORIAL: usize = 170;

/// Values `H_0(z), ..., H_d(z)` of the physicists' Hermite polynomials at a
/// single argument.
#[derive(Debug, Clone, PartialEq)]
pub struct HermiteSequence {
    values: Vec<ComplexScalar>,
}

impl HermiteSequence {
    pub fn max_degree(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[ComplexScalar] {
        &self.values
    }

    /// `H_k(z)`; panics if `k > max_degree`.
    pub fn degree(&self, k: usize) -> ComplexScalar {
        self.values[k]
    }

    pub fn into_vec(self) -> Vec<ComplexScalar> {
        self.values
    }
}

/// Upward three-term recurrence `H_{k+1} = 2z H_k - 2k H_{k-1}`.
///
/// Callers guarantee `max_degree` is in range.
pub(crate) fn hermite_recurrence(z: ComplexScalar, max_degree: usize) -> Vec<ComplexScalar> {
    let mut values = Vec::with_capacity(max_degree + 1);
    values.push(ComplexScalar::new(1.0, 0.0));
    if max_degree == 0 {
        return values;
    }
    let two_z = 2.0 * z;
    values.push(two_z);
    for k in 1..max_degree {
        let next = two_z * values[k] - (2.0 * k as f64) * values[k - 1];
        values.push(next);
    }
    values
}

/// Evaluates `H_0(z) ..= H_{max_degree}(z)`.
pub fn hermite_eval(z: ComplexScalar, max_degree: usize) -> Result<HermiteSequence> {
    if max_degree > MAX_HERMITE_DEGREE {
        return Err(Error::DegreeLimit { degree: max_degree, max: MAX_HERMITE_DEGREE });
    }
    Ok(HermiteSequence { values: hermite_recurrence(z, max_degree) })
}

/// Both sides of the parity identity `H_k(-z) = (-1)^k H_k(z)`, as
/// `(H_k(-z), (-1)^k H_k(z))`.
pub fn hermite_parity_check(z: ComplexScalar, k: usize) -> Result<(ComplexScalar, ComplexScalar)> {
    let lhs = hermite_eval(-z, k)?.degree(k);
    let rhs = hermite_eval(z, k)?.degree(k);
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok((lhs, sign * rhs))
}

/// `ln(n!)` as the plain sum `Σ ln k`.
pub fn log_factorial(n: usize) -> Result<f64> {
    if n > MAX_FACTORIAL {
        return Err(Error::FactorialRange { n, max: MAX_FACTORIAL });
    }
    Ok((2..=n).map(|k| (k as f64).ln()).sum())
}

/// `ln C(n, k)` for `k ≤ n ≤ 170`.
pub fn log_binomial(n: usize, k: usize) -> Result<f64> {
    if k > n {
        return Err(Error::domain("binomial", format!("k = {k} exceeds n = {n}")));
    }
    Ok(log_factorial(n)? - log_factorial(k)? - log_factorial(n - k)?)
}
