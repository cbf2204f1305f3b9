//! The identity suite run by `ptosc verify`.

use std::f64::consts::FRAC_PI_2;

use ptosc_core::quadrature::real_plane_gauss_integral;
use ptosc_core::{
    coherent_cpt_norm, cpt_inner_product, cpt_norm, gauss_hermite, pit_inner_product,
    real_plane_density_integrals, CoherentSpec, ComplexScalar, EigenState, QuadratureRule,
};
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::GENERATED_BY;

pub const PIT_TOL: f64 = 1e-10;
pub const CPT_NORM_TOL: f64 = 1e-11;
pub const COHERENT_TOL: f64 = 1e-10;
pub const REAL_PLANE_TOL: f64 = 1e-7;
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Deliberate defects used as negative controls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Fault {
    /// Multiplies every ΠT product by an extra `(-1)^m`.
    FlipPitSign,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub max_index: usize,
    pub lambdas: Vec<f64>,
    /// Largest `n` and `m` in the CΠT norm sweep.
    pub norm_max_index: usize,
    pub simpson_samples: usize,
    pub quad_order: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fault: Option<Fault>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            max_index: 4,
            lambdas: vec![0.0, 1.0, 2.5],
            norm_max_index: 12,
            simpson_samples: 4001,
            quad_order: ptosc_core::DEFAULT_QUAD_ORDER,
            fault: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub tolerance: f64,
    pub max_deviation: f64,
    pub cases: usize,
    /// Up to ten failing cases, described in words.
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub generated_by: String,
    pub config: VerifyConfig,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn failing(&self) -> Vec<String> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name.clone()).collect()
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

struct Check {
    result: CheckResult,
}

impl Check {
    fn new(name: &str, tolerance: f64) -> Self {
        Self {
            result: CheckResult {
                name: name.to_string(),
                passed: true,
                tolerance,
                max_deviation: 0.0,
                cases: 0,
                failures: Vec::new(),
            },
        }
    }

    fn record(&mut self, deviation: f64, describe: impl FnOnce() -> String) {
        let r = &mut self.result;
        r.cases += 1;
        // NaN must fail
        let ok = deviation <= r.tolerance;
        r.max_deviation = if deviation.is_nan() { f64::NAN } else { r.max_deviation.max(deviation) };
        if !ok {
            r.passed = false;
            if r.failures.len() < 10 {
                r.failures.push(format!("{} (deviation {deviation:.3e})", describe()));
            }
        }
    }

    fn finish(self) -> CheckResult {
        self.result
    }
}

fn states(max: usize, lambda: f64) -> Result<Vec<EigenState>> {
    let mut out = Vec::with_capacity((max + 1) * (max + 1));
    for n in 0..=max {
        for m in 0..=max {
            out.push(EigenState::new(n, m, lambda)?);
        }
    }
    Ok(out)
}

fn kronecker(a: &EigenState, b: &EigenState) -> f64 {
    if a.n() == b.n() && a.m() == b.m() {
        1.0
    } else {
        0.0
    }
}

fn pit_table(cfg: &VerifyConfig, rule: &QuadratureRule) -> Result<CheckResult> {
    let mut check = Check::new("pit_biorthogonality", PIT_TOL);
    for &lambda in &cfg.lambdas {
        let basis = states(cfg.max_index, lambda)?;
        for a in &basis {
            for b in &basis {
                let mut got = pit_inner_product(a, b, rule)?;
                if cfg.fault == Some(Fault::FlipPitSign) {
                    got *= a.pit_parity();
                }
                let want = kronecker(a, b) * a.pit_parity();
                check.record((got - want).norm(), || {
                    format!("Λ={lambda} ({},{})·({},{}) = {got}, expected {want}", a.n(), a.m(), b.n(), b.m())
                });
            }
        }
    }
    Ok(check.finish())
}

fn cpt_table(cfg: &VerifyConfig, rule: &QuadratureRule) -> Result<CheckResult> {
    let mut check = Check::new("cpt_orthonormality", PIT_TOL);
    for &lambda in &cfg.lambdas {
        let basis = states(cfg.max_index, lambda)?;
        for a in &basis {
            for b in &basis {
                let got = cpt_inner_product(a, b, rule)?;
                let want = kronecker(a, b);
                check.record((got - want).norm(), || {
                    format!("Λ={lambda} ({},{})·({},{}) = {got}, expected {want}", a.n(), a.m(), b.n(), b.m())
                });
            }
        }
    }
    Ok(check.finish())
}

fn norms(cfg: &VerifyConfig, rule: &QuadratureRule) -> Result<CheckResult> {
    let mut check = Check::new("cpt_norm", CPT_NORM_TOL);
    for &lambda in &cfg.lambdas {
        for s in states(cfg.norm_max_index, lambda)? {
            let r = cpt_norm(&s, rule)?;
            let dev = (r.real_part - 1.0).abs().max(r.imag_part.abs());
            check.record(dev, || format!("Λ={lambda} ({},{}) norm {}", s.n(), s.m(), r.real_part));
        }
    }
    Ok(check.finish())
}

fn coherent_norms(cfg: &VerifyConfig, rule: &QuadratureRule) -> Result<CheckResult> {
    let mut check = Check::new("coherent_cpt_norm", COHERENT_TOL);
    for &lambda in &cfg.lambdas {
        for n_total in [3, 12] {
            for a in [0.5, 1.0, 2.0] {
                for theta in [0.0, FRAC_PI_2] {
                    let spec = CoherentSpec::new(n_total, a, theta, lambda)?;
                    let r = coherent_cpt_norm(&spec, rule)?;
                    let dev = (r.real_part - 1.0).abs().max(r.imag_part.abs());
                    check.record(dev, || format!("Λ={lambda} N={n_total} A={a} θ={theta} norm {}", r.real_part));
                }
            }
        }
    }
    Ok(check.finish())
}

fn real_plane(cfg: &VerifyConfig, rule: &QuadratureRule) -> Result<[CheckResult; 3]> {
    let mut re = Check::new("real_plane_re", REAL_PLANE_TOL);
    let mut im = Check::new("real_plane_im", REAL_PLANE_TOL);
    let mut agree = Check::new("contour_vs_direct", REAL_PLANE_TOL);
    for &lambda in &cfg.lambdas {
        for s in states(cfg.max_index, lambda)? {
            let direct = real_plane_density_integrals(&s, 8.0 + lambda, cfg.simpson_samples)?;
            let contour = cpt_norm(&s, rule)?;
            let label = || format!("Λ={lambda} ({},{})", s.n(), s.m());
            re.record((direct.real_part - 1.0).abs(), || format!("{} Re = {}", label(), direct.real_part));
            im.record(direct.imag_part.abs(), || format!("{} Im = {}", label(), direct.imag_part));
            let d = ComplexScalar::new(direct.real_part - contour.real_part, direct.imag_part - contour.imag_part);
            agree.record(d.norm(), label);
        }
    }
    Ok([re.finish(), im.finish(), agree.finish()])
}

/// At Λ = 0 the CΠT products must equal the ordinary `L²` products
/// `∫∫ conj(ψ_a) ψ_b` on the real plane.
fn hermitian_limit(cfg: &VerifyConfig, rule: &QuadratureRule) -> Result<CheckResult> {
    let mut check = Check::new("hermitian_limit", HERMITIAN_TOL);
    let basis = states(cfg.max_index, 0.0)?;
    for a in &basis {
        for b in &basis {
            let cpt = cpt_inner_product(a, b, rule)?;
            let l2 = real_plane_gauss_integral(rule, |x, y| a.eval(x, y).conj() * b.eval(x, y));
            check.record((cpt - l2).norm(), || {
                format!("({},{})·({},{}) cpt {cpt} vs L² {l2}", a.n(), a.m(), b.n(), b.m())
            });
        }
    }
    Ok(check.finish())
}

pub fn run(cfg: &VerifyConfig) -> Result<VerifyReport> {
    let rule = gauss_hermite(cfg.quad_order)?;
    let mut checks = vec![
        pit_table(cfg, &rule)?,
        cpt_table(cfg, &rule)?,
        norms(cfg, &rule)?,
        coherent_norms(cfg, &rule)?,
    ];
    checks.extend(real_plane(cfg, &rule)?);
    if cfg.lambdas.contains(&0.0) {
        checks.push(hermitian_limit(cfg, &rule)?);
    }
    Ok(VerifyReport {
        generated_by: GENERATED_BY.to_string(),
        config: cfg.clone(),
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> VerifyConfig {
        VerifyConfig { max_index: 2, lambdas: vec![0.0, 1.0], norm_max_index: 3, ..Default::default() }
    }

    #[test]
    fn small_suite_passes() {
        let r = run(&small()).unwrap();
        assert!(r.passed, "{:?}", r.failing());
        assert!(r.check("hermitian_limit").is_some());
        assert_eq!(r.check("pit_biorthogonality").unwrap().cases, 2 * 81);
    }

    #[test]
    fn flipped_sign_is_caught() {
        let r = run(&VerifyConfig { fault: Some(Fault::FlipPitSign), ..small() }).unwrap();
        assert!(!r.passed);
        assert_eq!(r.failing(), vec!["pit_biorthogonality".to_string()]);
    }

    #[test]
    fn no_hermitian_check_without_zero() {
        let r = run(&VerifyConfig { lambdas: vec![1.0], ..small() }).unwrap();
        assert!(r.check("hermitian_limit").is_none());
    }

    #[test]
    fn nan_deviation_fails() {
        let mut c = Check::new("x", 1.0);
        c.record(f64::NAN, || "nan".into());
        let r = c.finish();
        assert!(!r.passed && r.max_deviation.is_nan());
    }
}
