//! The five-vortex continuum of collapse configurations: a one-parameter
//! family of parallelograms with a central vortex, in closed form.

use num_complex::Complex64;
use thiserror::Error;

use crate::configuration::{invariants, velocity_field, Configuration};
use crate::system::VortexSystem;

/// Vorticities of the family: (1, 1, −1/2, −1/2, 3/4).
pub const FAMILY_GAMMAS: [f64; 5] = [1.0, 1.0, -0.5, -0.5, 0.75];

/// Lower endpoint of the positive parameter interval, √(11/3)/2. The
/// parameter domain is (−3/2, −√(11/3)/2) ∪ (√(11/3)/2, 3/2), open at both
/// ends: the inner boundary zeroes the b-radicand, the outer zeroes c.
pub fn inner_boundary() -> f64 {
    (11.0_f64 / 3.0).sqrt() / 2.0
}

pub fn outer_boundary() -> f64 {
    1.5
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FamilyError {
    #[error("parameter a = {a} is outside (−3/2, −√(11/3)/2) ∪ (√(11/3)/2, 3/2)")]
    Domain { a: f64 },
    #[error("verification failed: {check} residual {residual:.3e} exceeds {tol:.3e}")]
    Verification { check: &'static str, residual: f64, tol: f64 },
}

/// Family parameter: the abscissa a of the first vortex plus the two sign
/// branches of the square roots. Four (sign_b, sign_c) branches exist per a.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyParameter {
    pub a: f64,
    pub sign_b: f64,
    pub sign_c: f64,
}

impl FamilyParameter {
    pub fn new(a: f64) -> Result<Self, FamilyError> {
        Self::with_signs(a, 1.0, 1.0)
    }

    pub fn with_signs(a: f64, sign_b: f64, sign_c: f64) -> Result<Self, FamilyError> {
        let inner = inner_boundary();
        let outer = outer_boundary();
        if !(a.abs() > inner && a.abs() < outer) || !a.is_finite() {
            return Err(FamilyError::Domain { a });
        }
        Ok(Self { a, sign_b: sign_b.signum(), sign_c: sign_c.signum() })
    }

    /// b = ±√((144a⁶ − 121a²)/(64a⁴ − 20)); strictly positive radicand
    /// inside the domain.
    pub fn b(&self) -> f64 {
        self.sign_b * self.b_squared().sqrt()
    }

    fn b_squared(&self) -> f64 {
        let a2 = self.a * self.a;
        (144.0 * a2 * a2 * a2 - 121.0 * a2) / (64.0 * a2 * a2 - 20.0)
    }

    /// c = ±√(2a² − b²).
    pub fn c(&self) -> f64 {
        self.sign_c * (2.0 * self.a * self.a - self.b_squared()).sqrt()
    }
}

/// The parallelogram z₁ = −z₂ = a, z₃ = −z₄ = b + ic, z₅ = 0 with the
/// family vorticities.
pub fn family_configuration(p: &FamilyParameter) -> (Configuration, VortexSystem) {
    let a = Complex64::new(p.a, 0.0);
    let bc = Complex64::new(p.b(), p.c());
    let config = Configuration::new(vec![a, -a, bc, -bc, Complex64::new(0.0, 0.0)]);
    let system = VortexSystem::new(FAMILY_GAMMAS.to_vec()).expect("family vorticities are valid");
    (config, system)
}

/// The collapse multiplier
/// Λ = (−a² + 5b² − 10ibc − 5c²) / (2a² (b² − 4ibc − 3c²)).
/// |Λ| = 1 and Im Λ ≠ 0 on the whole domain; c → −c conjugates Λ.
pub fn family_lambda(p: &FamilyParameter) -> Complex64 {
    let a2 = p.a * p.a;
    let b = p.b();
    let c = p.c();
    let num = Complex64::new(-a2 + 5.0 * b * b - 5.0 * c * c, -10.0 * b * c);
    let den = 2.0 * a2 * Complex64::new(b * b - 3.0 * c * c, -4.0 * b * c);
    num / den
}

/// Everything `verify_family` measures, kept for reporting.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyReport {
    pub lambda: Complex64,
    pub stationarity_residual: f64,
    pub lambda_modulus_error: f64,
    pub moment: Complex64,
    pub angular_impulse: f64,
    pub weighted_sum: f64,
    pub angular_momentum: f64,
    pub total_vorticity: f64,
}

/// Check V_n = Λ z_n together with the collapse necessary conditions
/// M = 0, I = 0, S = 0, L = 0 and Γ ≠ 0, all at tolerance `tol`.
pub fn verify_family(p: &FamilyParameter, tol: f64) -> Result<FamilyReport, FamilyError> {
    let (config, system) = family_configuration(p);
    let lambda = family_lambda(p);
    let v = velocity_field(&config, &system).expect("family configurations are collision-free");
    let res = v
        .iter()
        .zip(config.positions())
        .map(|(vi, zi)| (vi - lambda * zi).norm())
        .fold(0.0_f64, f64::max);
    let inv = invariants(&config, &system).expect("lengths match by construction");
    let report = FamilyReport {
        lambda,
        stationarity_residual: res,
        lambda_modulus_error: (lambda.norm() - 1.0).abs(),
        moment: inv.moment,
        angular_impulse: inv.angular_impulse,
        weighted_sum: inv.weighted_sum,
        angular_momentum: inv.angular_momentum,
        total_vorticity: inv.total_vorticity,
    };
    let checks: [(&'static str, f64); 6] = [
        ("V - Λz", res),
        ("|Λ| - 1", report.lambda_modulus_error),
        ("M", inv.moment.norm()),
        ("I", inv.angular_impulse.abs()),
        ("S", inv.weighted_sum.abs()),
        ("L", inv.angular_momentum.abs()),
    ];
    for (check, residual) in checks {
        if residual > tol {
            return Err(FamilyError::Verification { check, residual, tol });
        }
    }
    if report.total_vorticity.abs() <= tol {
        return Err(FamilyError::Verification {
            check: "Γ ≠ 0",
            residual: report.total_vorticity.abs(),
            tol,
        });
    }
    Ok(report)
}

/// The Figure-15 parameter values, in closed form.
pub fn showcase_parameters() -> [f64; 2] {
    let s33 = 33.0_f64.sqrt();
    [(-49.0 * s33 - 9.0) / 300.0, (-17.0 * s33 - 72.0) / 150.0]
}

/// Evenly sample `count` parameters across both interval components,
/// keeping a small relative margin off the open boundaries.
pub fn sweep_parameters(count: usize) -> Vec<f64> {
    let inner = inner_boundary();
    let outer = outer_boundary();
    let margin = 1e-4 * (outer - inner);
    let lo = inner + margin;
    let hi = outer - margin;
    let half = count / 2;
    let mut out = Vec::with_capacity(count);
    for i in 0..half {
        let t = i as f64 / (half.max(2) - 1) as f64;
        out.push(-(lo + t * (hi - lo)));
    }
    for i in 0..count - half {
        let t = i as f64 / ((count - half).max(2) - 1) as f64;
        out.push(lo + t * (hi - lo));
    }
    out
}
