//! Stationary-class test: equilibrium, rigid translation, relative
//! equilibrium, collapse, or none of these.

use num_complex::Complex64;
use std::fmt;

use crate::configuration::{invariants, velocity_field, Configuration, ConfigurationError};
use crate::system::VortexSystem;

/// Outcome classes. A configuration is stationary exactly when the velocity
/// field is affine in the positions, V_n = Λ(z_n − z0); the class is decided
/// by Λ.
#[derive(Debug, Clone, PartialEq)]
pub enum StationaryClass {
    Equilibrium,
    RigidTranslation { velocity: Complex64 },
    RelativeEquilibrium { lambda: f64, center: Complex64 },
    Collapse { lambda: Complex64, center: Complex64 },
    NonStationary,
}

impl StationaryClass {
    pub fn name(&self) -> &'static str {
        match self {
            StationaryClass::Equilibrium => "equilibrium",
            StationaryClass::RigidTranslation { .. } => "rigid-translation",
            StationaryClass::RelativeEquilibrium { .. } => "relative-equilibrium",
            StationaryClass::Collapse { .. } => "collapse",
            StationaryClass::NonStationary => "non-stationary",
        }
    }
}

/// Necessary conditions that failed at the classified point. The class is the
/// numerical evidence; these are the theorem-side consistency checks.
#[derive(Debug, Clone, PartialEq)]
pub enum ConsistencyWarning {
    /// Equilibria require L = 0.
    MomentumNotZero { l: f64 },
    /// Rigid translations require Γ = 0.
    TotalVorticityNotZero { gamma: f64 },
    /// Collapse configurations require S = I = L = 0.
    CollapseInvariantNotZero { name: &'static str, value: f64 },
    /// Collapse configurations require Γ ≠ 0.
    TotalVorticityZero,
}

impl fmt::Display for ConsistencyWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConsistencyWarning::MomentumNotZero { l } => {
                write!(f, "equilibrium found but L = {l:.6e} is not zero")
            }
            ConsistencyWarning::TotalVorticityNotZero { gamma } => {
                write!(f, "rigid translation found but Γ = {gamma:.6e} is not zero")
            }
            ConsistencyWarning::CollapseInvariantNotZero { name, value } => {
                write!(f, "collapse found but {name} = {value:.6e} is not zero")
            }
            ConsistencyWarning::TotalVorticityZero => {
                write!(f, "collapse found but Γ = 0")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub class: StationaryClass,
    /// Max-norm residual of the accepted model, relative to max |V_n|
    /// (zero for equilibria, where the scale is the reference velocity).
    pub residual: f64,
    pub warnings: Vec<ConsistencyWarning>,
}

/// Least-squares fit of V_n = Λ z_n + B over complex (Λ, B).
/// Returns (Λ, B, max-norm residual).
fn fit_affine(z: &[Complex64], v: &[Complex64]) -> (Complex64, Complex64, f64) {
    let n = z.len() as f64;
    let mut szz = 0.0;
    let mut sz = Complex64::new(0.0, 0.0);
    let mut szv = Complex64::new(0.0, 0.0);
    let mut sv = Complex64::new(0.0, 0.0);
    for (zi, vi) in z.iter().zip(v) {
        szz += zi.norm_sqr();
        sz += zi;
        szv += zi.conj() * vi;
        sv += vi;
    }
    // Normal equations for the n x 2 design matrix [z 1]; the determinant
    // vanishes only when all positions coincide.
    let det = szz * n - sz.norm_sqr();
    let lambda = (szv * n - sz.conj() * sv) / det;
    let offset = (sv * szz - sz * szv) / det;
    let mut res: f64 = 0.0;
    for (zi, vi) in z.iter().zip(v) {
        res = res.max((vi - lambda * zi - offset).norm());
    }
    (lambda, offset, res)
}

/// Classify a configuration at relative tolerance `tol`.
///
/// The decision ladder: (a) all velocities vanish → equilibrium; (b) all
/// velocities equal → rigid translation; (c) affine fit V_n = Λ(z_n − z0)
/// with small residual → relative equilibrium when Λ is real, collapse when
/// Im Λ ≠ 0; (d) otherwise non-stationary. Violated necessary conditions
/// (L = 0 for equilibria, Γ = 0 for translations, S = I = L = 0 and Γ ≠ 0
/// for collapse) are reported as warnings, not errors.
pub fn classify(
    config: &Configuration,
    system: &VortexSystem,
    tol: f64,
) -> Result<Classification, ConfigurationError> {
    let v = velocity_field(config, system)?;
    let inv = invariants(config, system)?;
    let z = config.positions();

    let vmax = v.iter().map(|x| x.norm()).fold(0.0_f64, f64::max);
    // Reference velocity Σ|Γ| / diameter keeps the equilibrium test
    // meaningful when all velocities are tiny.
    let gamma_abs: f64 = system.gammas().iter().map(|g| g.abs()).sum();
    let v_ref = gamma_abs / config.diameter();
    let l_scale = system.momentum_scale();

    let mut warnings = Vec::new();

    if vmax <= tol * v_ref {
        if inv.angular_momentum.abs() > tol * l_scale {
            warnings.push(ConsistencyWarning::MomentumNotZero { l: inv.angular_momentum });
        }
        return Ok(Classification {
            class: StationaryClass::Equilibrium,
            residual: vmax / v_ref,
            warnings,
        });
    }

    let mean = v.iter().sum::<Complex64>() / v.len() as f64;
    let spread = v.iter().map(|x| (x - mean).norm()).fold(0.0_f64, f64::max);
    if spread <= tol * vmax {
        if inv.total_vorticity.abs() > tol * gamma_abs {
            warnings.push(ConsistencyWarning::TotalVorticityNotZero {
                gamma: inv.total_vorticity,
            });
        }
        return Ok(Classification {
            class: StationaryClass::RigidTranslation { velocity: mean },
            residual: spread / vmax,
            warnings,
        });
    }

    let (lambda, offset, res) = fit_affine(z, &v);
    if res <= tol * vmax {
        let center = -offset / lambda;
        if lambda.im.abs() <= tol * lambda.norm() {
            return Ok(Classification {
                class: StationaryClass::RelativeEquilibrium { lambda: lambda.re, center },
                residual: res / vmax,
                warnings,
            });
        }
        // Prop-style necessary conditions for collapse.
        let i_scale: f64 = system
            .gammas()
            .iter()
            .zip(z)
            .map(|(g, zi)| g.abs() * zi.norm_sqr())
            .sum();
        let s_scale: f64 = {
            let mut s = 0.0;
            for j in 0..z.len() {
                for k in j + 1..z.len() {
                    s += (system.gamma(j) * system.gamma(k)).abs() * (z[k] - z[j]).norm_sqr();
                }
            }
            s
        };
        for (name, value, scale) in [
            ("S", inv.weighted_sum, s_scale),
            ("I", inv.angular_impulse, i_scale),
            ("L", inv.angular_momentum, l_scale),
        ] {
            if value.abs() > tol.max(1e-9) * scale {
                warnings.push(ConsistencyWarning::CollapseInvariantNotZero { name, value });
            }
        }
        if inv.total_vorticity.abs() <= tol * gamma_abs {
            warnings.push(ConsistencyWarning::TotalVorticityZero);
        }
        return Ok(Classification {
            class: StationaryClass::Collapse { lambda, center },
            residual: res / vmax,
            warnings,
        });
    }

    Ok(Classification {
        class: StationaryClass::NonStationary,
        residual: res / vmax,
        warnings,
    })
}
