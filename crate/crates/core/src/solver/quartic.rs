//! The four-vortex polynomial system for normalized central configurations
//! at fixed Λ, written through the symmetric polynomials M, F, f, G, g, I,
//! together with its analytic Jacobian.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::newton::ComplexSystem;
use super::{CentralCandidate, SolverError};
use crate::system::VortexSystem;

/// Values of every polynomial entering the four-vortex system, plus the
/// scalar L of the vorticities. Residual components combine them as
/// M_z, M_w, I, z₂−z₁−(w₂−w₁), F_z−Λf_z, ΛF_w−f_w, G_z+Λg_z, ΛG_w+g_w.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemEvaluation {
    pub m_z: Complex64,
    pub m_w: Complex64,
    pub l: f64,
    pub i: Complex64,
    pub normalization: Complex64,
    pub f_upper_z: Complex64,
    pub f_lower_z: Complex64,
    pub f_upper_w: Complex64,
    pub f_lower_w: Complex64,
    pub g_upper_z: Complex64,
    pub g_lower_z: Complex64,
    pub g_upper_w: Complex64,
    pub g_lower_w: Complex64,
    pub lambda: Complex64,
    scale: f64,
}

/// Degrees of the residual components in (z, w) jointly; used to normalize
/// residual magnitudes into a scale-free norm.
const COMPONENT_DEGREES: [i32; 8] = [1, 1, 2, 1, 3, 3, 4, 4];

impl SystemEvaluation {
    pub fn residual_components(&self) -> [Complex64; 8] {
        [
            self.m_z,
            self.m_w,
            self.i,
            self.normalization,
            self.f_upper_z - self.lambda * self.f_lower_z,
            self.lambda * self.f_upper_w - self.f_lower_w,
            self.g_upper_z + self.lambda * self.g_lower_z,
            self.lambda * self.g_upper_w + self.g_lower_w,
        ]
    }

    /// Max of component magnitudes, each divided by scale^degree where
    /// scale = max(1, |z|∞, |w|∞).
    pub fn residual_norm(&self) -> f64 {
        let s = self.scale.max(1.0);
        self.residual_components()
            .iter()
            .zip(COMPONENT_DEGREES)
            .map(|(c, d)| c.norm() / s.powi(d))
            .fold(0.0, f64::max)
    }
}

fn require_four(system: &VortexSystem, cand_len: usize) -> Result<(), SolverError> {
    if system.len() != 4 || cand_len != 4 {
        return Err(SolverError::Dimension {
            expected: 4,
            got: if system.len() != 4 { system.len() } else { cand_len },
        });
    }
    Ok(())
}

/// Evaluate the four-vortex system at a candidate. Errors with
/// `Dimension` for N ≠ 4; the general-N route is the cleared rational
/// system in [`super::rational`].
pub fn evaluate_system(
    cand: &CentralCandidate,
    system: &VortexSystem,
) -> Result<SystemEvaluation, SolverError> {
    require_four(system, cand.z.len().min(cand.w.len()))?;
    let mut x = [Complex64::default(); 8];
    x[..4].copy_from_slice(&cand.z);
    x[4..].copy_from_slice(&cand.w);
    Ok(evaluate_raw(&x, system.gammas(), cand.lambda, system.angular_momentum()))
}

fn evaluate_raw(x: &[Complex64], g: &[f64], lambda: Complex64, l: f64) -> SystemEvaluation {
    let (z, w) = x.split_at(4);
    let mut m_z = Complex64::default();
    let mut m_w = Complex64::default();
    let mut i_zw = Complex64::default();
    let mut f_upper_z = Complex64::default();
    let mut f_upper_w = Complex64::default();
    for n in 0..4 {
        m_z += g[n] * z[n];
        m_w += g[n] * w[n];
        i_zw += g[n] * z[n] * w[n];
        f_upper_z += g[n] * z[n] * z[n] * w[n];
        f_upper_w += g[n] * z[n] * w[n] * w[n];
    }
    let mut f_lower_z = Complex64::default();
    let mut f_lower_w = Complex64::default();
    let mut g_lower_z = Complex64::default();
    let mut g_lower_w = Complex64::default();
    for j in 0..4 {
        for k in j + 1..4 {
            let gg = g[j] * g[k];
            f_lower_z += gg * (z[j] + z[k]);
            f_lower_w += gg * (w[j] + w[k]);
            let (l1, l2) = complement(j, k);
            g_lower_z += gg * z[l1] * z[l2];
            g_lower_w += gg * w[l1] * w[l2];
        }
    }
    let mut g_upper_z = Complex64::default();
    let mut g_upper_w = Complex64::default();
    for n in 0..4 {
        let mut pz = Complex64::new(1.0, 0.0);
        let mut pw = Complex64::new(1.0, 0.0);
        for m in 0..4 {
            if m != n {
                pz *= z[m];
                pw *= w[m];
            }
        }
        g_upper_z += g[n] * w[n] * pz;
        g_upper_w += g[n] * z[n] * pw;
    }
    let scale = x.iter().map(|c| c.norm()).fold(0.0, f64::max);
    SystemEvaluation {
        m_z,
        m_w,
        l,
        i: i_zw,
        normalization: (z[1] - z[0]) - (w[1] - w[0]),
        f_upper_z,
        f_lower_z,
        f_upper_w,
        f_lower_w,
        g_upper_z,
        g_lower_z,
        g_upper_w,
        g_lower_w,
        lambda,
        scale,
    }
}

/// The two indices of {0,1,2,3} outside {j, k}.
fn complement(j: usize, k: usize) -> (usize, usize) {
    let mut it = (0..4).filter(|&m| m != j && m != k);
    (it.next().unwrap(), it.next().unwrap())
}

/// Analytic complex Jacobian of the eight residual components with respect
/// to (z₁..z₄, w₁..w₄). Rows follow `residual_components`, columns are
/// z then w.
pub fn jacobian(
    cand: &CentralCandidate,
    system: &VortexSystem,
) -> Result<DMatrix<Complex64>, SolverError> {
    require_four(system, cand.z.len().min(cand.w.len()))?;
    let mut x = [Complex64::default(); 8];
    x[..4].copy_from_slice(&cand.z);
    x[4..].copy_from_slice(&cand.w);
    let mut flat = vec![Complex64::default(); 64];
    jacobian_raw(&x, system.gammas(), cand.lambda, &mut flat);
    Ok(DMatrix::from_fn(8, 8, |r, c| flat[r * 8 + c]))
}

pub(super) fn jacobian_raw(x: &[Complex64], g: &[f64], lambda: Complex64, out: &mut [Complex64]) {
    let (z, w) = x.split_at(4);
    out.fill(Complex64::default());
    let gamma: f64 = g.iter().sum();
    fn row(out: &mut [Complex64], r: usize) -> &mut [Complex64] {
        &mut out[r * 8..(r + 1) * 8]
    }

    // M_z, M_w
    for k in 0..4 {
        row(out, 0)[k] = g[k].into();
        row(out, 1)[4 + k] = g[k].into();
    }
    // I = Σ Γ z w
    for k in 0..4 {
        row(out, 2)[k] = g[k] * w[k];
        row(out, 2)[4 + k] = g[k] * z[k];
    }
    // normalization z₂ − z₁ − w₂ + w₁
    row(out, 3)[0] = (-1.0).into();
    row(out, 3)[1] = 1.0.into();
    row(out, 3)[4] = 1.0.into();
    row(out, 3)[5] = (-1.0).into();
    // F_z − Λ f_z with ∂f_z/∂z_k = Γ_k (Γ − Γ_k)
    for k in 0..4 {
        row(out, 4)[k] = 2.0 * g[k] * z[k] * w[k] - lambda * g[k] * (gamma - g[k]);
        row(out, 4)[4 + k] = g[k] * z[k] * z[k];
    }
    // Λ F_w − f_w
    for k in 0..4 {
        row(out, 5)[k] = lambda * g[k] * w[k] * w[k];
        row(out, 5)[4 + k] = lambda * 2.0 * g[k] * z[k] * w[k] - Complex64::from(g[k] * (gamma - g[k]));
    }
    // G_z + Λ g_z and Λ G_w + g_w
    for k in 0..4 {
        // ∂G_z/∂w_k = Γ_k Π_{m≠k} z_m ; ∂G_z/∂z_k = Σ_{n≠k} Γ_n w_n Π_{m≠n,k} z_m
        let mut pz = Complex64::new(1.0, 0.0);
        let mut pw = Complex64::new(1.0, 0.0);
        for m in 0..4 {
            if m != k {
                pz *= z[m];
                pw *= w[m];
            }
        }
        row(out, 6)[4 + k] = g[k] * pz;
        row(out, 7)[k] = lambda * g[k] * pw;
        let mut dz = Complex64::default();
        let mut dw = Complex64::default();
        for n in 0..4 {
            if n == k {
                continue;
            }
            let mut pzn = Complex64::new(1.0, 0.0);
            let mut pwn = Complex64::new(1.0, 0.0);
            for m in 0..4 {
                if m != n && m != k {
                    pzn *= z[m];
                    pwn *= w[m];
                }
            }
            dz += g[n] * w[n] * pzn;
            dw += g[n] * z[n] * pwn;
        }
        row(out, 6)[k] = dz;
        row(out, 7)[4 + k] = lambda * dw;
        // cross terms from g_z, g_w: ∂g_z/∂z_k = Σ_{pairs (j,l) ⊄ k} Γ_j Γ_l z_m
        let mut dgz = Complex64::default();
        let mut dgw = Complex64::default();
        for j in 0..4 {
            for l in j + 1..4 {
                let (m1, m2) = complement(j, l);
                if m1 == k {
                    dgz += g[j] * g[l] * z[m2];
                    dgw += g[j] * g[l] * w[m2];
                } else if m2 == k {
                    dgz += g[j] * g[l] * z[m1];
                    dgw += g[j] * g[l] * w[m1];
                }
            }
        }
        row(out, 6)[k] += lambda * dgz;
        row(out, 7)[4 + k] += dgw;
    }
}

/// Newton view of the quartic system.
pub(super) struct QuarticSystem<'a> {
    pub gammas: &'a [f64],
    pub lambda: Complex64,
    pub l: f64,
}

impl ComplexSystem for QuarticSystem<'_> {
    fn unknowns(&self) -> usize {
        8
    }

    fn equations(&self) -> usize {
        8
    }

    fn residual(&self, x: &[Complex64], out: &mut [Complex64]) {
        let ev = evaluate_raw(x, self.gammas, self.lambda, self.l);
        out.copy_from_slice(&ev.residual_components());
    }

    fn jacobian(&self, x: &[Complex64], out: &mut [Complex64]) {
        jacobian_raw(x, self.gammas, self.lambda, out);
    }

    fn scaled_norm(&self, x: &[Complex64], r: &[Complex64]) -> f64 {
        let s = x.iter().map(|c| c.norm()).fold(0.0_f64, f64::max).max(1.0);
        r.iter()
            .zip(COMPONENT_DEGREES)
            .map(|(c, d)| c.norm() / s.powi(d))
            .fold(0.0, f64::max)
    }
}
