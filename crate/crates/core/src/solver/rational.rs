//! General-N normalized central-configuration system: the doubled (z, w)
//! rational equations with denominators cleared, plus the uncleared
//! residual used as an independent cross-check.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::newton::ComplexSystem;
use super::CentralCandidate;
use crate::system::VortexSystem;

/// Cleared polynomial residuals of
///   Λ z_n = Σ_{j≠n} Γ_j / (w_n − w_j),
///   w_n = Λ Σ_{j≠n} Γ_j / (z_n − z_j),
///   z₂ − z₁ = w₂ − w₁,
/// obtained by multiplying the n-th equation through by the product of its
/// denominators. 2N + 1 components; the last is the normalization.
pub fn cleared_residuals(cand: &CentralCandidate, system: &VortexSystem) -> Vec<Complex64> {
    let n = system.len();
    let mut x = Vec::with_capacity(2 * n);
    x.extend_from_slice(&cand.z);
    x.extend_from_slice(&cand.w);
    let mut out = vec![Complex64::default(); 2 * n + 1];
    let sys = ClearedSystem { gammas: system.gammas(), lambda: cand.lambda, n };
    sys.residual(&x, &mut out);
    out
}

/// Analytic Jacobian of [`cleared_residuals`] with respect to
/// (z₁..z_N, w₁..w_N), shape (2N+1) × 2N.
pub fn cleared_jacobian(cand: &CentralCandidate, system: &VortexSystem) -> DMatrix<Complex64> {
    let n = system.len();
    let mut x = Vec::with_capacity(2 * n);
    x.extend_from_slice(&cand.z);
    x.extend_from_slice(&cand.w);
    let mut flat = vec![Complex64::default(); (2 * n + 1) * 2 * n];
    let sys = ClearedSystem { gammas: system.gammas(), lambda: cand.lambda, n };
    sys.jacobian(&x, &mut flat);
    DMatrix::from_fn(2 * n + 1, 2 * n, |r, c| flat[r * 2 * n + c])
}

/// Uncleared residual of the doubled rational system, max-norm over the
/// 2N + 1 equations. Independent of the polynomial routes: evaluated
/// directly from the defining sums.
pub fn direct_residual(cand: &CentralCandidate, system: &VortexSystem) -> f64 {
    let g = system.gammas();
    let n = g.len();
    let lambda = cand.lambda;
    let mut worst: f64 = 0.0;
    for i in 0..n {
        let mut sw = Complex64::default();
        let mut sz = Complex64::default();
        for j in 0..n {
            if j != i {
                sw += g[j] / (cand.w[i] - cand.w[j]);
                sz += g[j] / (cand.z[i] - cand.z[j]);
            }
        }
        worst = worst.max((lambda * cand.z[i] - sw).norm());
        worst = worst.max((cand.w[i] - lambda * sz).norm());
    }
    worst.max(((cand.z[1] - cand.z[0]) - (cand.w[1] - cand.w[0])).norm())
}

/// Residual of V_n = Λ z_n for the real configuration carried by `z`
/// (velocities evaluated from the positions themselves). For a real
/// candidate this is the stationarity residual of the underlying
/// configuration.
pub fn real_stationarity_residual(cand: &CentralCandidate, system: &VortexSystem) -> f64 {
    let v = crate::configuration::velocity_field_unchecked(&cand.z, system.gammas());
    v.iter()
        .zip(&cand.z)
        .map(|(vi, zi)| (vi - cand.lambda * zi).norm())
        .fold(0.0, f64::max)
}

pub(super) struct ClearedSystem<'a> {
    pub gammas: &'a [f64],
    pub lambda: Complex64,
    pub n: usize,
}

impl ClearedSystem<'_> {
    /// Π_{j≠n, j∉skip} (v_n − v_j)
    fn prod_excluding(&self, v: &[Complex64], n: usize, skip: &[usize]) -> Complex64 {
        let mut p = Complex64::new(1.0, 0.0);
        for j in 0..self.n {
            if j != n && !skip.contains(&j) {
                p *= v[n] - v[j];
            }
        }
        p
    }
}

impl ComplexSystem for ClearedSystem<'_> {
    fn unknowns(&self) -> usize {
        2 * self.n
    }

    fn equations(&self) -> usize {
        2 * self.n + 1
    }

    fn residual(&self, x: &[Complex64], out: &mut [Complex64]) {
        let (z, w) = x.split_at(self.n);
        let g = self.gammas;
        for i in 0..self.n {
            // Λ z_i Π_j (w_i − w_j) − Σ_j Γ_j Π_{k≠j} (w_i − w_k)
            let mut acc = self.lambda * z[i] * self.prod_excluding(w, i, &[]);
            for j in 0..self.n {
                if j != i {
                    acc -= g[j] * self.prod_excluding(w, i, &[j]);
                }
            }
            out[i] = acc;
            // w_i Π_j (z_i − z_j) − Λ Σ_j Γ_j Π_{k≠j} (z_i − z_k)
            let mut acc = w[i] * self.prod_excluding(z, i, &[]);
            for j in 0..self.n {
                if j != i {
                    acc -= self.lambda * g[j] * self.prod_excluding(z, i, &[j]);
                }
            }
            out[self.n + i] = acc;
        }
        out[2 * self.n] = (z[1] - z[0]) - (w[1] - w[0]);
    }

    fn jacobian(&self, x: &[Complex64], out: &mut [Complex64]) {
        let (z, w) = x.split_at(self.n);
        let g = self.gammas;
        let n = self.n;
        let cols = 2 * n;
        out.fill(Complex64::default());
        for i in 0..n {
            // z-equation row i
            {
                let row = &mut out[i * cols..(i + 1) * cols];
                row[i] = self.lambda * self.prod_excluding(w, i, &[]);
                // ∂/∂w_m, m ≠ i
                for m in 0..n {
                    if m == i {
                        continue;
                    }
                    let mut d = -self.lambda * z[i] * self.prod_excluding(w, i, &[m]);
                    for j in 0..n {
                        if j != i && j != m {
                            d += g[j] * self.prod_excluding(w, i, &[j, m]);
                        }
                    }
                    row[n + m] = d;
                }
                // ∂/∂w_i: every factor (w_i − w_j) contributes +1
                let mut d = Complex64::default();
                for l in 0..n {
                    if l != i {
                        d += self.lambda * z[i] * self.prod_excluding(w, i, &[l]);
                    }
                }
                for j in 0..n {
                    if j == i {
                        continue;
                    }
                    for l in 0..n {
                        if l != i && l != j {
                            d -= g[j] * self.prod_excluding(w, i, &[j, l]);
                        }
                    }
                }
                row[n + i] = d;
            }
            // w-equation row n + i, mirrored with the Λ on the sum side
            {
                let row = &mut out[(n + i) * cols..(n + i + 1) * cols];
                row[n + i] = self.prod_excluding(z, i, &[]);
                for m in 0..n {
                    if m == i {
                        continue;
                    }
                    let mut d = -w[i] * self.prod_excluding(z, i, &[m]);
                    for j in 0..n {
                        if j != i && j != m {
                            d += self.lambda * g[j] * self.prod_excluding(z, i, &[j, m]);
                        }
                    }
                    row[m] = d;
                }
                let mut d = Complex64::default();
                for l in 0..n {
                    if l != i {
                        d += w[i] * self.prod_excluding(z, i, &[l]);
                    }
                }
                for j in 0..n {
                    if j == i {
                        continue;
                    }
                    for l in 0..n {
                        if l != i && l != j {
                            d -= self.lambda * g[j] * self.prod_excluding(z, i, &[j, l]);
                        }
                    }
                }
                row[i] = d;
            }
        }
        let row = &mut out[2 * n * cols..(2 * n + 1) * cols];
        row[0] = (-1.0).into();
        row[1] = 1.0.into();
        row[n] = 1.0.into();
        row[n + 1] = (-1.0).into();
    }

    fn scaled_norm(&self, x: &[Complex64], r: &[Complex64]) -> f64 {
        let s = x.iter().map(|c| c.norm()).fold(0.0_f64, f64::max).max(1.0);
        let sn = s.powi(self.n as i32);
        let mut worst: f64 = 0.0;
        for (k, c) in r.iter().enumerate() {
            let denom = if k == 2 * self.n { s } else { sn };
            worst = worst.max(c.norm() / denom);
        }
        worst
    }
}
