//! Damped Newton / Gauss-Newton iteration on holomorphic square or
//! overdetermined complex systems.
//!
//! Every system solved here is polynomial in its complex unknowns (no
//! conjugations), so the complex Jacobian is the full derivative and the
//! Newton step can stay in complex arithmetic.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub(crate) trait ComplexSystem: Sync {
    /// Number of complex unknowns.
    fn unknowns(&self) -> usize;
    /// Number of complex equations (>= unknowns).
    fn equations(&self) -> usize;
    fn residual(&self, x: &[Complex64], out: &mut [Complex64]);
    /// Row-major Jacobian: `out[eq * unknowns + var]`.
    fn jacobian(&self, x: &[Complex64], out: &mut [Complex64]);
    /// Scale-normalized max-norm used for the convergence test.
    fn scaled_norm(&self, x: &[Complex64], r: &[Complex64]) -> f64;
}

pub(crate) struct NewtonOptions {
    pub tol: f64,
    pub max_iter: usize,
}

pub(crate) struct Workspace {
    r: Vec<Complex64>,
    r_trial: Vec<Complex64>,
    jac: Vec<Complex64>,
    x_trial: Vec<Complex64>,
}

impl Workspace {
    pub fn new(sys: &dyn ComplexSystem) -> Self {
        let m = sys.equations();
        let n = sys.unknowns();
        Self {
            r: vec![Complex64::default(); m],
            r_trial: vec![Complex64::default(); m],
            jac: vec![Complex64::default(); m * n],
            x_trial: vec![Complex64::default(); n],
        }
    }
}

fn norm2(r: &[Complex64]) -> f64 {
    r.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Solve the (possibly overdetermined) correction J δ = −r in the
/// least-squares sense through the complex normal equations.
fn step(jac: &[Complex64], r: &[Complex64], m: usize, n: usize) -> Option<Vec<Complex64>> {
    let a = if m == n {
        DMatrix::from_fn(n, n, |i, j| jac[i * n + j])
    } else {
        // A = J^H J, rhs folded below.
        let mut a = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let mut s = Complex64::default();
                for k in 0..m {
                    s += jac[k * n + i].conj() * jac[k * n + j];
                }
                a[(i, j)] = s;
            }
        }
        a
    };
    let b = if m == n {
        nalgebra::DVector::from_fn(n, |i, _| -r[i])
    } else {
        nalgebra::DVector::from_fn(n, |i, _| {
            let mut s = Complex64::default();
            for k in 0..m {
                s += jac[k * n + i].conj() * r[k];
            }
            -s
        })
    };
    let lu = a.lu();
    lu.solve(&b).map(|d| d.iter().copied().collect())
}

/// Run damped Newton from `x`. Returns true when the scale-normalized
/// residual drops below `tol`; `x` then holds the converged point.
pub(crate) fn solve(
    sys: &dyn ComplexSystem,
    x: &mut [Complex64],
    ws: &mut Workspace,
    opts: &NewtonOptions,
) -> bool {
    let m = sys.equations();
    let n = sys.unknowns();
    for _ in 0..opts.max_iter {
        sys.residual(x, &mut ws.r);
        if sys.scaled_norm(x, &ws.r) <= opts.tol {
            return true;
        }
        sys.jacobian(x, &mut ws.jac);
        let Some(delta) = step(&ws.jac, &ws.r, m, n) else {
            return false;
        };
        let base = norm2(&ws.r);
        if !base.is_finite() {
            return false;
        }
        // Armijo backtracking on the residual norm.
        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..40 {
            for i in 0..n {
                ws.x_trial[i] = x[i] + t * delta[i];
            }
            sys.residual(&ws.x_trial, &mut ws.r_trial);
            let trial = norm2(&ws.r_trial);
            if trial.is_finite() && trial <= (1.0 - 0.25 * t) * base {
                x.copy_from_slice(&ws.x_trial);
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if !accepted {
            return false;
        }
        // Runaway iterates never come back to the unit-scale solution set.
        if x.iter().any(|c| !c.re.is_finite() || !c.im.is_finite())
            || x.iter().map(|c| c.norm()).fold(0.0_f64, f64::max) > 1e8
        {
            return false;
        }
    }
    sys.residual(x, &mut ws.r);
    sys.scaled_norm(x, &ws.r) <= opts.tol
}
