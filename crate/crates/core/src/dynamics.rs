//! Time integration of ż_n = −i V_n and the exact self-similar solution
//! generated by a collapse configuration.

use num_complex::Complex64;
use thiserror::Error;

use crate::configuration::{velocity_field_unchecked, Configuration, ConfigurationError};
use crate::system::VortexSystem;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DynamicsError {
    #[error("t = {t} is at or past the collapse time t* = {t_star}")]
    PastCollapse { t: f64, t_star: f64 },
    #[error(transparent)]
    Configuration(#[from] ConfigurationError),
}

/// Conserved quantities sampled along a trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConservedSample {
    /// Hamiltonian H = −Σ_{j<k} Γ_j Γ_k ln r_jk.
    pub hamiltonian: f64,
    pub moment: Complex64,
    pub angular_impulse: f64,
    pub min_distance: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum TrajectoryStatus {
    Completed,
    /// Minimum pairwise distance fell under the collision threshold; the
    /// trajectory holds everything up to the last accepted step.
    CollisionApproach { t: f64, min_distance: f64 },
    /// The controller drove the step below resolution; last good state kept.
    StepSizeUnderflow { t: f64 },
}

/// First crossing of a min-distance threshold, located by linear
/// interpolation across the accepted step that crossed it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceCrossing {
    pub threshold: f64,
    pub t: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Configuration>,
    pub conserved: Vec<ConservedSample>,
    pub status: TrajectoryStatus,
    pub crossings: Vec<DistanceCrossing>,
}

impl Trajectory {
    pub fn final_time(&self) -> f64 {
        *self.times.last().expect("trajectory holds at least the start")
    }

    pub fn final_state(&self) -> &Configuration {
        self.states.last().expect("trajectory holds at least the start")
    }
}

#[derive(Debug, Clone)]
pub struct IntegrateOptions {
    pub t_end: f64,
    pub rel_tol: f64,
    /// Collision-approach halt at min distance < factor × initial diameter.
    pub collision_factor: f64,
    /// Extra min-distance thresholds (absolute) whose first crossing times
    /// are recorded.
    pub distance_thresholds: Vec<f64>,
    pub max_steps: usize,
}

impl IntegrateOptions {
    pub fn new(t_end: f64, rel_tol: f64) -> Self {
        Self {
            t_end,
            rel_tol,
            collision_factor: 1e-6,
            distance_thresholds: Vec::new(),
            max_steps: 2_000_000,
        }
    }
}

// Dormand-Prince 5(4) tableau.
const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const ERR: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

fn min_distance(z: &[Complex64]) -> f64 {
    let mut m = f64::INFINITY;
    for j in 0..z.len() {
        for k in j + 1..z.len() {
            m = m.min((z[k] - z[j]).norm());
        }
    }
    m
}

fn hamiltonian(z: &[Complex64], g: &[f64]) -> f64 {
    let mut h = 0.0;
    for j in 0..z.len() {
        for k in j + 1..z.len() {
            h -= g[j] * g[k] * (z[k] - z[j]).norm().ln();
        }
    }
    h
}

fn conserved(z: &[Complex64], g: &[f64]) -> ConservedSample {
    let mut moment = Complex64::default();
    let mut impulse = 0.0;
    for (gj, zj) in g.iter().zip(z) {
        moment += gj * zj;
        impulse += gj * zj.norm_sqr();
    }
    ConservedSample {
        hamiltonian: hamiltonian(z, g),
        moment,
        angular_impulse: impulse,
        min_distance: min_distance(z),
    }
}

fn rhs(z: &[Complex64], g: &[f64], out: &mut [Complex64]) {
    let v = velocity_field_unchecked(z, g);
    for (o, vi) in out.iter_mut().zip(v) {
        *o = Complex64::new(0.0, -1.0) * vi;
    }
}

/// Adaptive Dormand-Prince 5(4) integration of the vortex equations with a
/// PI step controller. Accepts negative `t_end` (backward integration).
pub fn integrate(
    config0: &Configuration,
    system: &VortexSystem,
    t_end: f64,
    rel_tol: f64,
) -> Result<Trajectory, DynamicsError> {
    integrate_with(config0, system, &IntegrateOptions::new(t_end, rel_tol))
}

pub fn integrate_with(
    config0: &Configuration,
    system: &VortexSystem,
    opts: &IntegrateOptions,
) -> Result<Trajectory, DynamicsError> {
    // Initial state must be sane; this also catches length mismatches.
    crate::configuration::velocity_field(config0, system)?;
    let g = system.gammas();
    let n = config0.len();
    let diam0 = config0.diameter();
    let collision_threshold = opts.collision_factor * diam0;

    let direction = if opts.t_end < 0.0 { -1.0 } else { 1.0 };
    let t_total = opts.t_end;
    let rtol = opts.rel_tol.max(1e-14);
    // Error control follows the shrinking configuration: the tolerance of a
    // coordinate is relative to itself or to 1% of the current spread,
    // whichever is larger, so collapsing solutions stay resolved all the
    // way down to the collision threshold. The tiny floor only matters if
    // everything sits at the origin.
    let atol_floor = 1e-10 * rtol * diam0;

    let mut t = 0.0_f64;
    let mut y: Vec<Complex64> = config0.positions().to_vec();
    let mut k: Vec<Vec<Complex64>> = vec![vec![Complex64::default(); n]; 7];
    rhs(&y, g, &mut k[0]);

    // Step heuristic: resolve a fraction of the fastest pair timescale.
    let v0 = k[0].iter().map(|c| c.norm()).fold(0.0_f64, f64::max).max(1e-12);
    let mut h = direction * (0.01 * diam0 / v0).min(t_total.abs() / 10.0).max(1e-12);

    let mut times = vec![0.0];
    let mut states = vec![config0.clone()];
    let mut conserved_log = vec![conserved(&y, g)];
    let mut crossings: Vec<DistanceCrossing> = Vec::new();
    let mut pending: Vec<f64> = opts.distance_thresholds.clone();
    pending.retain(|thr| *thr < conserved_log[0].min_distance);
    let mut prev_err: f64 = 1.0;
    let mut last_rejected = false;
    let mut status = TrajectoryStatus::Completed;

    let mut y1 = vec![Complex64::default(); n];
    let mut stage = vec![Complex64::default(); n];

    for _ in 0..opts.max_steps {
        if (t_total - t) * direction <= 0.0 {
            break;
        }
        if (t + h - t_total) * direction > 0.0 {
            h = t_total - t;
        }

        for s in 0..6 {
            for i in 0..n {
                let mut acc = y[i];
                for (j, a) in A[s].iter().enumerate().take(s + 1) {
                    acc += h * a * k[j][i];
                }
                stage[i] = acc;
            }
            rhs(&stage, g, &mut k[s + 1]);
        }
        // 5th-order solution is the last stage evaluation point (FSAL).
        y1.copy_from_slice(&stage);

        let spread = y
            .iter()
            .map(|c| c.norm())
            .fold(0.0_f64, f64::max)
            .max(y1.iter().map(|c| c.norm()).fold(0.0, f64::max));
        let mut err: f64 = 0.0;
        for i in 0..n {
            let mut e = Complex64::default();
            for (j, c) in ERR.iter().enumerate() {
                e += h * c * k[j][i];
            }
            let sc = atol_floor + rtol * y[i].norm().max(y1[i].norm()).max(0.01 * spread);
            err = err.max(e.norm() / sc);
        }

        if err <= 1.0 {
            let t_new = t + h;
            let d_prev = conserved_log.last().expect("nonempty").min_distance;
            let sample = conserved(&y1, g);
            // Threshold crossings, located inside the accepted step.
            pending.retain(|thr| {
                if sample.min_distance < *thr && *thr <= d_prev {
                    let frac = (d_prev - thr) / (d_prev - sample.min_distance);
                    crossings.push(DistanceCrossing { threshold: *thr, t: t + frac * h });
                    false
                } else {
                    true
                }
            });
            t = t_new;
            y.copy_from_slice(&y1);
            k.swap(0, 6); // FSAL
            times.push(t);
            states.push(Configuration::new(y.clone()));
            conserved_log.push(sample);
            if sample.min_distance < collision_threshold {
                status = TrajectoryStatus::CollisionApproach {
                    t,
                    min_distance: sample.min_distance,
                };
                break;
            }
            // PI controller (accepted step).
            let fac = 0.9 * err.max(1e-12).powf(-0.7 / 5.0) * prev_err.powf(0.4 / 5.0);
            let fac = fac.clamp(0.2, if last_rejected { 1.0 } else { 5.0 });
            prev_err = err.max(1e-12);
            last_rejected = false;
            h *= fac;
        } else {
            last_rejected = true;
            h *= (0.9 * err.powf(-0.2)).clamp(0.1, 0.9);
        }
        if h.abs() < 1e-14 * t.abs().max(1.0) {
            status = TrajectoryStatus::StepSizeUnderflow { t };
            break;
        }
    }

    Ok(Trajectory {
        times,
        states,
        conserved: conserved_log,
        status,
        crossings,
    })
}

/// Complex scale factor s(t) of the self-similar solution generated by a
/// configuration with V_n = Λ z_n:
/// |s|² = 1 + 2 Im(Λ) t, arg s = (−Re Λ / (2 Im Λ)) ln(1 + 2 Im(Λ) t).
/// Both follow from ṡ conj(s) = −iΛ, the substitution of z_n(t) = s z_n(0)
/// into ż = −iV.
pub fn self_similar_scale(lambda: Complex64, t: f64) -> Result<Complex64, DynamicsError> {
    let b = lambda.im;
    let rho2 = 1.0 + 2.0 * b * t;
    if rho2 <= 0.0 {
        return Err(DynamicsError::PastCollapse {
            t,
            t_star: -1.0 / (2.0 * b),
        });
    }
    let theta = if b == 0.0 {
        -lambda.re * t
    } else {
        (-lambda.re / (2.0 * b)) * (2.0 * b * t).ln_1p()
    };
    Ok(Complex64::from_polar(rho2.sqrt(), theta))
}

/// Exact state at time t of the self-similar solution launched from
/// `config0` (which must satisfy V_n = Λ z_n, center at the origin).
pub fn self_similar_oracle(
    config0: &Configuration,
    lambda: Complex64,
    t: f64,
) -> Result<Configuration, DynamicsError> {
    let s = self_similar_scale(lambda, t)?;
    Ok(config0.scaled(s))
}

/// Forward collapse time −1/(2 Im Λ) when Im Λ < 0; None otherwise
/// (|s| is constant for real Λ and grows for Im Λ > 0).
pub fn collapse_time(lambda: Complex64) -> Option<f64> {
    if lambda.im < 0.0 {
        Some(-1.0 / (2.0 * lambda.im))
    } else {
        None
    }
}

/// Forward fate of the scale factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScaleFate {
    Collapses { t_star: f64 },
    Expands,
    Isometric,
}

pub fn scale_fate(lambda: Complex64) -> ScaleFate {
    match collapse_time(lambda) {
        Some(t_star) => ScaleFate::Collapses { t_star },
        None if lambda.im > 0.0 => ScaleFate::Expands,
        None => ScaleFate::Isometric,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn collapse_time_values() {
        assert_eq!(collapse_time(Complex64::new(0.0, -1.0)), Some(0.5));
        assert_eq!(collapse_time(Complex64::new(1.0, 0.0)), None);
        assert_eq!(collapse_time(Complex64::new(0.0, 1.0)), None);
        assert_eq!(scale_fate(Complex64::new(0.0, 1.0)), ScaleFate::Expands);
        assert_eq!(scale_fate(Complex64::new(1.0, 0.0)), ScaleFate::Isometric);
    }

    #[test]
    fn oracle_at_zero_is_identity() {
        let config = Configuration::from_parts(&[[1.0, 0.0], [-1.0, 0.5]]);
        let out = self_similar_oracle(&config, Complex64::new(0.3, -0.7), 0.0).unwrap();
        assert_eq!(out, config);
    }

    #[test]
    fn oracle_rejects_past_collapse() {
        let config = Configuration::from_parts(&[[1.0, 0.0], [-1.0, 0.5]]);
        let lambda = Complex64::new(0.0, -1.0); // t* = 1/2
        assert!(self_similar_oracle(&config, lambda, 0.5).is_err());
        assert!(self_similar_oracle(&config, lambda, 0.49).is_ok());
    }

    #[test]
    fn shrinking_scale_preserves_distance_ratios() {
        let config = Configuration::from_parts(&[[1.0, 0.0], [-0.4, 0.8], [0.1, -1.1]]);
        let lambda = Complex64::new(0.6, -0.8);
        let t_star = collapse_time(lambda).unwrap();
        let r = |cfg: &Configuration, j: usize, k: usize| {
            (cfg.position(k) - cfg.position(j)).norm()
        };
        let base = r(&config, 0, 1) / r(&config, 1, 2);
        for frac in [0.5, 0.9, 0.99, 0.999999] {
            let out = self_similar_oracle(&config, lambda, frac * t_star).unwrap();
            let ratio = r(&out, 0, 1) / r(&out, 1, 2);
            assert!((ratio - base).abs() < 1e-12);
        }
        let near = self_similar_oracle(&config, lambda, 0.999999 * t_star).unwrap();
        assert!(near.positions().iter().all(|z| z.norm() < 2e-3));
    }

    #[test]
    fn tracks_the_five_vortex_collapse_until_the_instability_bites() {
        // The self-similar collapse solution is dynamically unstable;
        // rounding-seeded perturbations grow without bound as t → t*. Up
        // to 0.8 t* the integrated trajectory still follows the exact
        // scale law tightly.
        let p = crate::families::FamilyParameter::with_signs(-1.0, 1.0, -1.0).unwrap();
        let (config, sys) = crate::families::family_configuration(&p);
        let lambda = crate::families::family_lambda(&p);
        assert!(lambda.im < 0.0);
        let t_star = collapse_time(lambda).unwrap();
        let traj = integrate(&config, &sys, 0.8 * t_star, 1e-11).unwrap();
        assert_eq!(traj.status, TrajectoryStatus::Completed);
        let mut worst: f64 = 0.0;
        for (t, state) in traj.times.iter().zip(&traj.states) {
            let oracle = self_similar_oracle(&config, lambda, *t).unwrap();
            for (a, b) in state.positions().iter().zip(oracle.positions()) {
                worst = worst.max((a - b).norm());
            }
        }
        assert!(worst < 1e-8, "oracle gap {worst:.3e} before the instability window");
        // Min distance shrinks monotonically along the collapse.
        let d: Vec<f64> = traj.conserved.iter().map(|s| s.min_distance).collect();
        assert!(d.windows(2).all(|w| w[1] < w[0] + 1e-12));
    }

    #[test]
    fn two_vortex_pair_rotates_rigidly() {
        // Γ = (1, 1) at ±1 is a relative equilibrium with λ = 1/2: rotation
        // period 4π. One period brings the pair back; r₁₂ is constant.
        let sys = VortexSystem::new(vec![1.0, 1.0]).unwrap();
        let config = Configuration::from_parts(&[[-1.0, 0.0], [1.0, 0.0]]);
        let period = 4.0 * std::f64::consts::PI;
        let traj = integrate(&config, &sys, period, 1e-10).unwrap();
        assert_eq!(traj.status, TrajectoryStatus::Completed);
        for state in &traj.states {
            let r = (state.position(1) - state.position(0)).norm();
            assert!((r - 2.0).abs() < 1e-8);
        }
        let end = traj.final_state();
        assert!((end.position(0) - config.position(0)).norm() < 1e-7);
    }

    #[test]
    fn opposite_pair_translates() {
        let sys = VortexSystem::new(vec![1.0, -1.0]).unwrap();
        let config = Configuration::from_parts(&[[-1.0, 0.0], [1.0, 0.0]]);
        let traj = integrate(&config, &sys, 3.0, 1e-10).unwrap();
        let end = traj.final_state();
        let gap0 = config.position(1) - config.position(0);
        let gap1 = end.position(1) - end.position(0);
        assert!((gap1 - gap0).norm() < 1e-9);
        // common velocity 1/2 along +x, motion -i*V = -i/2: straight down
        assert!((end.position(0) - (config.position(0) + Complex64::new(0.0, -1.5))).norm() < 1e-8);
    }

    #[test]
    fn backward_integration_returns_home() {
        let sys = VortexSystem::new(vec![1.0, 2.0, -0.5]).unwrap();
        let config = Configuration::from_parts(&[[0.0, 0.0], [1.3, 0.2], [-0.4, 0.9]]);
        let fwd = integrate(&config, &sys, 0.7, 1e-11).unwrap();
        assert_eq!(fwd.status, TrajectoryStatus::Completed);
        let back = integrate(fwd.final_state(), &sys, -0.7, 1e-11).unwrap();
        let home = back.final_state();
        let err = home
            .positions()
            .iter()
            .zip(config.positions())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0_f64, f64::max);
        assert!(err < 1e-7, "round trip error {err}");
    }

    #[test]
    fn conservation_along_generic_motion() {
        let sys = VortexSystem::new(vec![1.0, 2.0, -0.5, 0.8]).unwrap();
        let config =
            Configuration::from_parts(&[[0.0, 0.0], [1.3, 0.2], [-0.4, 0.9], [0.3, -1.0]]);
        let traj = integrate(&config, &sys, 2.0, 1e-10).unwrap();
        assert_eq!(traj.status, TrajectoryStatus::Completed);
        let first = traj.conserved[0];
        for s in &traj.conserved {
            assert!((s.hamiltonian - first.hamiltonian).abs() <= 1e-8 * (1.0 + first.hamiltonian.abs()));
            assert!((s.moment - first.moment).norm() <= 1e-10);
            assert!(
                (s.angular_impulse - first.angular_impulse).abs()
                    <= 1e-8 * (1.0 + first.angular_impulse.abs())
            );
        }
    }
}
