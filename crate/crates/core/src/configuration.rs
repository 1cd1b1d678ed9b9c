//! Vortex positions, the complex velocity field and the classical invariants.

use num_complex::Complex64;
use thiserror::Error;

use crate::system::VortexSystem;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigurationError {
    #[error("positions ({positions}) and vorticities ({gammas}) have different lengths")]
    LengthMismatch { positions: usize, gammas: usize },
    #[error("vortices {j} and {k} are closer than the collision threshold ({dist:.3e} <= {eps:.3e})")]
    Collision { j: usize, k: usize, dist: f64, eps: f64 },
}

/// Positions z₁..z_N of the vortices, as complex numbers.
///
/// A configuration does not own its vorticities; operations take the
/// [`VortexSystem`] alongside so the same geometry can be reused.
#[derive(Debug, Clone, PartialEq)]
pub struct Configuration {
    positions: Vec<Complex64>,
}

impl Configuration {
    pub fn new(positions: Vec<Complex64>) -> Self {
        Self { positions }
    }

    pub fn from_parts(parts: &[[f64; 2]]) -> Self {
        Self::new(parts.iter().map(|p| Complex64::new(p[0], p[1])).collect())
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn positions(&self) -> &[Complex64] {
        &self.positions
    }

    pub fn position(&self, n: usize) -> Complex64 {
        self.positions[n]
    }

    /// Largest pairwise distance.
    pub fn diameter(&self) -> f64 {
        let mut d: f64 = 0.0;
        for j in 0..self.positions.len() {
            for k in j + 1..self.positions.len() {
                d = d.max((self.positions[k] - self.positions[j]).norm());
            }
        }
        d
    }

    /// Smallest pairwise distance together with the offending pair.
    pub fn min_separation(&self) -> (f64, usize, usize) {
        let mut best = (f64::INFINITY, 0, 0);
        for j in 0..self.positions.len() {
            for k in j + 1..self.positions.len() {
                let d = (self.positions[k] - self.positions[j]).norm();
                if d < best.0 {
                    best = (d, j, k);
                }
            }
        }
        best
    }

    /// Scale-free collision guard: minimum separation must exceed
    /// `1e-12 * diameter`.
    pub fn collision_epsilon(&self) -> f64 {
        1e-12 * self.diameter()
    }

    pub fn check_collision_free(&self) -> Result<(), ConfigurationError> {
        let eps = self.collision_epsilon();
        let (dist, j, k) = self.min_separation();
        if dist <= eps {
            return Err(ConfigurationError::Collision { j, k, dist, eps });
        }
        Ok(())
    }

    pub fn translated(&self, a: Complex64) -> Self {
        Self::new(self.positions.iter().map(|z| z + a).collect())
    }

    pub fn scaled(&self, b: Complex64) -> Self {
        Self::new(self.positions.iter().map(|z| z * b).collect())
    }
}

/// The five scalar invariants of a configuration/vorticity pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvariantSet {
    /// Total vorticity Γ.
    pub total_vorticity: f64,
    /// Total vortex angular momentum L (a function of the vorticities alone).
    pub angular_momentum: f64,
    /// Moment of vorticity M = Σ Γ_j z_j.
    pub moment: Complex64,
    /// Angular impulse I = Σ Γ_j |z_j|².
    pub angular_impulse: f64,
    /// Weighted sum S = Σ_{j<k} Γ_j Γ_k r_jk², which equals ΓI − |M|².
    pub weighted_sum: f64,
}

fn check_lengths(config: &Configuration, system: &VortexSystem) -> Result<(), ConfigurationError> {
    if config.len() != system.len() {
        return Err(ConfigurationError::LengthMismatch {
            positions: config.len(),
            gammas: system.len(),
        });
    }
    Ok(())
}

/// Velocity field V_n = Σ_{j≠n} Γ_j / conj(z_n − z_j).
///
/// The motion itself is ż_n = −i V_n.
pub fn velocity_field(
    config: &Configuration,
    system: &VortexSystem,
) -> Result<Vec<Complex64>, ConfigurationError> {
    check_lengths(config, system)?;
    config.check_collision_free()?;
    Ok(velocity_field_unchecked(config.positions(), system.gammas()))
}

/// Same field without the collision guard; callers own the check.
pub(crate) fn velocity_field_unchecked(positions: &[Complex64], gammas: &[f64]) -> Vec<Complex64> {
    let n = positions.len();
    let mut v = vec![Complex64::new(0.0, 0.0); n];
    for i in 0..n {
        let mut s = Complex64::new(0.0, 0.0);
        for j in 0..n {
            if j != i {
                s += gammas[j] / (positions[i] - positions[j]).conj();
            }
        }
        v[i] = s;
    }
    v
}

/// All five invariants. S is computed from the pairwise distances; the
/// identity S = ΓI − |M|² is a theorem about these values, not an input.
pub fn invariants(
    config: &Configuration,
    system: &VortexSystem,
) -> Result<InvariantSet, ConfigurationError> {
    check_lengths(config, system)?;
    let z = config.positions();
    let g = system.gammas();
    let mut moment = Complex64::new(0.0, 0.0);
    let mut impulse = 0.0;
    for j in 0..z.len() {
        moment += g[j] * z[j];
        impulse += g[j] * z[j].norm_sqr();
    }
    let mut weighted = 0.0;
    for j in 0..z.len() {
        for k in j + 1..z.len() {
            weighted += g[j] * g[k] * (z[k] - z[j]).norm_sqr();
        }
    }
    Ok(InvariantSet {
        total_vorticity: system.total_vorticity(),
        angular_momentum: system.angular_momentum(),
        moment,
        angular_impulse: impulse,
        weighted_sum: weighted,
    })
}

impl InvariantSet {
    /// Residual of the identity S = ΓI − |M|², relative to 1 + |S|.
    pub fn identity_residual(&self) -> f64 {
        let lhs = self.weighted_sum;
        let rhs = self.total_vorticity * self.angular_impulse - self.moment.norm_sqr();
        (lhs - rhs).abs() / (1.0 + lhs.abs())
    }
}
