//! Vorticity vectors and their scalar invariants.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VorticityError {
    #[error("a vortex system needs at least two vortices, got {0}")]
    TooFew(usize),
    #[error("vorticity {index} is zero (all vorticities must be nonzero)")]
    ZeroVorticity { index: usize },
}

/// The vorticities Γ₁..Γ_N of an N-vortex problem. All entries are nonzero
/// reals and N ≥ 2; both are enforced at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct VortexSystem {
    gammas: Vec<f64>,
}

impl VortexSystem {
    pub fn new(gammas: Vec<f64>) -> Result<Self, VorticityError> {
        if gammas.len() < 2 {
            return Err(VorticityError::TooFew(gammas.len()));
        }
        for (index, g) in gammas.iter().enumerate() {
            if *g == 0.0 || !g.is_finite() {
                return Err(VorticityError::ZeroVorticity { index });
            }
        }
        Ok(Self { gammas })
    }

    pub fn len(&self) -> usize {
        self.gammas.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    pub fn gamma(&self, n: usize) -> f64 {
        self.gammas[n]
    }

    /// Total vorticity Γ = Σ Γ_j.
    pub fn total_vorticity(&self) -> f64 {
        self.gammas.iter().sum()
    }

    /// Total vortex angular momentum L = Σ_{j<k} Γ_j Γ_k.
    pub fn angular_momentum(&self) -> f64 {
        let mut l = 0.0;
        for j in 0..self.gammas.len() {
            for k in j + 1..self.gammas.len() {
                l += self.gammas[j] * self.gammas[k];
            }
        }
        l
    }

    /// Σ Γ_j², which always equals Γ² − 2L. Positive, so Γ² − 2L > 0.
    pub fn sum_of_squares(&self) -> f64 {
        self.gammas.iter().map(|g| g * g).sum()
    }

    /// Natural magnitude of pairwise products, used to scale tolerances on L.
    pub fn momentum_scale(&self) -> f64 {
        let mut s = 0.0;
        for j in 0..self.gammas.len() {
            for k in j + 1..self.gammas.len() {
                s += (self.gammas[j] * self.gammas[k]).abs();
            }
        }
        s
    }
}
