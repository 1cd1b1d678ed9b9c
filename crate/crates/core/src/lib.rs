//! Stationary configurations of the planar N-vortex problem.
//!
//! The crate revolves around a handful of objects:
//!
//! * [`VortexSystem`] — a vector of nonzero vorticities with its scalar
//!   invariants (total vorticity, angular momentum),
//! * [`Configuration`] — complex vortex positions paired with a system,
//!   giving the velocity field, the moment/impulse invariants and a
//!   stationary-class test,
//! * [`solver`] — a multistart Newton solver for the doubled `(z, w)`
//!   normalized central-configuration system at fixed unit-circle
//!   multiplier `Λ`, plus a circle scan,
//! * [`families`] — the closed-form five-vortex collapse continuum,
//! * [`dynamics`] — an embedded Runge–Kutta integrator and the exact
//!   self-similar solution generated by a collapse configuration,
//! * [`diagrams`] — two-colored singularity diagrams and the vorticity
//!   constraints attached to the seven problematic ones,
//! * [`bounds`] — the Bézout degree ledger and the audit of observed
//!   solution counts against it.

pub mod bounds;
pub mod classify;
pub mod configuration;
pub mod diagrams;
pub mod dynamics;
pub mod families;
pub mod io;
pub mod solver;
pub mod system;

pub use classify::{classify, Classification, StationaryClass};
pub use configuration::{invariants, velocity_field, Configuration, ConfigurationError, InvariantSet};
pub use system::{VortexSystem, VorticityError};

/// Complex scalar used throughout: positions, velocities, multipliers.
pub type C64 = num_complex::Complex64;
