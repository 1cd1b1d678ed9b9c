//! Multistart Newton solver for the doubled (z, w) normalized
//! central-configuration system at fixed Λ, with a unit-circle scan and
//! symmetry-aware deduplication.

mod newton;
pub mod quartic;
pub mod rational;

pub use quartic::{evaluate_system, jacobian, SystemEvaluation};
pub use rational::{cleared_jacobian, cleared_residuals, direct_residual, real_stationarity_residual};

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use thiserror::Error;

use crate::system::VortexSystem;
use newton::{ComplexSystem, NewtonOptions, Workspace};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    #[error("the quartic system form needs exactly {expected} vortices, got {got}")]
    Dimension { expected: usize, got: usize },
}

/// A point of the doubled system: positions z, conjugate-track w, and the
/// multiplier Λ. Real candidates have w_n = conj(z_n); at solutions the
/// normalization z₂ − z₁ = w₂ − w₁ holds.
#[derive(Debug, Clone, PartialEq)]
pub struct CentralCandidate {
    pub z: Vec<Complex64>,
    pub w: Vec<Complex64>,
    pub lambda: Complex64,
}

impl CentralCandidate {
    /// Largest coordinate magnitude over z and w.
    pub fn scale(&self) -> f64 {
        self.z
            .iter()
            .chain(&self.w)
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    /// True when w is the conjugate of z within `tol * scale`.
    pub fn is_real(&self, tol: f64) -> bool {
        let s = self.scale().max(1e-300);
        self.z
            .iter()
            .zip(&self.w)
            .map(|(zi, wi)| (wi - zi.conj()).norm())
            .fold(0.0_f64, f64::max)
            <= tol * s
    }

    fn min_separation(v: &[Complex64]) -> f64 {
        let mut m = f64::INFINITY;
        for j in 0..v.len() {
            for k in j + 1..v.len() {
                m = m.min((v[k] - v[j]).norm());
            }
        }
        m
    }

    /// Flip the global ± sign into a canonical representative: the largest
    /// coordinate gets a nonnegative real part.
    fn canonicalize(&mut self) {
        let lead = self
            .z
            .iter()
            .chain(&self.w)
            .max_by(|a, b| a.norm().total_cmp(&b.norm()))
            .copied()
            .unwrap_or_default();
        if lead.re < 0.0 || (lead.re == 0.0 && lead.im < 0.0) {
            for c in self.z.iter_mut().chain(self.w.iter_mut()) {
                *c = -*c;
            }
        }
    }

    /// Distance to another candidate modulo the global ± symmetry
    /// (max-norm over coordinates).
    pub fn distance_mod_sign(&self, other: &CentralCandidate) -> f64 {
        let direct = self
            .z
            .iter()
            .chain(&self.w)
            .zip(other.z.iter().chain(&other.w))
            .map(|(a, b)| (a - b).norm())
            .fold(0.0_f64, f64::max);
        let flipped = self
            .z
            .iter()
            .chain(&self.w)
            .zip(other.z.iter().chain(&other.w))
            .map(|(a, b)| (a + b).norm())
            .fold(0.0_f64, f64::max);
        direct.min(flipped)
    }
}

/// One converged, accepted solution.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub candidate: CentralCandidate,
    /// Scale-normalized max-norm residual of the polynomial system.
    pub residual: f64,
    /// w = conj(z) within the solver's reality tolerance.
    pub real: bool,
}

/// Per-grid-point bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaTally {
    pub lambda: Complex64,
    /// Distinct solutions found at this Λ (after dedup).
    pub distinct: usize,
    /// Distinct real solutions with Im Λ ≠ 0, i.e. real collapse solutions.
    pub real_collapse: usize,
    /// Λ = ±1: a relative-equilibrium point, excluded from collapse tallies.
    pub excluded_from_collapse: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SolutionSet {
    pub solutions: Vec<Solution>,
    pub tallies: Vec<LambdaTally>,
    pub warnings: Vec<String>,
}

impl SolutionSet {
    pub fn lambda_grid(&self) -> Vec<Complex64> {
        self.tallies.iter().map(|t| t.lambda).collect()
    }

    /// Λ values carrying at least one real collapse solution.
    pub fn collapse_lambdas(&self) -> Vec<Complex64> {
        self.tallies
            .iter()
            .filter(|t| !t.excluded_from_collapse && t.real_collapse > 0)
            .map(|t| t.lambda)
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct SolverOptions {
    /// Newton starts per Λ.
    pub starts: usize,
    pub seed: u64,
    /// Convergence threshold on the scale-normalized residual.
    pub tol: f64,
    pub max_iter: usize,
    /// Coordinate-space threshold under which two candidates are the same
    /// solution.
    pub dedup_tol: f64,
    /// Reality threshold on max |w − conj z| relative to scale.
    pub real_tol: f64,
    /// Candidates with min pairwise |z_jk| or |w_jk| below this times scale
    /// are collision points of the cleared system and are discarded.
    pub collision_factor: f64,
    /// Standard deviation of the Gaussian seeding cloud.
    pub seed_scale: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            starts: 2000,
            seed: 0,
            tol: 1e-10,
            max_iter: 60,
            dedup_tol: 1e-6,
            real_tol: 1e-7,
            collision_factor: 1e-8,
            seed_scale: 1.0,
        }
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Solve the fixed-Λ system from `opts.starts` random seeds.
///
/// Trivial (near-zero) and collision points are discarded, the survivors
/// deduplicated modulo (z, w) → (−z, −w) and flagged real when
/// w ≈ conj(z). An empty set is a valid outcome.
pub fn solve_fixed_lambda(
    system: &VortexSystem,
    lambda: Complex64,
    opts: &SolverOptions,
) -> SolutionSet {
    let mut warnings = Vec::new();
    if (lambda.norm() - 1.0).abs() > 1e-9 {
        warnings.push(format!(
            "|Λ| = {:.6} is off the unit circle; the normalized system expects |Λ| = 1",
            lambda.norm()
        ));
    }
    if system.angular_momentum().abs() > 1e-9 * system.momentum_scale() {
        warnings.push(format!(
            "L = {:.3e} is not zero; the collapse system assumes L = 0",
            system.angular_momentum()
        ));
    }

    let n = system.len();
    let quartic_form;
    let cleared_form;
    let sys: &dyn ComplexSystem = if n == 4 {
        quartic_form = quartic::QuarticSystem {
            gammas: system.gammas(),
            lambda,
            l: system.angular_momentum(),
        };
        &quartic_form
    } else {
        cleared_form = rational::ClearedSystem { gammas: system.gammas(), lambda, n };
        &cleared_form
    };

    // Seeding: complex Gaussian cloud; every other start is reflected onto
    // the real slice w = conj(z), which the iteration preserves and which
    // real solutions live on.
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut starts = Vec::with_capacity(opts.starts);
    for i in 0..opts.starts {
        let mut x = vec![Complex64::default(); 2 * n];
        for c in x.iter_mut() {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            *c = Complex64::new(re, im) * opts.seed_scale;
        }
        if i % 2 == 1 {
            for k in 0..n {
                x[n + k] = x[k].conj();
            }
        }
        starts.push(x);
    }

    let newton_opts = NewtonOptions { tol: opts.tol, max_iter: opts.max_iter };
    let converged: Vec<Vec<Complex64>> = starts
        .into_par_iter()
        .map_init(
            || Workspace::new(sys),
            |ws, mut x| {
                if newton::solve(sys, &mut x, ws, &newton_opts) {
                    Some(x)
                } else {
                    None
                }
            },
        )
        .flatten()
        .collect();

    let mut solutions = Vec::new();
    for x in converged {
        let cand = CentralCandidate {
            z: x[..n].to_vec(),
            w: x[n..].to_vec(),
            lambda,
        };
        let scale = cand.scale();
        if scale < 1e-8 * opts.seed_scale.max(1.0) {
            continue; // the trivial solution
        }
        if CentralCandidate::min_separation(&cand.z) < opts.collision_factor * scale
            || CentralCandidate::min_separation(&cand.w) < opts.collision_factor * scale
        {
            continue; // collision points are trivial by the L = 0 analysis
        }
        // The cleared polynomial form picks up spurious components along the
        // collision varieties; a genuine solution also solves the rational
        // system, so gate on the uncleared residual.
        if rational::direct_residual(&cand, system) > 10.0 * opts.tol * scale.max(1.0) {
            continue;
        }
        let mut r = vec![Complex64::default(); sys.equations()];
        sys.residual(&x, &mut r);
        let residual = sys.scaled_norm(&x, &r);
        let real = cand.is_real(opts.real_tol);
        let mut cand = cand;
        cand.canonicalize();
        solutions.push(Solution { candidate: cand, residual, real });
    }

    let set = SolutionSet {
        solutions,
        tallies: Vec::new(),
        warnings,
    };
    let mut set = dedup(set, opts.dedup_tol);
    set.tallies = vec![tally_for(lambda, &set.solutions)];
    set
}

fn is_unit_real(lambda: Complex64) -> bool {
    (lambda - Complex64::new(1.0, 0.0)).norm() < 1e-9
        || (lambda + Complex64::new(1.0, 0.0)).norm() < 1e-9
}

fn tally_for(lambda: Complex64, solutions: &[Solution]) -> LambdaTally {
    let here: Vec<&Solution> = solutions
        .iter()
        .filter(|s| s.candidate.lambda == lambda)
        .collect();
    let excluded = is_unit_real(lambda);
    LambdaTally {
        lambda,
        distinct: here.len(),
        real_collapse: if excluded {
            0
        } else {
            here.iter().filter(|s| s.real).count()
        },
        excluded_from_collapse: excluded,
    }
}

/// Scan Λ = e^{2πik/K} over the unit circle, recording per-Λ real collapse
/// counts. Λ = ±1 grid points are solved (they carry the relative
/// equilibria) but excluded from the collapse tally.
pub fn scan_lambda(
    system: &VortexSystem,
    grid_size: usize,
    opts: &SolverOptions,
) -> SolutionSet {
    assert!(grid_size >= 4, "scan needs at least 4 grid points");
    let points: Vec<(usize, Complex64)> = (0..grid_size)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / grid_size as f64;
            (k, Complex64::from_polar(1.0, theta))
        })
        .collect();

    let mut out = SolutionSet::default();
    for (k, lambda) in points {
        let mut point_opts = opts.clone();
        point_opts.seed = splitmix64(opts.seed ^ (k as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let set = solve_fixed_lambda(system, lambda, &point_opts);
        for w in set.warnings {
            if !out.warnings.contains(&w) {
                out.warnings.push(w);
            }
        }
        out.solutions.extend(set.solutions);
        out.tallies.extend(set.tallies);
    }
    out
}

/// Deduplicate modulo (z, w) → (−z, −w): canonical representative per
/// orbit, candidates closer than `tol` in any ±-aligned coordinate
/// max-norm collapse to one.
pub fn dedup(set: SolutionSet, tol: f64) -> SolutionSet {
    let mut solutions = set.solutions;
    for s in solutions.iter_mut() {
        s.candidate.canonicalize();
    }
    solutions.sort_by(|a, b| sort_key(a, b));
    let mut kept: Vec<Solution> = Vec::with_capacity(solutions.len());
    for s in solutions {
        let dup = kept.iter().any(|k| {
            k.candidate.lambda == s.candidate.lambda
                && k.candidate.distance_mod_sign(&s.candidate) <= tol
        });
        if !dup {
            kept.push(s);
        }
    }
    let tallies = if set.tallies.is_empty() {
        Vec::new()
    } else {
        set.tallies
            .iter()
            .map(|t| tally_for(t.lambda, &kept))
            .collect()
    };
    SolutionSet {
        solutions: kept,
        tallies,
        warnings: set.warnings,
    }
}

fn sort_key(a: &Solution, b: &Solution) -> std::cmp::Ordering {
    let la = (a.candidate.lambda.re, a.candidate.lambda.im);
    let lb = (b.candidate.lambda.re, b.candidate.lambda.im);
    la.0.total_cmp(&lb.0)
        .then(la.1.total_cmp(&lb.1))
        .then_with(|| {
            for (x, y) in a
                .candidate
                .z
                .iter()
                .chain(&a.candidate.w)
                .zip(b.candidate.z.iter().chain(&b.candidate.w))
            {
                let c = x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im));
                if c != std::cmp::Ordering::Equal {
                    return c;
                }
            }
            std::cmp::Ordering::Equal
        })
}
