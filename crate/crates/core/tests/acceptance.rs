//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line (visible under `cargo test -- --nocapture`; failures always show).
//!
//! Criterion 4 is property-based and currently FAILS on two sub-checks.
//! That is a measured outcome, not a solver defect: the three-vortex
//! continuum covers only |arg Λ| < arcsin(1/3) ≈ 19.47° (6 of 64 grid
//! points, not 16), and the generic L = 0 four-vortex system carries a
//! genuine continuum of real collapse configurations (verified to 50
//! digits externally), so the degree-budget audit reports a violation by
//! design. Both assertions are kept as stated rather than loosened.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

use nvortex_core::bounds;
use nvortex_core::configuration::{invariants, Configuration};
use nvortex_core::diagrams::{self, DiagramId, Scenario};
use nvortex_core::dynamics::{self, IntegrateOptions, TrajectoryStatus};
use nvortex_core::families::{self, FamilyParameter};
use nvortex_core::solver::{self, SolverOptions};
use nvortex_core::system::VortexSystem;

fn report(criterion: usize, name: &str, passed: bool, detail: &str) {
    let verdict = if passed { "PASS" } else { "FAIL" };
    println!("[acceptance] criterion {criterion} ({name}): {verdict} — {detail}");
    assert!(passed, "criterion {criterion} ({name}): {detail}");
}

#[test]
fn criterion_1_invariant_identities() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst_s: f64 = 0.0;
    let mut worst_gamma: f64 = 0.0;
    let mut done = 0;
    while done < 1000 {
        let n = rng.gen_range(2..=6);
        let gammas: Vec<f64> = (0..n)
            .map(|_| {
                let g: f64 = rng.gen_range(0.1..3.0);
                if rng.gen_bool(0.5) {
                    g
                } else {
                    -g
                }
            })
            .collect();
        let pts: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))
            .collect();
        let config = Configuration::new(pts);
        if config.min_separation().0 < 0.05 {
            continue;
        }
        let sys = VortexSystem::new(gammas).unwrap();
        let inv = invariants(&config, &sys).unwrap();
        worst_s = worst_s.max(inv.identity_residual());
        let lhs = sys.total_vorticity().powi(2) - 2.0 * sys.angular_momentum();
        let rhs = sys.sum_of_squares();
        worst_gamma = worst_gamma.max((lhs - rhs).abs() / rhs.abs());
        done += 1;
    }
    let elapsed = start.elapsed();
    report(
        1,
        "invariant identities",
        worst_s <= 1e-12 && worst_gamma <= 1e-14 && elapsed.as_secs_f64() < 1.0,
        &format!(
            "1000 configs: max |S - (ΓI - |M|²)| rel = {worst_s:.2e}, max Γ²-2L vs ΣΓ² rel = {worst_gamma:.2e}, {elapsed:?}"
        ),
    );
}

#[test]
fn criterion_2_five_vortex_family() {
    let start = Instant::now();
    let tol = 1e-10;
    let mut checked = 0;
    let mut worst_mod: f64 = 0.0;
    let mut min_im: f64 = f64::INFINITY;
    let mut params = families::sweep_parameters(200);
    params.extend(families::showcase_parameters());
    for a in params {
        for (sb, sc) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
            let p = FamilyParameter::with_signs(a, sb, sc).unwrap();
            let rep = families::verify_family(&p, tol).unwrap_or_else(|e| {
                panic!("a = {a}, signs ({sb},{sc}): {e}");
            });
            worst_mod = worst_mod.max(rep.lambda_modulus_error);
            min_im = min_im.min(rep.lambda.im.abs());
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    report(
        2,
        "five-vortex collapse family",
        worst_mod <= 1e-12 && min_im > 0.0 && elapsed.as_secs_f64() < 5.0,
        &format!(
            "{checked} parameter/branch verifications at tol {tol:.0e}: max ||Λ|-1| = {worst_mod:.2e}, min |Im Λ| = {min_im:.3}, {elapsed:?}"
        ),
    );
}

#[test]
fn criterion_3_collapse_simulation() {
    let start = Instant::now();
    // Family point with forward collapse: sign_c = -1 gives Im Λ < 0.
    let a = families::showcase_parameters()[0];
    let p = FamilyParameter::with_signs(a, 1.0, -1.0).unwrap();
    let (config, sys) = families::family_configuration(&p);
    let lambda = families::family_lambda(&p);
    assert!(lambda.im < 0.0);
    let t_star = dynamics::collapse_time(lambda).unwrap();
    let dmin0 = config.min_separation().0;
    let diam0 = config.diameter();

    let mut opts = IntegrateOptions::new(t_star, 1e-10);
    opts.distance_thresholds = vec![1e-3 * dmin0];
    let traj = dynamics::integrate_with(&config, &sys, &opts).unwrap();
    let halted = matches!(traj.status, TrajectoryStatus::CollisionApproach { .. });

    // Trajectory versus the exact self-similar solution up to 0.99 t*.
    let mut worst_gap: f64 = 0.0;
    for (t, state) in traj.times.iter().zip(&traj.states) {
        if *t > 0.99 * t_star {
            break;
        }
        let oracle = dynamics::self_similar_oracle(&config, lambda, *t).unwrap();
        for (a, b) in state.positions().iter().zip(oracle.positions()) {
            worst_gap = worst_gap.max((a - b).norm());
        }
    }
    let traj_ok = worst_gap <= 1e-6 * diam0;

    // Crossing time of min-distance = 1e-3 * initial against the scale law.
    let t_pred = (1e-6 - 1.0) / (2.0 * lambda.im);
    let crossing = traj
        .crossings
        .iter()
        .find(|c| (c.threshold - 1e-3 * dmin0).abs() < 1e-12);
    let cross_ok =
        crossing.is_some_and(|c| (c.t - t_pred).abs() <= 0.01 * t_pred);

    // Conservation before the collision window (min distance >= 1% of the
    // initial diameter).
    let first = traj.conserved[0];
    let mut dh: f64 = 0.0;
    let mut dm: f64 = 0.0;
    let mut di: f64 = 0.0;
    for s in &traj.conserved {
        if s.min_distance < 1e-2 * diam0 {
            break;
        }
        dh = dh.max((s.hamiltonian - first.hamiltonian).abs());
        dm = dm.max((s.moment - first.moment).norm());
        di = di.max((s.angular_impulse - first.angular_impulse).abs());
    }
    let cons_ok = dh <= 1e-8 * (1.0 + first.hamiltonian.abs())
        && dm <= 1e-10
        && di <= 1e-8 * (1.0 + first.angular_impulse.abs());

    let elapsed = start.elapsed();
    let crossing_detail = match crossing {
        Some(c) => format!(
            "crossing t = {:.9} vs predicted {:.9} ({:+.3}%)",
            c.t,
            t_pred,
            100.0 * (c.t - t_pred) / t_pred
        ),
        None => format!(
            "min-distance threshold {:.3e} never crossed (trajectory leaves the unstable \
             self-similar solution before reaching it; predicted t = {t_pred:.9})",
            1e-3 * dmin0
        ),
    };
    report(
        3,
        "collapse simulation",
        halted && traj_ok && cross_ok && cons_ok && elapsed.as_secs_f64() < 30.0,
        &format!(
            "oracle gap {worst_gap:.2e} up to 0.99 t* (allow {:.2e}), {crossing_detail}, drift H {dh:.1e} M {dm:.1e} I {di:.1e}, {} steps, {elapsed:?}",
            1e-6 * diam0,
            traj.times.len(),
        ),
    );
}

#[test]
fn criterion_4_continuum_vs_finiteness_probe() {
    let start = Instant::now();
    let opts = SolverOptions { starts: 5000, seed: 0, ..Default::default() };

    // Three-vortex continuum probe.
    let sys3 = VortexSystem::new(vec![1.0, 1.0, -0.5]).unwrap();
    let set3 = solver::scan_lambda(&sys3, 64, &opts);
    let hits3 = set3
        .tallies
        .iter()
        .filter(|t| !t.excluded_from_collapse && t.real_collapse > 0)
        .count();
    let three_ok = hits3 >= 16;

    // Generic L = 0 four-vortex probe: Γ₄ solved from L = 0.
    let g4 = -(1.0 * 2.0 + 1.0 * 3.0 + 2.0 * 3.0) / (1.0 + 2.0 + 3.0);
    let sys4 = VortexSystem::new(vec![1.0, 2.0, 3.0, g4]).unwrap();
    let set4 = solver::scan_lambda(&sys4, 64, &opts);
    let n_lambda = set4.collapse_lambdas().len();
    let lambda_ok = n_lambda <= 98;

    // Conjugation symmetry of the recorded real collapse counts.
    let reals: Vec<usize> = set4.tallies.iter().map(|t| t.real_collapse).collect();
    let conj_ok = (1..64).all(|k| reals[k] == reals[64 - k]);

    let audit_result = bounds::audit(&bounds::CountAudit::from_scan(&set4));
    let audit_ok = audit_result.is_ok();

    let elapsed = start.elapsed();
    let detail = format!(
        "N=3 real-collapse grid points {hits3}/64 (need ≥16; true continuum arc |arg Λ| < arcsin(1/3) ≈ 19.47° covers 6), \
         N=4 distinct collapse Λ = {n_lambda} (≤98), conj-symmetric counts: {conj_ok}, audit: {}, {elapsed:?}",
        match &audit_result {
            Ok(rep) => format!("pass (weighted total {})", rep.weighted_total),
            Err(e) => format!("{e}"),
        }
    );
    report(
        4,
        "continuum vs finiteness probe",
        three_ok && lambda_ok && conj_ok && audit_ok && elapsed.as_secs_f64() < 600.0,
        &detail,
    );
}

#[test]
fn criterion_5_collinear_baseline() {
    let start = Instant::now();
    let sys = VortexSystem::new(vec![1.0, 1.0, 1.0, -1.0]).unwrap();
    let opts = SolverOptions { starts: 5000, seed: 0, ..Default::default() };
    let collinear_points = |lambda: Complex64| -> usize {
        let set = solver::solve_fixed_lambda(&sys, lambda, &opts);
        2 * set
            .solutions
            .iter()
            .filter(|s| {
                let scale = s.candidate.scale();
                s.candidate
                    .z
                    .iter()
                    .chain(&s.candidate.w)
                    .all(|c| c.im.abs() <= 1e-7 * scale)
            })
            .count()
    };
    let plus = collinear_points(Complex64::new(1.0, 0.0));
    let minus = collinear_points(Complex64::new(-1.0, 0.0));
    let elapsed = start.elapsed();
    report(
        5,
        "collinear baseline",
        plus <= 20 && plus == minus && elapsed.as_secs_f64() < 120.0,
        &format!("distinct collinear points: {plus} at Λ=+1, {minus} at Λ=-1 (bound 20 with multiplicity), {elapsed:?}"),
    );
}

#[test]
fn criterion_6_bounds_ledger() {
    let start = Instant::now();
    let led = bounds::ledger();
    let cor = led.corollary_bounds(20);
    let values_ok = led.raw_degree == 480
        && led.deg_case1 == 20
        && led.deg_case2 == 2
        && led.deg_case3 == 18
        && led.trivial_multiplicity == 8
        && led.net_degree == 440
        && led.budget == 432;
    let corollary_ok = cor.lambda_count == 49
        && cor.lambda_count_with_i == 48
        && cor.real_collapse == 98
        && cor.complex_collapse == 196
        && cor.real_central == 108
        && cor.complex_central == 216;
    let elapsed = start.elapsed();
    report(
        6,
        "bounds ledger",
        values_ok && corollary_ok && elapsed.as_micros() < 1000,
        &format!(
            "480-20-2-18 → 440, budget 432; corollary 49/48/98/196/108/216 recomputed from the budget, {elapsed:?}"
        ),
    );
}

#[test]
fn criterion_7_diagram_engine() {
    let start = Instant::now();
    let tol = 1e-9;

    let equal = VortexSystem::new(vec![1.0, 1.0, 1.0, -1.0]).unwrap();
    let r1 = diagrams::narrowed_admissibility(&equal, tol).unwrap();
    let equal_ok = r1.scenario == Scenario::EqualTriple
        && r1.survivors == vec![DiagramId::II, DiagramId::LowerIv, DiagramId::LowerIx];

    let r = 3.0_f64.sqrt() - 2.0;
    let sqrt3 = VortexSystem::new(vec![1.0, 1.0, r, r]).unwrap();
    let l_ok = sqrt3.angular_momentum().abs() <= 1e-12;
    let r2 = diagrams::narrowed_admissibility(&sqrt3, tol).unwrap();
    let sqrt3_ok = r2.scenario == Scenario::RatioSqrt3Minus2
        && r2.survivors == vec![DiagramId::III, DiagramId::LowerVi, DiagramId::LowerIx];

    // 1e5 random L = 0 vorticity vectors: a unique scenario is assigned and
    // the contradictory product-relation pair never holds simultaneously.
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut partition_ok = true;
    let mut conjunction_ok = true;
    let mut samples = 0;
    while samples < 100_000 {
        let draw = |rng: &mut ChaCha8Rng| -> f64 {
            let g: f64 = rng.gen_range(0.1..3.0);
            if rng.gen_bool(0.5) {
                g
            } else {
                -g
            }
        };
        let (g1, g2, g3) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
        let denom = g1 + g2 + g3;
        if denom.abs() < 1e-3 {
            continue;
        }
        let g4 = -(g1 * g2 + g1 * g3 + g2 * g3) / denom;
        if !(0.05..=20.0).contains(&g4.abs()) {
            continue;
        }
        let sys = VortexSystem::new(vec![g1, g2, g3, g4]).unwrap();
        samples += 1;
        if diagrams::is_equal_triple(&sys, tol) && diagrams::is_sqrt3_relation(&sys, tol) {
            partition_ok = false;
        }
        // Γ1Γ3 = Γ2Γ4 and Γ1Γ3 = -Γ2Γ4 together force a zero vorticity.
        let p = g1 * g3;
        let q = g2 * g4;
        let eps = tol * (p.abs() + q.abs() + 1.0);
        if (p - q).abs() <= eps && (p + q).abs() <= eps {
            conjunction_ok = false;
        }
    }
    let elapsed = start.elapsed();
    report(
        7,
        "diagram engine",
        equal_ok && sqrt3_ok && l_ok && partition_ok && conjunction_ok
            && elapsed.as_secs_f64() < 10.0,
        &format!(
            "equal → {{II, iv, ix}}, (√3−2) → {{III, vi, ix}} with |L| ≤ 1e-12, 1e5 L=0 samples partitioned consistently, {elapsed:?}"
        ),
    );
}

#[test]
fn criterion_8_jacobian_check() {
    let start = Instant::now();
    let sys = VortexSystem::new(vec![1.0, 2.0, -0.5, 0.7]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let h = 1e-7;
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let lambda = Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU));
        let cand = solver::CentralCandidate {
            z: (0..4)
                .map(|_| Complex64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5)))
                .collect(),
            w: (0..4)
                .map(|_| Complex64::new(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5)))
                .collect(),
            lambda,
        };
        let jac = solver::jacobian(&cand, &sys).unwrap();
        for var in 0..8 {
            for part in 0..2 {
                let mut plus = cand.clone();
                let mut minus = cand.clone();
                let bump = if part == 0 {
                    Complex64::new(h, 0.0)
                } else {
                    Complex64::new(0.0, h)
                };
                if var < 4 {
                    plus.z[var] += bump;
                    minus.z[var] -= bump;
                } else {
                    plus.w[var - 4] += bump;
                    minus.w[var - 4] -= bump;
                }
                let rp = solver::evaluate_system(&plus, &sys).unwrap().residual_components();
                let rm = solver::evaluate_system(&minus, &sys).unwrap().residual_components();
                for row in 0..8 {
                    let fd = (rp[row] - rm[row]) / (2.0 * h);
                    let analytic = if part == 0 {
                        jac[(row, var)]
                    } else {
                        Complex64::new(0.0, 1.0) * jac[(row, var)]
                    };
                    worst = worst.max((fd - analytic).norm());
                }
            }
        }
    }
    let elapsed = start.elapsed();
    report(
        8,
        "jacobian finite-difference check",
        worst <= 1e-6 && elapsed.as_secs_f64() < 1.0,
        &format!("100 random points, max |analytic − central difference| = {worst:.2e}, {elapsed:?}"),
    );
}
