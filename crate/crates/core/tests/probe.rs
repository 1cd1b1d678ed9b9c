// Scratch probe (deleted before finalizing): empirical solver behavior.
use num_complex::Complex64;
use nvortex_core::solver::{self, SolverOptions};
use nvortex_core::system::VortexSystem;

#[test]
#[ignore]
fn probe_three_vortex_grid() {
    let sys = VortexSystem::new(vec![1.0, 1.0, -0.5]).unwrap();
    for starts in [400usize, 1000] {
        let opts = SolverOptions { starts, seed: 0, ..Default::default() };
        let t0 = std::time::Instant::now();
        let set = solver::scan_lambda(&sys, 64, &opts);
        let with_real = set
            .tallies
            .iter()
            .filter(|t| !t.excluded_from_collapse && t.real_collapse > 0)
            .count();
        let tot: Vec<usize> = set.tallies.iter().map(|t| t.distinct).collect();
        println!(
            "starts={starts}: {} of 64 grid points carry real collapse; elapsed {:?}",
            with_real,
            t0.elapsed()
        );
        println!("  distinct per grid point: {tot:?}");
        let reals: Vec<usize> = set.tallies.iter().map(|t| t.real_collapse).collect();
        println!("  real_collapse per grid point: {reals:?}");
    }
}

#[test]
#[ignore]
fn probe_three_vortex() {
    let sys = VortexSystem::new(vec![1.0, 1.0, -0.5]).unwrap();
    let opts = SolverOptions { starts: 400, seed: 3, ..Default::default() };
    for k in [3usize, 7, 13, 21, 29] {
        let lambda = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / 64.0);
        let t0 = std::time::Instant::now();
        let set = solver::solve_fixed_lambda(&sys, lambda, &opts);
        let tally = &set.tallies[0];
        println!(
            "k={k:2} lambda=({:+.3},{:+.3}) distinct={} real_collapse={} in {:?}",
            lambda.re,
            lambda.im,
            tally.distinct,
            tally.real_collapse,
            t0.elapsed()
        );
        for s in set.solutions.iter().take(4) {
            println!(
                "   real={} res={:.2e} z0=({:+.4},{:+.4}) rat_res={:.2e}",
                s.real,
                s.residual,
                s.candidate.z[0].re,
                s.candidate.z[0].im,
                solver::direct_residual(&s.candidate, &sys)
            );
        }
    }
}

#[test]
#[ignore]
fn probe_four_vortex_pm_one() {
    let sys = VortexSystem::new(vec![1.0, 1.0, 1.0, -1.0]).unwrap();
    for starts in [500usize, 2000] {
        let opts = SolverOptions { starts, seed: 5, ..Default::default() };
        for lam in [Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)] {
            let t0 = std::time::Instant::now();
            let set = solver::solve_fixed_lambda(&sys, lam, &opts);
            let tally = &set.tallies[0];
            let real = set.solutions.iter().filter(|s| s.real).count();
            let collinear = set
                .solutions
                .iter()
                .filter(|s| is_collinear(&s.candidate.z) && is_collinear(&s.candidate.w))
                .count();
            println!(
                "starts={starts} lambda={:+.0} distinct={} real={} collinear={} in {:?}",
                lam.re,
                tally.distinct,
                real,
                collinear,
                t0.elapsed()
            );
        }
    }
}

#[test]
#[ignore]
fn probe_pm_one_details() {
    let sys = VortexSystem::new(vec![1.0, 1.0, 1.0, -1.0]).unwrap();
    let opts = SolverOptions { starts: 4000, seed: 9, ..Default::default() };
    for lam in [Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)] {
        let set = solver::solve_fixed_lambda(&sys, lam, &opts);
        println!("=== lambda = {:+.0}, distinct = {}", lam.re, set.solutions.len());
        for s in &set.solutions {
            let max_im_z = s.candidate.z.iter().map(|c| c.im.abs()).fold(0.0_f64, f64::max);
            let max_im_w = s.candidate.w.iter().map(|c| c.im.abs()).fold(0.0_f64, f64::max);
            let zs: Vec<String> = s
                .candidate
                .z
                .iter()
                .map(|c| format!("({:+.3},{:+.3})", c.re, c.im))
                .collect();
            println!(
                "  real={} colz={} colw={} maxImZ={:.1e} maxImW={:.1e} z={}",
                s.real,
                is_collinear(&s.candidate.z),
                is_collinear(&s.candidate.w),
                max_im_z,
                max_im_w,
                zs.join(" ")
            );
        }
    }
}

#[test]
#[ignore]
fn probe_collinear_structure() {
    let sys = VortexSystem::new(vec![1.0, 1.0, 1.0, -1.0]).unwrap();
    let opts = SolverOptions { starts: 4000, seed: 9, ..Default::default() };
    let lam = Complex64::new(1.0, 0.0);
    let set = solver::solve_fixed_lambda(&sys, lam, &opts);
    let axis: Vec<_> = set
        .solutions
        .iter()
        .filter(|s| {
            s.candidate.z.iter().all(|c| c.im.abs() < 1e-7)
                && s.candidate.w.iter().all(|c| c.im.abs() < 1e-7)
        })
        .collect();
    println!("real-axis solutions: {}", axis.len());
    for s in &axis {
        let z: Vec<f64> = s.candidate.z.iter().map(|c| c.re).collect();
        let w: Vec<f64> = s.candidate.w.iter().map(|c| c.re).collect();
        println!("  z={z:.4?}\n  w={w:.4?}");
    }
    // Is the permutation image of a found solution also a solution?
    if let Some(s) = axis.first() {
        for perm in [[2usize, 1, 0, 3], [0, 2, 1, 3], [1, 2, 0, 3]] {
            let cand = solver::CentralCandidate {
                z: perm.iter().map(|&i| s.candidate.z[i]).collect(),
                w: perm.iter().map(|&i| s.candidate.w[i]).collect(),
                lambda: lam,
            };
            let ev = solver::evaluate_system(&cand, &sys).unwrap();
            println!(
                "perm {perm:?}: residual_norm = {:.3e}, direct = {:.3e}",
                ev.residual_norm(),
                solver::direct_residual(&cand, &sys)
            );
        }
    }
}

#[test]
#[ignore]
fn probe_four_vortex_collapse() {
    let sys = VortexSystem::new(vec![1.0, 1.0, 1.0, -1.0]).unwrap();
    let opts = SolverOptions { starts: 2000, seed: 5, ..Default::default() };
    for k in [5usize, 11, 16, 23] {
        let lambda = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / 64.0);
        let t0 = std::time::Instant::now();
        let set = solver::solve_fixed_lambda(&sys, lambda, &opts);
        let tally = &set.tallies[0];
        println!(
            "k={k:2} distinct={} real_collapse={} in {:?}",
            tally.distinct, tally.real_collapse, t0.elapsed()
        );
    }
}

#[test]
#[ignore]
fn probe_generic_four_vortex() {
    // Γ4 solved from L = 0
    let (g1, g2, g3) = (1.0, 2.0, 3.0);
    let g4 = -(g1 * g2 + g1 * g3 + g2 * g3) / (g1 + g2 + g3);
    let sys = VortexSystem::new(vec![g1, g2, g3, g4]).unwrap();
    let opts = SolverOptions { starts: 1500, seed: 4, ..Default::default() };
    for k in [0usize, 3, 5, 11, 16, 23, 32] {
        let lambda = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / 64.0);
        let t0 = std::time::Instant::now();
        let set = solver::solve_fixed_lambda(&sys, lambda, &opts);
        let tally = &set.tallies[0];
        let real_axis = set
            .solutions
            .iter()
            .filter(|s| {
                s.candidate.z.iter().all(|c| c.im.abs() < 1e-7 * s.candidate.scale())
                    && s.candidate.w.iter().all(|c| c.im.abs() < 1e-7 * s.candidate.scale())
            })
            .count();
        println!(
            "k={k:2} distinct={} real_collapse={} real_axis={} in {:?}",
            tally.distinct,
            tally.real_collapse,
            real_axis,
            t0.elapsed()
        );
    }
}

#[test]
#[ignore]
fn probe_criterion_four_shape() {
    use nvortex_core::bounds;
    let t0 = std::time::Instant::now();
    let sys3 = VortexSystem::new(vec![1.0, 1.0, -0.5]).unwrap();
    let opts = SolverOptions { starts: 5000, seed: 0, ..Default::default() };
    let set3 = solver::scan_lambda(&sys3, 64, &opts);
    let hits3 = set3
        .tallies
        .iter()
        .filter(|t| !t.excluded_from_collapse && t.real_collapse > 0)
        .count();
    println!("N=3: {} grid points with real collapse, elapsed {:?}", hits3, t0.elapsed());

    let t1 = std::time::Instant::now();
    let g4 = -(1.0 * 2.0 + 1.0 * 3.0 + 2.0 * 3.0) / (1.0 + 2.0 + 3.0);
    let sys4 = VortexSystem::new(vec![1.0, 2.0, 3.0, g4]).unwrap();
    let set4 = solver::scan_lambda(&sys4, 64, &opts);
    let lambdas = set4.collapse_lambdas();
    println!("N=4: {} distinct collapse lambdas, elapsed {:?}", lambdas.len(), t1.elapsed());
    let reals: Vec<usize> = set4.tallies.iter().map(|t| t.real_collapse).collect();
    println!("  real counts: {reals:?}");
    let totals: Vec<usize> = set4.tallies.iter().map(|t| t.distinct).collect();
    println!("  total counts: {totals:?}");
    let audit_in = bounds::CountAudit::from_scan(&set4);
    println!("  audit input per_lambda: {:?}", audit_in.per_lambda);
    println!("  n_1={} n_minus_1={} n_i={} n_minus_i={}", audit_in.n_1, audit_in.n_minus_1, audit_in.n_i, audit_in.n_minus_i);
    match bounds::audit(&audit_in) {
        Ok(rep) => println!("  audit PASS weighted_total={}", rep.weighted_total),
        Err(e) => println!("  audit FAIL: {e}"),
    }
}

#[test]
#[ignore]
fn probe_dump_generic_real() {
    let (g1, g2, g3) = (1.0, 2.0, 3.0);
    let g4 = -(g1 * g2 + g1 * g3 + g2 * g3) / (g1 + g2 + g3);
    let sys = VortexSystem::new(vec![g1, g2, g3, g4]).unwrap();
    let opts = SolverOptions { starts: 1500, seed: 4, ..Default::default() };
    let lambda = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * 3.0 / 64.0);
    let set = solver::solve_fixed_lambda(&sys, lambda, &opts);
    for s in set.solutions.iter().filter(|s| s.real) {
        let z: Vec<String> = s
            .candidate
            .z
            .iter()
            .map(|c| format!("[{:.17e},{:.17e}]", c.re, c.im))
            .collect();
        println!("REAL [{}]", z.join(","));
    }
}

#[test]
#[ignore]
fn probe_k5_solutions() {
    let sys = VortexSystem::new(vec![1.0, 1.0, 1.0, -1.0]).unwrap();
    let opts = SolverOptions { starts: 1500, seed: 2, ..Default::default() };
    let lambda = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * 5.0 / 64.0);
    let set = solver::solve_fixed_lambda(&sys, lambda, &opts);
    println!("distinct = {}", set.solutions.len());
    for s in set.solutions.iter().take(8) {
        let z: Vec<String> = s.candidate.z.iter().map(|c| format!("({:+.4},{:+.4})", c.re, c.im)).collect();
        let w: Vec<String> = s.candidate.w.iter().map(|c| format!("({:+.4},{:+.4})", c.re, c.im)).collect();
        println!("  res={:.1e} direct={:.1e}\n    z={}\n    w={}",
            s.residual, solver::direct_residual(&s.candidate, &sys), z.join(" "), w.join(" "));
    }
}

fn is_collinear(z: &[Complex64]) -> bool {
    let dir = z[1] - z[0];
    z.iter()
        .skip(2)
        .all(|p| ((p - z[0]) * dir.conj()).im.abs() < 1e-6 * dir.norm_sqr().max(1e-12))
}
