//! Batch CLI for the planar N-vortex stationary-configuration toolkit.
//!
//! Exit codes: 0 success, 1 domain errors, 2 verification/audit failures,
//! 3 I/O errors, 64 usage errors.

mod output;

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde_json::{json, Value};

use nvortex_core::bounds::{self, CountAudit};
use nvortex_core::classify::{classify, StationaryClass};
use nvortex_core::configuration::{invariants, Configuration};
use nvortex_core::diagrams;
use nvortex_core::dynamics::{self, IntegrateOptions, TrajectoryStatus};
use nvortex_core::families::{self, FamilyParameter};
use nvortex_core::io::{ConfigDocument, CountsDocument};
use nvortex_core::solver::{self, SolutionSet, SolverOptions};
use nvortex_core::system::VortexSystem;

use output::{complex_json, csv_line, fmt_f64, to_json_string};

#[derive(Parser)]
#[command(name = "nvortex", version, about = "Stationary and collapse configurations of the planar N-vortex problem", disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonOut {
    /// Emit machine-readable JSON on stdout (logs go to stderr).
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Compute Γ, L, M, I, S for a configuration file.
    Invariants {
        /// Configuration JSON: {"gammas":[...], "positions":[[re,im],...]}.
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Decide the stationary class of a configuration.
    Classify {
        #[arg(long)]
        config: PathBuf,
        /// Relative classification tolerance.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[command(flatten)]
        out: CommonOut,
    },
    /// Multistart Newton solve of the normalized system at fixed Λ.
    Solve {
        /// Comma-separated vorticities, e.g. 1,1,-0.5.
        #[arg(long, value_parser = parse_gammas)]
        gammas: GammaList,
        /// Multiplier as re,im (normalized: |Λ| = 1).
        #[arg(long, value_parser = parse_complex)]
        lambda: Complex64,
        #[arg(long, default_value_t = 2000)]
        starts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Write the solutions CSV here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        fmt: CommonOut,
    },
    /// Scan Λ over the unit circle and tally real collapse solutions.
    Scan {
        #[arg(long, value_parser = parse_gammas)]
        gammas: GammaList,
        /// Grid size K: Λ = e^{2πik/K}.
        #[arg(long, default_value_t = 64)]
        grid: usize,
        #[arg(long, default_value_t = 2000)]
        starts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Write the solutions CSV here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// For N = 4: audit the counts against the degree budget.
        #[arg(long)]
        audit: bool,
        #[command(flatten)]
        fmt: CommonOut,
    },
    /// Evaluate or sweep the five-vortex collapse family.
    Family {
        /// Family parameter a ∈ (−3/2, −√(11/3)/2) ∪ (√(11/3)/2, 3/2).
        #[arg(long, allow_hyphen_values = true)]
        a: Option<f64>,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        sign_b: f64,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        sign_c: f64,
        /// Check V = Λz, |Λ| = 1 and the collapse necessary conditions.
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Sweep this many parameters across both interval components.
        #[arg(long)]
        sweep: Option<usize>,
        /// Write the sweep CSV here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        fmt: CommonOut,
    },
    /// Integrate the vortex motion ż = −iV.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        t_end: f64,
        /// Relative integration tolerance.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Write the trajectory CSV here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Append collision-approach records to the CSV.
        #[arg(long)]
        events: bool,
        #[command(flatten)]
        fmt: CommonOut,
    },
    /// Diagram admissibility for four vorticities.
    Diagrams {
        #[arg(long, value_parser = parse_gammas)]
        gammas: GammaList,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[command(flatten)]
        fmt: CommonOut,
    },
    /// Print the Bézout degree ledger; audit observed counts if given.
    Bounds {
        /// Counts JSON to audit: {"per_lambda":[{"re":..,"im":..,"count":..}],...}.
        #[arg(long)]
        counts: Option<PathBuf>,
        #[command(flatten)]
        fmt: CommonOut,
    },
}

#[derive(Clone)]
struct GammaList(Vec<f64>);

fn parse_gammas(s: &str) -> Result<GammaList, String> {
    let vals: Result<Vec<f64>, _> = s.split(',').map(|p| p.trim().parse::<f64>()).collect();
    match vals {
        Ok(v) if v.len() >= 2 => Ok(GammaList(v)),
        Ok(_) => Err("need at least two comma-separated vorticities".into()),
        Err(e) => Err(format!("bad vorticity list: {e}")),
    }
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err("expected re,im".into());
    }
    let re: f64 = parts[0].trim().parse().map_err(|e| format!("bad re: {e}"))?;
    let im: f64 = parts[1].trim().parse().map_err(|e| format!("bad im: {e}"))?;
    Ok(Complex64::new(re, im))
}

enum CliError {
    Domain(String),
    Verification(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Verification(_) => 2,
            CliError::Io(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Domain(m) | CliError::Verification(m) | CliError::Io(m) => m,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints help/version through the error path with success
            // status; real usage errors exit 64.
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(64),
            };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn read_config(path: &PathBuf) -> Result<(Configuration, VortexSystem), CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("reading {}: {e}", path.display())))?;
    let doc: ConfigDocument = serde_json::from_str(&text)
        .map_err(|e| CliError::Io(format!("parsing {}: {e}", path.display())))?;
    doc.into_parts()
        .map_err(|e| CliError::Domain(e.to_string()))
}

fn write_file(path: &PathBuf, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::Io(format!("writing {}: {e}", path.display())))
}

fn emit(json_mode: bool, value: &Value, text: &str) {
    if json_mode {
        println!("{}", to_json_string(value));
    } else {
        println!("{text}");
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Invariants { config, out } => {
            let (cfg, sys) = read_config(&config)?;
            let inv = invariants(&cfg, &sys).map_err(|e| CliError::Domain(e.to_string()))?;
            let value = json!({
                "total_vorticity": inv.total_vorticity,
                "angular_momentum": inv.angular_momentum,
                "moment": complex_json(inv.moment),
                "angular_impulse": inv.angular_impulse,
                "weighted_sum": inv.weighted_sum,
                "identity_residual": inv.identity_residual(),
            });
            let text = format!(
                "Γ = {}\nL = {}\nM = {} + {}i\nI = {}\nS = {}  (S - (ΓI - |M|²) relative: {:.3e})",
                fmt_f64(inv.total_vorticity),
                fmt_f64(inv.angular_momentum),
                fmt_f64(inv.moment.re),
                fmt_f64(inv.moment.im),
                fmt_f64(inv.angular_impulse),
                fmt_f64(inv.weighted_sum),
                inv.identity_residual(),
            );
            emit(out.json, &value, &text);
            Ok(())
        }
        Command::Classify { config, tol, out } => {
            let (cfg, sys) = read_config(&config)?;
            let result = classify(&cfg, &sys, tol).map_err(|e| CliError::Domain(e.to_string()))?;
            let (lambda, center) = match result.class {
                StationaryClass::RelativeEquilibrium { lambda, center } => {
                    (Some(Complex64::new(lambda, 0.0)), Some(center))
                }
                StationaryClass::Collapse { lambda, center } => (Some(lambda), Some(center)),
                StationaryClass::RigidTranslation { velocity } => (Some(velocity), None),
                _ => (None, None),
            };
            let warnings: Vec<String> = result.warnings.iter().map(|w| w.to_string()).collect();
            let value = json!({
                "class": result.class.name(),
                "residual": result.residual,
                "lambda": lambda.map(complex_json),
                "center": center.map(complex_json),
                "warnings": warnings,
            });
            let mut text = format!("class: {} (residual {:.3e})", result.class.name(), result.residual);
            if let Some(l) = lambda {
                let _ = write!(text, "\nΛ = {} + {}i", fmt_f64(l.re), fmt_f64(l.im));
            }
            for w in &warnings {
                let _ = write!(text, "\nwarning: {w}");
            }
            emit(out.json, &value, &text);
            Ok(())
        }
        Command::Solve { gammas, lambda, starts, seed, tol, out, fmt } => {
            let sys = VortexSystem::new(gammas.0).map_err(|e| CliError::Domain(e.to_string()))?;
            let opts = SolverOptions { starts, seed, tol, ..Default::default() };
            let set = solver::solve_fixed_lambda(&sys, lambda, &opts);
            finish_solver_output(&set, sys.len(), out.as_ref(), fmt.json, None, None)
        }
        Command::Scan { gammas, grid, starts, seed, tol, out, audit, fmt } => {
            if grid < 4 {
                return Err(CliError::Domain("grid must be at least 4".into()));
            }
            let sys = VortexSystem::new(gammas.0).map_err(|e| CliError::Domain(e.to_string()))?;
            let opts = SolverOptions { starts, seed, tol, ..Default::default() };
            let set = solver::scan_lambda(&sys, grid, &opts);
            let counts = (sys.len() == 4).then(|| CountAudit::from_scan(&set));
            let audit_outcome = if audit {
                match &counts {
                    Some(c) => Some(bounds::audit(c)),
                    None => {
                        return Err(CliError::Domain("the degree-budget audit is four-vortex".into()))
                    }
                }
            } else {
                None
            };
            finish_solver_output(&set, sys.len(), out.as_ref(), fmt.json, counts, audit_outcome)
        }
        Command::Family { a, sign_b, sign_c, verify, tol, sweep, out, fmt } => {
            if let Some(count) = sweep {
                let lines = family_sweep_csv(count, sign_b, sign_c)?;
                match &out {
                    Some(path) => write_file(path, &lines)?,
                    None => print!("{lines}"),
                }
                if fmt.json {
                    emit(true, &json!({ "swept": count, "written": out.is_some() }), "");
                }
                return Ok(());
            }
            let a = a.ok_or_else(|| CliError::Domain("--a or --sweep is required".into()))?;
            let p = FamilyParameter::with_signs(a, sign_b, sign_c)
                .map_err(|e| CliError::Domain(e.to_string()))?;
            let lambda = families::family_lambda(&p);
            let (cfg, _) = families::family_configuration(&p);
            let mut value = json!({
                "a": a,
                "b": p.b(),
                "c": p.c(),
                "lambda": complex_json(lambda),
                "lambda_modulus_error": (lambda.norm() - 1.0).abs(),
                "positions": cfg.positions().iter().map(|z| complex_json(*z)).collect::<Vec<_>>(),
            });
            let mut text = format!(
                "a = {}\nb = {}\nc = {}\nΛ = {} + {}i  (||Λ|-1| = {:.3e}, Im Λ {})",
                fmt_f64(a),
                fmt_f64(p.b()),
                fmt_f64(p.c()),
                fmt_f64(lambda.re),
                fmt_f64(lambda.im),
                (lambda.norm() - 1.0).abs(),
                if lambda.im < 0.0 { "< 0: forward collapse" } else { "> 0: forward expansion" },
            );
            if verify {
                let report = families::verify_family(&p, tol)
                    .map_err(|e| CliError::Verification(e.to_string()))?;
                value["verified"] = json!(true);
                value["stationarity_residual"] = json!(report.stationarity_residual);
                let _ = write!(
                    text,
                    "\nverified: V = Λz residual {:.3e}, L/I/S/M all within {tol:.1e}",
                    report.stationarity_residual
                );
            }
            emit(fmt.json, &value, &text);
            Ok(())
        }
        Command::Simulate { config, t_end, tol, out, events, fmt } => {
            let (cfg, sys) = read_config(&config)?;
            let opts = IntegrateOptions::new(t_end, tol);
            let traj = dynamics::integrate_with(&cfg, &sys, &opts)
                .map_err(|e| CliError::Domain(e.to_string()))?;
            let n = cfg.len();
            let mut csv = String::new();
            let mut header = vec!["t".to_string()];
            for i in 1..=n {
                header.push(format!("z{i}_re"));
                header.push(format!("z{i}_im"));
            }
            header.extend(["h".into(), "abs_m".into(), "i".into(), "min_dist".into()]);
            csv.push_str(&csv_line(&header));
            csv.push('\n');
            for ((t, state), cons) in traj.times.iter().zip(&traj.states).zip(&traj.conserved) {
                let mut fields = vec![fmt_f64(*t)];
                for z in state.positions() {
                    fields.push(fmt_f64(z.re));
                    fields.push(fmt_f64(z.im));
                }
                fields.push(fmt_f64(cons.hamiltonian));
                fields.push(fmt_f64(cons.moment.norm()));
                fields.push(fmt_f64(cons.angular_impulse));
                fields.push(fmt_f64(cons.min_distance));
                csv.push_str(&csv_line(&fields));
                csv.push('\n');
            }
            if events {
                for c in &traj.crossings {
                    let _ = writeln!(
                        csv,
                        "# distance_crossing threshold={} t={}",
                        fmt_f64(c.threshold),
                        fmt_f64(c.t)
                    );
                }
                if let TrajectoryStatus::CollisionApproach { t, min_distance } = &traj.status {
                    let _ = writeln!(
                        csv,
                        "# collision_approach t={} min_dist={}",
                        fmt_f64(*t),
                        fmt_f64(*min_distance)
                    );
                }
            }
            match &out {
                Some(path) => write_file(path, &csv)?,
                None if !fmt.json => print!("{csv}"),
                None => {}
            }
            let status = match &traj.status {
                TrajectoryStatus::Completed => json!({ "kind": "completed" }),
                TrajectoryStatus::CollisionApproach { t, min_distance } => {
                    json!({ "kind": "collision-approach", "t": t, "min_distance": min_distance })
                }
                TrajectoryStatus::StepSizeUnderflow { t } => {
                    json!({ "kind": "step-size-underflow", "t": t })
                }
            };
            let value = json!({
                "steps": traj.times.len(),
                "final_time": traj.final_time(),
                "status": status,
            });
            if fmt.json {
                emit(true, &value, "");
            } else {
                eprintln!(
                    "integrated {} accepted steps to t = {}, status {:?}",
                    traj.times.len(),
                    fmt_f64(traj.final_time()),
                    traj.status
                );
            }
            Ok(())
        }
        Command::Diagrams { gammas, tol, fmt } => {
            let sys = VortexSystem::new(gammas.0).map_err(|e| CliError::Domain(e.to_string()))?;
            let report = diagrams::narrowed_admissibility(&sys, tol)
                .map_err(|e| CliError::Domain(e.to_string()))?;
            let diagrams_json: Vec<Value> = report
                .diagrams
                .iter()
                .map(|d| {
                    json!({
                        "id": d.id.label(),
                        "admissible": d.admissible,
                        "constraints": d.constraints.iter().map(|c| json!({
                            "name": c.name,
                            "satisfied": c.satisfied,
                            "residual": c.residual,
                        })).collect::<Vec<_>>(),
                        "note": d.note,
                    })
                })
                .collect();
            let value = json!({
                "scenario": report.scenario.label(),
                "survivors": report.survivors.iter().map(|d| d.label()).collect::<Vec<_>>(),
                "diagrams": diagrams_json,
            });
            let mut text = format!(
                "scenario: {}\nsurvivors: {}",
                report.scenario.label(),
                report
                    .survivors
                    .iter()
                    .map(|d| d.label())
                    .collect::<Vec<_>>()
                    .join(", ")
            );
            for d in &report.diagrams {
                let _ = write!(
                    text,
                    "\ndiagram {:>3}: raw predicate {}",
                    d.id.label(),
                    if d.admissible { "satisfied" } else { "not satisfied" }
                );
            }
            emit(fmt.json, &value, &text);
            Ok(())
        }
        Command::Bounds { counts, fmt } => {
            let led = bounds::ledger();
            let cor = led.corollary_bounds(20);
            let mut value = json!({
                "raw_degree": led.raw_degree,
                "deg_case1": led.deg_case1,
                "deg_case2": led.deg_case2,
                "deg_case3": led.deg_case3,
                "trivial_multiplicity": led.trivial_multiplicity,
                "net_degree": led.net_degree,
                "budget": led.budget,
                "corollary": {
                    "lambda_count": cor.lambda_count,
                    "lambda_count_with_i": cor.lambda_count_with_i,
                    "real_collapse": cor.real_collapse,
                    "complex_collapse": cor.complex_collapse,
                    "real_central": cor.real_central,
                    "complex_central": cor.complex_central,
                },
                "note": bounds::EXACTNESS_NOTE,
            });
            let mut text = format!(
                "raw degree 2·3·4·4·5 = {}\nexcess components: {} + {} + {}\nnet degree = {}\ntrivial multiplicity = {}\nbudget = {}\ncorollary bounds: {} Λ (or {} with N_i > 0), {} real collapse, {} complex collapse, {} real central, {} complex central\nnote: {}",
                led.raw_degree,
                led.deg_case1,
                led.deg_case2,
                led.deg_case3,
                led.net_degree,
                led.trivial_multiplicity,
                led.budget,
                cor.lambda_count,
                cor.lambda_count_with_i,
                cor.real_collapse,
                cor.complex_collapse,
                cor.real_central,
                cor.complex_central,
                bounds::EXACTNESS_NOTE,
            );
            if let Some(path) = counts {
                let raw = fs::read_to_string(&path)
                    .map_err(|e| CliError::Io(format!("reading {}: {e}", path.display())))?;
                let doc: CountsDocument = serde_json::from_str(&raw)
                    .map_err(|e| CliError::Io(format!("parsing {}: {e}", path.display())))?;
                let audit_input = CountAudit::from(&doc);
                match bounds::audit(&audit_input) {
                    Ok(rep) => {
                        value["audit"] = json!({
                            "passed": true,
                            "weighted_total": rep.weighted_total,
                        });
                        let _ = write!(
                            text,
                            "\naudit: pass (weighted total {} ≤ {})",
                            rep.weighted_total, rep.budget
                        );
                    }
                    Err(e) => {
                        emit(fmt.json, &json!({ "audit": { "passed": false, "violation": e.to_string() } }), &format!("{text}\naudit: {e}"));
                        return Err(CliError::Verification(e.to_string()));
                    }
                }
            }
            emit(fmt.json, &value, &text);
            Ok(())
        }
    }
}

fn solutions_csv(set: &SolutionSet, n: usize) -> String {
    let mut header = vec!["lambda_re".to_string(), "lambda_im".to_string()];
    for i in 1..=n {
        header.push(format!("z{i}_re"));
        header.push(format!("z{i}_im"));
    }
    for i in 1..=n {
        header.push(format!("w{i}_re"));
        header.push(format!("w{i}_im"));
    }
    header.push("residual".into());
    header.push("is_real".into());
    let mut csv = csv_line(&header);
    csv.push('\n');
    for s in &set.solutions {
        let mut fields = vec![fmt_f64(s.candidate.lambda.re), fmt_f64(s.candidate.lambda.im)];
        for z in s.candidate.z.iter().chain(&s.candidate.w) {
            fields.push(fmt_f64(z.re));
            fields.push(fmt_f64(z.im));
        }
        fields.push(fmt_f64(s.residual));
        fields.push(if s.real { "1".into() } else { "0".into() });
        csv.push_str(&csv_line(&fields));
        csv.push('\n');
    }
    csv
}

fn finish_solver_output(
    set: &SolutionSet,
    n: usize,
    out: Option<&PathBuf>,
    json_mode: bool,
    counts: Option<CountAudit>,
    audit_outcome: Option<Result<bounds::AuditReport, bounds::BoundsError>>,
) -> Result<(), CliError> {
    for w in &set.warnings {
        eprintln!("warning: {w}");
    }
    if let Some(path) = out {
        write_file(path, &solutions_csv(set, n))?;
    }
    let tallies: Vec<Value> = set
        .tallies
        .iter()
        .map(|t| {
            json!({
                "lambda": complex_json(t.lambda),
                "distinct": t.distinct,
                "real_collapse": t.real_collapse,
                "excluded_from_collapse": t.excluded_from_collapse,
            })
        })
        .collect();
    let mut value = json!({
        "solutions": set.solutions.len(),
        "per_lambda": tallies,
        "warnings": set.warnings,
    });
    let mut text = format!("{} distinct solutions", set.solutions.len());
    for t in &set.tallies {
        let _ = write!(
            text,
            "\nΛ = ({}, {}): {} distinct, {} real collapse{}",
            fmt_f64(t.lambda.re),
            fmt_f64(t.lambda.im),
            t.distinct,
            t.real_collapse,
            if t.excluded_from_collapse { " (Λ = ±1, excluded from collapse tally)" } else { "" }
        );
    }
    let mut failed_audit = None;
    if let Some(outcome) = audit_outcome {
        match outcome {
            Ok(rep) => {
                value["audit"] = json!({ "passed": true, "weighted_total": rep.weighted_total });
                let _ = write!(text, "\naudit: pass (weighted total {} ≤ {})", rep.weighted_total, rep.budget);
            }
            Err(e) => {
                value["audit"] = json!({ "passed": false, "violation": e.to_string() });
                let _ = write!(text, "\naudit: {e}");
                failed_audit = Some(e.to_string());
            }
        }
    }
    emit(json_mode, &value, &text);
    match failed_audit {
        Some(msg) => Err(CliError::Verification(msg)),
        None => Ok(()),
    }
}

fn family_sweep_csv(count: usize, sign_b: f64, sign_c: f64) -> Result<String, CliError> {
    let mut header = vec![
        "a".to_string(),
        "b".to_string(),
        "c".to_string(),
        "lambda_re".to_string(),
        "lambda_im".to_string(),
        "residual".to_string(),
    ];
    for i in 1..=5 {
        header.push(format!("z{i}_re"));
        header.push(format!("z{i}_im"));
    }
    let mut csv = csv_line(&header);
    csv.push('\n');
    for a in families::sweep_parameters(count) {
        let p = FamilyParameter::with_signs(a, sign_b, sign_c)
            .map_err(|e| CliError::Domain(e.to_string()))?;
        let report = families::verify_family(&p, 1e-8)
            .map_err(|e| CliError::Verification(e.to_string()))?;
        let (cfg, _) = families::family_configuration(&p);
        let mut fields = vec![
            fmt_f64(a),
            fmt_f64(p.b()),
            fmt_f64(p.c()),
            fmt_f64(report.lambda.re),
            fmt_f64(report.lambda.im),
            fmt_f64(report.stationarity_residual),
        ];
        for z in cfg.positions() {
            fields.push(fmt_f64(z.re));
            fields.push(fmt_f64(z.im));
        }
        csv.push_str(&csv_line(&fields));
        csv.push('\n');
    }
    Ok(csv)
}
