//! Two-colored singularity diagrams on four vertices: structural rules,
//! the vorticity constraints attached to the seven problematic diagrams,
//! and the three-scenario narrowing of the admissible list.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::system::VortexSystem;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DiagramsError {
    #[error("diagram constraints are four-vortex statements; got N = {0}")]
    Dimension(usize),
    #[error("|L| = {l:.3e} is above tolerance; the constraints assume the collapse context L = 0")]
    MomentumNotZero { l: f64 },
    #[error("malformed diagram: {0}")]
    Malformed(String),
}

/// The seven diagrams that survive the structural rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DiagramId {
    I,
    II,
    III,
    LowerI,
    LowerIv,
    LowerVi,
    LowerIx,
}

impl DiagramId {
    pub const ALL: [DiagramId; 7] = [
        DiagramId::I,
        DiagramId::II,
        DiagramId::III,
        DiagramId::LowerI,
        DiagramId::LowerIv,
        DiagramId::LowerVi,
        DiagramId::LowerIx,
    ];

    pub fn label(&self) -> &'static str {
        match self {
            DiagramId::I => "I",
            DiagramId::II => "II",
            DiagramId::III => "III",
            DiagramId::LowerI => "i",
            DiagramId::LowerIv => "iv",
            DiagramId::LowerVi => "vi",
            DiagramId::LowerIx => "ix",
        }
    }

    pub fn parse(s: &str) -> Option<DiagramId> {
        Self::ALL.iter().copied().find(|d| d.label() == s)
    }
}

impl fmt::Display for DiagramId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Stroke color.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Color {
    Z,
    W,
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::Z => "z",
            Color::W => "w",
        })
    }
}

/// A two-colored diagram on vertices 1..4: stroke edge-sets and circled
/// vertex-sets per color.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredDiagram {
    z_strokes: BTreeSet<(u8, u8)>,
    w_strokes: BTreeSet<(u8, u8)>,
    z_circles: BTreeSet<u8>,
    w_circles: BTreeSet<u8>,
}

impl ColoredDiagram {
    /// Build from 1-based vertex pairs and vertex lists.
    pub fn new(
        z_strokes: &[(u8, u8)],
        w_strokes: &[(u8, u8)],
        z_circles: &[u8],
        w_circles: &[u8],
    ) -> Result<Self, DiagramsError> {
        let norm_edge = |&(a, b): &(u8, u8)| -> Result<(u8, u8), DiagramsError> {
            if !(1..=4).contains(&a) || !(1..=4).contains(&b) {
                return Err(DiagramsError::Malformed(format!(
                    "stroke ({a},{b}) uses a vertex outside 1..4"
                )));
            }
            if a == b {
                return Err(DiagramsError::Malformed(format!(
                    "stroke ({a},{b}) has equal endpoints"
                )));
            }
            Ok((a.min(b), a.max(b)))
        };
        let norm_vertex = |&v: &u8| -> Result<u8, DiagramsError> {
            if !(1..=4).contains(&v) {
                return Err(DiagramsError::Malformed(format!("circle at vertex {v} outside 1..4")));
            }
            Ok(v)
        };
        Ok(Self {
            z_strokes: z_strokes.iter().map(norm_edge).collect::<Result<_, _>>()?,
            w_strokes: w_strokes.iter().map(norm_edge).collect::<Result<_, _>>()?,
            z_circles: z_circles.iter().map(norm_vertex).collect::<Result<_, _>>()?,
            w_circles: w_circles.iter().map(norm_vertex).collect::<Result<_, _>>()?,
        })
    }

    pub fn strokes(&self, color: Color) -> &BTreeSet<(u8, u8)> {
        match color {
            Color::Z => &self.z_strokes,
            Color::W => &self.w_strokes,
        }
    }

    pub fn circles(&self, color: Color) -> &BTreeSet<u8> {
        match color {
            Color::Z => &self.z_circles,
            Color::W => &self.w_circles,
        }
    }

    /// The catalogued shape of each problematic diagram.
    pub fn catalog(id: DiagramId) -> ColoredDiagram {
        let all: &[(u8, u8)] = &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];
        let built = match id {
            // One z-stroked circled pair against one w-stroked circled pair.
            DiagramId::I => Self::new(&[(1, 2)], &[(3, 4)], &[1, 2], &[3, 4]),
            // Six zw-edges, no circles.
            DiagramId::II => Self::new(all, all, &[], &[]),
            // Two z-stroked sides, two w-stroked sides, everything circled.
            DiagramId::III => Self::new(&[(1, 2), (3, 4)], &[(1, 4), (2, 3)], &[1, 2, 3, 4], &[1, 2, 3, 4]),
            // Full z-graph over a w-triangle on 1,2,3.
            DiagramId::LowerI => Self::new(all, &[(1, 2), (1, 3), (2, 3)], &[], &[1, 2, 3]),
            // Full z- and w-graphs, w-circles on 1,2,3.
            DiagramId::LowerIv => Self::new(all, all, &[], &[1, 2, 3]),
            // Full z-graph, w-strokes 1-2 and 3-4, all w-circled.
            DiagramId::LowerVi => Self::new(all, &[(1, 2), (3, 4)], &[], &[1, 2, 3, 4]),
            // Full z- and w-graphs, all w-circled.
            DiagramId::LowerIx => Self::new(all, all, &[], &[1, 2, 3, 4]),
        };
        built.expect("catalog shapes are well-formed")
    }
}

/// Structural violations of the rules checkable without Puiseux data.
#[derive(Debug, Clone, PartialEq)]
pub enum RuleViolation {
    /// Rule I: a stroke end carries neither another stroke nor a circle.
    BareStrokeEnd { color: Color, stroke: (u8, u8), vertex: u8 },
    /// Rule I: a circled vertex with no stroke of its color.
    IsolatedCircle { color: Color, vertex: u8 },
    /// Rule I: a color with no strokes at all.
    NoStroke { color: Color },
    /// Rule VI: two consecutive strokes without the closing third.
    OpenTriangle { color: Color, ends: (u8, u8), middle: u8 },
}

impl fmt::Display for RuleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleViolation::BareStrokeEnd { color, stroke, vertex } => write!(
                f,
                "rule I: end {vertex} of {color}-stroke {}-{} has no other {color}-stroke and no {color}-circle",
                stroke.0, stroke.1
            ),
            RuleViolation::IsolatedCircle { color, vertex } => {
                write!(f, "rule I: {color}-circle at {vertex} has no {color}-stroke emanating")
            }
            RuleViolation::NoStroke { color } => {
                write!(f, "rule I: the {color}-diagram has no stroke")
            }
            RuleViolation::OpenTriangle { color, ends, middle } => write!(
                f,
                "rule VI: {color}-strokes {}-{middle} and {middle}-{} lack the closing {}-{}",
                ends.0, ends.1, ends.0, ends.1
            ),
        }
    }
}

/// Rules II-V compare Puiseux closeness data the diagram does not carry;
/// they are reported as unevaluated rather than silently passing.
pub const UNEVALUATED_RULES: [&str; 4] = ["II", "III", "IV", "V"];

#[derive(Debug, Clone, PartialEq)]
pub struct RuleReport {
    pub violations: Vec<RuleViolation>,
    /// Names of the rules that are not checkable structurally.
    pub unevaluated: &'static [&'static str],
}

impl RuleReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check Rule I and Rule VI (and their w-color mirrors) structurally.
pub fn validate_rules(diagram: &ColoredDiagram) -> RuleReport {
    let mut violations = Vec::new();
    for color in [Color::Z, Color::W] {
        let strokes = diagram.strokes(color);
        let circles = diagram.circles(color);
        if strokes.is_empty() {
            violations.push(RuleViolation::NoStroke { color });
        }
        let degree = |v: u8| strokes.iter().filter(|(a, b)| *a == v || *b == v).count();
        for &(a, b) in strokes {
            for v in [a, b] {
                if degree(v) < 2 && !circles.contains(&v) {
                    violations.push(RuleViolation::BareStrokeEnd { color, stroke: (a, b), vertex: v });
                }
            }
        }
        for &v in circles {
            if degree(v) == 0 {
                violations.push(RuleViolation::IsolatedCircle { color, vertex: v });
            }
        }
        // Rule VI: stroke adjacency must be transitive.
        for m in 1..=4u8 {
            for x in 1..=4u8 {
                for y in (x + 1)..=4u8 {
                    if x == m || y == m {
                        continue;
                    }
                    let has = |p: u8, q: u8| strokes.contains(&(p.min(q), p.max(q)));
                    if has(x, m) && has(m, y) && !has(x, y) {
                        violations.push(RuleViolation::OpenTriangle { color, ends: (x, y), middle: m });
                    }
                }
            }
        }
    }
    RuleReport { violations, unevaluated: &UNEVALUATED_RULES }
}

/// One named relation with its measured residual.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintCheck {
    pub name: String,
    pub satisfied: bool,
    pub residual: f64,
}

/// Raw per-diagram verdict: conjunction of the diagram's predicates,
/// evaluated over the whole vertex-relabeling orbit.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagramAdmissibility {
    pub id: DiagramId,
    pub admissible: bool,
    pub constraints: Vec<ConstraintCheck>,
    pub note: Option<String>,
}

/// Relative equality at tolerance `tol`: |a − b| ≤ tol (|a| + |b| + 1).
fn rel_eq(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (a.abs() + b.abs() + 1.0)
}

fn rel_res(a: f64, b: f64) -> f64 {
    (a - b).abs() / (a.abs() + b.abs() + 1.0)
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    let mut idx = [0usize, 1, 2, 3];
    heap(&mut idx, 4, &mut out);
    out
}

fn heap(a: &mut [usize; 4], k: usize, out: &mut Vec<[usize; 4]>) {
    if k == 1 {
        out.push(*a);
        return;
    }
    for i in 0..k {
        heap(a, k - 1, out);
        if k % 2 == 0 {
            a.swap(i, k - 1);
        } else {
            a.swap(0, k - 1);
        }
    }
}

const SQRT3_MINUS_2: f64 = -0.267_949_192_431_122_7; // √3 − 2

/// Evaluate a fixed-labeling predicate for `id` on the permuted gammas.
/// Returns (satisfied, worst relative equality residual, checks).
fn predicate(id: DiagramId, g: [f64; 4], tol: f64) -> (bool, f64, Vec<ConstraintCheck>) {
    match id {
        DiagramId::I => {
            let s12 = g[0] + g[1];
            let s34 = g[2] + g[3];
            let sums_ok = s12.abs() > tol * (g[0].abs() + g[1].abs() + 1.0)
                && s34.abs() > tol * (g[2].abs() + g[3].abs() + 1.0);
            // c² = −Γ₁Γ₂/(Γ₃Γ₄) with |c| = 1 for real-normalized limits.
            let p = (g[0] * g[1]).abs();
            let q = (g[2] * g[3]).abs();
            let eq = rel_eq(p, q, tol);
            let res = rel_res(p, q);
            let checks = vec![
                ConstraintCheck {
                    name: "(Γ1+Γ2)(Γ3+Γ4) ≠ 0".into(),
                    satisfied: sums_ok,
                    residual: (s12 * s34).abs(),
                },
                ConstraintCheck {
                    name: "|Γ1Γ2| = |Γ3Γ4| (|c| = 1 with c² = −Γ1Γ2/Γ3Γ4)".into(),
                    satisfied: eq,
                    residual: res,
                },
            ];
            (sums_ok && eq, res, checks)
        }
        DiagramId::II | DiagramId::LowerI | DiagramId::LowerIv => {
            let res = [
                rel_res(g[0], g[1]),
                rel_res(g[1], g[2]),
                rel_res(g[2], -g[3]),
            ]
            .into_iter()
            .fold(0.0_f64, f64::max);
            let ok = rel_eq(g[0], g[1], tol) && rel_eq(g[1], g[2], tol) && rel_eq(g[2], -g[3], tol);
            let checks = vec![ConstraintCheck {
                name: "Γi = Γj = Γk = −Γl".into(),
                satisfied: ok,
                residual: res,
            }];
            (ok, res, checks)
        }
        DiagramId::III => {
            let p = g[0] * g[2];
            let q = g[1] * g[3];
            let eq = rel_eq(p, q, tol);
            let res = rel_res(p, q);
            let negative = p < 0.0 && q < 0.0;
            let sums = [
                (g[0] + g[1], g[0].abs() + g[1].abs()),
                (g[1] + g[2], g[1].abs() + g[2].abs()),
                (g[2] + g[3], g[2].abs() + g[3].abs()),
                (g[0] + g[3], g[0].abs() + g[3].abs()),
            ];
            let sums_ok = sums.iter().all(|(s, m)| s.abs() > tol * (m + 1.0));
            let sums = [sums[0].0, sums[1].0, sums[2].0, sums[3].0];
            let checks = vec![
                ConstraintCheck { name: "Γ1Γ3 = Γ2Γ4".into(), satisfied: eq, residual: res },
                ConstraintCheck {
                    name: "Γ1Γ3 < 0".into(),
                    satisfied: negative,
                    residual: p.max(q).max(0.0),
                },
                ConstraintCheck {
                    name: "adjacent pair sums ≠ 0".into(),
                    satisfied: sums_ok,
                    residual: sums.iter().fold(f64::INFINITY, |m, s| m.min(s.abs())),
                },
            ];
            (eq && negative && sums_ok, res, checks)
        }
        DiagramId::LowerVi => {
            // Γ3 = Γ4 = (√3−2)^{±1} Γ1 = (√3−2)^{±1} Γ2
            let pairs = rel_eq(g[0], g[1], tol) && rel_eq(g[2], g[3], tol);
            let pair_res = rel_res(g[0], g[1]).max(rel_res(g[2], g[3]));
            let direct = rel_res(g[2], SQRT3_MINUS_2 * g[0]);
            let inverse = rel_res(g[2], g[0] / SQRT3_MINUS_2);
            let ratio_res = direct.min(inverse);
            let ratio_ok = rel_eq(g[2], SQRT3_MINUS_2 * g[0], tol)
                || rel_eq(g[2], g[0] / SQRT3_MINUS_2, tol);
            let res = pair_res.max(ratio_res);
            let checks = vec![ConstraintCheck {
                name: "Γ3 = Γ4 = (√3−2)^{±1}Γ1 = (√3−2)^{±1}Γ2".into(),
                satisfied: pairs && ratio_ok,
                residual: res,
            }];
            (pairs && ratio_ok, res, checks)
        }
        DiagramId::LowerIx => (true, 0.0, Vec::new()),
    }
}

/// Evaluate the vorticity constraints of one problematic diagram over the
/// full S₄ relabeling orbit. Admissible iff some labeling satisfies every
/// predicate; the reported residuals belong to the best labeling.
pub fn diagram_constraints(
    id: DiagramId,
    system: &VortexSystem,
    tol: f64,
) -> Result<DiagramAdmissibility, DiagramsError> {
    require_collapse_context(system, tol)?;
    let g = system.gammas();
    let mut best: Option<(bool, f64, Vec<ConstraintCheck>)> = None;
    for perm in permutations4() {
        let pg = [g[perm[0]], g[perm[1]], g[perm[2]], g[perm[3]]];
        let cand = predicate(id, pg, tol);
        let better = match &best {
            None => true,
            Some((ok, res, _)) => (cand.0 && !ok) || (cand.0 == *ok && cand.1 < *res),
        };
        if better {
            best = Some(cand);
        }
    }
    let (admissible, _, constraints) = best.expect("orbit is nonempty");
    let note = if id == DiagramId::LowerIx {
        Some("vacuously admissible; all pairwise distances scale together, r_kl ≈ t^{-q}".into())
    } else {
        None
    };
    Ok(DiagramAdmissibility { id, admissible, constraints, note })
}

fn require_collapse_context(system: &VortexSystem, tol: f64) -> Result<(), DiagramsError> {
    if system.len() != 4 {
        return Err(DiagramsError::Dimension(system.len()));
    }
    let l = system.angular_momentum();
    if l.abs() > tol * (system.momentum_scale() + 1.0) {
        return Err(DiagramsError::MomentumNotZero { l });
    }
    Ok(())
}

/// Requests for the standalone proposition checks. Indices are 0-based
/// into the vorticity vector and must be distinct and in range.
#[derive(Debug, Clone, PartialEq)]
pub enum PropositionRequest {
    /// Two circled stroke-joined vertices force Γi + Γj ≠ 0.
    CircledStrokePair { i: usize, j: usize },
    /// An isolated stroke has circled ends; if the ends are close, their
    /// total vorticity vanishes.
    IsolatedStroke { i: usize, j: usize, close: bool },
    /// An isolated uncircled triangle forces 1/Γi + 1/Γj + 1/Γk = 0, or
    /// equivalently ΓiΓj + ΓjΓk + ΓkΓi = 0.
    IsolatedTriangle { i: usize, j: usize, k: usize },
    /// A fully stroked isolated 4-set with no circles forces L_ijkl = 0.
    FullQuad { i: usize, j: usize, k: usize, l: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropositionResult {
    pub name: String,
    pub satisfied: bool,
    pub residual: f64,
}

pub fn proposition_checks(
    system: &VortexSystem,
    requests: &[PropositionRequest],
) -> Vec<PropositionResult> {
    let g = system.gammas();
    let tol = 1e-9;
    requests
        .iter()
        .map(|req| match *req {
            PropositionRequest::CircledStrokePair { i, j } => {
                let s = g[i] + g[j];
                PropositionResult {
                    name: format!("Γ{}+Γ{} ≠ 0 (circled stroke pair)", i + 1, j + 1),
                    satisfied: s.abs() > tol * (g[i].abs() + g[j].abs() + 1.0),
                    residual: s.abs(),
                }
            }
            PropositionRequest::IsolatedStroke { i, j, close } => {
                let s = g[i] + g[j];
                PropositionResult {
                    name: format!(
                        "isolated stroke {}-{}{}",
                        i + 1,
                        j + 1,
                        if close { ": Γi+Γj = 0 required" } else { ": ends must be circled" }
                    ),
                    satisfied: !close || s.abs() <= tol * (g[i].abs() + g[j].abs() + 1.0),
                    residual: s.abs(),
                }
            }
            PropositionRequest::IsolatedTriangle { i, j, k } => {
                let inv = 1.0 / g[i] + 1.0 / g[j] + 1.0 / g[k];
                let sym = g[i] * g[j] + g[j] * g[k] + g[k] * g[i];
                let inv_scale = 1.0 / g[i].abs() + 1.0 / g[j].abs() + 1.0 / g[k].abs() + 1.0;
                let sym_scale =
                    (g[i] * g[j]).abs() + (g[j] * g[k]).abs() + (g[k] * g[i]).abs() + 1.0;
                PropositionResult {
                    name: format!("isolated triangle {}{}{}: ΣΓ⁻¹ = 0 or ΣΓΓ = 0", i + 1, j + 1, k + 1),
                    satisfied: inv.abs() <= tol * inv_scale || sym.abs() <= tol * sym_scale,
                    residual: inv.abs().min(sym.abs()),
                }
            }
            PropositionRequest::FullQuad { i, j, k, l } => {
                let quad = g[i] * g[j]
                    + g[j] * g[k]
                    + g[k] * g[i]
                    + g[l] * (g[i] + g[j] + g[k]);
                let scale = (g[i] * g[j]).abs()
                    + (g[j] * g[k]).abs()
                    + (g[k] * g[i]).abs()
                    + (g[l] * (g[i] + g[j] + g[k])).abs()
                    + 1.0;
                PropositionResult {
                    name: format!("full quad {}{}{}{}: L = 0", i + 1, j + 1, k + 1, l + 1),
                    satisfied: quad.abs() <= tol * scale,
                    residual: quad.abs(),
                }
            }
        })
        .collect()
}

/// The case-viii endpoint relations, exposed as an optional predicate. The
/// pair has no common solution compatible with L = 0, which is what rules
/// the diagram out.
pub fn diagram_viii_constraint_pair(system: &VortexSystem, tol: f64) -> Result<[ConstraintCheck; 2], DiagramsError> {
    require_collapse_context(system, tol)?;
    let g = system.gammas();
    let mut best: Option<[ConstraintCheck; 2]> = None;
    let mut best_res = f64::INFINITY;
    for perm in permutations4() {
        let p = [g[perm[0]], g[perm[1]], g[perm[2]], g[perm[3]]];
        let first = (p[0] + p[1]) * (p[2] * p[2] + p[3] * p[3])
            - (p[0] * p[0] + p[1] * p[1]) * (p[2] + p[3]);
        let second = p[0] * p[1] * (p[0] + p[1]).powi(2) + p[2] * p[3] * (p[2] + p[3]).powi(2)
            - (p[0] + p[1]).powi(2) * (p[2] + p[3]).powi(2);
        let scale1 = ((p[0] + p[1]) * (p[2] * p[2] + p[3] * p[3])).abs()
            + ((p[0] * p[0] + p[1] * p[1]) * (p[2] + p[3])).abs()
            + 1.0;
        let scale2 = (p[0] * p[1] * (p[0] + p[1]).powi(2)).abs()
            + (p[2] * p[3] * (p[2] + p[3]).powi(2)).abs()
            + ((p[0] + p[1]).powi(2) * (p[2] + p[3]).powi(2)).abs()
            + 1.0;
        let res = (first.abs() / scale1).max(second.abs() / scale2);
        if res < best_res {
            best_res = res;
            best = Some([
                ConstraintCheck {
                    name: "(Γ1+Γ2)(Γ3²+Γ4²) − (Γ1²+Γ2²)(Γ3+Γ4) = 0".into(),
                    satisfied: first.abs() <= tol * scale1,
                    residual: first.abs() / scale1,
                },
                ConstraintCheck {
                    name: "Γ1Γ2(Γ1+Γ2)² + Γ3Γ4(Γ3+Γ4)² − (Γ1+Γ2)²(Γ3+Γ4)² = 0".into(),
                    satisfied: second.abs() <= tol * scale2,
                    residual: second.abs() / scale2,
                },
            ]);
        }
    }
    Ok(best.expect("orbit nonempty"))
}

/// The three vorticity scenarios of the finiteness case split.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    /// No special relation: survivors III and ix.
    Generic,
    /// Γi = Γj = Γk = −Γl up to permutation: survivors II, iv, ix.
    EqualTriple,
    /// Γi = Γj = (√3−2)Γk = (√3−2)Γl up to permutation: survivors III, vi, ix.
    RatioSqrt3Minus2,
}

impl Scenario {
    pub fn label(&self) -> &'static str {
        match self {
            Scenario::Generic => "generic",
            Scenario::EqualTriple => "equal",
            Scenario::RatioSqrt3Minus2 => "sqrt3-minus-2",
        }
    }

    pub fn survivors(&self) -> &'static [DiagramId] {
        match self {
            Scenario::Generic => &[DiagramId::III, DiagramId::LowerIx],
            Scenario::EqualTriple => &[DiagramId::II, DiagramId::LowerIv, DiagramId::LowerIx],
            Scenario::RatioSqrt3Minus2 => {
                &[DiagramId::III, DiagramId::LowerVi, DiagramId::LowerIx]
            }
        }
    }
}

/// Does some labeling satisfy Γi = Γj = Γk = −Γl?
pub fn is_equal_triple(system: &VortexSystem, tol: f64) -> bool {
    let g = system.gammas();
    permutations4().into_iter().any(|p| {
        rel_eq(g[p[0]], g[p[1]], tol)
            && rel_eq(g[p[1]], g[p[2]], tol)
            && rel_eq(g[p[2]], -g[p[3]], tol)
    })
}

/// Does some labeling satisfy Γi = Γj, Γk = Γl, Γk = (√3−2)Γi?
/// (The inverse ratio is covered by swapping the two pairs.)
pub fn is_sqrt3_relation(system: &VortexSystem, tol: f64) -> bool {
    let g = system.gammas();
    permutations4().into_iter().any(|p| {
        rel_eq(g[p[0]], g[p[1]], tol)
            && rel_eq(g[p[2]], g[p[3]], tol)
            && rel_eq(g[p[2]], SQRT3_MINUS_2 * g[p[0]], tol)
    })
}

pub fn classify_scenario(system: &VortexSystem, tol: f64) -> Scenario {
    if is_equal_triple(system, tol) {
        Scenario::EqualTriple
    } else if is_sqrt3_relation(system, tol) {
        Scenario::RatioSqrt3Minus2
    } else {
        Scenario::Generic
    }
}

/// The narrowed report: scenario, its surviving diagram list, and the raw
/// per-diagram predicate data for all seven.
#[derive(Debug, Clone, PartialEq)]
pub struct AdmissibilityReport {
    pub scenario: Scenario,
    pub survivors: Vec<DiagramId>,
    pub diagrams: Vec<DiagramAdmissibility>,
}

/// Classify the vorticities into a scenario and emit the surviving diagram
/// list, along with every raw constraint evaluation.
pub fn narrowed_admissibility(
    system: &VortexSystem,
    tol: f64,
) -> Result<AdmissibilityReport, DiagramsError> {
    require_collapse_context(system, tol)?;
    let scenario = classify_scenario(system, tol);
    let diagrams = DiagramId::ALL
        .iter()
        .map(|&id| diagram_constraints(id, system, tol))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AdmissibilityReport {
        scenario,
        survivors: scenario.survivors().to_vec(),
        diagrams,
    })
}
