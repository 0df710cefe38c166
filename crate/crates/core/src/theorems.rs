//! Theorem profiles: hypotheses, per-block inequalities and global bounds.
//!
//! Each profile carries a coefficient row `(alpha, beta, gamma, delta_k, eps_e23)`
//! of the linear form
//!
//! ```text
//! L(B) = alpha v(B) + beta e(B) + gamma f(B) + delta_k k(B) + eps_e23 e23(B)
//! ```
//!
//! Summing `L(B) <= 0` over all blocks and substituting `f = 2 - n + e` gives a
//! bound on the number of edges; [`derive_global_bound`] performs that step
//! symbolically.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::blocks::{BlockKind, BlockMode};
use crate::error::{Error, Result};
use crate::forbidden::{contains_cycle_of_length, structural_stats};
use crate::ledger::{build_ledger, int, rat, ContributionLedger, Rational};
use crate::plane::{build_embedding, PlaneGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ProfileId {
    #[serde(rename = "C5")]
    C5,
    #[serde(rename = "BI_C6")]
    BiC6,
    #[serde(rename = "BI_C8")]
    BiC8,
    #[serde(rename = "BI_C8C10")]
    BiC8C10,
    #[serde(rename = "TRI_C6")]
    TriC6,
    #[serde(rename = "TRI_C8")]
    TriC8,
}

impl ProfileId {
    pub const ALL: [ProfileId; 6] =
        [ProfileId::C5, ProfileId::BiC6, ProfileId::BiC8, ProfileId::BiC8C10, ProfileId::TriC6, ProfileId::TriC8];

    pub fn name(self) -> &'static str {
        match self {
            ProfileId::C5 => "C5",
            ProfileId::BiC6 => "BI_C6",
            ProfileId::BiC8 => "BI_C8",
            ProfileId::BiC8C10 => "BI_C8C10",
            ProfileId::TriC6 => "TRI_C6",
            ProfileId::TriC8 => "TRI_C8",
        }
    }
}

impl fmt::Display for ProfileId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProfileId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ProfileId::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownProfile(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Coefficients {
    pub alpha: i64,
    pub beta: i64,
    pub gamma: i64,
    pub delta_k: i64,
    pub eps_e23: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DegreeRule {
    AtLeast(usize),
    Exactly(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremProfile {
    pub id: ProfileId,
    pub mode: BlockMode,
    /// Forbidden cycle lengths (3 stands for triangle-freeness).
    pub forbidden: &'static [usize],
    pub bipartite: bool,
    pub degree: DegreeRule,
    pub two_connected: bool,
    pub deg2_neighbor_rule: bool,
    /// Smallest order for which the global bound is claimed; below it only a warning is issued.
    pub n_floor: Option<usize>,
    pub coefficients: Coefficients,
    pub catalog: &'static [BlockKind],
    /// The edge count is an integer, so the bound may be floored.
    pub integer_floor: bool,
    /// Bounded 6-faces are split by chords before the blocks are checked.
    pub saturate_six_faces: bool,
}

const TRI_CATALOG: &[BlockKind] = &[BlockKind::K2, BlockKind::K3, BlockKind::Theta4, BlockKind::K4];
const BI_C6_CATALOG: &[BlockKind] = &[BlockKind::K2, BlockKind::C4, BlockKind::K23];
const C8_CATALOG: &[BlockKind] = &[BlockKind::K2, BlockKind::C4, BlockKind::Theta6, BlockKind::Q7];
const TRI_C6_CATALOG: &[BlockKind] = &[BlockKind::K2, BlockKind::C4];

const fn coeffs(alpha: i64, beta: i64, gamma: i64, delta_k: i64, eps_e23: i64) -> Coefficients {
    Coefficients { alpha, beta, gamma, delta_k, eps_e23 }
}

pub fn get_profile(id: ProfileId) -> TheoremProfile {
    let base = TheoremProfile {
        id,
        mode: BlockMode::Quadrangular,
        forbidden: &[],
        bipartite: false,
        degree: DegreeRule::AtLeast(3),
        two_connected: false,
        deg2_neighbor_rule: false,
        n_floor: None,
        coefficients: coeffs(0, 0, 0, 0, 0),
        catalog: C8_CATALOG,
        integer_floor: false,
        saturate_six_faces: false,
    };
    match id {
        ProfileId::C5 => TheoremProfile {
            mode: BlockMode::Triangular,
            forbidden: &[5],
            two_connected: true,
            n_floor: Some(11),
            coefficients: coeffs(9, -23, 33, 0, 0),
            catalog: TRI_CATALOG,
            ..base
        },
        ProfileId::BiC6 => TheoremProfile {
            forbidden: &[6],
            bipartite: true,
            degree: DegreeRule::Exactly(2),
            deg2_neighbor_rule: true,
            n_floor: Some(6),
            coefficients: coeffs(2, -4, 8, -2, -1),
            catalog: BI_C6_CATALOG,
            ..base
        },
        ProfileId::BiC8 => TheoremProfile {
            forbidden: &[8],
            bipartite: true,
            coefficients: coeffs(0, -2, 5, 0, 0),
            ..base
        },
        ProfileId::BiC8C10 => TheoremProfile {
            forbidden: &[8, 10],
            bipartite: true,
            coefficients: coeffs(24, -31, 42, 0, 0),
            saturate_six_faces: true,
            ..base
        },
        ProfileId::TriC6 => TheoremProfile {
            forbidden: &[3, 6],
            coefficients: coeffs(1, -5, 10, 0, 0),
            catalog: TRI_C6_CATALOG,
            integer_floor: true,
            ..base
        },
        ProfileId::TriC8 => TheoremProfile {
            forbidden: &[3, 8],
            coefficients: coeffs(24, -61, 105, 0, 0),
            ..base
        },
    }
}

/// `e <= a n + b_k k + b_e23 e23 + c`, optionally floored as a whole.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundFormula {
    pub a: Rational,
    pub b_k: Rational,
    pub b_e23: Rational,
    pub c: Rational,
    pub integer_floor: bool,
}

/// The quantities a bound formula depends on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GraphCounts {
    pub n: usize,
    pub e: usize,
    pub k: usize,
    pub e23: usize,
}

impl GraphCounts {
    pub fn of(g: &PlaneGraph) -> GraphCounts {
        let s = structural_stats(g.graph());
        GraphCounts { n: g.n(), e: g.edge_count(), k: s.k, e23: s.e23 }
    }
}

impl BoundFormula {
    pub fn evaluate(&self, c: &GraphCounts) -> Rational {
        let raw = &self.a * int(c.n as i64) + &self.b_k * int(c.k as i64) + &self.b_e23 * int(c.e23 as i64) + &self.c;
        if self.integer_floor {
            raw.floor()
        } else {
            raw
        }
    }
}

fn term(coef: &Rational, var: &str) -> Option<(bool, String)> {
    if coef.is_zero() {
        return None;
    }
    let (p, q) = (coef.numer().abs(), coef.denom().clone());
    let body = match (p == 1.into(), q == 1.into()) {
        (true, true) => var.to_string(),
        (true, false) => format!("{var}/{q}"),
        (false, true) => format!("{p}{var}"),
        (false, false) => format!("{p}{var}/{q}"),
    };
    Some((coef.is_negative(), body))
}

impl fmt::Display for BoundFormula {
    /// Renders e.g. `e ≤ 3n/2 + k/2 + e23/4 − 4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let constant = {
            let (p, q) = (self.c.numer().abs(), self.c.denom().clone());
            (!self.c.is_zero()).then(|| (self.c.is_negative(), if q == 1.into() { p.to_string() } else { format!("{p}/{q}") }))
        };
        let terms: Vec<(bool, String)> = [term(&self.a, "n"), term(&self.b_k, "k"), term(&self.b_e23, "e23"), constant]
            .into_iter()
            .flatten()
            .collect();
        let mut rhs = String::new();
        for (i, (neg, body)) in terms.iter().enumerate() {
            match (i, neg) {
                (0, true) => rhs.push('−'),
                (0, false) => {}
                (_, true) => rhs.push_str(" − "),
                (_, false) => rhs.push_str(" + "),
            }
            rhs.push_str(body);
        }
        if rhs.is_empty() {
            rhs.push('0');
        }
        if self.integer_floor {
            write!(f, "e ≤ floor({rhs})")
        } else {
            write!(f, "e ≤ {rhs}")
        }
    }
}

/// Substitutes `f = 2 - n + e` into the profile's inequality and solves for `e`.
pub fn derive_global_bound(p: &TheoremProfile) -> Result<BoundFormula> {
    let c = p.coefficients;
    let denom = c.beta + c.gamma;
    if denom <= 0 {
        return Err(Error::DegenerateProfile(denom.to_string()));
    }
    Ok(BoundFormula {
        a: rat(c.gamma - c.alpha, denom),
        b_k: rat(-c.delta_k, denom),
        b_e23: rat(-c.eps_e23, denom),
        c: rat(-2 * c.gamma, denom),
        integer_floor: p.integer_floor,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PredicateResult {
    pub name: String,
    pub ok: bool,
    /// Failing warnings do not invalidate the hypotheses.
    pub warning: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub profile: ProfileId,
    pub checks: Vec<PredicateResult>,
}

impl HypothesisReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok || c.warning)
    }

    pub fn failures(&self) -> Vec<&PredicateResult> {
        self.checks.iter().filter(|c| !c.ok && !c.warning).collect()
    }

    pub fn warnings(&self) -> Vec<&PredicateResult> {
        self.checks.iter().filter(|c| !c.ok && c.warning).collect()
    }

    fn summary(&self) -> String {
        self.failures().iter().map(|c| format!("{}: {}", c.name, c.detail)).collect::<Vec<_>>().join("; ")
    }
}

fn predicate(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> PredicateResult {
    PredicateResult { name: name.into(), ok, warning: false, detail: detail.into() }
}

/// Evaluates every hypothesis of `p` on `g`.
pub fn check_hypotheses(g: &PlaneGraph, p: &TheoremProfile) -> HypothesisReport {
    let s = structural_stats(g.graph());
    let mut checks = Vec::new();
    for &len in p.forbidden {
        let found = contains_cycle_of_length(g.graph(), len).expect("profile lengths are at least 3");
        let name = if len == 3 { "triangle_free".to_string() } else { format!("c{len}_free") };
        let detail = if found { format!("contains a {len}-cycle") } else { format!("no {len}-cycle") };
        checks.push(predicate(name, !found, detail));
    }
    if p.bipartite {
        let detail = if s.bipartite { "2-colourable" } else { "contains an odd cycle" };
        checks.push(predicate("bipartite", s.bipartite, detail));
    }
    match p.degree {
        DegreeRule::AtLeast(d) => {
            checks.push(predicate(
                "min_degree",
                s.min_degree >= d,
                format!("min degree {} (required at least {d})", s.min_degree),
            ));
        }
        DegreeRule::Exactly(d) => {
            let detail = if s.min_degree == d {
                format!("min degree {d}")
            } else if s.min_degree > d {
                format!(
                    "min degree {}: no bipartite C6-free planar graph has min degree above 2, so the profile is vacuous",
                    s.min_degree
                )
            } else {
                format!(
                    "min degree {}: delete vertices of degree below {d} first (that reduction is not implemented)",
                    s.min_degree
                )
            };
            checks.push(predicate("min_degree", s.min_degree == d, detail));
        }
    }
    if p.two_connected {
        let detail = if s.two_connected { "no cut vertex".to_string() } else { "has a cut vertex or fewer than 3 vertices".to_string() };
        checks.push(predicate("two_connected", s.two_connected, detail));
    }
    if p.deg2_neighbor_rule {
        let detail = if s.deg2_neighbor_ok {
            "every degree-2 vertex has a neighbour of degree at most 3"
        } else {
            "some degree-2 vertex has both neighbours of degree greater than 3"
        };
        checks.push(predicate("deg2_neighbor_rule", s.deg2_neighbor_ok, detail));
    }
    if let Some(floor) = p.n_floor {
        let ok = g.n() >= floor;
        let detail = if ok {
            format!("n = {} is at least {floor}", g.n())
        } else {
            format!("n = {} is below {floor}; the global bound is only claimed from n = {floor} on", g.n())
        };
        checks.push(PredicateResult { name: "n_floor".into(), ok, warning: true, detail });
    }
    HypothesisReport { profile: p.id, checks }
}

/// Result of [`saturate_six_faces`].
#[derive(Debug, Clone)]
pub struct Saturation {
    pub graph: PlaneGraph,
    /// Inserted chords in insertion order.
    pub chords: Vec<(usize, usize)>,
}

fn saturation_preconditions(g: &PlaneGraph) -> Vec<String> {
    let s = structural_stats(g.graph());
    let mut broken = Vec::new();
    if !s.bipartite {
        broken.push("graph is not bipartite".to_string());
    }
    for len in [8, 10] {
        if contains_cycle_of_length(g.graph(), len).expect("valid length") {
            broken.push(format!("graph contains a {len}-cycle"));
        }
    }
    if s.min_degree < 3 {
        broken.push(format!("min degree {} is below 3", s.min_degree));
    }
    broken
}

/// Splits every bounded 6-face into two 4-faces by a chord between opposite vertices.
pub fn saturate_six_faces(g: &PlaneGraph) -> Result<Saturation> {
    let broken = saturation_preconditions(g);
    if !broken.is_empty() {
        return Err(Error::HypothesisViolated(broken.join("; ")));
    }
    let mut cur = g.clone();
    let mut chords = Vec::new();
    while let Some(f) = (0..cur.face_count()).find(|&f| !cur.face(f).is_outer && cur.face_len(f) == 6) {
        let walk = cur.face_vertices(f);
        let mut distinct = walk.clone();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() != 6 {
            return Err(Error::Internal(format!("6-face {walk:?} is not a cycle")));
        }
        let Some(i) = (0..3).find(|&i| !cur.graph().has_edge(walk[i], walk[i + 3])) else {
            return Err(Error::Internal(format!("every diagonal of 6-face {walk:?} is already an edge")));
        };
        let (a, b) = (walk[i], walk[i + 3]);
        let (before_a, before_b) = (walk[(i + 5) % 6], walk[i + 2]);
        let mut rotations = cur.rotations().to_vec();
        for (v, w, after) in [(a, b, before_a), (b, a, before_b)] {
            let pos = rotations[v].iter().position(|&x| x == after).expect("face neighbour in rotation");
            rotations[v].insert(pos + 1, w);
        }
        cur = build_embedding(rotations, cur.outer_dart())?;
        chords.push((a.min(b), a.max(b)));
        let s = structural_stats(cur.graph());
        if !s.bipartite
            || contains_cycle_of_length(cur.graph(), 8)?
            || contains_cycle_of_length(cur.graph(), 10)?
        {
            return Err(Error::Internal(format!("chord {a}-{b} created an odd, 8- or 10-cycle")));
        }
    }
    Ok(Saturation { graph: cur, chords })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockCheck {
    pub block: usize,
    pub kind: BlockKind,
    pub value: Rational,
    /// Whole-graph block below the profile's order floor; not held to `L(B) <= 0`.
    pub exempt: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundCheck {
    pub formula: BoundFormula,
    pub counts: GraphCounts,
    pub bound: Rational,
    /// `bound - e`.
    pub slack: Rational,
    pub holds: bool,
    pub tight: bool,
    /// `n` is at least the profile's order floor, so the theorem claims the bound.
    pub claimed: bool,
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub profile: ProfileId,
    pub hypotheses: HypothesisReport,
    /// Blocks were checked although the hypotheses fail.
    pub forced: bool,
    pub chords: Vec<(usize, usize)>,
    /// The graph the blocks were taken from (differs from the input after saturation).
    pub analyzed: Option<PlaneGraph>,
    pub ledger: Option<ContributionLedger>,
    pub blocks: Vec<BlockCheck>,
    /// Ids of blocks with `L(B) > 0` that are not exempt.
    pub violations: Vec<usize>,
    pub total: Option<Rational>,
    pub bound: Option<BoundCheck>,
    pub warnings: Vec<String>,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.hypotheses.ok() && self.violations.is_empty() && self.bound.as_ref().is_none_or(|b| b.holds || !b.claimed)
    }
}

/// `L` evaluated on a block contribution.
fn linear_form(c: &Coefficients, v: &Rational, e: usize, f: &Rational, k: Option<&Rational>, e23: Option<usize>) -> Rational {
    let mut total = int(c.alpha) * v + int(c.beta) * int(e as i64) + int(c.gamma) * f;
    if let Some(k) = k {
        total += int(c.delta_k) * k;
    }
    if let Some(e23) = e23 {
        total += int(c.eps_e23) * int(e23 as i64);
    }
    total
}

/// Evaluates `L(B)` on every block of `g`.
///
/// Fails with `HypothesisViolated` unless the hypotheses hold or `force` is set.
pub fn verify_per_block(g: &PlaneGraph, p: &TheoremProfile, force: bool) -> Result<Verdict> {
    let hypotheses = check_hypotheses(g, p);
    if !hypotheses.ok() && !force {
        return Err(Error::HypothesisViolated(hypotheses.summary()));
    }
    let mut warnings: Vec<String> = hypotheses.warnings().iter().map(|c| c.detail.clone()).collect();

    let mut chords = Vec::new();
    let mut analyzed = g.clone();
    if p.saturate_six_faces {
        match saturate_six_faces(g) {
            Ok(s) => {
                chords = s.chords;
                analyzed = s.graph;
            }
            Err(Error::HypothesisViolated(msg)) if force => warnings.push(format!("saturation skipped: {msg}")),
            Err(e) => return Err(e),
        }
    }
    let mut hypotheses = hypotheses;
    if p.saturate_six_faces {
        let left = analyzed.faces().iter().filter(|f| f.len() == 6).count();
        hypotheses.checks.push(predicate(
            "no_six_faces",
            left == 0,
            if left == 0 {
                "no 6-face after saturation".to_string()
            } else {
                format!("{left} 6-face(s) left after saturation (an outer 6-face is never split)")
            },
        ));
        if !hypotheses.ok() && !force {
            return Err(Error::HypothesisViolated(hypotheses.summary()));
        }
    }

    let ledger = build_ledger(&analyzed, p.mode)?;
    let c = p.coefficients;
    let below_floor = p.n_floor.is_some_and(|floor| analyzed.n() < floor);
    let mut blocks = Vec::with_capacity(ledger.entries.len());
    let mut violations = Vec::new();
    for entry in &ledger.entries {
        if hypotheses.ok() && !p.catalog.contains(&entry.kind) {
            return Err(Error::UnexpectedBlock { block: entry.block, kind: entry.kind });
        }
        let value = linear_form(&c, &entry.v, entry.e, &entry.f, entry.k.as_ref(), entry.e23);
        let whole = ledger.decomposition.blocks[entry.block].edges.len() == analyzed.edge_count();
        let exempt = value.is_positive() && below_floor && whole;
        if exempt {
            warnings.push(format!(
                "block {} ({}) is the whole graph below the order floor; L(B) = {value} not asserted",
                entry.block, entry.kind
            ));
        } else if value.is_positive() {
            violations.push(entry.block);
        }
        blocks.push(BlockCheck { block: entry.block, kind: entry.kind, value, exempt });
    }

    let total = blocks.iter().fold(Rational::zero(), |acc, b| acc + &b.value);
    let s = structural_stats(analyzed.graph());
    let from_graph = linear_form(
        &c,
        &int(analyzed.n() as i64),
        analyzed.edge_count(),
        &int(analyzed.face_count() as i64),
        (p.mode == BlockMode::Quadrangular).then(|| int(s.k as i64)).as_ref(),
        (p.mode == BlockMode::Quadrangular).then_some(s.e23),
    );
    if total != from_graph {
        return Err(Error::Internal(format!("sum of L(B) is {total} but the graph totals give {from_graph}")));
    }

    Ok(Verdict {
        profile: p.id,
        hypotheses,
        forced: force,
        chords,
        analyzed: Some(analyzed),
        ledger: Some(ledger),
        blocks,
        violations,
        total: Some(total),
        bound: None,
        warnings,
    })
}

/// Compares `e` with the profile's global bound.
pub fn check_bound(g: &PlaneGraph, p: &TheoremProfile) -> Result<BoundCheck> {
    let hypotheses = check_hypotheses(g, p);
    if !hypotheses.ok() {
        return Err(Error::HypothesisViolated(hypotheses.summary()));
    }
    bound_for_counts(p, GraphCounts::of(g))
}

/// Bound check on bare counts, without a graph.
pub fn bound_for_counts(p: &TheoremProfile, counts: GraphCounts) -> Result<BoundCheck> {
    let formula = derive_global_bound(p)?;
    let bound = formula.evaluate(&counts);
    let slack = &bound - int(counts.e as i64);
    let claimed = p.n_floor.is_none_or(|floor| counts.n >= floor);
    Ok(BoundCheck { holds: !slack.is_negative(), tight: slack.is_zero(), claimed, formula, counts, bound, slack })
}

/// Hypotheses, per-block inequalities and global bound in one verdict.
///
/// When the hypotheses fail and `force` is not set, the verdict carries only
/// the diagnostics.
pub fn verify(g: &PlaneGraph, p: &TheoremProfile, force: bool) -> Result<Verdict> {
    let hypotheses = check_hypotheses(g, p);
    if !hypotheses.ok() && !force {
        return Ok(Verdict {
            profile: p.id,
            hypotheses,
            forced: false,
            chords: Vec::new(),
            analyzed: None,
            ledger: None,
            blocks: Vec::new(),
            violations: Vec::new(),
            total: None,
            bound: None,
            warnings: Vec::new(),
        });
    }
    let mut verdict = match verify_per_block(g, p, force) {
        Err(Error::HypothesisViolated(_)) => {
            // only reachable through the post-saturation check
            let mut h = hypotheses;
            h.checks.push(predicate("no_six_faces", false, "6-face left after saturation"));
            return Ok(Verdict {
                profile: p.id,
                hypotheses: h,
                forced: false,
                chords: Vec::new(),
                analyzed: None,
                ledger: None,
                blocks: Vec::new(),
                violations: Vec::new(),
                total: None,
                bound: None,
                warnings: Vec::new(),
            });
        }
        other => other?,
    };
    let bound = bound_for_counts(p, GraphCounts::of(g))?;
    if !bound.holds && !bound.claimed {
        verdict.warnings.push(format!("e = {} exceeds the bound, which is not claimed for n = {}", bound.counts.e, g.n()));
    }
    verdict.bound = Some(bound);
    Ok(verdict)
}
