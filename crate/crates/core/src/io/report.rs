use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::blocks::{BlockDecomposition, PseudofaceMap};
use crate::error::Error;
use crate::forbidden::structural_stats;
use crate::ledger::{ContributionLedger, Rational};
use crate::plane::PlaneGraph;
use crate::search::{EnumerationStats, SearchResult};
use crate::theorems::{
    bound_for_counts, BoundCheck, BoundFormula, GraphCounts, PredicateResult, ProfileId, TheoremProfile, Verdict,
};

/// Version of the JSON layout described in `docs/report-schema.json`.
pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "text" => Ok(ReportFormat::Text),
            "json" => Ok(ReportFormat::Json),
            _ => Err(Error::Syntax { line: 0, message: format!("unknown format '{s}'") }),
        }
    }
}

/// Canonical `p/q` rendering: `q > 0`, `gcd(p, q) = 1`, integers keep `/1`.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphSummary {
    pub n: usize,
    pub e: usize,
    pub f: usize,
    pub min_degree: usize,
    pub bipartite: bool,
    pub two_connected: bool,
    pub k: usize,
    pub e23: usize,
}

impl GraphSummary {
    pub fn of(g: &PlaneGraph) -> GraphSummary {
        let s = structural_stats(g.graph());
        GraphSummary {
            n: g.n(),
            e: g.edge_count(),
            f: g.face_count(),
            min_degree: s.min_degree,
            bipartite: s.bipartite,
            two_connected: s.two_connected,
            k: s.k,
            e23: s.e23,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockEntry {
    pub id: usize,
    pub kind: String,
    pub vertices: usize,
    pub edges: usize,
    pub interior_faces: usize,
    pub junctions: usize,
    pub v: String,
    pub e: usize,
    pub f: String,
    pub k: Option<String>,
    pub e23: Option<usize>,
    /// `L(B)` under the report's profile.
    pub value: Option<String>,
    pub exempt: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Totals {
    pub v: String,
    pub e: usize,
    pub f: String,
    pub k: Option<String>,
    pub e23: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundSummary {
    pub formula: String,
    pub value: String,
    pub edges: usize,
    pub slack: String,
    pub holds: bool,
    pub tight: bool,
    pub claimed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerdictSummary {
    pub profile: String,
    pub hypotheses_ok: bool,
    pub forced: bool,
    pub checks: Vec<PredicateResult>,
    pub chords: Vec<[usize; 2]>,
    pub violations: Vec<usize>,
    pub total: Option<String>,
    pub bound: Option<BoundSummary>,
    pub warnings: Vec<String>,
    /// Error code explaining a failed verdict, e.g. `HypothesisViolated`.
    pub diagnostic: Option<String>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub mode: Option<String>,
    pub graph: GraphSummary,
    pub blocks: Vec<BlockEntry>,
    pub totals: Option<Totals>,
    pub verdict: Option<VerdictSummary>,
}

fn block_entries(ledger: &ContributionLedger) -> Vec<BlockEntry> {
    ledger
        .entries
        .iter()
        .map(|x| {
            let b = &ledger.decomposition.blocks[x.block];
            BlockEntry {
                id: x.block,
                kind: x.kind.name().to_string(),
                vertices: b.vertices.len(),
                edges: b.edges.len(),
                interior_faces: b.interior_faces.len(),
                junctions: b.junction_vertices.len(),
                v: format_rational(&x.v),
                e: x.e,
                f: format_rational(&x.f),
                k: x.k.as_ref().map(format_rational),
                e23: x.e23,
                value: None,
                exempt: false,
            }
        })
        .collect()
}

fn totals(ledger: &ContributionLedger) -> Totals {
    let t = &ledger.totals;
    Totals {
        v: format_rational(&t.v),
        e: t.e,
        f: format_rational(&t.f),
        k: t.k.as_ref().map(format_rational),
        e23: t.e23,
    }
}

impl Report {
    /// Contribution table of one graph.
    pub fn ledger(g: &PlaneGraph, ledger: &ContributionLedger) -> Report {
        Report {
            schema_version: REPORT_SCHEMA_VERSION,
            command: "ledger".into(),
            mode: Some(ledger.mode.name().into()),
            graph: GraphSummary::of(g),
            blocks: block_entries(ledger),
            totals: Some(totals(ledger)),
            verdict: None,
        }
    }

    /// Full verification report; `g` is the input graph, not the saturated one.
    pub fn verdict(g: &PlaneGraph, v: &Verdict) -> Report {
        let mut blocks = v.ledger.as_ref().map(block_entries).unwrap_or_default();
        for (entry, check) in blocks.iter_mut().zip(&v.blocks) {
            entry.value = Some(format_rational(&check.value));
            entry.exempt = check.exempt;
        }
        let bound = v.bound.as_ref().map(|b| BoundSummary {
            formula: b.formula.to_string(),
            value: format_rational(&b.bound),
            edges: b.counts.e,
            slack: format_rational(&b.slack),
            holds: b.holds,
            tight: b.tight,
            claimed: b.claimed,
        });
        Report {
            schema_version: REPORT_SCHEMA_VERSION,
            command: "verify".into(),
            mode: v.ledger.as_ref().map(|l| l.mode.name().into()),
            graph: GraphSummary::of(g),
            blocks,
            totals: v.ledger.as_ref().map(totals),
            verdict: Some(VerdictSummary {
                profile: v.profile.name().into(),
                hypotheses_ok: v.hypotheses.ok(),
                forced: v.forced,
                checks: v.hypotheses.checks.clone(),
                chords: v.chords.iter().map(|&(a, b)| [a, b]).collect(),
                violations: v.violations.clone(),
                total: v.total.as_ref().map(format_rational),
                bound,
                warnings: v.warnings.clone(),
                diagnostic: if !v.hypotheses.ok() {
                    Some("HypothesisViolated".into())
                } else if !v.violations.is_empty() {
                    Some("BlockInequalityViolated".into())
                } else if v.bound.as_ref().is_some_and(|b| !b.holds && b.claimed) {
                    Some("BoundViolated".into())
                } else {
                    None
                },
                passed: v.passed(),
            }),
        }
    }
}

/// Text rendering of a `p/q` string: integers lose their `/1`.
fn compact(s: &str) -> &str {
    s.strip_suffix("/1").unwrap_or(s)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn write_text(r: &Report) -> String {
    let mut out = String::new();
    let g = &r.graph;
    let _ = writeln!(
        out,
        "graph: n={} e={} f={} min_degree={} bipartite={} two_connected={} k={} e23={}",
        g.n,
        g.e,
        g.f,
        g.min_degree,
        yes(g.bipartite),
        yes(g.two_connected),
        g.k,
        g.e23
    );
    if let Some(mode) = &r.mode {
        let _ = writeln!(out, "mode: {mode}");
    }
    if !r.blocks.is_empty() {
        let _ = writeln!(
            out,
            "{:>5} {:<7} {:>3} {:>3} {:>3} {:>5} {:>8} {:>8} {:>8} {:>4} {:>9}",
            "block", "kind", "|V|", "|E|", "int", "junct", "v(B)", "f(B)", "k(B)", "e23", "L(B)"
        );
        for b in &r.blocks {
            let value = b.value.as_deref().map(compact).unwrap_or("-");
            let _ = writeln!(
                out,
                "{:>5} {:<7} {:>3} {:>3} {:>3} {:>5} {:>8} {:>8} {:>8} {:>4} {:>9}{}",
                b.id,
                b.kind,
                b.vertices,
                b.edges,
                b.interior_faces,
                b.junctions,
                compact(&b.v),
                compact(&b.f),
                b.k.as_deref().map(compact).unwrap_or("-"),
                b.e23.map_or("-".to_string(), |x| x.to_string()),
                value,
                if b.exempt { " (exempt)" } else { "" }
            );
        }
    }
    if let Some(t) = &r.totals {
        let _ = write!(out, "totals: v={} e={} f={}", compact(&t.v), t.e, compact(&t.f));
        if let (Some(k), Some(e23)) = (&t.k, t.e23) {
            let _ = write!(out, " k={} e23={}", compact(k), e23);
        }
        out.push('\n');
    }
    if let Some(v) = &r.verdict {
        let _ = writeln!(out, "profile {}: hypotheses {}", v.profile, if v.hypotheses_ok { "ok" } else { "violated" });
        for c in &v.checks {
            let tag = match (c.ok, c.warning) {
                (true, _) => "ok  ",
                (false, true) => "warn",
                (false, false) => "FAIL",
            };
            let _ = writeln!(out, "  {tag} {}: {}", c.name, c.detail);
        }
        if v.forced {
            let _ = writeln!(out, "  (blocks checked despite failed hypotheses)");
        }
        for [a, b] in &v.chords {
            let _ = writeln!(out, "chord added: {a}-{b}");
        }
        if let Some(total) = &v.total {
            let _ = writeln!(out, "sum L(B) = {}", compact(total));
            if v.violations.is_empty() {
                let _ = writeln!(out, "violations: none");
            } else {
                let ids: Vec<String> = v.violations.iter().map(ToString::to_string).collect();
                let _ = writeln!(out, "violations: blocks {}", ids.join(", "));
            }
        }
        if let Some(b) = &v.bound {
            let _ = writeln!(
                out,
                "bound: {} = {}, e = {}, slack {}{}",
                b.formula,
                compact(&b.value),
                b.edges,
                compact(&b.slack),
                match (b.tight, b.claimed) {
                    (true, _) => " (tight)",
                    (false, false) => " (not claimed at this n)",
                    _ => "",
                }
            );
        }
        for w in &v.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        match &v.diagnostic {
            Some(code) => {
                let _ = writeln!(out, "verdict: FAIL ({code})");
            }
            None => {
                let _ = writeln!(out, "verdict: {}", if v.passed { "PASS" } else { "FAIL" });
            }
        }
    }
    out
}

/// Serializes a report. JSON output is deterministic for identical reports.
pub fn write_report(r: &Report, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => to_json(r),
        ReportFormat::Text => write_text(r),
    }
}

/// Pretty JSON with a trailing newline; field order follows the struct.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecomposedBlock {
    pub id: usize,
    pub kind: String,
    pub vertices: Vec<usize>,
    pub edges: Vec<[usize; 2]>,
    pub interior_faces: Vec<usize>,
    pub junctions: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PseudofaceEntry {
    pub face: usize,
    pub length: usize,
    pub reduced_length: usize,
    pub reductions: usize,
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecomposeReport {
    pub schema_version: u32,
    pub command: String,
    pub mode: String,
    pub graph: GraphSummary,
    pub blocks: Vec<DecomposedBlock>,
    /// Triangular mode only.
    pub pseudofaces: Vec<PseudofaceEntry>,
}

impl DecomposeReport {
    pub fn new(g: &PlaneGraph, d: &BlockDecomposition, pf: Option<&PseudofaceMap>) -> DecomposeReport {
        let blocks = d
            .blocks
            .iter()
            .map(|b| DecomposedBlock {
                id: b.id,
                kind: b.kind.name().into(),
                vertices: b.vertices.clone(),
                edges: b.edges.iter().map(|&e| {
                    let (u, v) = g.edge(e);
                    [u, v]
                }).collect(),
                interior_faces: b.interior_faces.clone(),
                junctions: b.junction_vertices.clone(),
            })
            .collect();
        let pseudofaces = pf
            .map(|m| {
                m.values()
                    .map(|p| PseudofaceEntry {
                        face: p.face,
                        length: g.face_len(p.face),
                        reduced_length: p.reduced_len,
                        reductions: p.reductions.len(),
                        degenerate: p.degenerate,
                    })
                    .collect()
            })
            .unwrap_or_default();
        DecomposeReport {
            schema_version: REPORT_SCHEMA_VERSION,
            command: "decompose".into(),
            mode: d.mode.name().into(),
            graph: GraphSummary::of(g),
            blocks,
            pseudofaces,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "mode: {}", self.mode);
        for b in &self.blocks {
            let edges: Vec<String> = b.edges.iter().map(|[u, v]| format!("{u}-{v}")).collect();
            let _ = writeln!(
                out,
                "block {} {}: vertices {:?} interior faces {:?} junctions {:?} edges {}",
                b.id,
                b.kind,
                b.vertices,
                b.interior_faces,
                b.junctions,
                edges.join(" ")
            );
        }
        for p in &self.pseudofaces {
            let _ = writeln!(
                out,
                "face {}: length {} reduced {} ({} reductions{})",
                p.face,
                p.length,
                p.reduced_length,
                p.reductions,
                if p.degenerate { ", degenerate" } else { "" }
            );
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub schema_version: u32,
    pub command: String,
    pub profile: String,
    pub formula: String,
    pub counts: Option<GraphCounts>,
    pub value: Option<String>,
    pub slack: Option<String>,
    pub holds: Option<bool>,
    pub tight: Option<bool>,
    pub claimed: Option<bool>,
}

impl BoundReport {
    pub fn new(profile: ProfileId, formula: &BoundFormula, check: Option<&BoundCheck>) -> BoundReport {
        BoundReport {
            schema_version: REPORT_SCHEMA_VERSION,
            command: "bound".into(),
            profile: profile.name().into(),
            formula: formula.to_string(),
            counts: check.map(|c| c.counts),
            value: check.map(|c| format_rational(&c.bound)),
            slack: check.map(|c| format_rational(&c.slack)),
            holds: check.map(|c| c.holds),
            tight: check.map(|c| c.tight),
            claimed: check.map(|c| c.claimed),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.formula);
        if let (Some(c), Some(v), Some(s)) = (&self.counts, &self.value, &self.slack) {
            let _ = writeln!(out, "n={} e={} k={} e23={}: bound {} slack {}", c.n, c.e, c.k, c.e23, compact(v), compact(s));
            let _ = writeln!(
                out,
                "verdict: {}",
                match (self.holds, self.tight, self.claimed) {
                    (Some(true), Some(true), _) => "PASS (tight)",
                    (Some(true), _, _) => "PASS",
                    (_, _, Some(false)) => "PASS (bound exceeded but not claimed at this n)",
                    _ => "FAIL (BoundViolated)",
                }
            );
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SaturateReport {
    pub schema_version: u32,
    pub command: String,
    pub chords: Vec<[usize; 2]>,
    /// The saturated graph in the graph file format.
    pub graph: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessEntry {
    pub n: usize,
    pub e: usize,
    pub k: usize,
    pub e23: usize,
    /// Slack against the profile bound, when searching under a profile.
    pub slack: Option<String>,
    pub graph: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Timing {
    pub elapsed_ms: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub schema_version: u32,
    pub command: String,
    pub constraints: String,
    pub profile: Option<String>,
    pub n: usize,
    pub max_edges: Option<usize>,
    pub extremal_classes: u64,
    pub stats: EnumerationStats,
    pub witnesses: Vec<WitnessEntry>,
    /// Wall-clock data; the only field that varies between identical runs.
    pub timing: Timing,
}

impl SearchReport {
    pub fn new(r: &SearchResult, profile: Option<&TheoremProfile>) -> Result<SearchReport, Error> {
        let mut witnesses = Vec::new();
        for w in &r.witnesses {
            let counts = GraphCounts::of(w);
            let slack = match profile {
                Some(p) => Some(format_rational(&bound_for_counts(p, counts)?.slack)),
                None => None,
            };
            witnesses.push(WitnessEntry {
                n: counts.n,
                e: counts.e,
                k: counts.k,
                e23: counts.e23,
                slack,
                graph: crate::io::serialize_graph(w),
            });
        }
        Ok(SearchReport {
            schema_version: REPORT_SCHEMA_VERSION,
            command: "search".into(),
            constraints: r.constraints.to_string(),
            profile: profile.map(|p| p.id.name().into()),
            n: r.n,
            max_edges: r.max_edges,
            extremal_classes: r.extremal_classes,
            stats: r.stats,
            witnesses,
            timing: Timing { elapsed_ms: r.elapsed_ms },
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "constraints: {}", self.constraints);
        let s = &self.stats;
        let _ = writeln!(
            out,
            "classes visited {}, emitted {}, candidates {}, pruned {}",
            s.classes, s.emitted, s.generated, s.pruned
        );
        match self.max_edges {
            None => {
                let _ = writeln!(out, "no graph satisfies the constraints");
            }
            Some(m) => {
                let _ = writeln!(out, "max edges: {m} ({} extremal classes)", self.extremal_classes);
                for (i, w) in self.witnesses.iter().enumerate() {
                    let _ = write!(out, "witness {i}: n={} e={} k={} e23={}", w.n, w.e, w.k, w.e23);
                    if let Some(slack) = &w.slack {
                        let _ = write!(out, " slack {}", compact(slack));
                    }
                    out.push('\n');
                    out.push_str(&w.graph);
                }
            }
        }
        let _ = writeln!(out, "elapsed: {} ms", self.timing.elapsed_ms);
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ErrorBody {
    pub code: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ErrorReport {
    pub schema_version: u32,
    pub command: String,
    pub error: ErrorBody,
}

impl ErrorReport {
    pub fn new(command: &str, e: &Error) -> ErrorReport {
        ErrorReport {
            schema_version: REPORT_SCHEMA_VERSION,
            command: command.into(),
            error: ErrorBody { code: e.code().into(), message: e.to_string() },
        }
    }
}
