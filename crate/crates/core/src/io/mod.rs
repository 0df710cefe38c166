//! Plane-graph text format and verification reports.
//!
//! ```text
//! # comments start with '#'
//! plane-graph v1 n=4
//! 0: 1 3
//! 1: 2 0
//! 2: 3 1
//! 3: 0 2
//! outer: 0->1
//! ```
//!
//! Each vertex line lists the neighbours in rotation order. Vertex ids must be
//! exactly `0..n`, each listed once. `outer:` names a dart on the outer face.

mod report;

pub use report::{
    format_rational, to_json, write_report, BlockEntry, BoundReport, BoundSummary, DecomposeReport, DecomposedBlock,
    ErrorBody, ErrorReport, GraphSummary, PseudofaceEntry, Report, ReportFormat, SaturateReport, SearchReport,
    Timing, Totals, VerdictSummary, WitnessEntry, REPORT_SCHEMA_VERSION,
};

use crate::error::{Error, Result};
use crate::plane::{build_embedding, PlaneGraph};

pub const FORMAT_VERSION: &str = "v1";

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax { line, message: message.into() }
}

fn parse_id(tok: &str, line: usize) -> Result<usize> {
    tok.trim()
        .parse::<usize>()
        .map_err(|_| syntax(line, format!("expected a vertex id, found '{}'", tok.trim())))
}

/// Parses one plane graph.
pub fn parse_graph(text: &str) -> Result<PlaneGraph> {
    let mut n: Option<usize> = None;
    let mut rotations: Vec<Option<Vec<usize>>> = Vec::new();
    let mut outer: Option<(usize, usize)> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some(count) = n else {
            n = Some(parse_header(line, line_no)?);
            rotations = vec![None; n.unwrap()];
            continue;
        };
        let (key, rest) = line
            .split_once(':')
            .ok_or_else(|| syntax(line_no, "expected '<id>: <neighbours>' or 'outer: u->v'"))?;
        let key = key.trim();
        if key == "outer" {
            if outer.is_some() {
                return Err(syntax(line_no, "duplicate outer line"));
            }
            let (u, v) = rest
                .split_once("->")
                .ok_or_else(|| syntax(line_no, "expected 'outer: u->v'"))?;
            outer = Some((parse_id(u, line_no)?, parse_id(v, line_no)?));
            continue;
        }
        let v = parse_id(key, line_no)?;
        if v >= count {
            return Err(syntax(line_no, format!("vertex id {v} out of range 0..{count}")));
        }
        if rotations[v].is_some() {
            return Err(syntax(line_no, format!("vertex {v} listed twice")));
        }
        let nbrs = rest
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| parse_id(t, line_no))
            .collect::<Result<Vec<_>>>()?;
        if let Some(&u) = nbrs.iter().find(|&&u| u >= count) {
            return Err(syntax(line_no, format!("neighbour {u} out of range 0..{count}")));
        }
        rotations[v] = Some(nbrs);
    }

    let Some(count) = n else {
        return Err(syntax(1, "missing 'plane-graph v1 n=<n>' header"));
    };
    let last = text.lines().count().max(1);
    let rotations = rotations
        .into_iter()
        .enumerate()
        .map(|(v, r)| r.ok_or_else(|| syntax(last, format!("vertex {v} missing; ids must be dense"))))
        .collect::<Result<Vec<_>>>()?;
    let Some((u, v)) = outer else {
        return Err(Error::MissingOuterDart("no 'outer:' line".into()));
    };
    if count == 0 {
        return Err(Error::Disconnected);
    }
    // rotations are validated first so adjacency errors win over the outer dart check
    let graph = build_embedding(rotations, (u, v));
    match graph {
        Err(Error::UnknownDart(a, b)) => Err(Error::MissingOuterDart(format!("{a}->{b} is not an edge"))),
        other => other,
    }
}

fn parse_header(line: &str, line_no: usize) -> Result<usize> {
    let compact: String = line.split_whitespace().collect::<Vec<_>>().join(" ");
    let rest = compact
        .strip_prefix("plane-graph")
        .ok_or_else(|| syntax(line_no, "expected 'plane-graph v1 n=<n>' header"))?
        .trim_start();
    let rest = rest
        .strip_prefix(FORMAT_VERSION)
        .ok_or_else(|| syntax(line_no, format!("unsupported format version, expected {FORMAT_VERSION}")))?;
    let rest: String = rest.chars().filter(|c| !c.is_whitespace()).collect();
    let count = rest
        .strip_prefix("n=")
        .ok_or_else(|| syntax(line_no, "expected 'n=<n>' in header"))?;
    count
        .parse()
        .map_err(|_| syntax(line_no, format!("bad vertex count '{count}'")))
}

/// Writes `g` in the text format; `parse_graph` inverts it exactly.
pub fn serialize_graph(g: &PlaneGraph) -> String {
    let mut out = format!("plane-graph {FORMAT_VERSION} n={}\n", g.n());
    for v in 0..g.n() {
        let nbrs: Vec<String> = g.rotation(v).iter().map(ToString::to_string).collect();
        out.push_str(&format!("{v}: {}\n", nbrs.join(" ")));
    }
    let (u, v) = g.outer_dart();
    out.push_str(&format!("outer: {u}->{v}\n"));
    out
}
