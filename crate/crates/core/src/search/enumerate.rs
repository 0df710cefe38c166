//! Isomorph-free enumeration of connected graphs under constraints.
//!
//! Graphs are generated level by level in the number of edges, starting from
//! the trees on `n` vertices. Every connected graph with a cycle has an edge
//! whose removal leaves it connected, so each level is reached from the
//! previous one by adding single edges. Constraints closed under edge deletion
//! (forbidden cycles, bipartiteness, planarity) prune during generation; the
//! others are applied when a graph is emitted.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::canon::{canonical_code, BitGraph, MAX_N};
use super::planarity::{is_planar, planar_embed};
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::plane::PlaneGraph;
use crate::theorems::{DegreeRule, TheoremProfile};

pub const DEFAULT_CEILING: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstraintSet {
    pub n: usize,
    pub planar: bool,
    pub forbidden_cycles: Vec<usize>,
    pub bipartite: bool,
    pub triangle_free: bool,
    pub min_degree: Option<usize>,
    pub exact_min_degree: Option<usize>,
    pub two_connected: bool,
    pub deg2_neighbor_rule: bool,
}

impl ConstraintSet {
    /// Connected planar graphs on `n` vertices, nothing else required.
    pub fn new(n: usize) -> ConstraintSet {
        ConstraintSet {
            n,
            planar: true,
            forbidden_cycles: Vec::new(),
            bipartite: false,
            triangle_free: false,
            min_degree: None,
            exact_min_degree: None,
            two_connected: false,
            deg2_neighbor_rule: false,
        }
    }

    /// The hypotheses of a theorem profile as search constraints.
    pub fn for_profile(p: &TheoremProfile, n: usize) -> ConstraintSet {
        let mut c = ConstraintSet::new(n);
        c.forbidden_cycles = p.forbidden.iter().copied().filter(|&l| l != 3).collect();
        c.triangle_free = p.forbidden.contains(&3);
        c.bipartite = p.bipartite;
        match p.degree {
            DegreeRule::AtLeast(d) => c.min_degree = Some(d),
            DegreeRule::Exactly(d) => c.exact_min_degree = Some(d),
        }
        c.two_connected = p.two_connected;
        c.deg2_neighbor_rule = p.deg2_neighbor_rule;
        c
    }

    /// Parses a comma-separated list such as `c6-free,bipartite,min-degree=3`.
    ///
    /// Tokens: `cL-free`, `bipartite`, `triangle-free`, `min-degree=D`,
    /// `exact-min-degree=D`, `two-connected`, `deg2-rule`, `nonplanar`.
    pub fn parse(n: usize, list: &str) -> Result<ConstraintSet> {
        let mut c = ConstraintSet::new(n);
        for tok in list.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let bad = || Error::Syntax { line: 0, message: format!("unknown constraint '{tok}'") };
            match tok {
                "bipartite" => c.bipartite = true,
                "triangle-free" => c.triangle_free = true,
                "two-connected" | "2-connected" => c.two_connected = true,
                "deg2-rule" => c.deg2_neighbor_rule = true,
                "planar" => c.planar = true,
                "nonplanar" => c.planar = false,
                _ => {
                    if let Some(d) = tok.strip_prefix("min-degree=") {
                        c.min_degree = Some(d.parse().map_err(|_| bad())?);
                    } else if let Some(d) = tok.strip_prefix("exact-min-degree=") {
                        c.exact_min_degree = Some(d.parse().map_err(|_| bad())?);
                    } else if let Some(l) = tok.strip_prefix('c').and_then(|t| t.strip_suffix("-free")) {
                        let l: usize = l.parse().map_err(|_| bad())?;
                        if l < 3 {
                            return Err(Error::BadLength(l));
                        }
                        if l == 3 {
                            c.triangle_free = true;
                        } else if !c.forbidden_cycles.contains(&l) {
                            c.forbidden_cycles.push(l);
                        }
                    } else {
                        return Err(bad());
                    }
                }
            }
        }
        c.forbidden_cycles.sort_unstable();
        Ok(c)
    }

    /// Forbidden cycle lengths including 3 for triangle-freeness.
    fn cycle_lengths(&self) -> Vec<usize> {
        let mut out = self.forbidden_cycles.clone();
        if self.triangle_free && !out.contains(&3) {
            out.insert(0, 3);
        }
        out
    }

    /// Checks every constraint on a graph of any origin.
    pub fn accepts(&self, g: &SimpleGraph) -> bool {
        if g.n() != self.n || !g.is_connected() {
            return false;
        }
        let b = BitGraph::from_simple(g);
        let closed = self.cycle_lengths().iter().all(|&l| !has_cycle(&b, l))
            && (!self.bipartite || g.two_coloring().is_some())
            && (!self.planar || is_planar(g));
        closed && self.emittable(&b)
    }

    /// The constraints that are not closed under edge deletion.
    fn emittable(&self, b: &BitGraph) -> bool {
        let n = b.n;
        let min = (0..n).map(|v| b.degree(v)).min().unwrap_or(0);
        if self.min_degree.is_some_and(|d| min < d) || self.exact_min_degree.is_some_and(|d| min != d) {
            return false;
        }
        if self.deg2_neighbor_rule {
            let ok = (0..n)
                .filter(|&v| b.degree(v) == 2)
                .all(|v| (0..n).any(|u| b.has_edge(u, v) && b.degree(u) <= 3));
            if !ok {
                return false;
            }
        }
        !self.two_connected || b.to_simple().is_two_connected()
    }
}

impl fmt::Display for ConstraintSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = vec![format!("n={}", self.n)];
        parts.push(if self.planar { "planar".into() } else { "nonplanar".into() });
        parts.extend(self.cycle_lengths().iter().map(|l| format!("c{l}-free")));
        if self.bipartite {
            parts.push("bipartite".into());
        }
        if let Some(d) = self.min_degree {
            parts.push(format!("min-degree={d}"));
        }
        if let Some(d) = self.exact_min_degree {
            parts.push(format!("exact-min-degree={d}"));
        }
        if self.two_connected {
            parts.push("two-connected".into());
        }
        if self.deg2_neighbor_rule {
            parts.push("deg2-rule".into());
        }
        f.write_str(&parts.join(","))
    }
}

impl FromStr for ConstraintSet {
    type Err = Error;

    /// `n=<n>[,constraint...]`.
    fn from_str(s: &str) -> Result<Self> {
        let (head, rest) = s.split_once(',').unwrap_or((s, ""));
        let n = head
            .trim()
            .strip_prefix("n=")
            .and_then(|x| x.parse().ok())
            .ok_or_else(|| Error::Syntax { line: 0, message: format!("expected 'n=<n>' in '{s}'") })?;
        ConstraintSet::parse(n, rest)
    }
}

/// Simple path from `cur` to `target` with exactly `left` more edges, avoiding `visited`.
fn path_of_len(b: &BitGraph, cur: usize, target: usize, left: usize, visited: u16) -> bool {
    if left == 1 {
        return b.has_edge(cur, target);
    }
    let mut cand = b.adj[cur] & !visited & !(1 << target);
    while cand != 0 {
        let w = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        if path_of_len(b, w, target, left - 1, visited | 1 << w) {
            return true;
        }
    }
    false
}

fn has_cycle(b: &BitGraph, len: usize) -> bool {
    // smallest vertex of the cycle is `s`, closing edge s-t with t > s
    for s in 0..b.n {
        for t in s + 1..b.n {
            if b.has_edge(s, t) {
                let mut lower = 0u16;
                for x in 0..s {
                    lower |= 1 << x;
                }
                let mut h = *b;
                h.remove_edge(s, t);
                for x in 0..s {
                    h.adj[x] = 0;
                }
                for x in 0..b.n {
                    h.adj[x] &= !lower;
                }
                if path_of_len(&h, s, t, len - 1, 1 << s) {
                    return true;
                }
            }
        }
    }
    false
}

fn coloring(b: &BitGraph) -> u16 {
    // b is connected: bit v set iff v is on the side opposite vertex 0
    let mut side = 0u16;
    let mut seen = 1u16;
    let mut frontier = 1u16;
    while frontier != 0 {
        let mut next = 0u16;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            let fresh = b.adj[v] & !seen;
            if side >> v & 1 == 0 {
                side |= fresh;
            }
            next |= fresh;
            seen |= fresh;
        }
        frontier = next;
    }
    side
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct EnumerationStats {
    /// Candidate graphs built by adding one edge.
    pub generated: u64,
    /// Candidates rejected by a deletion-closed constraint.
    pub pruned: u64,
    /// Isomorphism classes visited (all levels).
    pub classes: u64,
    /// Classes that passed every constraint.
    pub emitted: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub ceiling: usize,
    pub witness_cap: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { ceiling: DEFAULT_CEILING, witness_cap: 16 }
    }
}

fn check_ceiling(c: &ConstraintSet, opts: &SearchOptions) -> Result<()> {
    if c.n > opts.ceiling || c.n > MAX_N {
        return Err(Error::CeilingExceeded { n: c.n, ceiling: opts.ceiling.min(MAX_N) });
    }
    if c.n == 0 {
        return Err(Error::Disconnected);
    }
    Ok(())
}

/// Canonical codes of all trees on `n` vertices, sorted.
fn trees(n: usize) -> Vec<u128> {
    let mut level: Vec<u128> = vec![0];
    for k in 1..n {
        let mut next = HashSet::new();
        for &code in &level {
            let t = BitGraph::from_code(k, code);
            for v in 0..k {
                let mut g = BitGraph::empty(k + 1);
                g.adj[..k].copy_from_slice(&t.adj[..k]);
                g.add_edge(v, k);
                next.insert(canonical_code(&g));
            }
        }
        level = next.into_iter().collect();
        level.sort_unstable();
    }
    level
}

struct Expansion {
    codes: HashSet<u128>,
    generated: u64,
    pruned: u64,
}

impl Expansion {
    fn new() -> Self {
        Expansion { codes: HashSet::new(), generated: 0, pruned: 0 }
    }

    fn merge(mut self, other: Expansion) -> Expansion {
        if self.codes.len() < other.codes.len() {
            return other.merge(self);
        }
        self.codes.extend(other.codes);
        self.generated += other.generated;
        self.pruned += other.pruned;
        self
    }
}

fn expand(c: &ConstraintSet, lengths: &[usize], n: usize, code: u128, mut acc: Expansion) -> Expansion {
    let g = BitGraph::from_code(n, code);
    let e = g.edge_count();
    if c.planar && n >= 3 && e + 1 > 3 * n - 6 {
        return acc;
    }
    let side = if c.bipartite { coloring(&g) } else { 0 };
    for u in 0..n {
        for v in u + 1..n {
            if g.has_edge(u, v) {
                continue;
            }
            acc.generated += 1;
            if c.bipartite && (side >> u & 1) == (side >> v & 1) {
                acc.pruned += 1;
                continue;
            }
            if lengths.iter().any(|&l| path_of_len(&g, u, v, l - 1, 1 << u)) {
                acc.pruned += 1;
                continue;
            }
            let mut h = g;
            h.add_edge(u, v);
            if c.planar && !is_planar(&h.to_simple()) {
                acc.pruned += 1;
                continue;
            }
            acc.codes.insert(canonical_code(&h));
        }
    }
    acc
}

/// Calls `visit` on one representative of every isomorphism class satisfying `c`.
///
/// Representatives come in increasing edge count and, within a level, in
/// increasing canonical code, independent of the number of worker threads.
pub fn visit_graphs(
    c: &ConstraintSet,
    opts: &SearchOptions,
    mut visit: impl FnMut(&SimpleGraph),
) -> Result<EnumerationStats> {
    check_ceiling(c, opts)?;
    let n = c.n;
    let lengths = c.cycle_lengths();
    let mut stats = EnumerationStats::default();
    let mut level = trees(n);
    let min_edges = c.min_degree.or(c.exact_min_degree).map_or(0, |d| (n * d).div_ceil(2));
    let mut edges = n - 1;
    while !level.is_empty() {
        stats.classes += level.len() as u64;
        if edges >= min_edges {
            for &code in &level {
                let g = BitGraph::from_code(n, code);
                if c.emittable(&g) {
                    stats.emitted += 1;
                    visit(&g.to_simple());
                }
            }
        }
        let exp = level
            .par_iter()
            .fold(Expansion::new, |acc, &code| expand(c, &lengths, n, code, acc))
            .reduce(Expansion::new, Expansion::merge);
        stats.generated += exp.generated;
        stats.pruned += exp.pruned;
        level = exp.codes.into_iter().collect();
        level.sort_unstable();
        edges += 1;
    }
    Ok(stats)
}

/// All representatives satisfying `c`, in [`visit_graphs`] order.
pub fn enumerate_graphs(c: &ConstraintSet, opts: &SearchOptions) -> Result<Vec<SimpleGraph>> {
    let mut out = Vec::new();
    visit_graphs(c, opts, |g| out.push(g.clone()))?;
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub constraints: ConstraintSet,
    pub n: usize,
    /// `None` when no graph satisfies the constraints.
    pub max_edges: Option<usize>,
    /// Embedded extremal graphs, at most `witness_cap` of them.
    pub witnesses: Vec<PlaneGraph>,
    /// Number of extremal classes, including those beyond the cap.
    pub extremal_classes: u64,
    pub stats: EnumerationStats,
    pub elapsed_ms: u128,
}

/// Maximum edge count over all graphs satisfying `c`, with witnesses.
pub fn extremal_search(c: &ConstraintSet, opts: &SearchOptions) -> Result<SearchResult> {
    let start = Instant::now();
    let mut max_edges: Option<usize> = None;
    let mut best: Vec<SimpleGraph> = Vec::new();
    let mut extremal_classes = 0u64;
    let stats = visit_graphs(c, opts, |g| {
        let e = g.edge_count();
        if max_edges.is_none_or(|m| e > m) {
            max_edges = Some(e);
            best.clear();
            extremal_classes = 0;
        }
        extremal_classes += 1;
        if best.len() < opts.witness_cap {
            best.push(g.clone());
        }
    })?;
    let mut witnesses = Vec::with_capacity(best.len());
    if c.planar && c.n >= 2 {
        for g in &best {
            let pg = planar_embed(g)?.ok_or_else(|| Error::Internal("witness is not planar".into()))?;
            witnesses.push(pg);
        }
    }
    Ok(SearchResult {
        constraints: c.clone(),
        n: c.n,
        max_edges,
        witnesses,
        extremal_classes,
        stats,
        elapsed_ms: start.elapsed().as_millis(),
    })
}
