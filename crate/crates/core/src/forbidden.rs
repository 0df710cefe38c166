//! Structural predicates used as theorem hypotheses.
//!
//! Everything here reads the abstract graph only; the embedding is irrelevant
//! to subgraph containment.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

/// Degree statistics and connectivity flags of a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructuralStats {
    pub n: usize,
    pub e: usize,
    pub min_degree: usize,
    /// `degree_histogram[i]` is the number of vertices of degree `i`.
    pub degree_histogram: Vec<usize>,
    /// Number of degree-2 vertices.
    pub k: usize,
    /// Number of edges joining a degree-2 and a degree-3 vertex.
    pub e23: usize,
    pub bipartite: bool,
    pub coloring: Option<Vec<u8>>,
    pub two_connected: bool,
    /// Every degree-2 vertex has a neighbour of degree at most 3.
    pub deg2_neighbor_ok: bool,
}

pub fn structural_stats(g: &SimpleGraph) -> StructuralStats {
    let n = g.n();
    let max_deg = (0..n).map(|v| g.degree(v)).max().unwrap_or(0);
    let mut hist = vec![0; max_deg + 1];
    for v in 0..n {
        hist[g.degree(v)] += 1;
    }
    let e23 = g
        .edges()
        .iter()
        .filter(|&&(u, v)| {
            let (a, b) = (g.degree(u), g.degree(v));
            (a == 2 && b == 3) || (a == 3 && b == 2)
        })
        .count();
    let coloring = g.two_coloring();
    StructuralStats {
        n,
        e: g.edge_count(),
        min_degree: g.min_degree(),
        k: hist.get(2).copied().unwrap_or(0),
        degree_histogram: hist,
        e23,
        bipartite: coloring.is_some(),
        coloring,
        two_connected: g.is_two_connected(),
        deg2_neighbor_ok: deg2_neighbor_rule(g),
    }
}

/// Every degree-2 vertex has at least one neighbour of degree at most 3.
pub fn deg2_neighbor_rule(g: &SimpleGraph) -> bool {
    (0..g.n())
        .filter(|&v| g.degree(v) == 2)
        .all(|v| g.neighbors(v).iter().any(|&u| g.degree(u) <= 3))
}

/// True iff `g` contains a cycle on exactly `len` vertices as a subgraph.
pub fn contains_cycle_of_length(g: &SimpleGraph, len: usize) -> Result<bool> {
    if len < 3 {
        return Err(Error::BadLength(len));
    }
    let n = g.n();
    if len > n {
        return Ok(false);
    }
    let mut on_path = vec![false; n];
    // the smallest vertex of the cycle is its start
    for s in 0..n {
        if g.degree(s) < 2 {
            continue;
        }
        on_path[s] = true;
        let found = extend_cycle(g, s, s, 1, len, &mut on_path);
        on_path[s] = false;
        if found {
            return Ok(true);
        }
    }
    Ok(false)
}

fn extend_cycle(g: &SimpleGraph, start: usize, cur: usize, count: usize, len: usize, on_path: &mut [bool]) -> bool {
    if count == len {
        return g.has_edge(cur, start);
    }
    for &w in g.neighbors(cur) {
        if w <= start || on_path[w] {
            continue;
        }
        on_path[w] = true;
        let found = extend_cycle(g, start, w, count + 1, len, on_path);
        on_path[w] = false;
        if found {
            return true;
        }
    }
    false
}

/// True iff there is a simple path from `u` to `v` with exactly `edges` edges.
///
/// Adding the edge `uv` to a graph creates a cycle of length `L` exactly when
/// such a path with `L - 1` edges exists.
pub fn has_path_with_edges(g: &SimpleGraph, u: usize, v: usize, edges: usize) -> bool {
    if u == v {
        return edges == 0;
    }
    let mut on_path = vec![false; g.n()];
    on_path[u] = true;
    walk(g, u, v, edges, &mut on_path)
}

fn walk(g: &SimpleGraph, cur: usize, target: usize, left: usize, on_path: &mut [bool]) -> bool {
    if left == 1 {
        return g.has_edge(cur, target);
    }
    for &w in g.neighbors(cur) {
        if w == target || on_path[w] {
            continue;
        }
        on_path[w] = true;
        let found = walk(g, w, target, left - 1, on_path);
        on_path[w] = false;
        if found {
            return true;
        }
    }
    false
}

/// True iff `g` contains no cycle whose length is in `lengths`.
pub fn is_cycle_free(g: &SimpleGraph, lengths: &[usize]) -> Result<bool> {
    for &l in lengths {
        if contains_cycle_of_length(g, l)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> SimpleGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        SimpleGraph::from_edges(n, &edges)
    }

    fn complete_bipartite(a: usize, b: usize) -> SimpleGraph {
        let mut edges = Vec::new();
        for i in 0..a {
            for j in 0..b {
                edges.push((i, a + j));
            }
        }
        SimpleGraph::from_edges(a + b, &edges)
    }

    #[test]
    fn cycle_lengths() {
        assert!(contains_cycle_of_length(&cycle(8), 8).unwrap());
        assert!(!contains_cycle_of_length(&cycle(8), 7).unwrap());
        let k23 = complete_bipartite(2, 3);
        assert!(contains_cycle_of_length(&k23, 4).unwrap());
        assert!(!contains_cycle_of_length(&k23, 6).unwrap());
        assert_eq!(contains_cycle_of_length(&k23, 2), Err(Error::BadLength(2)));
        assert!(!contains_cycle_of_length(&k23, 9).unwrap());
    }

    #[test]
    fn paths_between_vertices() {
        let g = cycle(6);
        assert!(has_path_with_edges(&g, 0, 3, 3));
        assert!(!has_path_with_edges(&g, 0, 3, 2));
        assert!(has_path_with_edges(&g, 0, 1, 5));
        assert!(has_path_with_edges(&g, 0, 1, 1));
    }

    #[test]
    fn stats_of_c8() {
        let s = structural_stats(&cycle(8));
        assert_eq!((s.min_degree, s.k, s.e23), (2, 8, 0));
        assert!(s.bipartite && s.deg2_neighbor_ok && s.two_connected);
    }

    #[test]
    fn stats_of_k23() {
        let s = structural_stats(&complete_bipartite(2, 3));
        assert_eq!((s.min_degree, s.k, s.e23), (2, 3, 6));
        assert!(s.bipartite);
    }

    #[test]
    fn stats_of_k4_and_k24() {
        let k4 = SimpleGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let s = structural_stats(&k4);
        assert_eq!((s.min_degree, s.k), (3, 0));
        assert!(s.two_connected && !s.bipartite);
        assert!(!structural_stats(&complete_bipartite(2, 4)).deg2_neighbor_ok);
    }

    #[test]
    fn histogram_sums() {
        let s = structural_stats(&complete_bipartite(3, 4));
        assert_eq!(s.degree_histogram.iter().sum::<usize>(), s.n);
        let deg_sum: usize = s.degree_histogram.iter().enumerate().map(|(i, c)| i * c).sum();
        assert_eq!(deg_sum, 2 * s.e);
    }
}
