//! Canonical labelling of small graphs.
//!
//! Equitable partition refinement with individualisation, pruned by the
//! automorphisms found at equal leaves. The canonical code is the largest
//! upper-triangle adjacency bit string over all explored leaves.

use crate::graph::SimpleGraph;

/// Largest order supported by [`BitGraph`].
pub const MAX_N: usize = 16;

/// Adjacency rows as bit masks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BitGraph {
    pub n: usize,
    pub adj: [u16; MAX_N],
}

impl BitGraph {
    pub fn empty(n: usize) -> BitGraph {
        assert!(n <= MAX_N, "at most {MAX_N} vertices");
        BitGraph { n, adj: [0; MAX_N] }
    }

    pub fn from_simple(g: &SimpleGraph) -> BitGraph {
        let mut b = BitGraph::empty(g.n());
        for (u, v) in g.edges() {
            b.add_edge(u, v);
        }
        b
    }

    pub fn to_simple(&self) -> SimpleGraph {
        SimpleGraph::from_edges(self.n, &self.edges())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u] &= !(1 << v);
        self.adj[v] &= !(1 << u);
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Adjacency bits of the pairs `(i, j)`, `i < j`, in row order, with
    /// position `i` holding vertex `order[i]`.
    pub fn code_under(&self, order: &[usize]) -> u128 {
        let mut code = 0u128;
        for i in 0..self.n {
            let row = self.adj[order[i]];
            for &w in &order[i + 1..] {
                code = code << 1 | (row >> w & 1) as u128;
            }
        }
        code
    }

    /// Inverse of [`BitGraph::code_under`] with the identity order.
    pub fn from_code(n: usize, code: u128) -> BitGraph {
        let mut g = BitGraph::empty(n);
        let mut bit = n * n.saturating_sub(1) / 2;
        for i in 0..n {
            for j in i + 1..n {
                bit -= 1;
                if code >> bit & 1 == 1 {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Relabels so that the vertex at position `i` of `order` becomes `i`.
    pub fn relabeled(&self, order: &[usize]) -> BitGraph {
        let mut pos = [0usize; MAX_N];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut g = BitGraph::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge(pos[u], pos[v]);
        }
        g
    }
}

/// Canonical form with the labelling that produces it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Canon {
    pub code: u128,
    /// `order[i]` is the original vertex placed at position `i`.
    pub order: Vec<usize>,
    /// Automorphisms found during the search, as vertex maps.
    pub generators: Vec<Vec<usize>>,
}

type Partition = Vec<Vec<usize>>;

/// Refines an ordered partition until it is equitable.
fn refine(g: &BitGraph, mut cells: Partition) -> Partition {
    loop {
        let masks: Vec<u16> = cells.iter().map(|c| c.iter().fold(0u16, |m, &v| m | 1 << v)).collect();
        let mut next: Partition = Vec::with_capacity(g.n);
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<u8>, usize)> = cell
                .iter()
                .map(|&v| (masks.iter().map(|m| (g.adj[v] & m).count_ones() as u8).collect(), v))
                .collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    start = i;
                }
            }
        }
        if next.len() == cells.len() {
            return next;
        }
        cells = next;
    }
}

struct Search<'a> {
    g: &'a BitGraph,
    best: Option<(u128, Vec<usize>)>,
    generators: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn same_orbit(&self, fixed: &[usize], a: usize, b: usize) -> bool {
        let n = self.g.n;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for gen in &self.generators {
            if fixed.iter().any(|&v| gen[v] != v) {
                continue;
            }
            for v in 0..n {
                let (r1, r2) = (find(&mut parent, v), find(&mut parent, gen[v]));
                if r1 != r2 {
                    parent[r1] = r2;
                }
            }
        }
        find(&mut parent, a) == find(&mut parent, b)
    }

    fn leaf(&mut self, order: Vec<usize>) {
        let code = self.g.code_under(&order);
        match &self.best {
            None => self.best = Some((code, order)),
            Some((best, best_order)) => {
                if code > *best {
                    self.best = Some((code, order));
                } else if code == *best {
                    let mut gen = vec![0; self.g.n];
                    for (i, &v) in best_order.iter().enumerate() {
                        gen[v] = order[i];
                    }
                    if gen.iter().enumerate().any(|(i, &x)| i != x) {
                        self.generators.push(gen);
                    }
                }
            }
        }
    }

    fn explore(&mut self, cells: Partition, fixed: &mut Vec<usize>) {
        let cells = refine(self.g, cells);
        if cells.len() == self.g.n {
            self.leaf(cells.into_iter().map(|c| c[0]).collect());
            return;
        }
        let target = cells.iter().position(|c| c.len() > 1).expect("non-discrete partition");
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cells[target] {
            if tried.iter().any(|&u| self.same_orbit(fixed, u, v)) {
                continue;
            }
            tried.push(v);
            let mut next = Vec::with_capacity(cells.len() + 1);
            next.extend_from_slice(&cells[..target]);
            next.push(vec![v]);
            next.push(cells[target].iter().copied().filter(|&x| x != v).collect());
            next.extend_from_slice(&cells[target + 1..]);
            fixed.push(v);
            self.explore(next, fixed);
            fixed.pop();
        }
    }
}

/// Canonical code of `g`: equal for two graphs iff they are isomorphic.
pub fn canonical(g: &BitGraph) -> Canon {
    if g.n == 0 {
        return Canon { code: 0, order: Vec::new(), generators: Vec::new() };
    }
    // initial cells by degree so that the partition is label-invariant
    let mut by_degree: Vec<(usize, usize)> = (0..g.n).map(|v| (g.degree(v), v)).collect();
    by_degree.sort();
    let mut cells: Partition = Vec::new();
    for (d, v) in by_degree {
        match cells.last_mut() {
            Some(c) if g.degree(c[0]) == d => c.push(v),
            _ => cells.push(vec![v]),
        }
    }
    let mut s = Search { g, best: None, generators: Vec::new() };
    s.explore(cells, &mut Vec::new());
    let (code, order) = s.best.expect("at least one leaf");
    Canon { code, order, generators: s.generators }
}

pub fn canonical_code(g: &BitGraph) -> u128 {
    canonical(g).code
}
