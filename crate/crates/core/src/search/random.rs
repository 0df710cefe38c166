//! Seeded random plane graphs for fuzzing.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::enumerate::ConstraintSet;
use super::planarity::planar_embed;
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::plane::PlaneGraph;

pub const MAX_RETRIES: usize = 1000;

/// Stacked triangulation: each new vertex goes inside a random face.
fn stacked(n: usize, rng: &mut ChaCha8Rng) -> (SimpleGraph, Vec<[usize; 3]>) {
    let mut g = SimpleGraph::from_edges(n, &[(0, 1), (1, 2), (2, 0)]);
    let mut faces = vec![[0, 1, 2], [0, 1, 2]];
    for v in 3..n {
        let i = rng.gen_range(0..faces.len());
        let [a, b, c] = faces[i];
        g.add_edge(a, v);
        g.add_edge(b, v);
        g.add_edge(c, v);
        faces[i] = [a, b, v];
        faces.push([b, c, v]);
        faces.push([c, a, v]);
    }
    (g, faces)
}

/// Random diagonal flips keep the graph a triangulation but break the stacked shape.
fn flip(g: &mut SimpleGraph, faces: &mut [[usize; 3]], rng: &mut ChaCha8Rng, rounds: usize) {
    if faces.len() < 4 {
        return;
    }
    for _ in 0..rounds {
        let i = rng.gen_range(0..faces.len());
        let t = faces[i];
        let (a, b) = match rng.gen_range(0..3) {
            0 => (t[0], t[1]),
            1 => (t[1], t[2]),
            _ => (t[2], t[0]),
        };
        let c = t.iter().copied().find(|&x| x != a && x != b).unwrap();
        let Some(j) = (0..faces.len()).find(|&j| j != i && faces[j].contains(&a) && faces[j].contains(&b))
        else {
            continue;
        };
        let d = faces[j].iter().copied().find(|&x| x != a && x != b).unwrap();
        if c == d || g.has_edge(c, d) || g.degree(a) <= 3 || g.degree(b) <= 3 {
            continue;
        }
        g.remove_edge(a, b);
        g.add_edge(c, d);
        faces[i] = [a, d, c];
        faces[j] = [d, b, c];
    }
}

/// A cycle of exactly `len` edges, if any, as a vertex list.
fn find_cycle(g: &SimpleGraph, len: usize) -> Option<Vec<usize>> {
    fn extend(g: &SimpleGraph, path: &mut Vec<usize>, on: &mut [bool], len: usize) -> bool {
        let (s, last) = (path[0], *path.last().unwrap());
        if path.len() == len {
            return g.has_edge(last, s);
        }
        for &w in g.neighbors(last) {
            if w > s && !on[w] {
                on[w] = true;
                path.push(w);
                if extend(g, path, on, len) {
                    return true;
                }
                path.pop();
                on[w] = false;
            }
        }
        false
    }
    let mut on = vec![false; g.n()];
    for s in 0..g.n() {
        let mut path = vec![s];
        on[s] = true;
        if extend(g, &mut path, &mut on, len) {
            return Some(path);
        }
        on[s] = false;
    }
    None
}

fn attempt(n: usize, c: Option<&ConstraintSet>, rng: &mut ChaCha8Rng) -> Option<SimpleGraph> {
    let (mut g, mut faces) = stacked(n, rng);
    flip(&mut g, &mut faces, rng, 2 * n);
    if let Some(c) = c {
        if c.bipartite {
            let side: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
            for (u, v) in g.edges() {
                if side[u] == side[v] {
                    g.remove_edge(u, v);
                }
            }
            if !g.is_connected() {
                return None;
            }
        }
        let mut lengths = c.forbidden_cycles.clone();
        if c.triangle_free {
            lengths.push(3);
        }
        for &l in &lengths {
            while let Some(cycle) = find_cycle(&g, l) {
                let i = rng.gen_range(0..l);
                g.remove_edge(cycle[i], cycle[(i + 1) % l]);
            }
        }
    }
    // random deletions of edges that lie on a cycle
    let p: f64 = rng.gen_range(0.1..0.6);
    let mut edges = g.edges();
    edges.shuffle(rng);
    for (u, v) in edges {
        if rng.gen_bool(p) {
            g.remove_edge(u, v);
            if !g.is_connected() {
                g.add_edge(u, v);
            }
        }
    }
    match c {
        Some(c) if !c.accepts(&g) => None,
        _ => Some(g),
    }
}

/// A connected plane graph on `n` vertices determined by `seed`.
///
/// Outer face is chosen at random. With constraints, attempts are repeated
/// until one satisfies them; `c.n` is ignored in favour of `n`.
pub fn random_plane_graph(n: usize, seed: u64, c: Option<&ConstraintSet>) -> Result<PlaneGraph> {
    if n < 3 {
        return Err(Error::Internal(format!("random plane graphs need n >= 3, got {n}")));
    }
    let c = c.map(|c| ConstraintSet { n, ..c.clone() });
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_RETRIES {
        if let Some(g) = attempt(n, c.as_ref(), &mut rng) {
            let pg = planar_embed(&g)?.ok_or_else(|| Error::Internal("generated graph is not planar".into()))?;
            let outer = rng.gen_range(0..pg.face_count());
            return Ok(pg.with_outer_face(outer));
        }
    }
    Err(Error::RetriesExhausted(MAX_RETRIES))
}
