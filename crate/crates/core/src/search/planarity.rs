//! Planarity testing with embedding extraction.
//!
//! Each biconnected component is embedded with the Demoucron-Malgrange-Pertuiset
//! path-addition algorithm, which keeps the faces of the embedded part as
//! oriented vertex cycles. Component rotations are then concatenated at cut
//! vertices.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::plane::{build_embedding, rotations_from_faces, PlaneGraph};

/// Oriented face cycles of a planar embedding of one biconnected component.
fn embed_component(n: usize, edges: &[(usize, usize)]) -> Option<Vec<Vec<usize>>> {
    if edges.len() == 1 {
        let (u, v) = edges[0];
        return Some(vec![vec![u, v]]);
    }
    let g = SimpleGraph::from_edges(n, edges);
    let vertices: Vec<usize> = (0..n).filter(|&v| g.degree(v) > 0).collect();
    if vertices.len() >= 3 && edges.len() > 3 * vertices.len() - 6 {
        return None;
    }

    let cycle = find_cycle(&g, vertices[0]);
    let mut on = vec![false; n];
    let mut embedded: BTreeSet<(usize, usize)> = BTreeSet::new();
    for i in 0..cycle.len() {
        let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        on[a] = true;
        embedded.insert((a.min(b), a.max(b)));
    }
    let mut faces = vec![cycle.clone(), cycle.iter().rev().copied().collect::<Vec<_>>()];

    while embedded.len() < edges.len() {
        let fragments = fragments(&g, &on, &embedded);
        let mut choice: Option<(usize, usize)> = None; // (fragment, face)
        for (i, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = (0..faces.len())
                .filter(|&f| frag.attachments.iter().all(|a| faces[f].contains(a)))
                .collect();
            match admissible.len() {
                0 => return None,
                1 => {
                    choice = Some((i, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((i, admissible[0]));
                    }
                }
            }
        }
        let (fi, face) = choice.expect("at least one fragment");
        let path = fragment_path(&g, &on, &fragments[fi]);
        for w in path.windows(2) {
            embedded.insert((w[0].min(w[1]), w[0].max(w[1])));
        }
        for &v in &path {
            on[v] = true;
        }
        let (f1, f2) = split_face(&faces[face], &path);
        faces[face] = f1;
        faces.push(f2);
    }
    Some(faces)
}

fn find_cycle(g: &SimpleGraph, start: usize) -> Vec<usize> {
    // BFS tree; the first non-tree edge closes a cycle through the lowest common ancestor
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(u) = queue.pop_front() {
        for &v in g.neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                parent[v] = u;
                queue.push_back(v);
            } else if v != parent[u] && parent[v] != u {
                let to_root = |mut x: usize| {
                    let mut path = vec![x];
                    while parent[x] != usize::MAX {
                        x = parent[x];
                        path.push(x);
                    }
                    path
                };
                let (pu, pv) = (to_root(u), to_root(v));
                let lca = *pu.iter().find(|x| pv.contains(x)).expect("common root");
                let mut cycle: Vec<usize> = pu.iter().copied().take_while(|&x| x != lca).collect();
                cycle.push(lca);
                let back: Vec<usize> = pv.iter().copied().take_while(|&x| x != lca).collect();
                cycle.extend(back.into_iter().rev());
                return cycle;
            }
        }
    }
    unreachable!("biconnected component with two or more edges has a cycle")
}

struct Fragment {
    attachments: Vec<usize>,
    /// Unembedded vertices of the fragment; empty for a single chord.
    inner: Vec<usize>,
    chord: Option<(usize, usize)>,
}

fn fragments(g: &SimpleGraph, on: &[bool], embedded: &BTreeSet<(usize, usize)>) -> Vec<Fragment> {
    let n = g.n();
    let mut out = Vec::new();
    for (u, v) in g.edges() {
        if on[u] && on[v] && !embedded.contains(&(u, v)) {
            out.push(Fragment { attachments: vec![u, v], inner: Vec::new(), chord: Some((u, v)) });
        }
    }
    let mut seen = vec![false; n];
    for s in 0..n {
        if on[s] || seen[s] || g.degree(s) == 0 {
            continue;
        }
        let mut inner = vec![s];
        let mut attachments = BTreeSet::new();
        let mut queue = VecDeque::from([s]);
        seen[s] = true;
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbors(u) {
                if on[v] {
                    attachments.insert(v);
                } else if !seen[v] {
                    seen[v] = true;
                    inner.push(v);
                    queue.push_back(v);
                }
            }
        }
        out.push(Fragment { attachments: attachments.into_iter().collect(), inner, chord: None });
    }
    out
}

/// A path through the fragment between two distinct attachment vertices.
fn fragment_path(g: &SimpleGraph, on: &[bool], frag: &Fragment) -> Vec<usize> {
    if let Some((u, v)) = frag.chord {
        return vec![u, v];
    }
    let n = g.n();
    let a1 = frag.attachments[0];
    let mut prev = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for &v in g.neighbors(a1) {
        if !on[v] && frag.inner.contains(&v) {
            prev[v] = a1;
            queue.push_back(v);
        }
    }
    while let Some(u) = queue.pop_front() {
        if let Some(&a2) = g.neighbors(u).iter().find(|&&w| on[w] && w != a1) {
            let mut path = vec![a2, u];
            let mut x = u;
            while prev[x] != a1 {
                x = prev[x];
                path.push(x);
            }
            path.push(a1);
            path.reverse();
            return path;
        }
        for &v in g.neighbors(u) {
            if !on[v] && prev[v] == usize::MAX {
                prev[v] = u;
                queue.push_back(v);
            }
        }
    }
    unreachable!("fragments of a biconnected graph have two attachments")
}

/// Splits an oriented face cycle along a path joining two of its vertices.
fn split_face(face: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let (a, b) = (path[0], path[path.len() - 1]);
    let len = face.len();
    let i = face.iter().position(|&x| x == a).expect("attachment on face");
    let j = face.iter().position(|&x| x == b).expect("attachment on face");
    let arc = |from: usize, to: usize| {
        let mut out = Vec::new();
        let mut k = from;
        loop {
            out.push(face[k]);
            if k == to {
                break;
            }
            k = (k + 1) % len;
        }
        out
    };
    let inner = &path[1..path.len() - 1];
    // a ... b along the face, back to a along the path reversed
    let mut f1 = arc(i, j);
    f1.extend(inner.iter().rev());
    // b ... a along the face, back to b along the path
    let mut f2 = arc(j, i);
    f2.extend(inner.iter());
    (f1, f2)
}

/// Rotation system of a planar embedding of `g`, or `None` if `g` is not planar.
pub fn planar_rotations(g: &SimpleGraph) -> Option<Vec<Vec<usize>>> {
    let n = g.n();
    let mut rotations = vec![Vec::new(); n];
    for comp in g.biconnected_components() {
        let faces = embed_component(n, &comp)?;
        let rot = rotations_from_faces(n, &faces);
        for v in 0..n {
            rotations[v].extend_from_slice(&rot[v]);
        }
    }
    Some(rotations)
}

pub fn is_planar(g: &SimpleGraph) -> bool {
    planar_rotations(g).is_some()
}

/// Embeds a connected graph, taking a longest face as the outer face.
///
/// `Ok(None)` means the graph is not planar.
pub fn planar_embed(g: &SimpleGraph) -> Result<Option<PlaneGraph>> {
    if g.n() == 0 || !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.n() == 1 {
        return Err(Error::Internal("a single vertex has no darts to embed".into()));
    }
    let Some(rotations) = planar_rotations(g) else {
        return Ok(None);
    };
    let first = (0, rotations[0][0]);
    let pg = build_embedding(rotations, first)?;
    let outer = pg.longest_face();
    Ok(Some(pg.with_outer_face(outer)))
}
