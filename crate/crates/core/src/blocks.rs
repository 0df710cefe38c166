//! Triangular and quadrangular block decompositions.
//!
//! A block is grown from an edge by repeatedly absorbing every bounded face of
//! the mode's length (3 or 4) that shares an edge with it. Edges on no such
//! face form trivial single-edge blocks. Growing is done here as a
//! union-find over faces; [`grow_block`] keeps the literal work-list form for
//! cross-checking.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Error;
use crate::graph::SimpleGraph;
use crate::plane::{EdgeId, FaceId, PlaneGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockMode {
    Triangular,
    Quadrangular,
}

impl BlockMode {
    /// Length of the faces a block absorbs.
    pub fn face_len(self) -> usize {
        match self {
            BlockMode::Triangular => 3,
            BlockMode::Quadrangular => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BlockMode::Triangular => "triangular",
            BlockMode::Quadrangular => "quadrangular",
        }
    }
}

impl fmt::Display for BlockMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BlockMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "triangular" | "tri" => Ok(BlockMode::Triangular),
            "quadrangular" | "quad" => Ok(BlockMode::Quadrangular),
            _ => Err(Error::Syntax { line: 0, message: format!("unknown block mode '{s}'") }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum BlockKind {
    K2,
    K3,
    Theta4,
    K4,
    C4,
    K23,
    Theta6,
    Q7,
    Other,
}

impl BlockKind {
    pub fn name(self) -> &'static str {
        match self {
            BlockKind::K2 => "K2",
            BlockKind::K3 => "K3",
            BlockKind::Theta4 => "Theta4",
            BlockKind::K4 => "K4",
            BlockKind::C4 => "C4",
            BlockKind::K23 => "K23",
            BlockKind::Theta6 => "Theta6",
            BlockKind::Q7 => "Q7",
            BlockKind::Other => "Other",
        }
    }

    /// Kinds that can occur in a decomposition of the given mode.
    pub fn catalog(mode: BlockMode) -> &'static [BlockKind] {
        match mode {
            BlockMode::Triangular => &[BlockKind::K2, BlockKind::K3, BlockKind::Theta4, BlockKind::K4],
            BlockMode::Quadrangular => &[
                BlockKind::K2,
                BlockKind::C4,
                BlockKind::K23,
                BlockKind::Theta6,
                BlockKind::Q7,
            ],
        }
    }

    /// `(vertices, edges, interior faces, template edges)` of a catalog kind.
    fn template(self) -> Option<(usize, usize, usize, &'static [(usize, usize)])> {
        Some(match self {
            BlockKind::K2 => (2, 1, 0, &[(0, 1)]),
            BlockKind::K3 => (3, 3, 1, &[(0, 1), (1, 2), (0, 2)]),
            BlockKind::Theta4 => (4, 5, 2, &[(0, 1), (1, 2), (0, 2), (0, 3), (2, 3)]),
            BlockKind::K4 => (4, 6, 3, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
            BlockKind::C4 => (4, 4, 1, &[(0, 1), (1, 2), (2, 3), (0, 3)]),
            BlockKind::K23 => (5, 6, 2, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]),
            BlockKind::Theta6 => (6, 7, 2, &[(0, 1), (1, 2), (2, 3), (0, 3), (3, 4), (4, 5), (0, 5)]),
            BlockKind::Q7 => (
                7,
                9,
                3,
                &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5), (0, 6), (2, 6), (4, 6)],
            ),
            BlockKind::Other => return None,
        })
    }
}

impl fmt::Display for BlockKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub id: usize,
    pub edges: Vec<EdgeId>,
    pub vertices: Vec<usize>,
    pub kind: BlockKind,
    pub interior_faces: Vec<FaceId>,
    /// Block edges with at least one side on a face that is not interior to the block.
    pub exterior_edges: Vec<EdgeId>,
    pub junction_vertices: Vec<usize>,
}

impl Block {
    pub fn is_trivial(&self) -> bool {
        self.interior_faces.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub mode: BlockMode,
    pub blocks: Vec<Block>,
    pub edge_to_block: Vec<usize>,
    pub vertex_block_count: Vec<usize>,
    /// Owning block of each interior face; `None` for faces no block absorbed.
    pub face_to_block: Vec<Option<usize>>,
}

impl BlockDecomposition {
    pub fn block_of_edge(&self, e: EdgeId) -> &Block {
        &self.blocks[self.edge_to_block[e]]
    }

    pub fn is_interior_face(&self, f: FaceId) -> bool {
        self.face_to_block[f].is_some()
    }
}

fn absorbable(g: &PlaneGraph, mode: BlockMode, f: FaceId) -> bool {
    !g.face(f).is_outer && g.face_len(f) == mode.face_len()
}

fn face_edges(g: &PlaneGraph, f: FaceId) -> impl Iterator<Item = EdgeId> + '_ {
    g.face(f).darts.iter().map(move |&d| g.edge_of(d))
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Splits the edge set of `g` into blocks of the given mode.
pub fn decompose(g: &PlaneGraph, mode: BlockMode) -> BlockDecomposition {
    let nf = g.face_count();
    let mut parent: Vec<usize> = (0..nf).collect();
    for e in 0..g.edge_count() {
        let (d1, d2) = g.darts_of_edge(e);
        let (f1, f2) = (g.face_of(d1), g.face_of(d2));
        if f1 != f2 && absorbable(g, mode, f1) && absorbable(g, mode, f2) {
            let (r1, r2) = (find(&mut parent, f1), find(&mut parent, f2));
            if r1 != r2 {
                parent[r1.max(r2)] = r1.min(r2);
            }
        }
    }

    // root face -> (edges, faces)
    let mut groups: BTreeMap<usize, (BTreeSet<EdgeId>, Vec<FaceId>)> = BTreeMap::new();
    for f in (0..nf).filter(|&f| absorbable(g, mode, f)) {
        let root = find(&mut parent, f);
        let entry = groups.entry(root).or_default();
        entry.0.extend(face_edges(g, f));
        entry.1.push(f);
    }

    let mut raw: Vec<(Vec<EdgeId>, Vec<FaceId>)> =
        groups.into_values().map(|(edges, faces)| (edges.into_iter().collect(), faces)).collect();
    let mut covered = vec![false; g.edge_count()];
    for (edges, _) in &raw {
        for &e in edges {
            covered[e] = true;
        }
    }
    raw.extend((0..g.edge_count()).filter(|&e| !covered[e]).map(|e| (vec![e], Vec::new())));
    raw.sort_by_key(|(edges, _)| edges[0]);

    let mut edge_to_block = vec![usize::MAX; g.edge_count()];
    let mut face_to_block = vec![None; nf];
    let mut vertex_block_count = vec![0; g.n()];
    let mut blocks = Vec::with_capacity(raw.len());
    for (id, (edges, interior_faces)) in raw.into_iter().enumerate() {
        let mut vertices = BTreeSet::new();
        for &e in &edges {
            edge_to_block[e] = id;
            let (u, v) = g.edge(e);
            vertices.insert(u);
            vertices.insert(v);
        }
        for &f in &interior_faces {
            face_to_block[f] = Some(id);
        }
        for &v in &vertices {
            vertex_block_count[v] += 1;
        }
        blocks.push(Block {
            id,
            edges,
            vertices: vertices.into_iter().collect(),
            kind: BlockKind::Other,
            interior_faces,
            exterior_edges: Vec::new(),
            junction_vertices: Vec::new(),
        });
    }

    for b in &mut blocks {
        b.exterior_edges = b
            .edges
            .iter()
            .copied()
            .filter(|&e| {
                let (d1, d2) = g.darts_of_edge(e);
                face_to_block[g.face_of(d1)] != Some(b.id) || face_to_block[g.face_of(d2)] != Some(b.id)
            })
            .collect();
        b.junction_vertices = b.vertices.iter().copied().filter(|&v| vertex_block_count[v] >= 2).collect();
        b.kind = classify_block(g, b, mode);
    }

    BlockDecomposition { mode, blocks, edge_to_block, vertex_block_count, face_to_block }
}

/// Grows the block containing `seed` with the literal work-list loop.
///
/// Returns the block's edges. Independent of [`decompose`]; used to check
/// that the partition does not depend on the starting edge.
pub fn grow_block(g: &PlaneGraph, mode: BlockMode, seed: EdgeId) -> BTreeSet<EdgeId> {
    let mut block = BTreeSet::from([seed]);
    loop {
        let mut grown = false;
        for e in block.clone() {
            let (d1, d2) = g.darts_of_edge(e);
            for f in [g.face_of(d1), g.face_of(d2)] {
                if absorbable(g, mode, f) && face_edges(g, f).any(|x| !block.contains(&x)) {
                    block.extend(face_edges(g, f));
                    grown = true;
                }
            }
        }
        if !grown {
            return block;
        }
    }
}

/// Matches a block against the catalog of its mode; `Other` when nothing fits.
pub fn classify_block(g: &PlaneGraph, b: &Block, mode: BlockMode) -> BlockKind {
    let local: BTreeMap<usize, usize> = b.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let edges: Vec<(usize, usize)> = b
        .edges
        .iter()
        .map(|&e| {
            let (u, v) = g.edge(e);
            (local[&u], local[&v])
        })
        .collect();
    let shape = SimpleGraph::from_edges(b.vertices.len(), &edges);
    for &kind in BlockKind::catalog(mode) {
        let (nv, ne, ni, template) = kind.template().expect("catalog kinds have templates");
        if nv == b.vertices.len()
            && ne == b.edges.len()
            && ni == b.interior_faces.len()
            && isomorphic(&shape, &SimpleGraph::from_edges(nv, template))
        {
            return kind;
        }
    }
    BlockKind::Other
}

/// Brute-force isomorphism test for graphs on at most a handful of vertices.
fn isomorphic(a: &SimpleGraph, b: &SimpleGraph) -> bool {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut da: Vec<_> = (0..a.n()).map(|v| a.degree(v)).collect();
    let mut db: Vec<_> = (0..b.n()).map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    let n = a.n();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend_map(a, b, 0, &mut perm, &mut used)
}

fn extend_map(a: &SimpleGraph, b: &SimpleGraph, v: usize, perm: &mut [usize], used: &mut [bool]) -> bool {
    if v == a.n() {
        return true;
    }
    for w in 0..b.n() {
        if used[w] || a.degree(v) != b.degree(w) {
            continue;
        }
        let consistent = (0..v).all(|u| a.has_edge(u, v) == b.has_edge(perm[u], w));
        if !consistent {
            continue;
        }
        perm[v] = w;
        used[w] = true;
        if extend_map(a, b, v + 1, perm, used) {
            return true;
        }
        used[w] = false;
    }
    false
}

/// A non-interior face as seen from one block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExteriorFace {
    pub face: FaceId,
    pub length: usize,
    /// Maximal runs of consecutive block edges along the face walk.
    pub runs: Vec<Vec<EdgeId>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockBoundary {
    pub block: usize,
    pub exterior_vertices: Vec<usize>,
    pub exterior_edges: Vec<EdgeId>,
    pub exterior_faces: Vec<ExteriorFace>,
    pub junction_vertices: Vec<usize>,
}

/// Exterior labelling of one block.
pub fn block_boundary(b: &Block, d: &BlockDecomposition, g: &PlaneGraph) -> BlockBoundary {
    let mut exterior_vertices = BTreeSet::new();
    for &e in &b.exterior_edges {
        let (u, v) = g.edge(e);
        exterior_vertices.insert(u);
        exterior_vertices.insert(v);
    }
    let mut faces = BTreeSet::new();
    for &e in &b.exterior_edges {
        let (d1, d2) = g.darts_of_edge(e);
        for f in [g.face_of(d1), g.face_of(d2)] {
            if !d.is_interior_face(f) {
                faces.insert(f);
            }
        }
    }
    let exterior_faces = faces
        .into_iter()
        .map(|f| {
            let in_block: Vec<Option<EdgeId>> = g
                .face(f)
                .darts
                .iter()
                .map(|&dart| {
                    let e = g.edge_of(dart);
                    (d.edge_to_block[e] == b.id).then_some(e)
                })
                .collect();
            ExteriorFace { face: f, length: g.face_len(f), runs: cyclic_runs(&in_block) }
        })
        .collect();
    BlockBoundary {
        block: b.id,
        exterior_vertices: exterior_vertices.into_iter().collect(),
        exterior_edges: b.exterior_edges.clone(),
        exterior_faces,
        junction_vertices: b.junction_vertices.clone(),
    }
}

/// Maximal runs of `Some` values in a cyclic sequence.
fn cyclic_runs(seq: &[Option<EdgeId>]) -> Vec<Vec<EdgeId>> {
    let len = seq.len();
    let Some(start) = (0..len).find(|&i| seq[i].is_none()) else {
        return vec![seq.iter().map(|x| x.unwrap()).collect()];
    };
    let mut runs = Vec::new();
    let mut cur = Vec::new();
    for k in 1..=len {
        match seq[(start + k) % len] {
            Some(e) => cur.push(e),
            None => {
                if !cur.is_empty() {
                    runs.push(std::mem::take(&mut cur));
                }
            }
        }
    }
    runs
}

/// One collapsed K4 pair on a pseudoface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Reduction {
    pub block: usize,
    /// Positions (dart indices on the face walk) of the replaced pair.
    pub positions: (usize, usize),
    pub replaced: (EdgeId, EdgeId),
    pub replacement: EdgeId,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Pseudoface {
    pub face: FaceId,
    /// Cyclic edge sequence after all reductions.
    pub reduced: Vec<EdgeId>,
    pub reduced_len: usize,
    pub reductions: Vec<Reduction>,
    /// A run of three K4 exterior edges (or a too-short result) blocked reduction.
    pub degenerate: bool,
}

impl Pseudoface {
    /// Whether the dart at `pos` on the face walk is part of a collapsed pair.
    pub fn pair_at(&self, pos: usize) -> Option<&Reduction> {
        self.reductions.iter().find(|r| r.positions.0 == pos || r.positions.1 == pos)
    }
}

pub type PseudofaceMap = BTreeMap<FaceId, Pseudoface>;

/// Exterior pseudofaces of every non-interior face (triangular mode).
pub fn refine_pseudofaces(d: &BlockDecomposition, g: &PlaneGraph) -> PseudofaceMap {
    let mut out = BTreeMap::new();
    for f in 0..g.face_count() {
        if d.is_interior_face(f) {
            continue;
        }
        out.insert(f, reduce_face(d, g, f));
    }
    out
}

fn reduce_face(d: &BlockDecomposition, g: &PlaneGraph, f: FaceId) -> Pseudoface {
    let darts = &g.face(f).darts;
    let len = darts.len();
    let edges: Vec<EdgeId> = darts.iter().map(|&x| g.edge_of(x)).collect();
    // K4 block owning each position's edge, if any
    let tag: Vec<Option<usize>> = edges
        .iter()
        .map(|&e| {
            let b = d.block_of_edge(e);
            (b.kind == BlockKind::K4).then_some(b.id)
        })
        .collect();
    let identity = |degenerate| Pseudoface {
        face: f,
        reduced: edges.clone(),
        reduced_len: len,
        reductions: Vec::new(),
        degenerate,
    };

    if len > 0 && tag[0].is_some() && tag.iter().all(|t| *t == tag[0]) {
        return identity(true);
    }
    // runs of equal K4 tags, scanned from a position where the tag changes
    let Some(start) = (0..len).find(|&i| tag[i] != tag[(i + len - 1) % len]) else {
        return identity(false);
    };
    let mut runs: Vec<(usize, usize, usize)> = Vec::new(); // (block, first position, length)
    let mut k = 0;
    while k < len {
        let pos = (start + k) % len;
        let Some(b) = tag[pos] else {
            k += 1;
            continue;
        };
        let mut run = 1;
        while run < len && tag[(pos + run) % len] == Some(b) {
            run += 1;
        }
        runs.push((b, pos, run));
        k += run;
    }
    if runs.iter().any(|&(_, _, run)| run >= 3) {
        return identity(true);
    }
    let pairs: Vec<_> = runs.into_iter().filter(|&(_, _, run)| run == 2).collect();
    if pairs.is_empty() {
        return identity(false);
    }
    if len - pairs.len() < 3 {
        return identity(true);
    }

    let mut reductions = Vec::new();
    let mut replaced_at = BTreeMap::new();
    let mut second_half = BTreeSet::new();
    for (b, pos, _) in pairs {
        let next = (pos + 1) % len;
        let (e1, e2) = (edges[pos], edges[next]);
        let third = d.blocks[b]
            .exterior_edges
            .iter()
            .copied()
            .find(|&e| e != e1 && e != e2)
            .expect("K4 block has three exterior edges");
        replaced_at.insert(pos, third);
        second_half.insert(next);
        reductions.push(Reduction { block: b, positions: (pos, next), replaced: (e1, e2), replacement: third });
    }
    let reduced: Vec<EdgeId> = (0..len)
        .filter(|pos| !second_half.contains(pos))
        .map(|pos| replaced_at.get(&pos).copied().unwrap_or(edges[pos]))
        .collect();
    reductions.sort_by_key(|r| r.positions.0);
    Pseudoface { face: f, reduced_len: reduced.len(), reduced, reductions, degenerate: false }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fixture;

    fn kinds(d: &BlockDecomposition) -> Vec<BlockKind> {
        d.blocks.iter().map(|b| b.kind).collect()
    }

    #[test]
    fn theta4_is_one_block() {
        let g = fixture("THETA4");
        let d = decompose(&g, BlockMode::Triangular);
        assert_eq!(kinds(&d), vec![BlockKind::Theta4]);
        assert_eq!(d.blocks[0].interior_faces.len(), 2);
    }

    #[test]
    fn cube_is_all_trivial_in_triangular_mode() {
        let d = decompose(&fixture("CUBE"), BlockMode::Triangular);
        assert_eq!(kinds(&d), vec![BlockKind::K2; 12]);
        assert!(d.vertex_block_count.iter().all(|&c| c == 3));
    }

    #[test]
    fn q7_is_one_block() {
        let d = decompose(&fixture("Q7"), BlockMode::Quadrangular);
        assert_eq!(kinds(&d), vec![BlockKind::Q7]);
        assert_eq!(d.blocks[0].interior_faces.len(), 3);
    }

    #[test]
    fn standalone_kinds() {
        let q = BlockMode::Quadrangular;
        assert_eq!(kinds(&decompose(&fixture("THETA6"), q)), vec![BlockKind::Theta6]);
        assert_eq!(kinds(&decompose(&fixture("K23"), q)), vec![BlockKind::K23]);
        assert_eq!(kinds(&decompose(&fixture("C4"), q)), vec![BlockKind::C4]);
        assert_eq!(kinds(&decompose(&fixture("K4"), BlockMode::Triangular)), vec![BlockKind::K4]);
        // the outer 4-face of the cube is never absorbed
        let cube = decompose(&fixture("CUBE"), q);
        assert_eq!(kinds(&cube), vec![BlockKind::Other]);
        assert_eq!(cube.blocks[0].interior_faces.len(), 5);
    }

    #[test]
    fn standalone_c4_boundary() {
        let g = fixture("C4");
        let d = decompose(&g, BlockMode::Quadrangular);
        let bd = block_boundary(&d.blocks[0], &d, &g);
        assert!(bd.junction_vertices.is_empty());
        assert_eq!(bd.exterior_faces.len(), 1);
        assert_eq!(bd.exterior_faces[0].face, g.outer_face());
        assert_eq!(bd.exterior_faces[0].runs.len(), 1);
        assert_eq!(bd.exterior_faces[0].runs[0].len(), 4);
    }

    #[test]
    fn k23_middle_vertex_is_interior() {
        let g = fixture("K23");
        let d = decompose(&g, BlockMode::Quadrangular);
        let bd = block_boundary(&d.blocks[0], &d, &g);
        assert_eq!(bd.exterior_vertices.len(), 4);
        assert_eq!(bd.exterior_edges.len(), 4);
    }

    #[test]
    fn grow_block_matches_partition_on_fixtures() {
        for name in ["C4", "K4", "THETA4", "K23", "THETA6", "Q7", "CUBE", "HEXPRISM"] {
            let g = fixture(name);
            for mode in [BlockMode::Triangular, BlockMode::Quadrangular] {
                let d = decompose(&g, mode);
                for e in 0..g.edge_count() {
                    let grown: Vec<_> = grow_block(&g, mode, e).into_iter().collect();
                    assert_eq!(grown, d.block_of_edge(e).edges, "{name} {mode} seed {e}");
                }
            }
        }
    }

    #[test]
    fn pseudofaces_are_identity_without_k4() {
        let g = fixture("CUBE");
        let d = decompose(&g, BlockMode::Triangular);
        let pf = refine_pseudofaces(&d, &g);
        assert_eq!(pf.len(), 6);
        assert!(pf.values().all(|p| p.reduced_len == 4 && p.reductions.is_empty() && !p.degenerate));
    }

    #[test]
    fn standalone_k4_outer_face_is_degenerate() {
        let g = fixture("K4");
        let d = decompose(&g, BlockMode::Triangular);
        let pf = refine_pseudofaces(&d, &g);
        let outer = &pf[&g.outer_face()];
        assert!(outer.degenerate);
        assert_eq!(outer.reduced_len, 3);
    }

    #[test]
    fn cyclic_runs_wrap() {
        assert_eq!(cyclic_runs(&[Some(1), None, Some(2), Some(3)]), vec![vec![2, 3, 1]]);
        assert_eq!(cyclic_runs(&[Some(1), None, Some(2), None]), vec![vec![2], vec![1]]);
    }
}
