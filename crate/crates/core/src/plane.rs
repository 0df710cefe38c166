//! Combinatorial plane graphs: rotation systems, darts and traced faces.
//!
//! A dart is a directed copy of an edge. Darts are numbered vertex by vertex
//! in rotation order, so dart `offset(v) + i` is `v -> rotation(v)[i]`.
//! The face successor of the dart `u -> v` is `v -> w`, where `w` is the
//! neighbour that follows `u` in the rotation at `v`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

pub type DartId = usize;
pub type FaceId = usize;
pub type EdgeId = usize;

/// One traced face: the cyclic dart sequence starting at its smallest dart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub id: FaceId,
    pub darts: Vec<DartId>,
    pub is_outer: bool,
}

impl Face {
    /// Boundary length, counting a bridge twice.
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }
}

/// A connected simple graph with a rotation system and a designated outer face.
///
/// Immutable after construction.
#[derive(Debug, Clone)]
pub struct PlaneGraph {
    rotations: Vec<Vec<usize>>,
    graph: SimpleGraph,
    edges: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    tail: Vec<usize>,
    head: Vec<usize>,
    twin: Vec<DartId>,
    dart_edge: Vec<EdgeId>,
    dart_face: Vec<FaceId>,
    faces: Vec<Face>,
    outer_dart: DartId,
}

impl PartialEq for PlaneGraph {
    fn eq(&self, other: &Self) -> bool {
        self.rotations == other.rotations && self.outer_dart == other.outer_dart
    }
}

impl Eq for PlaneGraph {}

/// Validates a rotation system and traces its faces.
///
/// Fails unless the rotations describe a simple connected graph of genus zero
/// and `outer` is one of its darts.
pub fn build_embedding(rotations: Vec<Vec<usize>>, outer: (usize, usize)) -> Result<PlaneGraph> {
    let n = rotations.len();
    for (v, rot) in rotations.iter().enumerate() {
        let mut seen = rot.clone();
        seen.sort_unstable();
        for w in seen.windows(2) {
            if w[0] == w[1] {
                return Err(Error::NonSimple(format!("vertex {v} lists {} twice", w[0])));
            }
        }
        for &u in rot {
            if u >= n {
                return Err(Error::NonSimple(format!("vertex {v} lists unknown vertex {u}")));
            }
            if u == v {
                return Err(Error::NonSimple(format!("loop at vertex {v}")));
            }
        }
    }
    for (v, rot) in rotations.iter().enumerate() {
        for &u in rot {
            if !rotations[u].contains(&v) {
                return Err(Error::AsymmetricAdjacency(v, u));
            }
        }
    }

    let mut graph = SimpleGraph::empty(n);
    for (v, rot) in rotations.iter().enumerate() {
        for &u in rot {
            graph.add_edge(v, u);
        }
    }
    if n == 0 || !graph.is_connected() {
        return Err(Error::Disconnected);
    }
    let edges = graph.edges();

    let mut offsets = Vec::with_capacity(n + 1);
    let mut acc = 0;
    for rot in &rotations {
        offsets.push(acc);
        acc += rot.len();
    }
    offsets.push(acc);
    let dart_count = acc;

    let mut tail = Vec::with_capacity(dart_count);
    let mut head = Vec::with_capacity(dart_count);
    let mut index: HashMap<(usize, usize), DartId> = HashMap::with_capacity(dart_count);
    for (v, rot) in rotations.iter().enumerate() {
        for (i, &u) in rot.iter().enumerate() {
            tail.push(v);
            head.push(u);
            index.insert((v, u), offsets[v] + i);
        }
    }
    let twin: Vec<DartId> = (0..dart_count).map(|d| index[&(head[d], tail[d])]).collect();
    let dart_edge: Vec<EdgeId> = (0..dart_count)
        .map(|d| {
            let key = (tail[d].min(head[d]), tail[d].max(head[d]));
            edges.binary_search(&key).expect("edge listed")
        })
        .collect();

    let outer_dart = *index.get(&outer).ok_or(Error::UnknownDart(outer.0, outer.1))?;

    let mut pg = PlaneGraph {
        rotations,
        graph,
        edges,
        offsets,
        tail,
        head,
        twin,
        dart_edge,
        dart_face: vec![usize::MAX; dart_count],
        faces: Vec::new(),
        outer_dart,
    };
    pg.trace();

    let chi = euler_characteristic(&pg);
    if chi != 2 {
        return Err(Error::GenusNonZero(chi));
    }
    Ok(pg)
}

/// Rotation system realising a set of oriented face walks (vertex sequences).
///
/// Every dart must occur in exactly one walk. Used to turn face lists from
/// planarity testing and random triangulations into rotations.
pub fn rotations_from_faces(n: usize, faces: &[Vec<usize>]) -> Vec<Vec<usize>> {
    // successor[v][u] = w: at v, w follows u in the rotation
    let mut successor: Vec<HashMap<usize, usize>> = vec![HashMap::new(); n];
    for walk in faces {
        let k = walk.len();
        for i in 0..k {
            let prev = walk[(i + k - 1) % k];
            let cur = walk[i];
            let next = walk[(i + 1) % k];
            successor[cur].insert(prev, next);
        }
    }
    successor
        .iter()
        .map(|succ| {
            let Some(&start) = succ.keys().min() else {
                return Vec::new();
            };
            let mut rot = vec![start];
            let mut cur = succ[&start];
            while cur != start {
                rot.push(cur);
                cur = succ[&cur];
            }
            rot
        })
        .collect()
}

impl PlaneGraph {
    fn trace(&mut self) {
        let mut faces = Vec::new();
        for start in 0..self.dart_count() {
            if self.dart_face[start] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut darts = Vec::new();
            let mut d = start;
            loop {
                self.dart_face[d] = id;
                darts.push(d);
                d = self.next_in_face(d);
                if d == start {
                    break;
                }
            }
            faces.push(Face { id, darts, is_outer: false });
        }
        let outer = self.dart_face[self.outer_dart];
        faces[outer].is_outer = true;
        self.faces = faces;
    }

    pub fn n(&self) -> usize {
        self.rotations.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn dart_count(&self) -> usize {
        self.tail.len()
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotations
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotations[v]
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotations[v].len()
    }

    /// Edges as `(u, v)` with `u < v`; the position is the [`EdgeId`].
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> (usize, usize) {
        self.edges[e]
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<EdgeId> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    pub fn dart(&self, d: DartId) -> (usize, usize) {
        (self.tail[d], self.head[d])
    }

    pub fn dart_id(&self, u: usize, v: usize) -> Option<DartId> {
        let i = self.rotations.get(u)?.iter().position(|&w| w == v)?;
        Some(self.offsets[u] + i)
    }

    pub fn tail(&self, d: DartId) -> usize {
        self.tail[d]
    }

    pub fn head(&self, d: DartId) -> usize {
        self.head[d]
    }

    pub fn twin(&self, d: DartId) -> DartId {
        self.twin[d]
    }

    pub fn edge_of(&self, d: DartId) -> EdgeId {
        self.dart_edge[d]
    }

    /// The two darts of an edge, `u -> v` first for `u < v`.
    pub fn darts_of_edge(&self, e: EdgeId) -> (DartId, DartId) {
        let (u, v) = self.edges[e];
        let d = self.dart_id(u, v).expect("edge has darts");
        (d, self.twin[d])
    }

    /// Face successor of `d`.
    pub fn next_in_face(&self, d: DartId) -> DartId {
        let t = self.twin[d];
        let v = self.tail[t];
        let deg = self.rotations[v].len();
        let i = t - self.offsets[v];
        self.offsets[v] + (i + 1) % deg
    }

    pub fn face_of(&self, d: DartId) -> FaceId {
        self.dart_face[d]
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, f: FaceId) -> &Face {
        &self.faces[f]
    }

    pub fn face_len(&self, f: FaceId) -> usize {
        self.faces[f].darts.len()
    }

    /// Vertices met along the face walk (tails of its darts).
    pub fn face_vertices(&self, f: FaceId) -> Vec<usize> {
        self.faces[f].darts.iter().map(|&d| self.tail[d]).collect()
    }

    pub fn outer_face(&self) -> FaceId {
        self.dart_face[self.outer_dart]
    }

    pub fn outer_dart(&self) -> (usize, usize) {
        self.dart(self.outer_dart)
    }

    /// Same rotation system with `f` declared as the outer face.
    pub fn with_outer_face(&self, f: FaceId) -> PlaneGraph {
        let mut g = self.clone();
        g.outer_dart = self.faces[f].darts[0];
        for face in &mut g.faces {
            face.is_outer = face.id == f;
        }
        g
    }

    /// Id of the first longest face.
    pub fn longest_face(&self) -> FaceId {
        let mut best = 0;
        for f in &self.faces {
            if f.len() > self.faces[best].len() {
                best = f.id;
            }
        }
        best
    }
}

/// Faces of `g` in id order (ordered by smallest dart).
pub fn trace_faces(g: &PlaneGraph) -> Vec<Face> {
    g.faces.clone()
}

/// `v - e + f` of the traced rotation system.
pub fn euler_characteristic(g: &PlaneGraph) -> i64 {
    g.n() as i64 - g.edge_count() as i64 + g.face_count() as i64
}
