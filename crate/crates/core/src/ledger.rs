//! Exact contribution accounting per block.
//!
//! Each block receives a share of the vertex, edge and face counts of the
//! graph (and, in quadrangular mode, of the degree-2 vertex count `k` and the
//! (2,3)-edge count `e23`). The shares of all blocks add up to the graph
//! totals exactly; [`build_ledger`] asserts that.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::blocks::{decompose, refine_pseudofaces, Block, BlockDecomposition, BlockKind, BlockMode, PseudofaceMap};
use crate::error::{Error, Result};
use crate::forbidden::structural_stats;
use crate::plane::{FaceId, PlaneGraph};

pub type Rational = BigRational;

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockContribution {
    pub block: usize,
    pub kind: BlockKind,
    pub v: Rational,
    pub e: usize,
    pub f: Rational,
    /// Quadrangular mode only.
    pub k: Option<Rational>,
    /// Quadrangular mode only.
    pub e23: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedgerTotals {
    pub v: Rational,
    pub e: usize,
    pub f: Rational,
    pub k: Option<Rational>,
    pub e23: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct ContributionLedger {
    pub mode: BlockMode,
    pub decomposition: BlockDecomposition,
    pub pseudofaces: Option<PseudofaceMap>,
    pub entries: Vec<BlockContribution>,
    pub totals: LedgerTotals,
}

/// `sum over v in B of 1 / (number of blocks containing v)`.
pub fn vertex_contribution(b: &Block, d: &BlockDecomposition) -> Rational {
    b.vertices
        .iter()
        .map(|&v| rat(1, d.vertex_block_count[v] as i64))
        .fold(Rational::zero(), |acc, x| acc + x)
}

/// Slots each block holds on face `f`, as `block -> slot count`.
///
/// Every dart of the face walk is one slot of the block owning its edge,
/// except that a collapsed K4 pair is a single slot.
fn slots_on_face(g: &PlaneGraph, d: &BlockDecomposition, pf: Option<&PseudofaceMap>, f: FaceId) -> BTreeMap<usize, usize> {
    let mut slots = BTreeMap::new();
    let pseudo = pf.and_then(|m| m.get(&f));
    for (pos, &dart) in g.face(f).darts.iter().enumerate() {
        if let Some(r) = pseudo.and_then(|p| p.pair_at(pos)) {
            if r.positions.1 == pos {
                continue;
            }
        }
        *slots.entry(d.edge_to_block[g.edge_of(dart)]).or_insert(0) += 1;
    }
    slots
}

/// Length used to weigh the slots of a face: `l'(f)` in triangular mode, `l(f)` otherwise.
fn weight_len(g: &PlaneGraph, pf: Option<&PseudofaceMap>, f: FaceId) -> usize {
    pf.and_then(|m| m.get(&f)).map_or(g.face_len(f), |p| p.reduced_len)
}

/// `#interior faces + sum of exterior slot values`.
pub fn face_contribution(
    b: &Block,
    d: &BlockDecomposition,
    g: &PlaneGraph,
    pf: Option<&PseudofaceMap>,
) -> Result<Rational> {
    if d.mode == BlockMode::Triangular && pf.is_none() {
        return Err(Error::MissingPseudoface);
    }
    let pf = if d.mode == BlockMode::Triangular { pf } else { None };
    let mut faces: Vec<FaceId> = Vec::new();
    for &e in &b.exterior_edges {
        let (d1, d2) = g.darts_of_edge(e);
        for f in [g.face_of(d1), g.face_of(d2)] {
            if !d.is_interior_face(f) && !faces.contains(&f) {
                faces.push(f);
            }
        }
    }
    let mut total = int(b.interior_faces.len() as i64);
    for f in faces {
        let count = slots_on_face(g, d, pf, f).get(&b.id).copied().unwrap_or(0);
        total += rat(count as i64, weight_len(g, pf, f) as i64);
    }
    Ok(total)
}

/// `(k(B), e23(B))`, using degrees in the whole graph.
pub fn aux_contributions(b: &Block, g: &PlaneGraph, d: &BlockDecomposition) -> Result<(Rational, usize)> {
    if d.mode != BlockMode::Quadrangular {
        return Err(Error::WrongMode);
    }
    let k = b
        .vertices
        .iter()
        .filter(|&&v| g.degree(v) == 2)
        .map(|&v| rat(1, d.vertex_block_count[v] as i64))
        .fold(Rational::zero(), |acc, x| acc + x);
    let e23 = b
        .edges
        .iter()
        .filter(|&&e| {
            let (u, v) = g.edge(e);
            let mut degs = [g.degree(u), g.degree(v)];
            degs.sort_unstable();
            degs == [2, 3]
        })
        .count();
    Ok((k, e23))
}

/// Sum of slot values per face; every non-interior face must total exactly 1.
pub fn face_slot_totals(g: &PlaneGraph, d: &BlockDecomposition, pf: Option<&PseudofaceMap>) -> BTreeMap<FaceId, Rational> {
    (0..g.face_count())
        .filter(|&f| !d.is_interior_face(f))
        .map(|f| {
            let slots: usize = slots_on_face(g, d, pf, f).values().sum();
            (f, rat(slots as i64, weight_len(g, pf, f) as i64))
        })
        .collect()
}

/// Decomposes `g`, computes every block's contributions and checks conservation.
pub fn build_ledger(g: &PlaneGraph, mode: BlockMode) -> Result<ContributionLedger> {
    let d = decompose(g, mode);
    let pf = (mode == BlockMode::Triangular).then(|| refine_pseudofaces(&d, g));
    let mut entries = Vec::with_capacity(d.blocks.len());
    for b in &d.blocks {
        let (k, e23) = match mode {
            BlockMode::Quadrangular => {
                let (k, e23) = aux_contributions(b, g, &d)?;
                (Some(k), Some(e23))
            }
            BlockMode::Triangular => (None, None),
        };
        entries.push(BlockContribution {
            block: b.id,
            kind: b.kind,
            v: vertex_contribution(b, &d),
            e: b.edges.len(),
            f: face_contribution(b, &d, g, pf.as_ref())?,
            k,
            e23,
        });
    }

    let totals = LedgerTotals {
        v: entries.iter().fold(Rational::zero(), |acc, x| acc + &x.v),
        e: entries.iter().map(|x| x.e).sum(),
        f: entries.iter().fold(Rational::zero(), |acc, x| acc + &x.f),
        k: (mode == BlockMode::Quadrangular)
            .then(|| entries.iter().fold(Rational::zero(), |acc, x| acc + x.k.as_ref().unwrap())),
        e23: (mode == BlockMode::Quadrangular).then(|| entries.iter().map(|x| x.e23.unwrap()).sum()),
    };

    let stats = structural_stats(g.graph());
    let mut broken = Vec::new();
    if totals.v != int(g.n() as i64) {
        broken.push(format!("sum v(B) = {} but v = {}", totals.v, g.n()));
    }
    if totals.e != g.edge_count() {
        broken.push(format!("sum e(B) = {} but e = {}", totals.e, g.edge_count()));
    }
    if totals.f != int(g.face_count() as i64) {
        broken.push(format!("sum f(B) = {} but f = {}", totals.f, g.face_count()));
    }
    if let Some(k) = &totals.k {
        if *k != int(stats.k as i64) {
            broken.push(format!("sum k(B) = {k} but k = {}", stats.k));
        }
    }
    if let Some(e23) = totals.e23 {
        if e23 != stats.e23 {
            broken.push(format!("sum e23(B) = {e23} but e23 = {}", stats.e23));
        }
    }
    for (f, total) in face_slot_totals(g, &d, pf.as_ref()) {
        if !total.is_one() {
            broken.push(format!("slots of face {f} sum to {total}"));
        }
    }
    if !broken.is_empty() {
        return Err(Error::ConservationViolation(broken.join("; ")));
    }

    Ok(ContributionLedger { mode, decomposition: d, pseudofaces: pf, entries, totals })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::fixture;

    #[test]
    fn cube_triangular_ledger() {
        let l = build_ledger(&fixture("CUBE"), BlockMode::Triangular).unwrap();
        assert_eq!(l.entries.len(), 12);
        for x in &l.entries {
            assert_eq!((x.v.clone(), x.e, x.f.clone()), (rat(2, 3), 1, rat(1, 2)));
        }
        assert_eq!((l.totals.v.clone(), l.totals.e, l.totals.f.clone()), (int(8), 12, int(6)));
    }

    #[test]
    fn standalone_c4_quadrangular() {
        let g = fixture("C4");
        let l = build_ledger(&g, BlockMode::Quadrangular).unwrap();
        assert_eq!(l.entries.len(), 1);
        assert_eq!(l.entries[0].v, int(4));
        assert_eq!(l.entries[0].f, int(2));
        assert_eq!(l.entries[0].k, Some(int(4)));
    }

    #[test]
    fn standalone_theta6_and_k23() {
        let l = build_ledger(&fixture("THETA6"), BlockMode::Quadrangular).unwrap();
        assert_eq!(l.entries.len(), 1);
        assert_eq!((l.entries[0].v.clone(), l.entries[0].e, l.entries[0].f.clone()), (int(6), 7, int(3)));
        let l = build_ledger(&fixture("K23"), BlockMode::Quadrangular).unwrap();
        assert_eq!((l.entries[0].v.clone(), l.entries[0].e, l.entries[0].f.clone()), (int(5), 6, int(3)));
        assert_eq!(l.entries[0].e23, Some(6));
    }

    #[test]
    fn face_contribution_needs_pseudofaces_in_triangular_mode() {
        let g = fixture("CUBE");
        let d = decompose(&g, BlockMode::Triangular);
        assert_eq!(face_contribution(&d.blocks[0], &d, &g, None), Err(Error::MissingPseudoface));
        let pf = refine_pseudofaces(&d, &g);
        assert_eq!(face_contribution(&d.blocks[0], &d, &g, Some(&pf)).unwrap(), rat(1, 2));
        assert_eq!(vertex_contribution(&d.blocks[0], &d), rat(2, 3));
    }

    #[test]
    fn aux_requires_quadrangular_mode() {
        let g = fixture("CUBE");
        let d = decompose(&g, BlockMode::Triangular);
        assert_eq!(aux_contributions(&d.blocks[0], &g, &d), Err(Error::WrongMode));
        let d = decompose(&g, BlockMode::Quadrangular);
        assert_eq!(aux_contributions(&d.blocks[0], &g, &d).unwrap(), (int(0), 0));
    }

    #[test]
    fn bridges_count_twice_on_their_face() {
        // path 0-1-2: one face of length 4, both edges are bridges
        let g = crate::plane::build_embedding(vec![vec![1], vec![0, 2], vec![1]], (0, 1)).unwrap();
        for mode in [BlockMode::Triangular, BlockMode::Quadrangular] {
            let l = build_ledger(&g, mode).unwrap();
            assert!(l.entries.iter().all(|x| x.f == rat(1, 2)));
        }
    }
}
