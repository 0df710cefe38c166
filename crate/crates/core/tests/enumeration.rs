use std::collections::{BTreeSet, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use turan_planar::forbidden::contains_cycle_of_length;
use turan_planar::search::{
    canonical_code, enumerate_graphs, extremal_search, is_planar, BitGraph, ConstraintSet, SearchOptions,
};
use turan_planar::theorems::{check_bound, check_hypotheses, get_profile, ProfileId};
use turan_planar::SimpleGraph;

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn go(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            go(k + 1, p, out);
            p.swap(k, i);
        }
    }
    go(0, &mut p, &mut out);
    out
}

fn from_mask(n: usize, mask: u32, pairs: &[(usize, usize)]) -> SimpleGraph {
    let edges: Vec<(usize, usize)> = (0..pairs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| pairs[i]).collect();
    SimpleGraph::from_edges(n, &edges)
}

/// One labeled representative per isomorphism class of connected graphs, by orbit marking.
fn brute_force_classes(n: usize) -> Vec<SimpleGraph> {
    let pairs = pairs(n);
    let index = |u: usize, v: usize| pairs.iter().position(|&p| p == (u.min(v), u.max(v))).unwrap();
    let perms: Vec<Vec<usize>> = permutations(n)
        .into_iter()
        .map(|p| pairs.iter().map(|&(u, v)| index(p[u], p[v])).collect())
        .collect();
    let mut seen = vec![false; 1 << pairs.len()];
    let mut out = Vec::new();
    for mask in 0..1u32 << pairs.len() {
        if seen[mask as usize] {
            continue;
        }
        for p in &perms {
            let image = (0..pairs.len()).filter(|&i| mask >> i & 1 == 1).fold(0u32, |m, i| m | 1 << p[i]);
            seen[image as usize] = true;
        }
        let g = from_mask(n, mask, &pairs);
        if g.is_connected() {
            out.push(g);
        }
    }
    out
}

/// Largest adjacency string over all labelings.
fn brute_canonical(g: &SimpleGraph) -> u128 {
    let b = BitGraph::from_simple(g);
    permutations(g.n()).iter().map(|p| b.code_under(p)).max().unwrap()
}

fn all_graphs(n: usize) -> Vec<SimpleGraph> {
    let mut c = ConstraintSet::new(n);
    c.planar = false;
    enumerate_graphs(&c, &SearchOptions::default()).unwrap()
}

#[test]
fn classes_match_orbit_marking() {
    for n in 1..=6 {
        let ours: Vec<u128> = all_graphs(n).iter().map(brute_canonical).collect();
        let distinct: BTreeSet<u128> = ours.iter().copied().collect();
        assert_eq!(distinct.len(), ours.len(), "n={n}: duplicate classes");
        let oracle: BTreeSet<u128> = brute_force_classes(n).iter().map(brute_canonical).collect();
        assert_eq!(distinct, oracle, "n={n}");
    }
}

#[test]
fn seven_vertex_class_count() {
    assert_eq!(all_graphs(7).len(), brute_force_classes(7).len());
    assert_eq!(all_graphs(7).len(), 853);
}

/// Contracts edge `u`-`v` into `u` and drops `v`.
fn contract(g: &SimpleGraph, u: usize, v: usize) -> SimpleGraph {
    let relabel = |x: usize| {
        let x = if x == v { u } else { x };
        if x > v {
            x - 1
        } else {
            x
        }
    };
    let mut h = SimpleGraph::empty(g.n() - 1);
    for (a, b) in g.edges() {
        let (a, b) = (relabel(a), relabel(b));
        if a != b {
            h.add_edge(a, b);
        }
    }
    h
}

fn has_k5_or_k33_subgraph(g: &SimpleGraph) -> bool {
    let n = g.n();
    for set in 0u32..1 << n {
        let vs: Vec<usize> = (0..n).filter(|&v| set >> v & 1 == 1).collect();
        if vs.len() == 5 && pairs(5).iter().all(|&(i, j)| g.has_edge(vs[i], vs[j])) {
            return true;
        }
        if vs.len() == 6 {
            for side in 0u32..1 << 6 {
                if side.count_ones() != 3 {
                    continue;
                }
                let complete = pairs(6)
                    .iter()
                    .filter(|&&(i, j)| (side >> i & 1) != (side >> j & 1))
                    .all(|&(i, j)| g.has_edge(vs[i], vs[j]));
                if complete {
                    return true;
                }
            }
        }
    }
    false
}

/// Wagner: non-planar iff some contraction contains K5 or K3,3.
fn has_kuratowski_minor(g: &SimpleGraph) -> bool {
    if g.n() < 5 || g.edge_count() < 9 {
        return false;
    }
    has_k5_or_k33_subgraph(g) || g.edges().iter().any(|&(u, v)| has_kuratowski_minor(&contract(g, u, v)))
}

#[test]
fn planarity_agrees_with_minor_oracle() {
    let mut planar_counts = Vec::new();
    for n in 1..=7 {
        let mut count = 0;
        for g in all_graphs(n) {
            let planar = is_planar(&g);
            assert_eq!(planar, !has_kuratowski_minor(&g), "{:?}", g.edges());
            count += usize::from(planar);
        }
        planar_counts.push(count);
        assert_eq!(count, enumerate_graphs(&ConstraintSet::new(n), &SearchOptions::default()).unwrap().len());
    }
    assert_eq!(planar_counts, vec![1, 1, 2, 6, 20, 99, 646]);
}

/// Cycle of length `len` by trying every vertex sequence.
fn brute_cycle(g: &SimpleGraph, len: usize) -> bool {
    fn go(g: &SimpleGraph, path: &mut Vec<usize>, len: usize) -> bool {
        if path.len() == len {
            return g.has_edge(path[len - 1], path[0]);
        }
        for w in 0..g.n() {
            if !path.contains(&w) && g.has_edge(*path.last().unwrap(), w) {
                path.push(w);
                if go(g, path, len) {
                    return true;
                }
                path.pop();
            }
        }
        false
    }
    (0..g.n()).any(|s| go(g, &mut vec![s], len))
}

#[test]
fn cycle_detection_matches_brute_force() {
    let mut graphs = enumerate_graphs(&ConstraintSet::new(6), &SearchOptions::default()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..300 {
        let mut g = SimpleGraph::empty(8);
        for (u, v) in pairs(8) {
            if rng.gen_bool(0.35) {
                g.add_edge(u, v);
            }
        }
        graphs.push(g);
    }
    for g in &graphs {
        for len in 3..=g.n() {
            assert_eq!(contains_cycle_of_length(g, len).unwrap(), brute_cycle(g, len), "{:?} len {len}", g.edges());
        }
    }
}

#[test]
fn canonical_codes_ignore_labels() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in [5, 8, 12, 16] {
        for _ in 0..40 {
            let mut g = SimpleGraph::empty(n);
            for (u, v) in pairs(n) {
                if rng.gen_bool(0.3) {
                    g.add_edge(u, v);
                }
            }
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let (a, b) = (BitGraph::from_simple(&g), BitGraph::from_simple(&g.permuted(&perm)));
            assert_eq!(canonical_code(&a), canonical_code(&b));
        }
    }
}

fn oracle_accepts(c: &ConstraintSet, g: &SimpleGraph) -> bool {
    let mut lengths = c.forbidden_cycles.clone();
    if c.triangle_free {
        lengths.push(3);
    }
    let degrees: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let min = degrees.iter().copied().min().unwrap_or(0);
    lengths.iter().all(|&l| !brute_cycle(g, l))
        && (!c.bipartite || (3..=g.n()).step_by(2).all(|l| !brute_cycle(g, l)))
        && c.min_degree.is_none_or(|d| min >= d)
        && c.exact_min_degree.is_none_or(|d| min == d)
        && (!c.two_connected || (g.n() >= 3 && (0..g.n()).all(|v| {
            let keep: Vec<usize> = (0..g.n()).filter(|&x| x != v).collect();
            let pos = |x: usize| keep.iter().position(|&y| y == x).unwrap();
            let edges: Vec<(usize, usize)> =
                g.edges().into_iter().filter(|&(a, b)| a != v && b != v).map(|(a, b)| (pos(a), pos(b))).collect();
            SimpleGraph::from_edges(g.n() - 1, &edges).is_connected()
        })))
        && (!c.deg2_neighbor_rule
            || (0..g.n()).filter(|&v| degrees[v] == 2).all(|v| g.neighbors(v).iter().any(|&u| degrees[u] <= 3)))
}

#[test]
fn constrained_streams_equal_filtered_streams() {
    let lists = [
        "c5-free,min-degree=3,two-connected",
        "bipartite,c6-free,exact-min-degree=2,deg2-rule",
        "triangle-free,c6-free",
        "bipartite,c8-free,min-degree=2",
        "c4-free,two-connected",
    ];
    for n in 4..=7 {
        let all = enumerate_graphs(&ConstraintSet::new(n), &SearchOptions::default()).unwrap();
        for list in lists {
            let c = ConstraintSet::parse(n, list).unwrap();
            let got: HashSet<u128> = enumerate_graphs(&c, &SearchOptions::default())
                .unwrap()
                .iter()
                .map(|g| canonical_code(&BitGraph::from_simple(g)))
                .collect();
            let want: HashSet<u128> = all
                .iter()
                .filter(|g| oracle_accepts(&c, g))
                .map(|g| canonical_code(&BitGraph::from_simple(g)))
                .collect();
            assert_eq!(got, want, "n={n} {list}");
        }
    }
}

#[test]
fn output_does_not_depend_on_thread_count() {
    let c = ConstraintSet::parse(8, "triangle-free").unwrap();
    let opts = SearchOptions::default();
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let three = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
    let a = one.install(|| enumerate_graphs(&c, &opts).unwrap());
    let b = three.install(|| enumerate_graphs(&c, &opts).unwrap());
    assert_eq!(a, b);
}

#[test]
fn witnesses_pass_their_profile() {
    for (id, n) in [(ProfileId::C5, 8), (ProfileId::C5, 9), (ProfileId::BiC6, 7), (ProfileId::BiC6, 8)] {
        let p = get_profile(id);
        let r = extremal_search(&ConstraintSet::for_profile(&p, n), &SearchOptions::default()).unwrap();
        assert!(!r.witnesses.is_empty(), "{id} n={n}");
        for w in &r.witnesses {
            assert!(check_hypotheses(w, &p).ok(), "{id}");
            assert!(check_bound(w, &p).unwrap().holds, "{id}");
        }
    }
    let c5 = extremal_search(&ConstraintSet::for_profile(&get_profile(ProfileId::C5), 9), &SearchOptions::default())
        .unwrap();
    assert!(c5.max_edges.unwrap() <= 15);
}
