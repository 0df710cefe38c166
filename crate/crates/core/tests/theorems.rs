use std::path::PathBuf;

use turan_planar::fixtures::fixture;
use turan_planar::ledger::{int, rat, Rational};
use turan_planar::search::{enumerate_graphs, planar_embed, ConstraintSet, SearchOptions};
use turan_planar::theorems::{
    bound_for_counts, check_bound, check_hypotheses, derive_global_bound, saturate_six_faces, verify,
    verify_per_block, GraphCounts, ProfileId,
};
use turan_planar::{get_profile, parse_graph, Error, SimpleGraph};

fn counts(n: usize, e: usize, k: usize, e23: usize) -> GraphCounts {
    GraphCounts { n, e, k, e23 }
}

#[test]
fn published_formulas() {
    // (profile, coefficient of n, of k, of e23, constant)
    let table = [
        (ProfileId::C5, rat(12, 5), int(0), int(0), rat(-33, 5)),
        (ProfileId::BiC6, rat(3, 2), rat(1, 2), rat(1, 4), int(-4)),
        (ProfileId::BiC8, rat(5, 3), int(0), int(0), rat(-10, 3)),
        (ProfileId::BiC8C10, rat(18, 11), int(0), int(0), rat(-84, 11)),
        (ProfileId::TriC6, rat(9, 5), int(0), int(0), int(-4)),
        (ProfileId::TriC8, rat(81, 44), int(0), int(0), rat(-105, 22)),
    ];
    for (id, a, bk, be, c) in table {
        let f = derive_global_bound(&get_profile(id)).unwrap();
        assert_eq!((f.a, f.b_k, f.b_e23, f.c), (a, bk, be, c), "{id}");
        assert_eq!(f.integer_floor, id == ProfileId::TriC6);
    }
}

#[test]
fn euler_substitution_by_hand() {
    // a v + b e + g f <= 0 with f = 2 - n + e, solved for e, for each coefficient row
    for id in ProfileId::ALL {
        let p = get_profile(id);
        let c = p.coefficients;
        let f = derive_global_bound(&p).unwrap();
        for n in [11usize, 20, 37] {
            for (k, e23) in [(0usize, 0usize), (3, 5)] {
                let rhs = (int(c.gamma - c.alpha) * int(n as i64) - int(2 * c.gamma)
                    - int(c.delta_k) * int(k as i64)
                    - int(c.eps_e23) * int(e23 as i64))
                    / int(c.beta + c.gamma);
                let rhs = if p.integer_floor { rhs.floor() } else { rhs };
                assert_eq!(f.evaluate(&counts(n, 0, k, e23)), rhs, "{id} n={n}");
            }
        }
    }
}

fn slack(id: ProfileId, c: GraphCounts) -> Rational {
    bound_for_counts(&get_profile(id), c).unwrap().slack
}

#[test]
fn extremal_families_have_zero_slack() {
    for t in 1..=6usize {
        assert_eq!(slack(ProfileId::BiC6, counts(28 * t + 2, 48 * t, 8 * t, 8 * t + 4)), int(0));
        assert_eq!(slack(ProfileId::BiC8, counts(270 * t + 110, 450 * t + 180, 0, 0)), int(0));
        assert_eq!(slack(ProfileId::BiC8C10, counts(66 * t + 155, 108 * t + 246, 0, 0)), int(0));
        assert_eq!(slack(ProfileId::TriC6, counts(10 * t + 8, 18 * t + 10, 0, 0)), int(0));
        assert_eq!(slack(ProfileId::C5, counts(15 * t * t - 6, 36 * t * t - 21, 0, 0)), int(0));
    }
    // one edge more is always a violation
    assert!(!bound_for_counts(&get_profile(ProfileId::TriC6), counts(18, 29, 0, 0)).unwrap().holds);
}

/// Family of a count vector, if it matches one of the published extremal constructions.
fn family(c: &GraphCounts) -> Option<ProfileId> {
    let (n, e) = (c.n, c.e);
    let fits = |a: usize, b: usize, x: usize| x >= b && (x - b) % a == 0;
    if fits(28, 2, n) && n > 2 {
        let t = (n - 2) / 28;
        if e == 48 * t && c.k == 8 * t && c.e23 == 8 * t + 4 {
            return Some(ProfileId::BiC6);
        }
    }
    if fits(270, 110, n) && fits(450, 180, e) && (n - 110) / 270 == (e - 180) / 450 {
        return Some(ProfileId::BiC8);
    }
    if fits(66, 155, n) && fits(108, 246, e) && (n - 155) / 66 == (e - 246) / 108 {
        return Some(ProfileId::BiC8C10);
    }
    if fits(10, 8, n) && fits(18, 10, e) && (n - 8) / 10 == (e - 10) / 18 {
        return Some(ProfileId::TriC6);
    }
    let t2 = (n + 6) / 15;
    if (n + 6) % 15 == 0 && e + 21 == 36 * t2 && (1..=t2).any(|t| t * t == t2) {
        return Some(ProfileId::C5);
    }
    None
}

/// Witness graphs in `TURAN_PLANAR_WITNESS_DIR` or `tests/witnesses/`; absent is fine.
#[test]
fn supplied_witnesses_are_tight() {
    let dir = std::env::var_os("TURAN_PLANAR_WITNESS_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/witnesses"));
    let Ok(entries) = std::fs::read_dir(&dir) else {
        eprintln!("no witness directory at {}", dir.display());
        return;
    };
    for entry in entries {
        let path = entry.unwrap().path();
        if path.extension().is_none_or(|x| x != "graph") {
            continue;
        }
        let g = parse_graph(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let c = GraphCounts::of(&g);
        let id = family(&c).unwrap_or_else(|| panic!("{}: counts {c:?} match no family", path.display()));
        let check = check_bound(&g, &get_profile(id)).unwrap();
        assert_eq!(check.slack, int(0), "{}", path.display());
    }
}

#[test]
fn family_matcher() {
    assert_eq!(family(&counts(30, 48, 8, 12)), Some(ProfileId::BiC6));
    assert_eq!(family(&counts(380, 630, 0, 0)), Some(ProfileId::BiC8));
    assert_eq!(family(&counts(221, 354, 0, 0)), Some(ProfileId::BiC8C10));
    assert_eq!(family(&counts(18, 28, 0, 0)), Some(ProfileId::TriC6));
    assert_eq!(family(&counts(54, 123, 0, 0)), Some(ProfileId::C5));
    assert_eq!(family(&counts(19, 28, 0, 0)), None);
}

#[test]
fn cube_under_c5_by_hand() {
    let g = fixture("CUBE");
    let v = verify(&g, &get_profile(ProfileId::C5), false).unwrap();
    assert_eq!(v.blocks.len(), 12);
    for b in &v.blocks {
        assert_eq!(b.value, rat(-1, 2));
    }
    assert_eq!(v.total, Some(int(9 * 8 - 23 * 12 + 33 * 6)));
    assert!(v.passed());
}

#[test]
fn verify_per_block_needs_hypotheses_or_force() {
    let g = fixture("K24");
    let p = get_profile(ProfileId::BiC6);
    assert!(matches!(verify_per_block(&g, &p, false), Err(Error::HypothesisViolated(_))));
    let forced = verify_per_block(&g, &p, true).unwrap();
    assert!(forced.forced);
    assert!(!verify(&g, &p, false).unwrap().passed());
}

#[test]
fn small_graphs_satisfy_every_block_inequality() {
    for id in ProfileId::ALL {
        let p = get_profile(id);
        for n in 2..=8 {
            let c = ConstraintSet::for_profile(&p, n);
            for g in enumerate_graphs(&c, &SearchOptions::default()).unwrap() {
                let pg = planar_embed(&g).unwrap().unwrap();
                assert!(check_hypotheses(&pg, &p).ok());
                let v = verify_per_block(&pg, &p, false).unwrap();
                assert!(v.violations.is_empty(), "{id}: {:?}", g.edges());
            }
        }
    }
}

/// A short outer face is never absorbed into a block, so a block next to it
/// may exceed its inequality. Other outer faces never do.
#[test]
fn only_short_outer_faces_break_block_inequalities() {
    for (id, short) in [(ProfileId::C5, 3), (ProfileId::BiC6, 4)] {
        let p = get_profile(id);
        let mut broken = 0;
        for n in 2..=8 {
            for g in enumerate_graphs(&ConstraintSet::for_profile(&p, n), &SearchOptions::default()).unwrap() {
                let pg = planar_embed(&g).unwrap().unwrap();
                for face in 0..pg.face_count() {
                    let h = pg.with_outer_face(face);
                    if !verify_per_block(&h, &p, false).unwrap().violations.is_empty() {
                        assert_eq!(h.face_len(face), short, "{id}: {:?}", g.edges());
                        broken += 1;
                    }
                }
            }
        }
        assert!(broken > 0, "{id}");
    }
}

/// Two pendant vertices on a bipartite C6-free graph: the rule on degree-2
/// vertices holds, yet e = 8 exceeds 3n/2 + k/2 + e23/4 - 4 = 15/2.
#[test]
fn bi_c6_bound_needs_min_degree_two() {
    let edges = [(0, 6), (1, 5), (2, 3), (2, 4), (3, 5), (3, 6), (4, 5), (4, 6)];
    let g = planar_embed(&SimpleGraph::from_edges(7, &edges)).unwrap().unwrap();
    let c = GraphCounts::of(&g);
    assert_eq!(c, counts(7, 8, 1, 2));
    assert_eq!(slack(ProfileId::BiC6, c), rat(-1, 2));
    assert!(!check_hypotheses(&g, &get_profile(ProfileId::BiC6)).ok());
}

#[test]
fn saturation_gates() {
    let hex = fixture("HEXPRISM");
    assert!(matches!(saturate_six_faces(&hex), Err(Error::HypothesisViolated(_))));
    assert!(matches!(saturate_six_faces(&fixture("K23")), Err(Error::HypothesisViolated(_))));
    // C6 itself: bipartite and C8/C10-free but of minimum degree 2
    let err = saturate_six_faces(&fixture("C6")).unwrap_err();
    assert!(err.to_string().contains("min degree"));
}
