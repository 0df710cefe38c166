use proptest::prelude::*;
use turan_planar::fixtures::FIXTURES;
use turan_planar::plane::euler_characteristic;
use turan_planar::search::random_plane_graph;
use turan_planar::{parse_graph, serialize_graph, Error};

#[test]
fn fixtures_round_trip() {
    for (name, text) in FIXTURES {
        let g = parse_graph(text).unwrap_or_else(|e| panic!("{name}: {e}"));
        let again = parse_graph(&serialize_graph(&g)).unwrap();
        assert_eq!(again.rotations(), g.rotations(), "{name}");
        assert_eq!(again.outer_dart(), g.outer_dart(), "{name}");
        assert_eq!(serialize_graph(&again), serialize_graph(&g));
    }
}

#[test]
fn five_hundred_random_graphs_round_trip() {
    for seed in 0..500u64 {
        let n = 3 + (seed % 12) as usize;
        let g = random_plane_graph(n, seed, None).unwrap();
        assert_eq!(euler_characteristic(&g), 2);
        let text = serialize_graph(&g);
        let back = parse_graph(&text).unwrap();
        assert_eq!(back, g, "seed {seed}");
        assert_eq!(serialize_graph(&back), text);
    }
}

#[test]
fn rejects_bad_input() {
    let cases = [
        ("plane-graph v1 n=3\n0: 1 1\n1: 0\n2:\nouter: 0->1\n", "NonSimple"),
        ("plane-graph v1 n=3\n0: 1\n1: 0 2\n2:\nouter: 0->1\n", "AsymmetricAdjacency"),
        ("plane-graph v1 n=4\n0: 1\n1: 0\n2: 3\n3: 2\nouter: 0->1\n", "Disconnected"),
        ("plane-graph v1 n=2\n0: 1\n1: 0\nouter: 0->5\n", "MissingOuterDart"),
        ("plane-graph v1 n=2\n0: 1\n1: 0\n", "MissingOuterDart"),
        ("plane-graph v2 n=2\n0: 1\n1: 0\nouter: 0->1\n", "SyntaxError"),
    ];
    for (text, code) in cases {
        let err = parse_graph(text).unwrap_err();
        assert_eq!(err.code(), code, "{text:?} gave {err}");
    }
    // K4 with the rotation at one vertex reversed lives on the torus
    let torus = "plane-graph v1 n=4\n0: 1 3 2\n1: 0 3 2\n2: 0 1 3\n3: 0 2 1\nouter: 0->1\n";
    assert!(matches!(parse_graph(torus), Err(Error::GenusNonZero(_))));
}

proptest! {
    #[test]
    fn serialization_is_a_fixed_point(seed in any::<u64>(), n in 3usize..14) {
        let g = random_plane_graph(n, seed, None).unwrap();
        let text = serialize_graph(&g);
        prop_assert_eq!(serialize_graph(&parse_graph(&text).unwrap()), text);
    }
}
