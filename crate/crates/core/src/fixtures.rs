//! Named fixture graphs shipped in `fixtures/`.

use crate::io::parse_graph;
use crate::plane::PlaneGraph;

/// `(name, file contents)` for every fixture.
pub const FIXTURES: &[(&str, &str)] = &[
    ("C4", include_str!("../fixtures/c4.graph")),
    ("C6", include_str!("../fixtures/c6.graph")),
    ("C8", include_str!("../fixtures/c8.graph")),
    ("K4", include_str!("../fixtures/k4.graph")),
    ("THETA4", include_str!("../fixtures/theta4.graph")),
    ("K23", include_str!("../fixtures/k23.graph")),
    ("THETA6", include_str!("../fixtures/theta6.graph")),
    ("Q7", include_str!("../fixtures/q7.graph")),
    ("CUBE", include_str!("../fixtures/cube.graph")),
    ("K24", include_str!("../fixtures/k24.graph")),
    ("HEXPRISM", include_str!("../fixtures/hexprism.graph")),
];

pub fn fixture_text(name: &str) -> Option<&'static str> {
    FIXTURES
        .iter()
        .find(|(n, _)| n.eq_ignore_ascii_case(name))
        .map(|&(_, text)| text)
}

/// Parsed fixture. Panics on unknown names; fixtures are known to be valid.
pub fn fixture(name: &str) -> PlaneGraph {
    let text = fixture_text(name).unwrap_or_else(|| panic!("unknown fixture {name}"));
    parse_graph(text).expect("fixture parses")
}

/// File name used when writing the corpus to disk.
pub fn fixture_file_name(name: &str) -> String {
    format!("{}.graph", name.to_ascii_lowercase())
}
