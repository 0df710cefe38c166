//! Exhaustive and random generation of small plane graphs.

pub mod canon;
pub mod enumerate;
pub mod planarity;
pub mod random;

pub use canon::{canonical, canonical_code, BitGraph, Canon};
pub use enumerate::{
    enumerate_graphs, extremal_search, visit_graphs, ConstraintSet, EnumerationStats, SearchOptions,
    SearchResult, DEFAULT_CEILING,
};
pub use planarity::{is_planar, planar_embed, planar_rotations};
pub use random::random_plane_graph;
