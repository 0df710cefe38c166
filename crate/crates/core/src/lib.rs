//! Plane-graph toolkit for block-contribution proofs of planar Turán bounds.
//!
//! A [`PlaneGraph`] is decomposed into triangular or quadrangular blocks
//! ([`blocks`]), each block receives exact rational shares of the vertex,
//! edge and face counts ([`ledger`]), and a theorem profile checks a linear
//! inequality on every block and the global edge bound it implies
//! ([`theorems`]). [`search`] enumerates small graphs exhaustively so that the
//! inequalities can be checked on every instance up to a given order.

pub mod blocks;
pub mod error;
pub mod fixtures;
pub mod forbidden;
pub mod graph;
pub mod io;
pub mod ledger;
pub mod plane;
pub mod search;
pub mod theorems;

pub use blocks::{decompose, BlockDecomposition, BlockKind, BlockMode};
pub use error::{Error, Result};
pub use graph::SimpleGraph;
pub use io::{parse_graph, serialize_graph};
pub use ledger::{build_ledger, ContributionLedger, Rational};
pub use plane::{build_embedding, PlaneGraph};
pub use theorems::{get_profile, ProfileId, TheoremProfile};
