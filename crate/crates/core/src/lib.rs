//! Genus ranges of 4-regular rigid-vertex graphs described by
//! double-occurrence words.
//!
//! A double-occurrence word (DOW) such as `1 2 1 3 2 3` lists the vertices of
//! a connected 4-regular graph in the order an Eulerian transversal visits
//! them; every vertex is rigid, i.e. carries a cyclic order of its four
//! incident edges, fixed up to rotation and reversal. Thickening vertices to
//! squares and edges to bands yields an orientable surface with boundary, one
//! of `2^n` per graph (two band attachments per vertex). The genus range of
//! the graph is the set of genera over all of these, and it is always an
//! interval of consecutive integers.
//!
//! The crate computes genus ranges exhaustively ([`ribbon`]), enumerates all
//! equivalence classes of words of a given size and aggregates their ranges
//! ([`survey`]), generates the named graph families that realize particular
//! ranges ([`families`]), and exposes the word-level surgery operations (loop
//! insertion, cross sum, pretzel insertion, vertex addition/removal) that the
//! constructions are built from ([`dow`]).

pub mod dow;
pub mod enumerate;
pub mod families;
pub mod graph;
pub mod ribbon;
pub mod survey;
pub mod verify;

mod error;

pub use dow::{CanonicalDow, Dow, Symbol};
pub use enumerate::CanonicalWords;
pub use error::{Error, Result};
pub use graph::AssemblyGraph;
pub use ribbon::{BoundaryDecomposition, EmbeddingChoice, GenusRange};
pub use survey::RangeFamily;
