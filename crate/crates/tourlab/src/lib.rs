//! Exact toolkit for tournament digraphs.
//!
//! The crate covers, with exact integer arithmetic throughout:
//!
//! - bit-exact tournament representation and the TRN1 text format
//!   ([`tournament`]);
//! - maximum transitive subtournaments over the whole subset lattice
//!   ([`transitive`]);
//! - canonical forms, isomorphism, exhaustive enumeration of isomorphism
//!   classes up to seven vertices, and pattern containment ([`enumeration`]);
//! - homogeneous sets, star decompositions of backward-edge graphs, galaxy
//!   and forest orderings, and the five-outcome classification of six-vertex
//!   tournaments ([`structure`]);
//! - density chain structures, smoothing, backward matchings with vertex
//!   covers, transitive merging, and criticality ([`regularity`]);
//! - replay engines that execute the constructive embedding analyses for the
//!   two six-vertex extensions of C5 on concrete instances ([`embedding`]);
//! - Graphviz export of ordered vertex layouts ([`dot`]).
//!
//! Every value is immutable after construction and every operation is a pure
//! function of its inputs, so all of this is safe to evaluate concurrently.

pub mod dot;
pub mod embedding;
pub mod enumeration;
pub mod frac;
pub mod patterns;
mod perm;
pub mod regularity;
pub mod structure;
pub mod tournament;
pub mod transitive;

pub use frac::Frac;
pub use tournament::{Ordering, Tournament, VertexSet};
