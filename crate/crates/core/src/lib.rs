//! Extremal and Ramsey-type computations for ordered graphs and ordered matchings.
//!
//! Vertices are `1..=n` in their natural order. Two vertex-disjoint edges are
//! separated, nested or crossing according to how their intervals meet, and a
//! pattern is a matching whose pairs all avoid (or all realize) one relation.

pub mod construct;
pub mod detect;
pub mod error;
pub mod formulas;
pub mod graph;
pub mod harness;
pub mod pattern;
pub mod ramsey;
pub mod render;
pub mod search;

pub use error::{Error, Result};
pub use graph::{classify_pair, Edge, Gap, OrderedGraph, PairRelation, Transform};
pub use pattern::{PatternKind, PatternSpec};
