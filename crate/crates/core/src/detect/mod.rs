//! Exact pattern detectors.
//!
//! Every detector returns a maximum together with a witness that can be checked
//! independently through [`classify_pair`](crate::graph::classify_pair). Passing a
//! `cap` turns a detector into a contains-query: it may stop as soon as a matching
//! of size `cap` is found, and then returns exactly `cap`.

mod brute;
mod matching;
mod path;
mod split;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

pub use brute::{brute_force_max, is_pattern_matching, DEFAULT_BRUTE_BUDGET};
pub use path::{alt_nested, alt_peel, longest_alternating_path, verify_alternating_path};
pub use split::{Groups, Inner};

use crate::error::{Error, Result};
use crate::graph::{classify_pair, Edge, Gap, OrderedGraph, PairRelation};
use crate::pattern::{PatternKind, PatternSpec};

/// A matching certifying a detector's answer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingWitness {
    pub kind: PatternKind,
    /// Sorted lexicographically.
    pub edges: Vec<Edge>,
    /// Island spans `(first vertex, last vertex)` for island-structured kinds.
    pub islands: Vec<(usize, usize)>,
}

impl MatchingWitness {
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// Re-checks the witness against `g` and the definition of its kind.
    pub fn verify(&self, g: &OrderedGraph) -> bool {
        if !self.edges.iter().all(|&e| g.contains(e)) {
            return false;
        }
        if !is_pattern_matching(self.kind, &self.edges) {
            return false;
        }
        if self.islands.is_empty() {
            return true;
        }
        // islands must be disjoint intervals that cover every edge
        let disjoint = self.islands.windows(2).all(|w| w[0].1 < w[1].0);
        disjoint && self.edges.iter().all(|e| self.islands.iter().any(|&(l, r)| l <= e.u() && e.v() <= r))
    }

    /// A gap spanned by every edge, if any.
    pub fn common_gap(&self) -> Option<Gap> {
        let lo = self.edges.iter().map(|e| e.u()).max()?;
        let hi = self.edges.iter().map(|e| e.v()).min()?;
        (lo < hi).then_some(Gap(lo))
    }
}

impl Serialize for MatchingWitness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let len = if self.islands.is_empty() { 2 } else { 3 };
        let mut st = s.serialize_struct("MatchingWitness", len)?;
        st.serialize_field("size", &self.size())?;
        let edges: Vec<[usize; 2]> = self.edges.iter().map(|e| e.as_pair()).collect();
        st.serialize_field("edges", &edges)?;
        if !self.islands.is_empty() {
            st.serialize_field("islands", &self.islands)?;
        }
        st.end()
    }
}

/// An alternating path, vertices listed from the outermost edge inwards.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathWitness {
    pub path: Vec<usize>,
}

impl PathWitness {
    pub fn verify(&self, g: &OrderedGraph) -> bool {
        verify_alternating_path(g, &self.path)
    }
}

/// Maximum matching of one of the seven matching kinds (the six pairwise kinds and
/// strongly non-nested), capped at `cap` when given.
pub fn max_pattern_matching(
    g: &OrderedGraph,
    kind: PatternKind,
    cap: Option<usize>,
) -> Result<(usize, MatchingWitness)> {
    let limit = cap.unwrap_or(usize::MAX);
    let (edges, islands) = match kind {
        PatternKind::Sep => (matching::max_separated(g, limit), Vec::new()),
        PatternKind::Nest => (matching::max_nested(g, limit), Vec::new()),
        PatternKind::Cross => (matching::max_crossing(g, limit), Vec::new()),
        PatternKind::NonSep => (matching::max_non_separated(g, limit).0, Vec::new()),
        PatternKind::NonNest => (matching::max_non_nested(g, limit), Vec::new()),
        PatternKind::NonCross => (matching::max_non_crossing(g, limit), Vec::new()),
        PatternKind::Snn => {
            let (_, w) = max_split_pattern(g, Inner::Cross, Groups::Any);
            return Ok(capped(w, limit));
        }
        other => {
            return Err(Error::Unsupported(format!("{other} is not a matching kind")));
        }
    };
    let mut edges = edges;
    edges.sort_unstable();
    Ok((edges.len(), MatchingWitness { kind, edges, islands }))
}

fn capped(mut w: MatchingWitness, limit: usize) -> (usize, MatchingWitness) {
    if w.edges.len() > limit {
        // drop whole trailing islands first, then trim the last one
        w.edges.truncate(limit);
        let last_v = w.edges.iter().map(|e| e.v()).max().unwrap_or(0);
        w.islands.retain(|&(l, _)| l <= last_v);
        if let Some(last) = w.islands.last_mut() {
            last.1 = last.1.min(last_v);
        }
    }
    (w.edges.len(), w)
}

/// Largest matching made of pairwise separated islands of the `inner` pattern;
/// `Groups::Two` allows at most two (possibly empty) islands.
pub fn max_split_pattern(g: &OrderedGraph, inner: Inner, groups: Groups) -> (usize, MatchingWitness) {
    let kind = match (inner, groups) {
        (Inner::Cross, Groups::Two) => PatternKind::MStar,
        (Inner::Nest, Groups::Two) => PatternKind::MStarStar,
        (Inner::Cross, Groups::Any) => PatternKind::Snn,
        // unions of separated nested islands are exactly non-crossing matchings
        (Inner::Nest, Groups::Any) => PatternKind::NonCross,
    };
    let (edges, islands) = split::max_split(g, inner, groups);
    let size = edges.len();
    (size, MatchingWitness { kind, edges, islands })
}

/// The size of the largest copy of `kind` in `g`: matching size, or vertex count
/// for alternating paths. With a cap the answer is `min(max, cap)`.
pub fn pattern_size(g: &OrderedGraph, kind: PatternKind, cap: Option<usize>) -> usize {
    let limit = cap.unwrap_or(usize::MAX);
    match kind {
        PatternKind::AltPath => longest_alternating_path(g).0.min(limit),
        PatternKind::MStar => max_split_pattern(g, Inner::Cross, Groups::Two).0.min(limit),
        PatternKind::MStarStar => max_split_pattern(g, Inner::Nest, Groups::Two).0.min(limit),
        _ => max_pattern_matching(g, kind, cap).expect("matching kind").0,
    }
}

/// Whether `g` contains a copy of `spec`.
pub fn contains_pattern(g: &OrderedGraph, spec: PatternSpec) -> bool {
    pattern_size(g, spec.kind, Some(spec.size)) >= spec.size
}

/// The longest alternating path with its witness.
pub fn alternating_path_witness(g: &OrderedGraph) -> (usize, PathWitness) {
    let (t, path) = longest_alternating_path(g);
    (t, PathWitness { path })
}

/// True when all pairs in `edges` are independent and satisfy `kind`'s pairwise rule.
pub fn pairwise_ok(kind: PatternKind, edges: &[Edge]) -> bool {
    edges.iter().enumerate().all(|(i, &a)| {
        edges[i + 1..].iter().all(|&b| {
            let r = classify_pair(a, b);
            r != PairRelation::Shared && kind.allows(r).unwrap_or(false)
        })
    })
}
