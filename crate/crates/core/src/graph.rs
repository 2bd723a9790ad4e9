//! Vertex-ordered graphs on `[n] = {1, ..., n}` and the pairwise edge calculus.
//!
//! Every edge is stored normalized (`u < v`) and the edge list is kept sorted
//! lexicographically, so iteration order is deterministic everywhere.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An edge `uv` of an ordered graph with `1 <= u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    u: usize,
    v: usize,
}

impl Edge {
    pub fn new(u: usize, v: usize) -> Result<Self> {
        if u >= v {
            return Err(Error::NonNormalizedEdge(u, v));
        }
        if u == 0 {
            return Err(Error::EndpointOutOfRange { u, v, n: v });
        }
        Ok(Edge { u, v })
    }

    /// Builds the edge on `{a, b}` regardless of argument order.
    ///
    /// Panics if `a == b` or either endpoint is zero.
    pub fn between(a: usize, b: usize) -> Self {
        assert!(a != b && a > 0 && b > 0, "invalid edge {{{a}, {b}}}");
        Edge { u: a.min(b), v: a.max(b) }
    }

    #[inline]
    pub const fn u(self) -> usize {
        self.u
    }

    #[inline]
    pub const fn v(self) -> usize {
        self.v
    }

    /// `v - u`.
    #[inline]
    pub const fn length(self) -> usize {
        self.v - self.u
    }

    #[inline]
    pub const fn touches(self, w: usize) -> bool {
        self.u == w || self.v == w
    }

    #[inline]
    pub const fn shares_vertex(self, other: Edge) -> bool {
        self.touches(other.u) || self.touches(other.v)
    }

    /// True when `other` lies weakly inside this edge's interval.
    #[inline]
    pub const fn covers(self, other: Edge) -> bool {
        self.u <= other.u && other.v <= self.v
    }

    #[inline]
    pub const fn spans(self, gap: Gap) -> bool {
        self.u <= gap.0 && gap.0 < self.v
    }

    pub fn as_pair(self) -> [usize; 2] {
        [self.u, self.v]
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.u, self.v)
    }
}

/// The gap between vertices `g` and `g + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gap(pub usize);

/// How two edges sit relative to each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PairRelation {
    Shared,
    Separated,
    Nested,
    Crossing,
}

pub fn classify_pair(a: Edge, b: Edge) -> PairRelation {
    if a.shares_vertex(b) {
        PairRelation::Shared
    } else if a.v < b.u || b.v < a.u {
        PairRelation::Separated
    } else if a.covers(b) || b.covers(a) {
        PairRelation::Nested
    } else {
        PairRelation::Crossing
    }
}

/// Graph transformations that keep the class of ordered patterns closed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transform {
    /// Relabel `i` as `n + 1 - i`.
    Reverse,
    /// Add vertex `n + 1` joined to `1..=d`.
    Apex(usize),
}

/// An ordered graph on `[n]`; immutable once built.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphWire", into = "GraphWire")]
pub struct OrderedGraph {
    n: usize,
    edges: Vec<Edge>,
    // row-major bitset, row `u` holds the neighbours `v > u`
    rows: Vec<u64>,
    words: usize,
}

impl OrderedGraph {
    pub fn empty(n: usize) -> Self {
        let words = n / 64 + 1;
        OrderedGraph { n, edges: Vec::new(), rows: vec![0; (n + 1) * words], words }
    }

    pub fn complete(n: usize) -> Self {
        Self::from_fn(n, |_, _| true)
    }

    /// The graph on `[n]` containing `uv` (with `u < v`) exactly when `keep(u, v)`.
    pub fn from_fn(n: usize, mut keep: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Self::empty(n);
        for u in 1..=n {
            for v in u + 1..=n {
                if keep(u, v) {
                    g.insert_unchecked(Edge { u, v });
                }
            }
        }
        g
    }

    /// Validating constructor; rejects non-normalized, out-of-range and duplicate edges.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= v {
                return Err(Error::NonNormalizedEdge(u, v));
            }
            if u == 0 || v > n {
                return Err(Error::EndpointOutOfRange { u, v, n });
            }
            list.push(Edge { u, v });
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].u, w[0].v));
        }
        let mut g = Self::empty(n);
        for e in list {
            g.set_bit(e);
        }
        g.edges = g.collect_edges();
        Ok(g)
    }

    /// Builds from edges that are already known to be valid; duplicates are merged.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = Edge>) -> Self {
        let mut g = Self::empty(n);
        for e in edges {
            assert!(e.v <= n, "edge {e} outside [1, {n}]");
            g.set_bit(e);
        }
        g.edges = g.collect_edges();
        g
    }

    fn insert_unchecked(&mut self, e: Edge) {
        // only called in lexicographic order by from_fn
        self.set_bit(e);
        self.edges.push(e);
    }

    fn set_bit(&mut self, e: Edge) {
        self.rows[e.u * self.words + e.v / 64] |= 1 << (e.v % 64);
    }

    fn collect_edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for u in 1..=self.n {
            for v in self.right_neighbors(u) {
                out.push(Edge { u, v });
            }
        }
        out
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        if a == b || a == 0 || b == 0 || a > self.n || b > self.n {
            return false;
        }
        let (u, v) = (a.min(b), a.max(b));
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    pub fn contains(&self, e: Edge) -> bool {
        self.has_edge(e.u, e.v)
    }

    /// Neighbours `v > u`, ascending.
    pub fn right_neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        let row = &self.rows[u * self.words..(u + 1) * self.words];
        row.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }

    /// Neighbours `w < v`, ascending.
    pub fn left_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (1..v).filter(move |&u| self.has_edge(u, v))
    }

    pub fn with_edge(&self, e: Edge) -> Self {
        let mut edges = self.edges.clone();
        edges.push(e);
        Self::from_edges(self.n, edges)
    }

    pub fn without_edge(&self, e: Edge) -> Self {
        Self::from_edges(self.n, self.edges.iter().copied().filter(|&f| f != e))
    }

    pub fn transform(&self, t: Transform) -> Result<Self> {
        match t {
            Transform::Reverse => Ok(self.reversed()),
            Transform::Apex(d) => {
                if d > self.n {
                    return Err(Error::DegreeTooLarge { degree: d, n: self.n });
                }
                let apex = self.n + 1;
                let new = (1..=d).map(|i| Edge { u: i, v: apex });
                Ok(Self::from_edges(apex, self.edges.iter().copied().chain(new)))
            }
        }
    }

    pub fn reversed(&self) -> Self {
        let n = self.n;
        Self::from_edges(n, self.edges.iter().map(|e| Edge { u: n + 1 - e.v, v: n + 1 - e.u }))
    }

    /// The subgraph induced on the interval `[lo, hi]`, relabelled to start at 1.
    pub fn interval(&self, lo: usize, hi: usize) -> Self {
        assert!(1 <= lo && lo <= hi && hi <= self.n);
        let shift = lo - 1;
        Self::from_edges(
            hi - shift,
            self.edges.iter().filter(|e| lo <= e.u && e.v <= hi).map(|e| Edge { u: e.u - shift, v: e.v - shift }),
        )
    }

    /// Serializes to the JSON wire format `{"n":..,"edges":[[u,v],..]}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphWire::from(self.clone())).expect("graph serialization")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        decode_graph(text)
    }
}

impl fmt::Debug for OrderedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OrderedGraph(n={}, ", self.n)?;
        f.debug_list().entries(self.edges.iter().map(|e| (e.u, e.v))).finish()?;
        write!(f, ")")
    }
}

impl PartialOrd for OrderedGraph {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrderedGraph {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, &self.edges).cmp(&(other.n, &other.edges))
    }
}

#[derive(Serialize, Deserialize)]
struct GraphWire {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphWire> for OrderedGraph {
    type Error = Error;

    fn try_from(w: GraphWire) -> Result<Self> {
        OrderedGraph::new(w.n, w.edges.into_iter().map(|[u, v]| (u, v)))
    }
}

impl From<OrderedGraph> for GraphWire {
    fn from(g: OrderedGraph) -> Self {
        GraphWire { n: g.n, edges: g.edges.iter().map(|e| e.as_pair()).collect() }
    }
}

pub fn decode_graph(text: &str) -> Result<OrderedGraph> {
    let wire: GraphWire = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
    OrderedGraph::try_from(wire)
}

pub fn encode_graph(g: &OrderedGraph) -> String {
    g.to_json()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(u: usize, v: usize) -> Edge {
        Edge::new(u, v).unwrap()
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_pair(e(1, 2), e(3, 4)), PairRelation::Separated);
        assert_eq!(classify_pair(e(1, 4), e(2, 3)), PairRelation::Nested);
        assert_eq!(classify_pair(e(1, 3), e(2, 4)), PairRelation::Crossing);
        assert_eq!(classify_pair(e(1, 2), e(2, 3)), PairRelation::Shared);
    }

    #[test]
    fn classify_is_symmetric_and_reverse_invariant() {
        let n = 8;
        let all = OrderedGraph::complete(n);
        for &a in all.edges() {
            for &b in all.edges() {
                let r = classify_pair(a, b);
                assert_eq!(r, classify_pair(b, a));
                let ra = Edge::between(n + 1 - a.u(), n + 1 - a.v());
                let rb = Edge::between(n + 1 - b.u(), n + 1 - b.v());
                assert_eq!(r, classify_pair(ra, rb));
                if a != b && !a.shares_vertex(b) {
                    assert_ne!(r, PairRelation::Shared);
                }
            }
        }
    }

    #[test]
    fn edge_rejects_bad_endpoints() {
        assert_eq!(Edge::new(2, 1), Err(Error::NonNormalizedEdge(2, 1)));
        assert_eq!(Edge::new(3, 3), Err(Error::NonNormalizedEdge(3, 3)));
        assert!(matches!(Edge::new(0, 3), Err(Error::EndpointOutOfRange { .. })));
    }

    #[test]
    fn reverse_examples() {
        let g = OrderedGraph::new(3, [(1, 2)]).unwrap();
        let r = g.transform(Transform::Reverse).unwrap();
        assert_eq!(r.edges(), &[e(2, 3)]);
        let k5 = OrderedGraph::complete(5).without_edge(e(1, 4));
        assert_eq!(k5.reversed().reversed(), k5);
    }

    #[test]
    fn apex_examples() {
        let g = OrderedGraph::complete(5).transform(Transform::Apex(2)).unwrap();
        assert_eq!(g.n(), 6);
        assert_eq!(g.edge_count(), 12);
        assert!(g.has_edge(1, 6) && g.has_edge(2, 6) && !g.has_edge(3, 6));
        assert_eq!(
            OrderedGraph::complete(3).transform(Transform::Apex(4)),
            Err(Error::DegreeTooLarge { degree: 4, n: 3 })
        );
    }

    #[test]
    fn decode_examples() {
        let g = decode_graph(r#"{"n":3,"edges":[[1,3]]}"#).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges(), &[e(1, 3)]);
        assert_eq!(decode_graph(r#"{"n":2,"edges":[[2,1]]}"#), Err(Error::NonNormalizedEdge(2, 1)));
        assert_eq!(decode_graph(r#"{"n":2,"edges":[[1,2],[1,2]]}"#), Err(Error::DuplicateEdge(1, 2)));
        assert!(matches!(decode_graph(r#"{"n":2,"edges":[[1,3]]}"#), Err(Error::EndpointOutOfRange { .. })));
        assert!(matches!(decode_graph(r#"{"n":2,"edges":[[1]]}"#), Err(Error::Malformed(_))));
        assert!(matches!(decode_graph("[]"), Err(Error::Malformed(_))));
    }

    #[test]
    fn decode_sorts_edges() {
        let g = decode_graph(r#"{"n":4,"edges":[[2,4],[1,3],[1,2]]}"#).unwrap();
        assert_eq!(g.to_json(), r#"{"n":4,"edges":[[1,2],[1,3],[2,4]]}"#);
    }

    #[test]
    fn wide_graph_bitset() {
        let g = OrderedGraph::from_fn(200, |u, v| v - u == 130 || u == 1);
        assert!(g.has_edge(1, 200));
        assert!(g.has_edge(70, 200));
        assert!(!g.has_edge(70, 199));
        assert_eq!(g.right_neighbors(2).collect::<Vec<_>>(), vec![132]);
        assert_eq!(g.edge_count(), 199 + 70 - 1);
    }

    #[test]
    fn interval_relabels() {
        let g = OrderedGraph::new(5, [(1, 2), (2, 4), (3, 5)]).unwrap();
        assert_eq!(g.interval(2, 4).edges(), &[e(1, 3)]);
    }
}
