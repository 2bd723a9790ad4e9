//! Alternating paths: every two edges, incident pairs included, are nested.
//!
//! Read from its outermost edge, such a path is a converging zigzag: each new
//! vertex lies strictly between the previous two.

#![allow(clippy::needless_range_loop)]

use crate::graph::{Edge, OrderedGraph};

/// Longest alternating path, as `(vertex count, vertices in converging order)`.
pub fn longest_alternating_path(g: &OrderedGraph) -> (usize, Vec<usize>) {
    let n = g.n();
    if n == 0 {
        return (0, Vec::new());
    }
    if g.edge_count() == 0 {
        return (1, vec![1]);
    }
    // len[a][b]: vertices on the longest zigzag starting a, b (edge ab present)
    let mut len = vec![vec![0u32; n + 1]; n + 1];
    let mut next = vec![vec![0usize; n + 1]; n + 1];
    for d in 1..n {
        for lo in 1..=n - d {
            let hi = lo + d;
            if !g.has_edge(lo, hi) {
                continue;
            }
            for (a, b) in [(lo, hi), (hi, lo)] {
                let mut best = 2;
                let mut pick = 0;
                for w in lo + 1..hi {
                    if g.has_edge(b, w) && len[b][w] + 1 > best {
                        best = len[b][w] + 1;
                        pick = w;
                    }
                }
                len[a][b] = best;
                next[a][b] = pick;
            }
        }
    }
    let mut best = (0u32, 0usize, 0usize);
    for a in 1..=n {
        for b in 1..=n {
            if len[a][b] > best.0 {
                best = (len[a][b], a, b);
            }
        }
    }
    let (t, mut a, mut b) = best;
    let mut path = vec![a, b];
    while next[a][b] != 0 {
        let w = next[a][b];
        path.push(w);
        a = b;
        b = w;
    }
    debug_assert_eq!(path.len(), t as usize);
    (t as usize, path)
}

/// Nestedness for alternating paths: disjoint edges must be nested; edges sharing a
/// vertex must both have it as their left endpoint or both as their right endpoint.
pub fn alt_nested(a: Edge, b: Edge) -> bool {
    if a == b {
        return false;
    }
    if a.shares_vertex(b) {
        a.u() == b.u() || a.v() == b.v()
    } else {
        a.covers(b) || b.covers(a)
    }
}

/// True if consecutive vertices are adjacent, vertices are distinct and every pair
/// of path edges is nested.
pub fn verify_alternating_path(g: &OrderedGraph, path: &[usize]) -> bool {
    let mut seen = vec![false; g.n() + 1];
    for &v in path {
        if v == 0 || v > g.n() || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    let edges: Vec<Edge> = path.windows(2).map(|w| Edge::between(w[0], w[1])).collect();
    if edges.iter().any(|&e| !g.contains(e)) {
        return false;
    }
    edges.iter().enumerate().all(|(i, &e)| edges[i + 1..].iter().all(|&f| alt_nested(e, f)))
}

/// The edge-deletion sequence `G_0, ..., G_rounds`: in round `i` every vertex `v`
/// picks a neighbour `v⁺` (the largest right neighbour when `i` is odd, the smallest
/// left neighbour when `i` is even) and all picked edges are deleted at once.
pub fn alt_peel(g: &OrderedGraph, rounds: usize) -> Vec<OrderedGraph> {
    let mut seq = Vec::with_capacity(rounds + 1);
    seq.push(g.clone());
    for i in 0..rounds {
        let cur = seq.last().unwrap();
        let picked: Vec<Edge> = (1..=cur.n())
            .filter_map(|v| {
                let v_plus = if i % 2 == 1 { cur.right_neighbors(v).last() } else { cur.left_neighbors(v).next() };
                v_plus.map(|w| Edge::between(v, w))
            })
            .collect();
        let next = OrderedGraph::from_edges(cur.n(), cur.edges().iter().copied().filter(|e| !picked.contains(e)));
        seq.push(next);
    }
    seq
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_has_full_zigzag() {
        let (t, path) = longest_alternating_path(&OrderedGraph::complete(6));
        assert_eq!(t, 6);
        assert_eq!(path, vec![1, 6, 2, 5, 3, 4]);
        assert!(verify_alternating_path(&OrderedGraph::complete(6), &path));
    }

    #[test]
    fn small_cases() {
        assert_eq!(longest_alternating_path(&OrderedGraph::empty(0)).0, 0);
        assert_eq!(longest_alternating_path(&OrderedGraph::empty(4)).0, 1);
        let single = OrderedGraph::new(4, [(2, 3)]).unwrap();
        assert_eq!(longest_alternating_path(&single), (2, vec![2, 3]));
    }

    #[test]
    fn short_edges_block_length_four() {
        let h = OrderedGraph::from_fn(10, |x, y| y - x <= 2);
        let (t, path) = longest_alternating_path(&h);
        assert_eq!(t, 3);
        assert!(verify_alternating_path(&h, &path));
    }

    #[test]
    fn incident_nesting_rule() {
        assert!(alt_nested(Edge::between(1, 4), Edge::between(2, 4)));
        assert!(alt_nested(Edge::between(1, 4), Edge::between(1, 3)));
        assert!(!alt_nested(Edge::between(1, 3), Edge::between(3, 4)));
        assert!(!alt_nested(Edge::between(1, 3), Edge::between(2, 4)));
    }

    #[test]
    fn peel_complete_four() {
        let seq = alt_peel(&OrderedGraph::complete(4), 2);
        assert_eq!(seq.len(), 3);
        assert_eq!(seq[1], OrderedGraph::new(4, [(2, 3), (2, 4), (3, 4)]).unwrap());
        assert_eq!(seq[2], OrderedGraph::new(4, [(2, 3)]).unwrap());
        // e(G_1) >= e(G_0) - (n - 0 - 1)
        assert!(seq[1].edge_count() >= 6 - 3);
    }

    #[test]
    fn peel_empty_stays_empty() {
        for g in alt_peel(&OrderedGraph::empty(5), 4) {
            assert_eq!(g.edge_count(), 0);
        }
    }
}
