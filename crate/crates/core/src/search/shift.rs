//! Interval-closure shifting and the short missing-edge certificate for
//! non-separated extremal graphs.

#![allow(clippy::needless_range_loop)]

use crate::error::{Error, Result};
use crate::graph::OrderedGraph;

/// True when every edge's sub-intervals are edges too: `xy ∈ E` and
/// `x <= a < b <= y` imply `ab ∈ E`.
pub fn is_shift_closed(g: &OrderedGraph) -> bool {
    g.edges().iter().all(|e| {
        let (x, y) = (e.u(), e.v());
        y - x < 2 || (g.has_edge(x + 1, y) && g.has_edge(x, y - 1))
    })
}

/// Longest missing edge lying under a present edge, ties to the lexicographically
/// smallest pair.
fn widest_violation(adj: &[Vec<bool>], n: usize) -> Option<(usize, usize)> {
    for len in (1..n).rev() {
        for a in 1..=n - len {
            let b = a + len;
            if adj[a][b] {
                continue;
            }
            // with maximal length, a violation is always covered by a one-longer edge
            let left = a > 1 && adj[a - 1][b];
            let right = b < n && adj[a][b + 1];
            if left || right {
                return Some((a, b));
            }
        }
    }
    None
}

/// Repeats the edge-shortening pass until the graph is interval-closed. Each pass
/// keeps the edge count and strictly lowers the total edge length.
pub fn shift_compress(g: &OrderedGraph) -> OrderedGraph {
    let n = g.n();
    let mut adj = vec![vec![false; n + 2]; n + 2];
    for e in g.edges() {
        adj[e.u()][e.v()] = true;
    }
    while let Some((a, b)) = widest_violation(&adj, n) {
        if b < n && adj[a][b + 1] {
            // replace v(b+1) by vb wherever vb is missing
            for v in 1..b {
                if !adj[v][b] && adj[v][b + 1] {
                    adj[v][b + 1] = false;
                    adj[v][b] = true;
                }
            }
        } else {
            for v in a + 1..=n {
                if !adj[a][v] && adj[a - 1][v] {
                    adj[a - 1][v] = false;
                    adj[a][v] = true;
                }
            }
        }
    }
    OrderedGraph::from_fn(n, |x, y| adj[x][y])
}

/// The smallest `x` with `x(x+k)` missing and `G[x+1, x+k-1]` complete.
pub fn missing_edge_certificate(g: &OrderedGraph, k: usize) -> Result<Option<usize>> {
    let n = g.n();
    if k == 0 || n < 2 * k {
        return Err(Error::NotApplicable(format!("certificate needs n >= 2k (n={n}, k={k})")));
    }
    Ok((1..=n - k).find(|&x| !g.has_edge(x, x + k) && (x + 1..x + k).all(|a| (a + 1..x + k).all(|b| g.has_edge(a, b)))))
}
