//! Matchings made of pairwise separated islands, each island a crossing or a
//! nested matching. Islands occupy disjoint intervals, so everything reduces to
//! per-interval maxima composed along the vertex line.

#![allow(clippy::needless_range_loop)]

use super::matching::{longest_double_chain, nested_table, nested_witness, MaxFenwick};
use crate::graph::{Edge, Gap, OrderedGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Inner {
    Cross,
    Nest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Groups {
    Two,
    Any,
}

/// Maximum inner-pattern matching inside every interval `[l, r]`.
struct IntervalMaxima {
    inner: Inner,
    table: Vec<Vec<usize>>,
}

impl IntervalMaxima {
    fn new(g: &OrderedGraph, inner: Inner) -> Self {
        let table = match inner {
            Inner::Nest => nested_table(g),
            Inner::Cross => crossing_table(g),
        };
        IntervalMaxima { inner, table }
    }

    fn get(&self, l: usize, r: usize) -> usize {
        if l >= r {
            0
        } else {
            self.table[l][r]
        }
    }

    fn witness(&self, g: &OrderedGraph, l: usize, r: usize) -> Vec<Edge> {
        let size = self.get(l, r);
        if size == 0 {
            return Vec::new();
        }
        match self.inner {
            Inner::Nest => nested_witness(g, &self.table, l, r, size),
            Inner::Cross => {
                let mut best: Vec<Edge> = Vec::new();
                for gap in l..r {
                    let spanning: Vec<Edge> =
                        g.edges().iter().copied().filter(|e| l <= e.u() && e.v() <= r && e.spans(Gap(gap))).collect();
                    let chain = longest_double_chain(&spanning, g.n());
                    if chain.len() > best.len() || (chain.len() == best.len() && chain < best) {
                        best = chain;
                    }
                }
                debug_assert_eq!(best.len(), size);
                best
            }
        }
    }
}

/// `table[l][r]`: largest crossing matching with all edges inside `[l, r]`.
///
/// For a fixed left bound and gap, edges are added in order of right endpoint; a
/// chain ending at `e` extends chains ending at edges with smaller left and right
/// endpoints.
fn crossing_table(g: &OrderedGraph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut table = vec![vec![0usize; n + 2]; n + 2];
    // edges grouped by right endpoint
    let mut by_right: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for e in g.edges() {
        by_right[e.v()].push(e.u());
    }
    for l in 1..=n {
        for gap in l..n {
            let mut fw = MaxFenwick::new(n);
            let mut running = 0;
            for r in gap + 1..=n {
                let ends: Vec<(usize, usize)> = by_right[r]
                    .iter()
                    .filter(|&&u| l <= u && u <= gap)
                    .map(|&u| (u, 1 + fw.prefix_max(u - 1)))
                    .collect();
                for (u, len) in ends {
                    fw.raise(u, len);
                    running = running.max(len);
                }
                let cell = &mut table[l][r];
                *cell = (*cell).max(running);
            }
        }
    }
    table
}

/// Largest matching decomposing into pairwise separated islands of the inner pattern;
/// `Groups::Two` allows at most two islands. Returns the edges and the island spans.
pub(crate) fn max_split(g: &OrderedGraph, inner: Inner, groups: Groups) -> (Vec<Edge>, Vec<(usize, usize)>) {
    let n = g.n();
    if g.edge_count() == 0 {
        return (Vec::new(), Vec::new());
    }
    let maxima = IntervalMaxima::new(g, inner);
    let spans: Vec<(usize, usize)> = match groups {
        Groups::Two => {
            let mut best = (0, n);
            let mut best_val = maxima.get(1, n);
            for s in 1..n {
                let val = maxima.get(1, s) + maxima.get(s + 1, n);
                if val > best_val {
                    best_val = val;
                    best = (s, n);
                }
            }
            let (s, _) = best;
            if s == 0 {
                vec![(1, n)]
            } else {
                vec![(1, s), (s + 1, n)]
            }
        }
        Groups::Any => {
            // best[r]: optimum on [1, r]; choice[r] = Some(l) if an island ends at r
            let mut best = vec![0usize; n + 1];
            let mut choice: Vec<Option<usize>> = vec![None; n + 1];
            for r in 1..=n {
                best[r] = best[r - 1];
                for l in 1..r {
                    let val = best[l - 1] + maxima.get(l, r);
                    if val > best[r] {
                        best[r] = val;
                        choice[r] = Some(l);
                    }
                }
            }
            let mut spans = Vec::new();
            let mut r = n;
            while r > 0 {
                match choice[r] {
                    Some(l) => {
                        spans.push((l, r));
                        r = l - 1;
                    }
                    None => r -= 1,
                }
            }
            spans.reverse();
            spans
        }
    };
    let mut edges = Vec::new();
    let mut islands = Vec::new();
    for (l, r) in spans {
        let w = maxima.witness(g, l, r);
        if let (Some(lo), Some(hi)) = (w.iter().map(|e| e.u()).min(), w.iter().map(|e| e.v()).max()) {
            islands.push((lo, hi));
        }
        edges.extend(w);
    }
    edges.sort_unstable();
    (edges, islands)
}
