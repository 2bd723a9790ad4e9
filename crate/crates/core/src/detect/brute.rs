//! Exhaustive reference detectors. They test definitions directly through
//! `classify_pair` and share no code with the fast detectors.

use super::path::alt_nested;
use crate::error::{Error, Result};
use crate::graph::{classify_pair, Edge, OrderedGraph, PairRelation};
use crate::pattern::PatternKind;

pub const DEFAULT_BRUTE_BUDGET: u64 = 50_000_000;

struct Counter {
    nodes: u64,
    budget: u64,
}

impl Counter {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            Err(Error::BudgetExceeded(self.budget))
        } else {
            Ok(())
        }
    }
}

/// Whether `set` (pairwise vertex-disjoint edges) is a matching of `kind`.
pub fn is_pattern_matching(kind: PatternKind, set: &[Edge]) -> bool {
    let rel = |a: Edge, b: Edge| classify_pair(a, b);
    for (i, &a) in set.iter().enumerate() {
        for &b in &set[i + 1..] {
            if rel(a, b) == PairRelation::Shared {
                return false;
            }
        }
    }
    match kind {
        PatternKind::AltPath => false,
        k if k.is_pairwise() => {
            set.iter().enumerate().all(|(i, &a)| set[i + 1..].iter().all(|&b| k.allows(rel(a, b)) == Some(true)))
        }
        PatternKind::Snn => {
            let ok_pairs = set.iter().enumerate().all(|(i, &a)| {
                set[i + 1..].iter().all(|&b| matches!(rel(a, b), PairRelation::Crossing | PairRelation::Separated))
            });
            // crossing must be an equivalence relation
            ok_pairs
                && set.iter().all(|&a| {
                    set.iter().all(|&b| {
                        set.iter().all(|&c| {
                            a == b
                                || b == c
                                || a == c
                                || !(rel(a, b) == PairRelation::Crossing && rel(b, c) == PairRelation::Crossing)
                                || rel(a, c) == PairRelation::Crossing
                        })
                    })
                })
        }
        PatternKind::MStar | PatternKind::MStarStar => {
            let inner = if kind == PatternKind::MStar { PairRelation::Crossing } else { PairRelation::Nested };
            // try every assignment of edges to the two groups
            let s = set.len();
            (0u64..1 << s).any(|mask| {
                (0..s).all(|i| {
                    (i + 1..s).all(|j| {
                        let same = (mask >> i & 1) == (mask >> j & 1);
                        let r = rel(set[i], set[j]);
                        if same {
                            r == inner
                        } else {
                            r == PairRelation::Separated
                        }
                    })
                })
            })
        }
        _ => unreachable!(),
    }
}

/// Exact maximum by exhaustive enumeration: matchings for the matching kinds (DFS
/// over edges in lexicographic order), paths for `AltPath` (extension at the tail).
/// Fails with `BudgetExceeded` rather than answering from a partial search.
pub fn brute_force_max(g: &OrderedGraph, kind: PatternKind, budget: u64) -> Result<usize> {
    let mut counter = Counter { nodes: 0, budget };
    if kind == PatternKind::AltPath {
        return brute_alt_path(g, &mut counter);
    }
    let edges = g.edges();
    let mut stack = Vec::new();
    let mut best = 0;
    fn dfs(
        edges: &[Edge],
        from: usize,
        kind: PatternKind,
        stack: &mut Vec<Edge>,
        best: &mut usize,
        counter: &mut Counter,
    ) -> Result<()> {
        counter.tick()?;
        *best = (*best).max(stack.len());
        for i in from..edges.len() {
            stack.push(edges[i]);
            if is_pattern_matching(kind, stack) {
                dfs(edges, i + 1, kind, stack, best, counter)?;
            }
            stack.pop();
        }
        Ok(())
    }
    dfs(edges, 0, kind, &mut stack, &mut best, &mut counter)?;
    Ok(best)
}

fn brute_alt_path(g: &OrderedGraph, counter: &mut Counter) -> Result<usize> {
    if g.n() == 0 {
        return Ok(0);
    }
    fn extend(
        g: &OrderedGraph,
        path: &mut Vec<usize>,
        edges: &mut Vec<Edge>,
        best: &mut usize,
        counter: &mut Counter,
    ) -> Result<()> {
        counter.tick()?;
        *best = (*best).max(path.len());
        let last = *path.last().unwrap();
        for w in 1..=g.n() {
            if path.contains(&w) || !g.has_edge(last, w) {
                continue;
            }
            let e = Edge::between(last, w);
            if edges.iter().all(|&f| alt_nested(e, f)) {
                path.push(w);
                edges.push(e);
                extend(g, path, edges, best, counter)?;
                edges.pop();
                path.pop();
            }
        }
        Ok(())
    }
    let mut best = 1;
    for start in 1..=g.n() {
        extend(g, &mut vec![start], &mut Vec::new(), &mut best, counter)?;
    }
    Ok(best)
}
