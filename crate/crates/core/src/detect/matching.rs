//! Exact maximum-matching detectors for the six pairwise patterns.

use crate::graph::{Edge, Gap, OrderedGraph};

/// Fenwick tree answering prefix maxima.
pub(crate) struct MaxFenwick {
    tree: Vec<usize>,
}

impl MaxFenwick {
    pub(crate) fn new(len: usize) -> Self {
        MaxFenwick { tree: vec![0; len + 1] }
    }

    /// Raises position `i` (1-based) to at least `val`.
    pub(crate) fn raise(&mut self, mut i: usize, val: usize) {
        while i < self.tree.len() {
            self.tree[i] = self.tree[i].max(val);
            i += i & i.wrapping_neg();
        }
    }

    /// Maximum over positions `1..=i`.
    pub(crate) fn prefix_max(&self, mut i: usize) -> usize {
        let mut best = 0;
        while i > 0 {
            best = best.max(self.tree[i]);
            i -= i & i.wrapping_neg();
        }
        best
    }
}

/// Greedy interval scheduling by right endpoint.
pub(crate) fn max_separated(g: &OrderedGraph, cap: usize) -> Vec<Edge> {
    let n = g.n();
    // best[x]: largest separated matching using only vertices >= x
    let mut best = vec![0usize; n + 2];
    for x in (1..=n).rev() {
        best[x] = best[x + 1];
        for v in g.right_neighbors(x) {
            best[x] = best[x].max(1 + best[v + 1]);
        }
    }
    let mut need = best.get(1).copied().unwrap_or(0).min(cap);
    let mut out = Vec::with_capacity(need);
    let mut pos = 1;
    while need > 0 {
        // the lexicographically first edge that still leaves room for the rest
        let e = (pos..=n)
            .flat_map(|u| g.right_neighbors(u).map(move |v| (u, v)))
            .find(|&(_, v)| 1 + best[v + 1] >= need)
            .expect("suffix table guarantees a continuation");
        out.push(Edge::between(e.0, e.1));
        pos = e.1 + 1;
        need -= 1;
    }
    out
}

/// `table[x][y]`: size of a largest nested matching inside `[x, y]`.
pub(crate) fn nested_table(g: &OrderedGraph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut f = vec![vec![0usize; n + 2]; n + 2];
    for len in 1..n {
        for x in 1..=n - len {
            let y = x + len;
            let mut best = f[x + 1][y].max(f[x][y - 1]);
            if g.has_edge(x, y) {
                let inner = if y - x >= 2 { f[x + 1][y - 1] } else { 0 };
                best = best.max(inner + 1);
            }
            f[x][y] = best;
        }
    }
    f
}

/// Lexicographically smallest nested matching of size `target` inside `[lo, hi]`.
pub(crate) fn nested_witness(g: &OrderedGraph, f: &[Vec<usize>], lo: usize, hi: usize, target: usize) -> Vec<Edge> {
    let mut out = Vec::new();
    let (mut lo, mut hi) = (lo, hi);
    let inner = |x: usize, y: usize| if y >= x + 2 { f[x + 1][y - 1] } else { 0 };
    while out.len() < target {
        let need = target - out.len();
        let e = g
            .edges()
            .iter()
            .copied()
            .find(|e| lo <= e.u() && e.v() <= hi && 1 + inner(e.u(), e.v()) >= need)
            .expect("nested table is consistent");
        out.push(e);
        lo = e.u() + 1;
        hi = e.v() - 1;
    }
    out
}

pub(crate) fn max_nested(g: &OrderedGraph, cap: usize) -> Vec<Edge> {
    if g.n() < 2 {
        return Vec::new();
    }
    let f = nested_table(g);
    let best = f[1][g.n()].min(cap);
    nested_witness(g, &f, 1, g.n(), best)
}

/// Longest chain increasing in both endpoints among `edges` (sorted lexicographically),
/// returned as the lexicographically smallest such chain.
pub(crate) fn longest_double_chain(edges: &[Edge], n: usize) -> Vec<Edge> {
    if edges.is_empty() {
        return Vec::new();
    }
    // starting[i]: longest chain whose first edge is edges[i]
    let mut starting = vec![0usize; edges.len()];
    let mut fw = MaxFenwick::new(n + 1);
    let mut i = edges.len();
    while i > 0 {
        // group of equal left endpoints, processed together so u stays strict
        let u = edges[i - 1].u();
        let mut j = i;
        while j > 0 && edges[j - 1].u() == u {
            j -= 1;
        }
        for t in j..i {
            // positions store reversed right endpoints so "v' > v" is a prefix
            starting[t] = 1 + fw.prefix_max(n - edges[t].v());
        }
        for t in j..i {
            fw.raise(n + 1 - edges[t].v(), starting[t]);
        }
        i = j;
    }
    let best = *starting.iter().max().unwrap();
    let mut out: Vec<Edge> = Vec::with_capacity(best);
    for (t, &e) in edges.iter().enumerate() {
        let need = best - out.len();
        if need == 0 {
            break;
        }
        let fits = out.last().is_none_or(|p| p.u() < e.u() && p.v() < e.v());
        if fits && starting[t] >= need {
            out.push(e);
        }
    }
    out
}

/// Largest crossing matching: every crossing family spans a common gap, and within a
/// gap crossing means increasing in both endpoints.
pub(crate) fn max_crossing(g: &OrderedGraph, cap: usize) -> Vec<Edge> {
    let mut best: Vec<Edge> = Vec::new();
    for gap in 1..g.n() {
        let spanning: Vec<Edge> = g.edges().iter().copied().filter(|e| e.spans(Gap(gap))).collect();
        if spanning.len() < best.len().max(1) {
            continue;
        }
        let chain = longest_double_chain(&spanning, g.n());
        if chain.len() > best.len() || (chain.len() == best.len() && chain < best) {
            best = chain;
        }
        if best.len() >= cap {
            break;
        }
    }
    best.truncate(cap);
    best
}

/// Largest non-separated matching, returned with the gap all its edges span.
pub(crate) fn max_non_separated(g: &OrderedGraph, cap: usize) -> (Vec<Edge>, Option<Gap>) {
    let mut best: Vec<Edge> = Vec::new();
    let mut best_gap = None;
    for gap in 1..g.n() {
        let limit = gap.min(g.n() - gap);
        if limit <= best.len() {
            continue;
        }
        let m = gap_bipartite_matching(g, gap);
        if m.len() > best.len() {
            best = m;
            best_gap = Some(Gap(gap));
            if best.len() >= cap {
                break;
            }
        }
    }
    best.truncate(cap);
    (best, best_gap)
}

/// Maximum matching between `{u <= gap}` and `{v > gap}` using spanning edges
/// (augmenting paths).
fn gap_bipartite_matching(g: &OrderedGraph, gap: usize) -> Vec<Edge> {
    let n = g.n();
    let adj: Vec<Vec<usize>> = (0..=gap)
        .map(|u| if u == 0 { Vec::new() } else { g.right_neighbors(u).filter(|&v| v > gap).collect() })
        .collect();
    let mut mate_of_right = vec![0usize; n + 1];

    fn augment(u: usize, adj: &[Vec<usize>], mate: &mut [usize], seen: &mut [bool]) -> bool {
        for &v in &adj[u] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            if mate[v] == 0 || augment(mate[v], adj, mate, seen) {
                mate[v] = u;
                return true;
            }
        }
        false
    }

    for u in 1..=gap {
        let mut seen = vec![false; n + 1];
        augment(u, &adj, &mut mate_of_right, &mut seen);
    }
    let mut out: Vec<Edge> =
        (gap + 1..=n).filter(|&v| mate_of_right[v] != 0).map(|v| Edge::between(mate_of_right[v], v)).collect();
    out.sort_unstable();
    out
}

/// Largest non-nested matching. Sorted by left endpoint such a matching has strictly
/// increasing right endpoints, and the only extra constraint is that no right
/// endpoint is reused as a later left endpoint, so a bounded DFS is used.
pub(crate) fn max_non_nested(g: &OrderedGraph, cap: usize) -> Vec<Edge> {
    let edges = g.edges();
    let m = edges.len();
    if m == 0 || cap == 0 {
        return Vec::new();
    }
    // chain[i]: longest doubly increasing chain starting at edges[i], ignoring the
    // shared-vertex constraint; an admissible bound for the DFS
    let mut chain = vec![1usize; m];
    for i in (0..m).rev() {
        for j in i + 1..m {
            if edges[j].u() > edges[i].u() && edges[j].v() > edges[i].v() {
                chain[i] = chain[i].max(chain[j] + 1);
            }
        }
    }

    struct Dfs<'a> {
        edges: &'a [Edge],
        chain: &'a [usize],
        cap: usize,
        used: Vec<bool>,
        stack: Vec<Edge>,
        best: Vec<Edge>,
    }

    impl Dfs<'_> {
        fn run(&mut self, from: usize) {
            if self.stack.len() > self.best.len() {
                self.best = self.stack.clone();
            }
            if self.best.len() >= self.cap {
                return;
            }
            for i in from..self.edges.len() {
                let e = self.edges[i];
                if self.stack.len() + self.chain[i] <= self.best.len() {
                    continue;
                }
                if let Some(last) = self.stack.last() {
                    if e.u() <= last.u() || e.v() <= last.v() {
                        continue;
                    }
                }
                if self.used[e.u()] || self.used[e.v()] {
                    continue;
                }
                self.used[e.u()] = true;
                self.used[e.v()] = true;
                self.stack.push(e);
                self.run(i + 1);
                self.stack.pop();
                self.used[e.u()] = false;
                self.used[e.v()] = false;
                if self.best.len() >= self.cap {
                    return;
                }
            }
        }
    }

    let mut dfs = Dfs { edges, chain: &chain, cap, used: vec![false; g.n() + 1], stack: Vec::new(), best: Vec::new() };
    dfs.run(0);
    dfs.best
}

/// Largest non-crossing matching by interval DP.
pub(crate) fn max_non_crossing(g: &OrderedGraph, cap: usize) -> Vec<Edge> {
    let n = g.n();
    if n < 2 {
        return Vec::new();
    }
    // f[i][j] for 1 <= i, j <= n+1; empty when i > j
    let mut f = vec![vec![0usize; n + 2]; n + 2];
    let get = |f: &Vec<Vec<usize>>, i: usize, j: usize| if i > j { 0 } else { f[i][j] };
    for i in (1..=n).rev() {
        let right: Vec<usize> = g.right_neighbors(i).collect();
        for j in i + 1..=n {
            let mut best = get(&f, i + 1, j);
            for &w in right.iter().take_while(|&&w| w <= j) {
                best = best.max(1 + get(&f, i + 1, w - 1) + get(&f, w + 1, j));
            }
            f[i][j] = best;
        }
    }
    let mut out = Vec::new();
    let mut todo = vec![(1usize, n)];
    while let Some((i, j)) = todo.pop() {
        if i >= j || f[i][j] == 0 {
            continue;
        }
        if f[i][j] == get(&f, i + 1, j) {
            todo.push((i + 1, j));
            continue;
        }
        let w = g
            .right_neighbors(i)
            .take_while(|&w| w <= j)
            .find(|&w| 1 + get(&f, i + 1, w - 1) + get(&f, w + 1, j) == f[i][j])
            .expect("non-crossing table is consistent");
        out.push(Edge::between(i, w));
        todo.push((i + 1, w - 1));
        todo.push((w + 1, j));
    }
    out.sort_unstable();
    out.truncate(cap);
    out
}
