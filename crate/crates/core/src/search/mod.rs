//! Exact ordered Turán numbers by branch and bound.
//!
//! Graphs on `[n]` are bitmasks over the edges in lexicographic order, so `n` is
//! limited to 11. Edges are decided in that order, include branch first. After
//! every inclusion each undecided edge that would complete a forbidden pattern is
//! marked blocked, so the bound `|S| + #(undecided, unblocked)` is tight enough to
//! prune most of the tree.
//!
//! The search runs twice. The first pass shares its incumbent across workers and
//! only establishes the value. The second pass re-walks the tree with that value as
//! a fixed threshold and no shared state; it collects every optimum, and its node
//! count does not depend on scheduling.

mod shift;

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;

use rayon::prelude::*;
use serde::Serialize;

pub use shift::{is_shift_closed, missing_edge_certificate, shift_compress};

use crate::construct::{extremal_construction, nonnested_construction, Family, NonNestedVariant};
use crate::detect::contains_pattern;
use crate::error::{Error, Result};
use crate::formulas::extremal_value;
use crate::graph::{classify_pair, Edge, OrderedGraph, PairRelation};
use crate::pattern::{PatternKind, PatternSpec};

/// Largest `n` whose edge set fits a 64-bit mask.
pub const HARD_MAX_N: usize = 11;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    /// Node budget shared by all workers and both passes.
    pub budget: u64,
    pub workers: usize,
    /// Restrict to interval-closed graphs; sound only for a single non-separated pattern.
    pub use_shift_pruning: bool,
    /// A lower bound known to be attained; the search falls back if it is not.
    pub seed_lower_bound: Option<u64>,
    pub max_n: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: 2_000_000_000,
            workers: std::thread::available_parallelism().map_or(1, |p| p.get()),
            use_shift_pruning: false,
            seed_lower_bound: None,
            max_n: 9,
        }
    }
}

/// The options that influence the result. The worker count is left out on purpose
/// so that reports compare equal across thread counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OptionsEcho {
    pub budget: u64,
    pub use_shift_pruning: bool,
    pub seed_lower_bound: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub n: usize,
    pub forbidden: Vec<PatternSpec>,
    pub value: usize,
    /// False when the budget ran out: `value` is then only a lower bound.
    pub exact: bool,
    /// All optima up to reversal, each the smaller of itself and its mirror image.
    pub witnesses: Vec<OrderedGraph>,
    pub nodes_explored: u64,
    pub options: OptionsEcho,
}

impl SearchReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

enum Check {
    /// Pattern through an edge = clique of size `k - 1` among its compatible edges.
    Pairwise {
        compat: Vec<u64>,
        need: usize,
    },
    Generic(PatternSpec),
}

pub(crate) struct Space {
    n: usize,
    pub(crate) edges: Vec<Edge>,
    checks: Vec<Check>,
    /// All sub-interval edges of each edge (excluding itself).
    sub: Vec<u64>,
    shift: bool,
}

fn has_clique(cand: u64, need: usize, compat: &[u64]) -> bool {
    if need == 0 {
        return true;
    }
    let mut rest = cand;
    while rest.count_ones() as usize >= need {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if has_clique(rest & compat[v], need - 1, compat) {
            return true;
        }
    }
    false
}

impl Space {
    pub(crate) fn new(n: usize, forbidden: &[PatternSpec], shift: bool) -> Self {
        let edges: Vec<Edge> = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| Edge::between(u, v))).collect();
        let m = edges.len();
        let checks = forbidden
            .iter()
            .map(|&spec| {
                if spec.kind.is_pairwise() {
                    let compat = (0..m)
                        .map(|i| {
                            (0..m).fold(0u64, |acc, j| {
                                let r = classify_pair(edges[i], edges[j]);
                                let ok = i != j && r != PairRelation::Shared && spec.kind.allows(r) == Some(true);
                                acc | (u64::from(ok) << j)
                            })
                        })
                        .collect();
                    Check::Pairwise { compat, need: spec.size - 1 }
                } else {
                    Check::Generic(spec)
                }
            })
            .collect();
        let sub = (0..m)
            .map(|i| {
                (0..m).fold(0u64, |acc, j| {
                    let inside = i != j && edges[i].covers(edges[j]);
                    acc | (u64::from(inside) << j)
                })
            })
            .collect();
        Space { n, edges, checks, sub, shift }
    }

    pub(crate) fn m(&self) -> usize {
        self.edges.len()
    }

    pub(crate) fn graph(&self, s: u64) -> OrderedGraph {
        OrderedGraph::from_edges(self.n, (0..self.m()).filter(|&i| s >> i & 1 == 1).map(|i| self.edges[i]))
    }

    fn mask(&self, g: &OrderedGraph) -> u64 {
        (0..self.m()).fold(0, |acc, i| acc | (u64::from(g.contains(self.edges[i])) << i))
    }

    /// Whether adding edge `e` to the free graph `s` creates a forbidden pattern.
    pub(crate) fn creates(&self, s: u64, e: usize) -> bool {
        self.checks.iter().any(|c| match c {
            Check::Pairwise { compat, need } => has_clique(s & compat[e], *need, compat),
            Check::Generic(spec) => contains_pattern(&self.graph(s | 1 << e), *spec),
        })
    }

    fn is_free(&self, s: u64) -> bool {
        let mut acc = 0u64;
        (0..self.m()).filter(|&i| s >> i & 1 == 1).all(|i| {
            let ok = !self.creates(acc, i);
            acc |= 1 << i;
            ok
        })
    }

    fn root(&self) -> State {
        let blocked = (0..self.m()).fold(0u64, |acc, f| acc | (u64::from(self.creates(0, f)) << f));
        State { next: 0, s: 0, blocked, required: 0 }
    }

    fn full(&self) -> u64 {
        if self.m() == 64 {
            u64::MAX
        } else {
            (1u64 << self.m()) - 1
        }
    }
}

/// A search node: edges below `next` are decided; `blocked` holds excluded edges
/// and undecided edges that would complete a pattern.
#[derive(Debug, Clone, Copy)]
struct State {
    next: usize,
    s: u64,
    blocked: u64,
    required: u64,
}

enum Step {
    Leaf(u64),
    Branch { include: Option<State>, exclude: Option<State> },
    Dead,
}

impl State {
    fn available(&self, space: &Space) -> u64 {
        let undecided = space.full() & !((1u64 << self.next) - 1);
        undecided & !self.blocked
    }

    fn bound(&self, space: &Space) -> usize {
        (self.s.count_ones() + self.available(space).count_ones()) as usize
    }

    fn step(&self, space: &Space) -> Step {
        if self.required & self.blocked != 0 {
            return Step::Dead;
        }
        let avail = self.available(space);
        if avail == 0 {
            return Step::Leaf(self.s);
        }
        let e = avail.trailing_zeros() as usize;
        let s = self.s | 1 << e;
        let mut blocked = self.blocked;
        let mut rest = avail & !(1 << e);
        while rest != 0 {
            let f = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if space.creates(s, f) {
                blocked |= 1 << f;
            }
        }
        let required = if space.shift { self.required | space.sub[e] } else { self.required };
        let include = Some(State { next: e + 1, s, blocked, required });
        let exclude = (self.required >> e & 1 == 0).then_some(State {
            next: e + 1,
            s: self.s,
            blocked: self.blocked | 1 << e,
            required: self.required,
        });
        Step::Branch { include, exclude }
    }
}

struct Budget {
    used: AtomicU64,
    limit: u64,
    exhausted: AtomicBool,
}

impl Budget {
    fn tick(&self, local: &mut u64) -> bool {
        *local += 1;
        if local.is_multiple_of(1024) {
            let total = self.used.fetch_add(1024, Ordering::Relaxed) + 1024;
            if total > self.limit {
                self.exhausted.store(true, Ordering::Relaxed);
            }
        }
        !self.exhausted.load(Ordering::Relaxed)
    }

    fn flush(&self, local: u64) {
        let total = self.used.fetch_add(local % 1024, Ordering::Relaxed) + local % 1024;
        if total > self.limit {
            self.exhausted.store(true, Ordering::Relaxed);
        }
    }
}

/// Expands the tree down to `depth` decided edges, deterministically.
fn split_tasks(space: &Space, depth: usize, keep: impl Fn(usize) -> bool, nodes: &mut u64) -> Vec<State> {
    let mut out = Vec::new();
    let mut stack = vec![space.root()];
    while let Some(st) = stack.pop() {
        *nodes += 1;
        if !keep(st.bound(space)) {
            continue;
        }
        if st.next >= depth {
            out.push(st);
            continue;
        }
        match st.step(space) {
            Step::Dead => {}
            Step::Leaf(_) => out.push(st),
            Step::Branch { include, exclude } => {
                // exclude pushed first so that include is expanded first
                stack.extend(exclude);
                stack.extend(include);
            }
        }
    }
    out
}

struct Incumbent {
    best: AtomicUsize,
    graph: Mutex<Option<u64>>,
    stop: AtomicBool,
    cap: usize,
}

impl Incumbent {
    fn offer(&self, s: u64) {
        let size = s.count_ones() as usize;
        if size > self.best.load(Ordering::Relaxed) {
            let mut g = self.graph.lock().unwrap();
            if size > self.best.load(Ordering::Relaxed) {
                self.best.store(size, Ordering::Relaxed);
                *g = Some(s);
                if size >= self.cap {
                    self.stop.store(true, Ordering::Relaxed);
                }
            }
        }
    }
}

fn improve(space: &Space, st: State, inc: &Incumbent, budget: &Budget, local: &mut u64) {
    if !budget.tick(local) || inc.stop.load(Ordering::Relaxed) {
        return;
    }
    if st.bound(space) <= inc.best.load(Ordering::Relaxed) {
        return;
    }
    if st.required & st.blocked == 0 {
        inc.offer(st.s);
    }
    match st.step(space) {
        Step::Dead => {}
        Step::Leaf(s) => inc.offer(s),
        Step::Branch { include, exclude } => {
            for child in include.into_iter().chain(exclude) {
                improve(space, child, inc, budget, local);
            }
        }
    }
}

fn collect(space: &Space, st: State, value: usize, budget: &Budget, nodes: &mut u64, out: &mut Vec<u64>) {
    if !budget.tick(nodes) {
        return;
    }
    if st.bound(space) < value {
        return;
    }
    match st.step(space) {
        Step::Dead => {}
        Step::Leaf(s) => {
            if s.count_ones() as usize >= value {
                out.push(s);
            }
        }
        Step::Branch { include, exclude } => {
            for child in include.into_iter().chain(exclude) {
                collect(space, child, value, budget, nodes, out);
            }
        }
    }
}

/// A free graph from the matching construction, when one applies.
fn seed_graph(n: usize, forbidden: &[PatternSpec]) -> Option<OrderedGraph> {
    let k = forbidden.first()?.size;
    if forbidden.iter().any(|s| s.size != k && s.kind != PatternKind::AltPath) {
        return None;
    }
    let kinds: Vec<PatternKind> = forbidden.iter().map(|s| s.kind).collect();
    use PatternKind::*;
    let family = match kinds.as_slice() {
        [Sep] => Family::Separated,
        [Nest] => Family::NestSep,
        [NonSep] => Family::NonSeparated,
        [Sep, Cross] => Family::CrossSep,
        [Sep, Nest] => Family::NestSep,
        [Sep, Nest, Cross] => Family::NestCrossSep,
        [AltPath] if k % 2 == 0 => return extremal_construction(Family::NestedAlt, n, k / 2).ok(),
        [NonNest] => {
            return nonnested_construction(&NonNestedVariant::HubLong { hubs: None }, n, k).ok();
        }
        _ => return None,
    };
    extremal_construction(family, n, k).ok()
}

fn greedy(space: &Space) -> u64 {
    let mut s = 0u64;
    for e in 0..space.m() {
        if !space.creates(s, e) {
            s |= 1 << e;
        }
    }
    s
}

fn canonical(g: OrderedGraph) -> OrderedGraph {
    let r = g.reversed();
    if r < g {
        r
    } else {
        g
    }
}

/// Exact `ex_<(n, forbidden)` with every extremal graph up to reversal.
pub fn exact_turan(n: usize, forbidden: &[PatternSpec], opts: &SearchOptions) -> Result<SearchReport> {
    let mut forb = forbidden.to_vec();
    forb.sort();
    forb.dedup();
    if forb.is_empty() {
        return Err(Error::Invalid("forbidden set is empty".into()));
    }
    if opts.budget == 0 {
        return Err(Error::Invalid("budget must be positive".into()));
    }
    let ceiling = opts.max_n.min(HARD_MAX_N);
    if n > ceiling {
        return Err(Error::OutOfRange(format!("n={n} exceeds the search ceiling {ceiling}")));
    }
    if opts.use_shift_pruning && !(forb.len() == 1 && forb[0].kind == PatternKind::NonSep) {
        return Err(Error::Unsupported(
            "shift pruning is only sound when forbidding a single non-separated matching".into(),
        ));
    }
    let space = Space::new(n, &forb, opts.use_shift_pruning);
    let budget = Budget { used: AtomicU64::new(0), limit: opts.budget, exhausted: AtomicBool::new(false) };
    let echo = OptionsEcho {
        budget: opts.budget,
        use_shift_pruning: opts.use_shift_pruning,
        seed_lower_bound: opts.seed_lower_bound,
    };

    // incumbent: a verified free graph
    let mut seed = greedy(&space);
    if let Some(g) = seed_graph(n, &forb) {
        let s = space.mask(&g);
        let closed_ok = !opts.use_shift_pruning || is_shift_closed(&g);
        if s.count_ones() > seed.count_ones() && closed_ok && space.is_free(s) {
            seed = s;
        }
    }
    if opts.use_shift_pruning && !is_shift_closed(&space.graph(seed)) {
        seed = 0;
    }
    let cap = extremal_value(&forb, n as u64).ok().and_then(|v| v.proven_upper()).map_or(usize::MAX, |u| u as usize);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers.max(1))
        .build()
        .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?;
    let depth = space.m().min(14);

    let run_improve = |start: usize| -> (usize, Option<u64>) {
        let inc = Incumbent {
            best: AtomicUsize::new(start),
            graph: Mutex::new(None),
            stop: AtomicBool::new(start >= cap),
            cap,
        };
        if !inc.stop.load(Ordering::Relaxed) {
            let mut nodes = 0;
            let tasks = split_tasks(&space, depth, |b| b > start, &mut nodes);
            budget.flush(nodes);
            pool.install(|| {
                tasks.par_iter().for_each(|&st| {
                    let mut local = 0;
                    improve(&space, st, &inc, &budget, &mut local);
                    budget.flush(local);
                });
            });
        }
        let g = *inc.graph.lock().unwrap();
        (inc.best.load(Ordering::Relaxed), g)
    };

    let seed_size = seed.count_ones() as usize;
    let mut start = seed_size;
    if let Some(lb) = opts.seed_lower_bound {
        start = start.max((lb as usize).saturating_sub(1));
    }
    let (mut value, mut found) = run_improve(start);
    if found.is_none() && start > seed_size && !budget.exhausted.load(Ordering::Relaxed) {
        // the supplied lower bound was not attained
        (value, found) = run_improve(seed_size);
    }
    let best_graph = found.unwrap_or(seed);
    if found.is_none() {
        value = seed_size;
    }
    let lower_only = |value: usize, g: u64, used: u64| SearchReport {
        n,
        forbidden: forb.clone(),
        value,
        exact: false,
        witnesses: vec![canonical(space.graph(g))],
        nodes_explored: used,
        options: echo.clone(),
    };
    if budget.exhausted.load(Ordering::Relaxed) {
        return Ok(lower_only(value, best_graph, budget.used.load(Ordering::Relaxed)));
    }

    // second pass: all optima at the fixed threshold
    let mut nodes = 0;
    let tasks = split_tasks(&space, depth, |b| b >= value, &mut nodes);
    budget.flush(nodes);
    let parts: Vec<(u64, Vec<u64>)> = pool.install(|| {
        tasks
            .par_iter()
            .map(|&st| {
                let mut local = 0;
                let mut out = Vec::new();
                collect(&space, st, value, &budget, &mut local, &mut out);
                budget.flush(local);
                (local, out)
            })
            .collect()
    });
    if budget.exhausted.load(Ordering::Relaxed) {
        return Ok(lower_only(value, best_graph, budget.used.load(Ordering::Relaxed)));
    }
    let mut all: Vec<u64> = Vec::new();
    for (count, out) in &parts {
        nodes += count;
        all.extend(out);
    }
    let top = all.iter().map(|s| s.count_ones() as usize).max().unwrap_or(value);
    let mut witnesses: Vec<OrderedGraph> =
        all.into_iter().filter(|s| s.count_ones() as usize == top).map(|s| canonical(space.graph(s))).collect();
    witnesses.sort();
    witnesses.dedup();
    Ok(SearchReport { n, forbidden: forb, value: top, exact: true, witnesses, nodes_explored: nodes, options: echo })
}

/// Every extremal graph up to reversal, lexicographic representatives, sorted.
pub fn enumerate_extremal(n: usize, forbidden: &[PatternSpec]) -> Result<Vec<OrderedGraph>> {
    let report = exact_turan(n, forbidden, &SearchOptions::default())?;
    if !report.exact {
        return Err(Error::BudgetExceeded(report.options.budget));
    }
    Ok(report.witnesses)
}
