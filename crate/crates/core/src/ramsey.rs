//! Ordered Ramsey numbers by exhaustive backtracking over 2-colourings.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::detect::contains_pattern;
use crate::error::{Error, Result};
use crate::graph::{Edge, OrderedGraph};
use crate::pattern::{PatternKind, PatternSpec};
use crate::search::Space;

/// A red/blue colouring of the complete graph on `[n]`; blue is the complement of red.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoColoring {
    pub n: usize,
    /// Sorted lexicographically.
    pub red: Vec<Edge>,
}

impl TwoColoring {
    pub fn red_graph(&self) -> OrderedGraph {
        OrderedGraph::from_edges(self.n, self.red.iter().copied())
    }

    pub fn blue_graph(&self) -> OrderedGraph {
        let red = self.red_graph();
        OrderedGraph::from_fn(self.n, |u, v| !red.has_edge(u, v))
    }

    /// Neither colour class contains `target`.
    pub fn avoids(&self, target: PatternSpec) -> bool {
        !contains_pattern(&self.red_graph(), target) && !contains_pattern(&self.blue_graph(), target)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("colouring serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Wire {
            n: usize,
            red: Vec<[usize; 2]>,
        }
        let w: Wire = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        let g = OrderedGraph::new(w.n, w.red.iter().map(|p| (p[0], p[1])))?;
        Ok(TwoColoring { n: w.n, red: g.edges().to_vec() })
    }
}

impl Serialize for TwoColoring {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("TwoColoring", 2)?;
        st.serialize_field("n", &self.n)?;
        let red: Vec<[usize; 2]> = self.red.iter().map(|e| e.as_pair()).collect();
        st.serialize_field("red", &red)?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RamseyReport {
    pub target: PatternSpec,
    /// The Ramsey number, when it was reached within the limits.
    pub exact: Option<usize>,
    /// Every colouring of a smaller complete graph was shown to be avoidable.
    pub lower: usize,
    /// Largest vertex count examined.
    pub upper_checked: usize,
    /// A colouring of `K_{lower - 1}` avoiding the target in both colours.
    pub witness: Option<TwoColoring>,
    pub budget_exhausted: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamseyOptions {
    pub budget: u64,
    pub workers: usize,
    /// Fix the first edge red (colour-swap symmetry).
    pub fix_first_edge: bool,
    pub max_n: usize,
}

impl Default for RamseyOptions {
    fn default() -> Self {
        RamseyOptions {
            budget: 5_000_000_000,
            workers: std::thread::available_parallelism().map_or(1, |p| p.get()),
            fix_first_edge: true,
            max_n: 10,
        }
    }
}

#[derive(Clone, Copy)]
struct Node {
    next: usize,
    red: u64,
    blue: u64,
}

struct Shared<'a> {
    space: &'a Space,
    fix_first: bool,
    used: AtomicU64,
    limit: u64,
    exhausted: AtomicBool,
    /// Index of the earliest task known to hold a good colouring.
    first_hit: AtomicUsize,
}

impl Shared<'_> {
    fn tick(&self, local: &mut u64) -> bool {
        *local += 1;
        if local.is_multiple_of(1024) && self.used.fetch_add(1024, Ordering::Relaxed) + 1024 > self.limit {
            self.exhausted.store(true, Ordering::Relaxed);
        }
        !self.exhausted.load(Ordering::Relaxed)
    }

    fn children(&self, nd: Node) -> impl Iterator<Item = Node> + '_ {
        let e = nd.next;
        let red = (!self.space.creates(nd.red, e)).then_some(Node { next: e + 1, red: nd.red | 1 << e, ..nd });
        let blue_ok = !(self.fix_first && e == 0) && !self.space.creates(nd.blue, e);
        let blue = blue_ok.then_some(Node { next: e + 1, blue: nd.blue | 1 << e, ..nd });
        red.into_iter().chain(blue)
    }

    /// First good completion in red-before-blue order.
    fn first_good(&self, nd: Node, task: usize, local: &mut u64) -> Option<u64> {
        if !self.tick(local) || self.first_hit.load(Ordering::Relaxed) < task {
            return None;
        }
        if nd.next == self.space.m() {
            return Some(nd.red);
        }
        self.children(nd).find_map(|c| self.first_good(c, task, local))
    }
}

/// Searches `K_n` for a colouring avoiding `target` in both colours. `Ok(None)`
/// means none exists; `Err` means the budget ran out.
fn good_coloring(
    n: usize,
    target: PatternSpec,
    opts: &RamseyOptions,
    pool: &rayon::ThreadPool,
    spent: &mut u64,
) -> Result<Option<TwoColoring>> {
    let space = Space::new(n, &[target], false);
    let m = space.m();
    if m == 0 {
        return Ok(Some(TwoColoring { n, red: Vec::new() }));
    }
    let shared = Shared {
        space: &space,
        fix_first: opts.fix_first_edge,
        used: AtomicU64::new(*spent),
        limit: opts.budget,
        exhausted: AtomicBool::new(false),
        first_hit: AtomicUsize::new(usize::MAX),
    };
    // prefixes in search order
    let depth = m.min(12);
    let mut tasks = Vec::new();
    let mut stack = vec![Node { next: 0, red: 0, blue: 0 }];
    while let Some(nd) = stack.pop() {
        if nd.next >= depth {
            tasks.push(nd);
            continue;
        }
        let kids: Vec<Node> = shared.children(nd).collect();
        stack.extend(kids.into_iter().rev());
    }
    let hits: Vec<Option<u64>> = pool.install(|| {
        tasks
            .par_iter()
            .enumerate()
            .map(|(i, &nd)| {
                let mut local = 0;
                let hit = shared.first_good(nd, i, &mut local);
                shared.used.fetch_add(local % 1024, Ordering::Relaxed);
                if hit.is_some() {
                    shared.first_hit.fetch_min(i, Ordering::Relaxed);
                }
                hit
            })
            .collect()
    });
    *spent = shared.used.load(Ordering::Relaxed);
    let first = shared.first_hit.load(Ordering::Relaxed);
    if first != usize::MAX {
        // without a budget stop every earlier task ran to completion, so this is
        // the first good colouring in search order
        let g = space.graph(hits[first].expect("hit recorded"));
        return Ok(Some(TwoColoring { n, red: g.edges().to_vec() }));
    }
    if shared.exhausted.load(Ordering::Relaxed) || *spent > opts.budget {
        return Err(Error::BudgetExceeded(opts.budget));
    }
    Ok(None)
}

/// Smallest `n <= n_max` such that every 2-colouring of `K_n` has a monochromatic
/// `target`, with a colouring of `K_{n-1}` avoiding it.
pub fn find_ramsey(target: PatternSpec, n_max: usize, opts: &RamseyOptions) -> Result<RamseyReport> {
    if !matches!(target.kind, PatternKind::AltPath | PatternKind::NonNest) {
        return Err(Error::Unsupported(format!("Ramsey search supports altpath and nonnest, not {}", target.kind)));
    }
    let ceiling = opts.max_n.min(crate::search::HARD_MAX_N);
    if n_max > ceiling {
        return Err(Error::OutOfRange(format!("n_max={n_max} exceeds the Ramsey ceiling {ceiling}")));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers.max(1))
        .build()
        .map_err(|e| Error::Invalid(format!("thread pool: {e}")))?;
    let mut report =
        RamseyReport { target, exact: None, lower: 1, upper_checked: 0, witness: None, budget_exhausted: false };
    let mut spent = 0;
    for n in 1..=n_max {
        match good_coloring(n, target, opts, &pool, &mut spent) {
            Ok(Some(c)) => {
                report.lower = n + 1;
                report.upper_checked = n;
                report.witness = Some(c);
            }
            Ok(None) => {
                report.exact = Some(n);
                report.upper_checked = n;
                return Ok(report);
            }
            Err(Error::BudgetExceeded(_)) => {
                report.budget_exhausted = true;
                return Ok(report);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}

/// The edge sets whose colours never matter for an alternating `2k`-path in `K_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorClassSets {
    pub a: Vec<Edge>,
    pub b: Vec<Edge>,
}

pub fn alt_recolor_sets(m: usize, k: usize) -> Result<ColorClassSets> {
    if k == 0 || m < 2 * k - 1 {
        return Err(Error::OutOfRange(format!("need m >= 2k - 1 (m={m}, k={k})")));
    }
    let pick = |keep: &dyn Fn(usize) -> bool| OrderedGraph::from_fn(m, |x, y| keep(x + y)).edges().to_vec();
    Ok(ColorClassSets { a: pick(&|s| s + 2 <= 2 * k), b: pick(&|s| s + 2 * k >= 2 * m + 4) })
}

/// Edges too long to appear in any non-nested `k`-matching of `K_n`.
pub fn nonnested_long_edges(n: usize, k: usize) -> Result<Vec<Edge>> {
    if k == 0 || n < 2 * k {
        return Err(Error::OutOfRange(format!("need n >= 2k (n={n}, k={k})")));
    }
    Ok(OrderedGraph::from_fn(n, |x, y| y - x + k > n).edges().to_vec())
}
