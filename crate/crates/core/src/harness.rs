//! Closed forms against exhaustive search, and construction verification.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::construct::{self, Family, NonNestedVariant};
use crate::detect::{brute_force_max, contains_pattern, longest_alternating_path, pattern_size, DEFAULT_BRUTE_BUDGET};
use crate::error::{Error, Result};
use crate::formulas::{extremal_value, nonsep_forms, ExtremalValue, ValueKind};
use crate::graph::OrderedGraph;
use crate::pattern::{PatternKind, PatternSpec};
use crate::search::{exact_turan, SearchOptions};

/// The six single-pattern rows of the summary table.
pub const TABLE_KINDS: [PatternKind; 6] = [
    PatternKind::Sep,
    PatternKind::Nest,
    PatternKind::Cross,
    PatternKind::NonSep,
    PatternKind::NonNest,
    PatternKind::NonCross,
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RowStatus {
    Match,
    Mismatch,
    IntervalConfirmed,
    DisputedResolved(usize),
    Unresolved,
}

impl fmt::Display for RowStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowStatus::Match => f.write_str("MATCH"),
            RowStatus::Mismatch => f.write_str("MISMATCH"),
            RowStatus::IntervalConfirmed => f.write_str("INTERVAL_CONFIRMED"),
            RowStatus::DisputedResolved(v) => write!(f, "DISPUTED_RESOLVED({v})"),
            RowStatus::Unresolved => f.write_str("UNRESOLVED"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub kind: PatternKind,
    pub n: usize,
    pub k: usize,
    pub formula: ExtremalValue,
    /// Exact search value, or the lower bound reached when the budget ran out.
    pub search: usize,
    pub exact: bool,
    pub status: RowStatus,
}

fn formula_text(v: &ExtremalValue, kind: PatternKind, n: usize, k: usize) -> String {
    match v.kind {
        ValueKind::Exact => v.lo.to_string(),
        ValueKind::Disputed if kind == PatternKind::NonSep => {
            let f = nonsep_forms(n as u64, k as u64);
            format!("table-form {} / ceiling-form {}", f.table, f.ceiling)
        }
        _ => format!("[{},{}]", v.lo, v.hi),
    }
}

impl TableRow {
    pub fn to_tsv(&self) -> String {
        format!(
            "{}\t{}\t{}\t{}\t{}{}\t{}",
            self.kind.name().to_uppercase(),
            self.n,
            self.k,
            formula_text(&self.formula, self.kind, self.n, self.k),
            if self.exact { "" } else { ">=" },
            self.search,
            self.status
        )
    }
}

pub const TABLE_HEADER: &str = "pattern\tn\tk\tformula\tsearch\tstatus";

fn judge(kind: PatternKind, n: usize, k: usize, formula: &ExtremalValue, value: usize) -> RowStatus {
    let v = value as u64;
    match formula.kind {
        ValueKind::Exact if formula.lo == v => RowStatus::Match,
        ValueKind::Disputed => {
            let f = nonsep_forms(n as u64, k as u64);
            let candidates = if kind == PatternKind::NonSep { vec![f.table, f.ceiling] } else { vec![] };
            if candidates.contains(&(value as i64)) {
                RowStatus::DisputedResolved(value)
            } else {
                RowStatus::Mismatch
            }
        }
        ValueKind::Interval | ValueKind::Conditional | ValueKind::LowerOnly if formula.contains(v) => {
            RowStatus::IntervalConfirmed
        }
        _ => RowStatus::Mismatch,
    }
}

/// One row per table pattern, `2 <= k <= max_k`, `2k <= n <= max_n` (from `n = k`
/// for the non-separated row).
pub fn run_table(max_n: usize, max_k: usize, opts: &SearchOptions) -> Result<Vec<TableRow>> {
    if max_n > opts.max_n {
        return Err(Error::OutOfRange(format!("max_n={max_n} exceeds the search ceiling {}", opts.max_n)));
    }
    let mut rows = Vec::new();
    for kind in TABLE_KINDS {
        for k in 2..=max_k {
            let low = if kind == PatternKind::NonSep { k } else { 2 * k };
            for n in low..=max_n {
                let spec = PatternSpec::new(kind, k)?;
                let formula = extremal_value(&[spec], n as u64)?;
                let report = exact_turan(n, &[spec], opts)?;
                let status =
                    if report.exact { judge(kind, n, k, &formula, report.value) } else { RowStatus::Unresolved };
                rows.push(TableRow { kind, n, k, formula, search: report.value, exact: report.exact, status });
            }
        }
    }
    Ok(rows)
}

pub fn table_tsv(rows: &[TableRow]) -> String {
    let mut out = String::from(TABLE_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.to_tsv());
        out.push('\n');
    }
    out
}

/// Anything `verify_construction` can regenerate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Target {
    Family(Family),
    /// Apex chain with an explicit word; `None` means all apex steps.
    ApexChain(Option<String>),
    HubLong,
    MStar,
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let upper = s.to_uppercase().replace('-', "_");
        if let Some(word) = upper.strip_prefix("APEX_CHAIN:") {
            return Ok(Target::ApexChain(Some(word.to_string())));
        }
        match upper.as_str() {
            "APEX_CHAIN" => Ok(Target::ApexChain(None)),
            "HUB_LONG" => Ok(Target::HubLong),
            "MSTAR" => Ok(Target::MStar),
            _ => s.parse().map(Target::Family),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Family(fam) => write!(f, "{fam}"),
            Target::ApexChain(None) => f.write_str("APEX_CHAIN"),
            Target::ApexChain(Some(w)) => write!(f, "APEX_CHAIN:{w}"),
            Target::HubLong => f.write_str("HUB_LONG"),
            Target::MStar => f.write_str("MSTAR"),
        }
    }
}

impl Target {
    pub fn build(&self, n: usize, k: usize) -> Result<OrderedGraph> {
        match self {
            Target::Family(f) => construct::extremal_construction(*f, n, k),
            Target::ApexChain(word) => {
                let word = word.clone().unwrap_or_else(|| "1".repeat(n.saturating_sub(2 * k - 1)));
                construct::nonnested_construction(&NonNestedVariant::ApexChain(word), n, k)
            }
            Target::HubLong => construct::nonnested_construction(&NonNestedVariant::HubLong { hubs: None }, n, k),
            Target::MStar => construct::mstar_construction(n, k),
        }
    }

    pub fn forbidden(&self, k: usize) -> Vec<PatternSpec> {
        match self {
            Target::Family(f) => f.forbidden(k),
            Target::ApexChain(_) | Target::HubLong => vec![PatternSpec { kind: PatternKind::NonNest, size: k }],
            Target::MStar => vec![PatternSpec { kind: PatternKind::MStar, size: k }],
        }
    }

    pub fn claimed_count(&self, n: usize, k: usize) -> Result<u64> {
        match self {
            Target::Family(f) => f.claimed_count(n, k),
            Target::ApexChain(_) | Target::HubLong => Ok((k as u64 - 1) * n as u64),
            Target::MStar => Ok(crate::formulas::mstar_construction_count(n as u64, k as u64)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verification {
    pub target: String,
    pub n: usize,
    pub k: usize,
    pub edges: usize,
    pub claimed: u64,
    pub free: bool,
    /// Reported for the alternating-path construction.
    pub longest_alt: Option<usize>,
}

impl Verification {
    pub fn ok(&self) -> bool {
        self.free && self.edges as u64 == self.claimed
    }
}

impl fmt::Display for Verification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head = if self.ok() { "OK" } else { "MISMATCH" };
        write!(f, "{head}(edges={}", self.edges)?;
        if self.edges as u64 != self.claimed {
            write!(f, ", claimed={}", self.claimed)?;
        }
        match self.longest_alt {
            Some(t) => write!(f, ", longest_alt={t})"),
            None => write!(f, ", free={})", self.free),
        }
    }
}

/// Regenerates a construction, recounts its edges and re-runs the detectors.
pub fn verify_construction(target: &Target, n: usize, k: usize) -> Result<Verification> {
    let g = target.build(n, k)?;
    let claimed = target.claimed_count(n, k)?;
    let free = target.forbidden(k).into_iter().all(|spec| !contains_pattern(&g, spec));
    let longest_alt = matches!(target, Target::Family(Family::NestedAlt)).then(|| longest_alternating_path(&g).0);
    Ok(Verification { target: target.to_string(), n, k, edges: g.edge_count(), claimed, free, longest_alt })
}

/// Kinds the polynomial detectors and the brute-force oracle both handle.
pub const ORACLE_KINDS: [PatternKind; 10] = [
    PatternKind::Sep,
    PatternKind::Nest,
    PatternKind::Cross,
    PatternKind::NonSep,
    PatternKind::NonNest,
    PatternKind::NonCross,
    PatternKind::Snn,
    PatternKind::MStar,
    PatternKind::MStarStar,
    PatternKind::AltPath,
];

/// A random graph on `[n]`, each edge kept independently with probability `p`.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> OrderedGraph {
    OrderedGraph::from_fn(n, |_, _| rng.gen_bool(p))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Disagreement {
    pub graph: OrderedGraph,
    pub kind: PatternKind,
    pub fast: usize,
    pub brute: usize,
}

impl fmt::Display for Disagreement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: detector {} vs oracle {} on {}", self.kind, self.fast, self.brute, self.graph.to_json())
    }
}

/// Compares every detector with the brute-force oracle on one graph.
pub fn oracle_compare(g: &OrderedGraph) -> Result<Vec<Disagreement>> {
    let mut out = Vec::new();
    for kind in ORACLE_KINDS {
        let fast = pattern_size(g, kind, None);
        let brute = brute_force_max(g, kind, DEFAULT_BRUTE_BUDGET)?;
        if fast != brute {
            out.push(Disagreement { graph: g.clone(), kind, fast, brute });
        }
    }
    Ok(out)
}

/// `count` seeded random graphs with `1 <= n <= max_n` and random density.
pub fn oracle_check(count: usize, max_n: usize, seed: u64) -> Result<Vec<Disagreement>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for _ in 0..count {
        let n = rng.gen_range(1..=max_n.max(1));
        let p = rng.gen_range(0.1..0.95);
        let g = random_graph(&mut rng, n, p);
        out.extend(oracle_compare(&g)?);
    }
    Ok(out)
}
