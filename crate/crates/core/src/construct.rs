//! Extremal and witness constructions.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::formulas::{self, binom2};
use crate::graph::{Edge, OrderedGraph, Transform};
use crate::pattern::{PatternKind, PatternSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Complement of cliques on consecutive blocks separated by `k - 1` hubs.
    Separated,
    /// All edges of length at most `2k - 2`.
    NestedAlt,
    /// Recursive blocks: each step adds `k` vertices joined to the last `2k - 1`.
    NonSeparated,
    CrossSep,
    NestSep,
    NestCrossSep,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Separated,
        Family::NestedAlt,
        Family::NonSeparated,
        Family::CrossSep,
        Family::NestSep,
        Family::NestCrossSep,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Separated => "SEPARATED",
            Family::NestedAlt => "NESTED_ALT",
            Family::NonSeparated => "NON_SEPARATED",
            Family::CrossSep => "CROSS_SEP",
            Family::NestSep => "NEST_SEP",
            Family::NestCrossSep => "NEST_CROSS_SEP",
        }
    }

    /// The patterns the construction avoids.
    pub fn forbidden(self, k: usize) -> Vec<PatternSpec> {
        let s = |kind, size| PatternSpec { kind, size };
        match self {
            Family::Separated => vec![s(PatternKind::Sep, k)],
            Family::NestedAlt => vec![s(PatternKind::AltPath, 2 * k), s(PatternKind::Nest, k)],
            Family::NonSeparated => vec![s(PatternKind::NonSep, k)],
            Family::CrossSep => vec![s(PatternKind::Cross, k), s(PatternKind::Sep, k)],
            Family::NestSep => vec![s(PatternKind::Nest, k), s(PatternKind::Sep, k)],
            Family::NestCrossSep => {
                vec![s(PatternKind::Nest, k), s(PatternKind::Cross, k), s(PatternKind::Sep, k)]
            }
        }
    }

    /// Smallest `n` the construction accepts for this `k`.
    pub fn min_n(self, k: usize) -> usize {
        match self {
            Family::NonSeparated => k,
            _ => 2 * k,
        }
    }

    /// The edge count the construction is meant to reach.
    pub fn claimed_count(self, n: usize, k: usize) -> Result<u64> {
        let (n64, k64) = (n as u64, k as u64);
        check_range(self, n, k)?;
        Ok(match self {
            Family::NestCrossSep => (k64 - 1) * n64,
            Family::CrossSep => {
                // the last hub k(k-1) needs k - 1 vertices to its right
                if n + 1 < k * k {
                    return Err(Error::OutOfRange(format!(
                        "{self} reaches its count only for n >= k^2 - 1 (n={n}, k={k})"
                    )));
                }
                formulas::cross_sep_bound(n64, k64)
            }
            Family::NonSeparated => formulas::nonsep_forms(n64, k64).table as u64,
            other => {
                let forb = if other == Family::NestedAlt {
                    vec![PatternSpec { kind: PatternKind::Nest, size: k }]
                } else {
                    other.forbidden(k)
                };
                formulas::extremal_value(&forb, n64)?.lo
            }
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s.chars().filter(|c| *c != '_' && *c != '-').collect::<String>().to_uppercase();
        Family::ALL
            .into_iter()
            .find(|f| f.name().replace('_', "") == key)
            .ok_or_else(|| Error::Invalid(format!("unknown construction family {s:?}")))
    }
}

fn check_range(family: Family, n: usize, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::OutOfRange("k must be at least 1".into()));
    }
    if n < family.min_n(k) {
        return Err(Error::OutOfRange(format!("{family} needs n >= {} (n={n}, k={k})", family.min_n(k))));
    }
    if family == Family::NestCrossSep && k < 3 {
        return Err(Error::OutOfRange(format!("{family} needs k >= 3 (k={k})")));
    }
    Ok(())
}

/// Balanced parts of `total` into `k` parts, larger parts first.
fn balanced_parts(total: usize, k: usize) -> Vec<usize> {
    (0..k).map(|i| total / k + usize::from(i < total % k)).collect()
}

pub fn extremal_construction(family: Family, n: usize, k: usize) -> Result<OrderedGraph> {
    check_range(family, n, k)?;
    Ok(match family {
        Family::Separated => {
            // block[v] = Some(i) for vertices of I_i, None for hubs
            let mut block = vec![None; n + 1];
            let mut v = 1;
            for (i, t) in balanced_parts(n + 1, k).into_iter().enumerate() {
                if i > 0 {
                    v += 1;
                }
                for _ in 0..t - 1 {
                    block[v] = Some(i);
                    v += 1;
                }
            }
            debug_assert_eq!(v, n + 1);
            OrderedGraph::from_fn(n, |x, y| block[x].is_none() || block[x] != block[y])
        }
        Family::NestedAlt => OrderedGraph::from_fn(n, |x, y| y - x <= 2 * k - 2),
        Family::NonSeparated => {
            let m0 = k + n % k;
            // vertex v belongs to step (v - m0 - 1) / k past the base
            let step_end = |v: usize| if v <= m0 { m0 } else { m0 + (v - m0).div_ceil(k) * k };
            OrderedGraph::from_fn(n, |x, y| {
                let end = step_end(y);
                y <= m0 || x + 2 * k > end + 1
            })
        }
        Family::CrossSep => OrderedGraph::from_fn(n, |x, y| {
            (x < k && y - x >= k) || (y - x < k && (1..k).any(|i| x <= i * k && i * k <= y))
        }),
        Family::NestSep if k == 2 => OrderedGraph::from_fn(n, |x, y| x == 1 || (x == 2 && y == n)),
        Family::NestSep => {
            // with k - 1 hubs on both ends an even k admits k separated edges,
            // so the right block loses one hub
            let right = if k.is_multiple_of(2) { k - 2 } else { k - 1 };
            let hub = |v: usize| v < k || v + right > n;
            OrderedGraph::from_fn(n, |x, y| hub(x) || hub(y))
        }
        Family::NestCrossSep => {
            let hub = |v: usize| v == 1 || (k < v && v <= 2 * k - 2);
            let low = |v: usize| v <= 2 * k - 2 || v == n;
            OrderedGraph::from_fn(n, |x, y| hub(x) || hub(y) || (low(x) && low(y)))
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NonNestedVariant {
    /// Letters `1` (add a vertex joined to the first `k - 1`) and `2` (reverse),
    /// applied left to right to a clique on `2k - 1` vertices.
    ApexChain(String),
    /// `k - 1` hub vertices plus all edges of length at least `n - k + 1`;
    /// hubs default to the central block of `[k, n - k + 1]`.
    HubLong { hubs: Option<Vec<usize>> },
}

/// Graphs with `(k - 1) n` edges and no non-nested `k`-matching.
pub fn nonnested_construction(variant: &NonNestedVariant, n: usize, k: usize) -> Result<OrderedGraph> {
    if k == 0 {
        return Err(Error::OutOfRange("k must be at least 1".into()));
    }
    match variant {
        NonNestedVariant::ApexChain(word) => {
            if let Some(c) = word.chars().find(|c| *c != '1' && *c != '2') {
                return Err(Error::Invalid(format!("word letters must be 1 or 2, found {c:?}")));
            }
            let base = 2 * k - 1;
            let apexes = word.chars().filter(|&c| c == '1').count();
            if n < base || apexes != n - base {
                return Err(Error::WordLengthMismatch { expected: n.saturating_sub(base), found: apexes });
            }
            let mut g = OrderedGraph::complete(base);
            for c in word.chars() {
                let t = if c == '1' { Transform::Apex(k - 1) } else { Transform::Reverse };
                g = g.transform(t)?;
            }
            Ok(g)
        }
        NonNestedVariant::HubLong { hubs } => {
            if n < 3 * (k - 1) || n < 2 {
                return Err(Error::OutOfRange(format!("HUB_LONG needs n >= 3(k-1) (n={n}, k={k})")));
            }
            let hubs = match hubs {
                Some(h) => {
                    let mut h = h.clone();
                    h.sort_unstable();
                    h.dedup();
                    if h.len() != k - 1 || h.iter().any(|&v| v < k || v + k > n + 1) {
                        return Err(Error::OutOfRange(format!("need {} distinct hubs in [{k}, {}]", k - 1, n + 1 - k)));
                    }
                    h
                }
                None => {
                    let room = n + 2 - 2 * k;
                    let start = k + (room - (k - 1)) / 2;
                    (start..start + k - 1).collect()
                }
            };
            let mut is_hub = vec![false; n + 1];
            for &h in &hubs {
                is_hub[h] = true;
            }
            Ok(OrderedGraph::from_fn(n, |x, y| is_hub[x] || is_hub[y] || y - x + k > n))
        }
    }
}

/// Edges incident to `[k - 2]` plus short power-of-two edges `x (x + 2^i)` with
/// `2^i < k/2` and `x ≡ 1 (mod 2^i)`.
pub fn mstar_construction(n: usize, k: usize) -> Result<OrderedGraph> {
    if k < 3 || n < 2 * k {
        return Err(Error::OutOfRange(format!("mstar construction needs k >= 3, n >= 2k (n={n}, k={k})")));
    }
    let short = |x: usize, y: usize| {
        let d = y - x;
        d.is_power_of_two() && 2 * d < k && (x - 1).is_multiple_of(d)
    };
    Ok(OrderedGraph::from_fn(n, |x, y| x <= k - 2 || short(x, y)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartitionMode {
    /// Two strongly non-nested matchings.
    SnnTwo,
    /// `ℓ + 1` separated matchings.
    SepLPlus1,
}

/// Partition of the edges of length `len` on `[n]`.
pub fn distance_class_partition(n: usize, len: usize, mode: PartitionMode) -> Result<Vec<Vec<Edge>>> {
    if len == 0 || len >= n {
        return Err(Error::OutOfRange(format!("length must lie in [1, n-1] (n={n}, len={len})")));
    }
    let edges = (1..=n - len).map(|x| (x, Edge::between(x, x + len)));
    Ok(match mode {
        PartitionMode::SnnTwo => {
            let (a, b): (Vec<_>, Vec<_>) = edges.partition(|(x, _)| (x - 1) % (2 * len) < len);
            vec![a.into_iter().map(|p| p.1).collect(), b.into_iter().map(|p| p.1).collect()]
        }
        PartitionMode::SepLPlus1 => {
            let mut parts = vec![Vec::new(); len + 1];
            for (x, e) in edges {
                parts[(x - 1) % (len + 1)].push(e);
            }
            parts
        }
    })
}

/// `C(k-1, 2)` hub overlap plus long edges: the HUB_LONG edge count, exposed for tests.
pub fn hub_long_count(n: usize, k: usize) -> u64 {
    let (n, k) = (n as u64, k as u64);
    (k - 1) * (n - 1) - binom2(k - 1) + binom2(k)
}
