use std::collections::BTreeSet;

use ordmatch::construct::{extremal_construction, Family};
use ordmatch::detect::{brute_force_max, contains_pattern, longest_alternating_path, DEFAULT_BRUTE_BUDGET};
use ordmatch::formulas::extremal_value;
use ordmatch::harness::random_graph;
use ordmatch::search::{
    enumerate_extremal, exact_turan, is_shift_closed, missing_edge_certificate, shift_compress, SearchOptions,
};
use ordmatch::{Edge, OrderedGraph, PatternKind, PatternSpec};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn spec(kind: PatternKind, k: usize) -> PatternSpec {
    PatternSpec::new(kind, k).unwrap()
}

fn opts(workers: usize) -> SearchOptions {
    SearchOptions { workers, ..Default::default() }
}

fn all_edges(n: usize) -> Vec<Edge> {
    (1..=n).flat_map(|u| (u + 1..=n).map(move |v| Edge::between(u, v))).collect()
}

fn oracle_contains(g: &OrderedGraph, s: PatternSpec) -> bool {
    let size = match s.kind {
        PatternKind::AltPath => longest_alternating_path(g).0,
        kind => brute_force_max(g, kind, DEFAULT_BRUTE_BUDGET).unwrap(),
    };
    size >= s.size
}

/// Maximum edge count over all `s`-free graphs on `[n]`, with every optimum up to reversal.
fn exhaustive(n: usize, s: PatternSpec) -> (usize, BTreeSet<OrderedGraph>) {
    let edges = all_edges(n);
    let mut best = 0;
    let mut optima = BTreeSet::new();
    for mask in 0..1u64 << edges.len() {
        let count = mask.count_ones() as usize;
        if count < best {
            continue;
        }
        let g = OrderedGraph::from_edges(n, (0..edges.len()).filter(|i| mask >> i & 1 == 1).map(|i| edges[i]));
        if oracle_contains(&g, s) {
            continue;
        }
        if count > best {
            best = count;
            optima.clear();
        }
        let r = g.reversed();
        optima.insert(if r < g { r } else { g });
    }
    (best, optima)
}

fn random_nonsep_free(rng: &mut ChaCha8Rng, n: usize, k: usize) -> OrderedGraph {
    let mut edges = all_edges(n);
    edges.shuffle(rng);
    let keep = rng.gen_range(0..=edges.len());
    let s = spec(PatternKind::NonSep, k);
    let mut g = OrderedGraph::empty(n);
    for e in edges.into_iter().take(keep) {
        let h = g.with_edge(e);
        if !contains_pattern(&h, s) {
            g = h;
        }
    }
    g
}

#[test]
fn matches_unpruned_enumeration_up_to_six() {
    let kinds = [
        PatternKind::Sep,
        PatternKind::Nest,
        PatternKind::Cross,
        PatternKind::NonSep,
        PatternKind::NonNest,
        PatternKind::NonCross,
        PatternKind::Snn,
        PatternKind::MStar,
        PatternKind::MStarStar,
    ];
    for n in 2..=6 {
        for k in 2..=3 {
            let mut specs: Vec<PatternSpec> = kinds.iter().map(|&kind| spec(kind, k)).collect();
            specs.push(spec(PatternKind::AltPath, 2 * k));
            for s in specs {
                let (value, optima) = exhaustive(n, s);
                let report = exact_turan(n, &[s], &opts(4)).unwrap();
                assert!(report.exact);
                assert_eq!(report.value, value, "{s} n={n}");
                let found: BTreeSet<_> = report.witnesses.iter().cloned().collect();
                assert_eq!(found, optima, "{s} n={n}");
            }
        }
    }
}

#[test]
fn search_dominates_constructions() {
    for k in 2..=3 {
        for n in 2 * k..=8 {
            for family in Family::ALL {
                let Ok(g) = extremal_construction(family, n, k) else { continue };
                let forb = family.forbidden(k);
                let forb: Vec<_> = if family == Family::NestedAlt { vec![forb[0]] } else { forb };
                let report = exact_turan(n, &forb, &opts(4)).unwrap();
                assert!(report.value >= g.edge_count(), "{family} n={n} k={k}");
                let formula = extremal_value(&forb, n as u64).unwrap();
                if formula.value().is_some() && formula.kind == ordmatch::formulas::ValueKind::Exact {
                    assert_eq!(report.value as u64, formula.lo, "{family} n={n} k={k}");
                }
            }
        }
    }
}

#[test]
fn nest_sep_small_values() {
    let forb = [spec(PatternKind::Nest, 2), spec(PatternKind::Sep, 2)];
    for n in 4..=8 {
        assert_eq!(exact_turan(n, &forb, &opts(4)).unwrap().value, n);
    }
    let forb = [spec(PatternKind::Nest, 4), spec(PatternKind::Sep, 4)];
    let r = exact_turan(8, &forb, &opts(4)).unwrap();
    let v = extremal_value(&forb, 8).unwrap();
    assert!(v.contains(r.value as u64), "{} not in [{}, {}]", r.value, v.lo, v.hi);
    assert!(r.value < 27);
}

#[test]
fn nonsep_witnesses_carry_a_certificate() {
    for k in 2..=3 {
        for n in 2 * k..=8 {
            let report = exact_turan(n, &[spec(PatternKind::NonSep, k)], &opts(4)).unwrap();
            for w in &report.witnesses {
                let x = missing_edge_certificate(w, k).unwrap();
                let x = x.unwrap_or_else(|| panic!("no certificate for n={n} k={k}: {}", w.to_json()));
                assert!(!w.has_edge(x, x + k));
            }
        }
    }
}

#[test]
fn shifting_keeps_count_and_freeness() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..300 {
        let n = rng.gen_range(1..=10);
        let p = rng.gen_range(0.0..1.0);
        let g = random_graph(&mut rng, n, p);
        let s = shift_compress(&g);
        assert_eq!(s.edge_count(), g.edge_count());
        assert!(is_shift_closed(&s));
    }
    for _ in 0..200 {
        let n = rng.gen_range(2..=10);
        let k = rng.gen_range(2..=3);
        let g = random_nonsep_free(&mut rng, n, k);
        let s = shift_compress(&g);
        assert!(!contains_pattern(&s, spec(PatternKind::NonSep, k)), "{}", g.to_json());
    }
}

#[test]
fn shift_pruning_agrees() {
    for k in 2..=3 {
        for n in k..=8 {
            let s = [spec(PatternKind::NonSep, k)];
            let plain = exact_turan(n, &s, &opts(4)).unwrap();
            let pruned = exact_turan(n, &s, &SearchOptions { use_shift_pruning: true, ..opts(4) }).unwrap();
            assert_eq!(plain.value, pruned.value, "n={n} k={k}");
            assert!(pruned.witnesses.iter().all(|w| is_shift_closed(w) || is_shift_closed(&w.reversed())));
        }
    }
}

#[test]
fn reports_do_not_depend_on_workers() {
    let cases = [
        (7, vec![spec(PatternKind::NonSep, 3)]),
        (7, vec![spec(PatternKind::Cross, 2), spec(PatternKind::Sep, 2)]),
        (7, vec![spec(PatternKind::AltPath, 4)]),
    ];
    for (n, forb) in cases {
        let base = exact_turan(n, &forb, &opts(1)).unwrap().to_json();
        for w in [4, 8] {
            assert_eq!(exact_turan(n, &forb, &opts(w)).unwrap().to_json(), base);
        }
    }
}

#[test]
fn exhausted_budget_is_a_lower_bound() {
    let s = [spec(PatternKind::NonNest, 3)];
    let r = exact_turan(8, &s, &SearchOptions { budget: 50, ..opts(2) }).unwrap();
    assert!(!r.exact);
    assert!(r.value <= 16);
    for w in &r.witnesses {
        assert!(!contains_pattern(w, s[0]));
    }
}

#[test]
fn enumeration_errors_on_guards() {
    assert!(exact_turan(12, &[spec(PatternKind::Sep, 2)], &opts(1)).is_err());
    assert!(
        exact_turan(6, &[spec(PatternKind::Sep, 2)], &SearchOptions { use_shift_pruning: true, ..opts(1) }).is_err()
    );
    assert_eq!(enumerate_extremal(4, &[spec(PatternKind::Cross, 2)]).unwrap().len(), 1);
}
