use ordmatch::detect::{
    alt_peel, alternating_path_witness, brute_force_max, is_pattern_matching, longest_alternating_path,
    max_pattern_matching, max_split_pattern, pattern_size, Groups, Inner, DEFAULT_BRUTE_BUDGET,
};
use ordmatch::harness::{random_graph, ORACLE_KINDS};
use ordmatch::{classify_pair, Edge, OrderedGraph, PairRelation, PatternKind, Transform};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn all_edges(n: usize) -> Vec<Edge> {
    (1..=n).flat_map(|u| (u + 1..=n).map(move |v| Edge::between(u, v))).collect()
}

fn graph_from_mask(n: usize, mask: u64) -> OrderedGraph {
    let edges = all_edges(n);
    OrderedGraph::from_edges(n, (0..edges.len()).filter(|i| mask >> i & 1 == 1).map(|i| edges[i]))
}

fn graphs_strategy(max_n: usize) -> impl Strategy<Value = OrderedGraph> {
    (1..=max_n).prop_flat_map(|n| {
        let m = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), m).prop_map(move |bits| {
            let edges = all_edges(n);
            OrderedGraph::from_edges(n, edges.into_iter().zip(bits).filter(|(_, b)| *b).map(|(e, _)| e))
        })
    })
}

/// Smallest sorted edge list among the largest `kind` matchings, by plain enumeration.
fn brute_lex_min(g: &OrderedGraph, kind: PatternKind) -> Vec<Edge> {
    let edges = g.edges().to_vec();
    let size = brute_force_max(g, kind, DEFAULT_BRUTE_BUDGET).unwrap();
    fn walk(edges: &[Edge], from: usize, size: usize, cur: &mut Vec<Edge>, kind: PatternKind) -> bool {
        if cur.len() == size {
            return is_pattern_matching(kind, cur);
        }
        for i in from..edges.len() {
            cur.push(edges[i]);
            if is_pattern_matching(kind, cur) && walk(edges, i + 1, size, cur, kind) {
                return true;
            }
            cur.pop();
        }
        false
    }
    let mut cur = Vec::new();
    assert!(walk(&edges, 0, size, &mut cur, kind));
    cur
}

#[test]
fn relations_partition_independent_pairs() {
    for n in 2..=8 {
        let edges = all_edges(n);
        for &a in &edges {
            for &b in &edges {
                let shared = a.u() == b.u() || a.u() == b.v() || a.v() == b.u() || a.v() == b.v();
                let rel = classify_pair(a, b);
                assert_eq!(rel == PairRelation::Shared, shared, "{a:?} {b:?}");
                assert_eq!(rel, classify_pair(b, a));
                let flip = |e: Edge| Edge::between(n + 1 - e.v(), n + 1 - e.u());
                assert_eq!(rel, classify_pair(flip(a), flip(b)));
            }
        }
    }
}

#[test]
fn detectors_match_oracle_exhaustively_up_to_five() {
    for n in 1..=5usize {
        let m = n * (n - 1) / 2;
        for mask in 0..1u64 << m {
            let g = graph_from_mask(n, mask);
            for kind in ORACLE_KINDS {
                let brute = brute_force_max(&g, kind, DEFAULT_BRUTE_BUDGET).unwrap();
                assert_eq!(pattern_size(&g, kind, None), brute, "{kind} on {}", g.to_json());
            }
        }
    }
}

#[test]
fn witnesses_verify_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..300 {
        let n = rng.gen_range(2..=11);
        let p = rng.gen_range(0.2..0.9);
        let g = random_graph(&mut rng, n, p);
        for kind in PatternKind::PAIRWISE.into_iter().chain([PatternKind::Snn]) {
            let (size, w) = max_pattern_matching(&g, kind, None).unwrap();
            assert_eq!(size, w.size());
            assert!(w.verify(&g), "{kind} witness on {}", g.to_json());
            if kind == PatternKind::NonSep && size > 0 {
                let gap = w.common_gap().expect("non-separated witness spans a gap");
                assert!(w.edges.iter().all(|e| e.u() <= gap.0 && gap.0 < e.v()));
            }
            if kind == PatternKind::NonNest {
                let mut by_left = w.edges.clone();
                by_left.sort_by_key(|e| e.u());
                assert!(by_left.windows(2).all(|p| p[0].v() < p[1].v()));
            }
        }
        for inner in [Inner::Cross, Inner::Nest] {
            for groups in [Groups::Two, Groups::Any] {
                let (size, w) = max_split_pattern(&g, inner, groups);
                assert_eq!(size, w.size());
                assert!(w.verify(&g));
            }
        }
        let (t, w) = alternating_path_witness(&g);
        assert_eq!(t, w.path.len());
        assert!(w.verify(&g));
    }
}

#[test]
fn lex_smallest_witnesses() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let n = rng.gen_range(2..=8);
        let p = rng.gen_range(0.2..0.8);
        let g = random_graph(&mut rng, n, p);
        for kind in [PatternKind::Sep, PatternKind::Nest, PatternKind::Cross, PatternKind::NonNest] {
            let (_, w) = max_pattern_matching(&g, kind, None).unwrap();
            assert_eq!(w.edges, brute_lex_min(&g, kind), "{kind} on {}", g.to_json());
        }
    }
}

#[test]
fn separated_prefers_lex_smaller_witness() {
    let g = OrderedGraph::new(7, [(1, 5), (2, 3), (6, 7)]).unwrap();
    let (size, w) = max_pattern_matching(&g, PatternKind::Sep, None).unwrap();
    assert_eq!(size, 2);
    assert_eq!(w.edges, vec![Edge::between(1, 5), Edge::between(6, 7)]);
}

#[test]
fn non_nested_chain_counterexample() {
    let g = OrderedGraph::new(7, [(1, 5), (2, 6), (5, 7)]).unwrap();
    assert_eq!(pattern_size(&g, PatternKind::NonNest, None), 2);
    assert_eq!(brute_force_max(&g, PatternKind::NonNest, DEFAULT_BRUTE_BUDGET).unwrap(), 2);
}

#[test]
fn caps_truncate_exactly() {
    let g = OrderedGraph::complete(10);
    for kind in ORACLE_KINDS {
        let full = pattern_size(&g, kind, None);
        for cap in 1..=full + 1 {
            assert_eq!(pattern_size(&g, kind, Some(cap)), full.min(cap), "{kind} cap {cap}");
        }
    }
}

#[test]
fn peeling_empties_graphs_without_long_paths() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checked = 0;
    while checked < 400 {
        let n = rng.gen_range(2..=11);
        let p = rng.gen_range(0.05..0.6);
        let g = random_graph(&mut rng, n, p);
        let t = longest_alternating_path(&g).0;
        for k in 1..=3usize {
            if t < 2 * k {
                let seq = alt_peel(&g, 2 * k - 2);
                assert_eq!(seq.len(), 2 * k - 1);
                assert_eq!(seq.last().unwrap().edge_count(), 0, "k={k} on {}", g.to_json());
                checked += 1;
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn reversal_invariance(g in graphs_strategy(10)) {
        let r = g.transform(Transform::Reverse).unwrap();
        for kind in ORACLE_KINDS {
            prop_assert_eq!(pattern_size(&g, kind, None), pattern_size(&r, kind, None), "{}", kind);
        }
    }

    #[test]
    fn adding_an_edge_never_hurts(g in graphs_strategy(10), pick in any::<prop::sample::Index>()) {
        let missing: Vec<Edge> = all_edges(g.n()).into_iter().filter(|&e| !g.contains(e)).collect();
        prop_assume!(!missing.is_empty());
        let h = g.with_edge(missing[pick.index(missing.len())]);
        for kind in ORACLE_KINDS {
            prop_assert!(pattern_size(&h, kind, None) >= pattern_size(&g, kind, None), "{}", kind);
        }
    }

    #[test]
    fn json_round_trip(g in graphs_strategy(12)) {
        let text = g.to_json();
        let back = OrderedGraph::from_json(&text).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(back.to_json(), text);
    }

    #[test]
    fn agrees_with_oracle(g in graphs_strategy(9)) {
        for kind in ORACLE_KINDS {
            let brute = brute_force_max(&g, kind, DEFAULT_BRUTE_BUDGET).unwrap();
            prop_assert_eq!(pattern_size(&g, kind, None), brute, "{}", kind);
        }
    }
}

#[test]
fn detectors_match_oracle_on_every_graph_with_seven_vertices() {
    use rayon::prelude::*;
    let n = 7;
    let bad = (0..1u64 << 21).into_par_iter().find_any(|&mask| {
        let g = graph_from_mask(n, mask);
        ORACLE_KINDS
            .iter()
            .any(|&kind| pattern_size(&g, kind, None) != brute_force_max(&g, kind, DEFAULT_BRUTE_BUDGET).unwrap())
    });
    assert_eq!(bad.map(|m| graph_from_mask(n, m).to_json()), None);
}
