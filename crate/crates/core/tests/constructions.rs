use ordmatch::construct::{
    distance_class_partition, extremal_construction, mstar_construction, nonnested_construction, Family,
    NonNestedVariant, PartitionMode,
};
use ordmatch::detect::{
    brute_force_max, contains_pattern, is_pattern_matching, longest_alternating_path, DEFAULT_BRUTE_BUDGET,
};
use ordmatch::formulas::{claim_f, extremal_value, nonsep_forms, ValueKind};
use ordmatch::harness::{verify_construction, Target};
use ordmatch::{OrderedGraph, PatternKind, PatternSpec};

fn spec(kind: PatternKind, k: usize) -> PatternSpec {
    PatternSpec::new(kind, k).unwrap()
}

fn applicable(family: Family, n: usize, k: usize) -> bool {
    n >= family.min_n(k) && !(family == Family::NestCrossSep && k < 3) && !(family == Family::CrossSep && n + 1 < k * k)
}

#[test]
fn partitions_cover_distance_classes() {
    for n in 2..=200 {
        for len in 1..=20.min(n - 1) {
            for mode in [PartitionMode::SnnTwo, PartitionMode::SepLPlus1] {
                let parts = distance_class_partition(n, len, mode).unwrap();
                let mut all: Vec<_> = parts.iter().flatten().copied().collect();
                all.sort();
                let expected: Vec<_> = (1..=n - len).map(|x| ordmatch::Edge::between(x, x + len)).collect();
                assert_eq!(all, expected, "n={n} len={len}");
                let kind = match mode {
                    PartitionMode::SnnTwo => PatternKind::Snn,
                    PartitionMode::SepLPlus1 => PatternKind::Sep,
                };
                for part in &parts {
                    assert!(is_pattern_matching(kind, part), "n={n} len={len} {mode:?}");
                }
            }
        }
    }
}

#[test]
fn nonsep_construction_is_interval_closed() {
    for k in 1..=5 {
        for n in k..=40 {
            let g = extremal_construction(Family::NonSeparated, n, k).unwrap();
            for e in g.edges() {
                for a in e.u()..e.v() {
                    for b in a + 1..=e.v() {
                        assert!(g.has_edge(a, b), "n={n} k={k}: {e:?} covers {a}{b}");
                    }
                }
            }
        }
    }
}

#[test]
fn small_constructions_against_oracle() {
    for k in 2..=3 {
        for n in 2 * k..=9 {
            for family in Family::ALL {
                if !applicable(family, n, k) {
                    continue;
                }
                let g = extremal_construction(family, n, k).unwrap();
                assert_eq!(g.edge_count() as u64, family.claimed_count(n, k).unwrap(), "{family} n={n} k={k}");
                for s in family.forbidden(k) {
                    let found = if s.kind == PatternKind::AltPath {
                        longest_alternating_path(&g).0
                    } else {
                        brute_force_max(&g, s.kind, DEFAULT_BRUTE_BUDGET).unwrap()
                    };
                    assert!(found < s.size, "{family} n={n} k={k} contains {s}");
                }
            }
        }
    }
}

#[test]
fn nonnested_variants() {
    for k in 2..=4 {
        for n in 3 * (k - 1).max(1)..=30 {
            if n < 2 * k {
                continue;
            }
            let hub = nonnested_construction(&NonNestedVariant::HubLong { hubs: None }, n, k).unwrap();
            assert_eq!(hub.edge_count(), (k - 1) * n);
            assert!(!contains_pattern(&hub, spec(PatternKind::NonNest, k)));
            let word: String = (0..n - (2 * k - 1)).map(|i| if i % 3 == 1 { "21" } else { "1" }).collect();
            let apex = nonnested_construction(&NonNestedVariant::ApexChain(word), n, k).unwrap();
            assert_eq!(apex.edge_count(), (k - 1) * n, "n={n} k={k}");
            assert!(!contains_pattern(&apex, spec(PatternKind::NonNest, k)));
        }
    }
}

#[test]
fn explicit_hubs_are_validated() {
    let ok = NonNestedVariant::HubLong { hubs: Some(vec![5, 6]) };
    assert_eq!(nonnested_construction(&ok, 12, 3).unwrap().edge_count(), 24);
    let bad = NonNestedVariant::HubLong { hubs: Some(vec![1, 6]) };
    assert!(nonnested_construction(&bad, 12, 3).is_err());
}

#[test]
fn mstar_avoids_two_crossing_islands() {
    for k in 3..=5 {
        for n in 2 * k..=24 {
            let g = mstar_construction(n, k).unwrap();
            assert!(!contains_pattern(&g, spec(PatternKind::MStar, k)), "n={n} k={k}");
            let v = extremal_value(&[spec(PatternKind::MStar, k)], n as u64).unwrap();
            assert_eq!(g.edge_count() as u64, v.lo);
        }
    }
}

#[test]
fn cross_sep_reference_graph() {
    let g = extremal_construction(Family::CrossSep, 18, 3).unwrap();
    assert_eq!(g.edge_count(), 39);
    assert!(!contains_pattern(&g, spec(PatternKind::Cross, 3)));
    assert!(!contains_pattern(&g, spec(PatternKind::Sep, 3)));
}

#[test]
fn verify_reports() {
    let v = verify_construction(&Target::Family(Family::NonSeparated), 14, 3).unwrap();
    assert_eq!(v.to_string(), "OK(edges=37, free=true)");
    let v = verify_construction(&Target::HubLong, 12, 3).unwrap();
    assert_eq!(v.to_string(), "OK(edges=24, free=true)");
    let v = verify_construction(&Target::Family(Family::NestedAlt), 10, 2).unwrap();
    assert_eq!(v.to_string(), "OK(edges=17, longest_alt=3)");
}

#[test]
fn exact_values_are_monotone() {
    let kinds = [PatternKind::Sep, PatternKind::Nest, PatternKind::Cross, PatternKind::NonCross, PatternKind::NonSep];
    for kind in kinds {
        for k in 1..=6usize {
            let mut prev = None;
            for n in 2 * k..=60 {
                let v = extremal_value(&[spec(kind, k)], n as u64).unwrap();
                assert!(matches!(v.kind, ValueKind::Exact | ValueKind::Disputed));
                if let Some(p) = prev {
                    assert!(v.lo >= p, "{kind} k={k} n={n}");
                }
                prev = Some(v.lo);
                if k > 1 {
                    let smaller = extremal_value(&[spec(kind, k - 1)], n as u64).unwrap();
                    assert!(smaller.lo <= v.lo, "{kind} k={k} n={n}");
                }
            }
        }
    }
}

#[test]
fn nested_crossing_and_alternating_coincide() {
    for k in 1..=6usize {
        for n in 2 * k..=60 {
            let nest = extremal_value(&[spec(PatternKind::Nest, k)], n as u64).unwrap();
            let cross = extremal_value(&[spec(PatternKind::Cross, k)], n as u64).unwrap();
            let alt = extremal_value(&[spec(PatternKind::AltPath, 2 * k)], n as u64).unwrap();
            assert_eq!((nest.lo, nest.hi, nest.kind), (cross.lo, cross.hi, cross.kind));
            assert_eq!(nest.lo, alt.lo);
        }
    }
}

#[test]
fn nonsep_forms_agree_when_residue_vanishes() {
    for k in 1..=8u64 {
        for n in k..=120 {
            let f = nonsep_forms(n, k);
            assert_eq!(f.table, f.base_clique, "n={n} k={k}");
            if (n + 1) % k == 0 {
                assert_eq!(f.ceiling, f.table, "n={n} k={k}");
            }
        }
    }
    let f = nonsep_forms(7, 3);
    assert_eq!((f.ceiling, f.table), (12, 15));
}

#[test]
fn claim_f_shifts_mass_outwards() {
    for k in 1..=6u64 {
        for n1 in 1..=2 * k - 2 {
            for n2 in n1..=2 * k - 2 {
                assert!(claim_f(n1, n2, k).unwrap() <= claim_f(n1 - 1, n2 + 1, k).unwrap());
            }
        }
    }
}

#[test]
fn graphs_out_of_range_are_rejected() {
    assert!(extremal_construction(Family::Separated, 3, 2).is_err());
    assert!(extremal_construction(Family::NestCrossSep, 8, 2).is_err());
    assert!(Family::CrossSep.claimed_count(10, 4).is_err());
    assert!(mstar_construction(8, 2).is_err());
    let empty = OrderedGraph::empty(0);
    assert_eq!(empty.edge_count(), 0);
}
