mod common;

use std::collections::BTreeSet;

use common::*;
use proptest::prelude::*;
use qarev_core::{load_algebra, Algebra, AlgebraError, Relation};

#[test]
fn allen_composition_matches_endpoints() {
    let a = allen();
    let oracle = composition_by_endpoints();
    for r in a.base_relations() {
        for s in a.base_relations() {
            let want = &oracle[&(a.name_of(r).to_string(), a.name_of(s).to_string())];
            let got: BTreeSet<String> =
                a.compose_base(r, s).iter().map(|t| a.name_of(t).to_string()).collect();
            assert_eq!(&got, want, "{} o {}", a.name_of(r), a.name_of(s));
        }
    }
}

#[test]
fn shipped_tables_pass_every_law() {
    for alg in [Algebra::allen(), Algebra::rcc8()] {
        let report = alg.law_report();
        assert_eq!(report.checks.len(), 5);
        assert!(report.passed(), "{}: {:?}", alg.name(), report.first_violation());
    }
}

#[test]
fn distances_are_breadth_first() {
    for alg in [Algebra::allen(), Algebra::rcc8()] {
        let d = bfs_distances(alg);
        for r in alg.base_relations() {
            for s in alg.base_relations() {
                assert_eq!(alg.distance(r, s), d[r.id()][s.id()]);
            }
        }
    }
}

#[test]
fn round_trip_through_json() {
    for alg in [Algebra::allen(), Algebra::rcc8()] {
        let again = load_algebra(&alg.to_json()).unwrap();
        assert_eq!(&again, alg);
    }
}

#[test]
fn disconnected_graph_is_rejected() {
    let mut json: serde_json::Value = serde_json::from_str(&Algebra::allen().to_json()).unwrap();
    json["neighborhood"] = serde_json::json!([]);
    let err = load_algebra(&json.to_string()).unwrap_err();
    assert_eq!(err, AlgebraError::Disconnected);
    assert_eq!(err.to_string(), "neighborhood graph disconnected");
}

#[test]
fn broken_duality_is_rejected() {
    let mut json: serde_json::Value = serde_json::from_str(&Algebra::allen().to_json()).unwrap();
    json["composition"]["b"]["m"] = serde_json::json!(["m"]);
    assert!(load_algebra(&json.to_string()).is_err());
}

fn any_relation(n: usize) -> impl Strategy<Value = Relation> {
    (0u64..(1 << n)).prop_map(Relation::from_bits)
}

proptest! {
    #[test]
    fn inverse_distributes_over_composition(r in any_relation(13), s in any_relation(13)) {
        let a = allen();
        prop_assert_eq!(a.inverse(a.compose(r, s)), a.compose(a.inverse(s), a.inverse(r)));
        prop_assert_eq!(a.inverse(a.inverse(r)), r);
    }

    #[test]
    fn composition_is_associative(r in any_relation(13), s in any_relation(13), t in any_relation(13)) {
        let a = allen();
        prop_assert_eq!(a.compose(a.compose(r, s), t), a.compose(r, a.compose(s, t)));
    }

    #[test]
    fn rcc8_inverse_distributes(r in any_relation(8), s in any_relation(8)) {
        let a = Algebra::rcc8();
        prop_assert_eq!(a.inverse(a.compose(r, s)), a.compose(a.inverse(s), a.inverse(r)));
    }

    #[test]
    fn complement_partitions(r in any_relation(13)) {
        let a = allen();
        let c = a.complement(r);
        prop_assert!(c.intersection(r).is_empty());
        prop_assert_eq!(c.union(r), a.universal());
    }
}
