use enumera_core::fibre::{self, check_triple_point_formula, FibreGraph};
use enumera_core::formulas::severi_degree;
use enumera_core::kummer::{self, Incidence, SIZE};
use enumera_core::{tetra, triangle, Exec};
use num_bigint::BigInt;
use proptest::prelude::*;

#[test]
fn every_quartic_family_hits_the_severi_degrees() {
    let c = tetra::build_config(0).unwrap();
    for delta in 1..=3 {
        let want = severi_degree(4, delta).unwrap();
        let tetra_total = tetra::enumerate_ledger(&c, delta, Exec::default()).unwrap().total();
        let kummer_total = kummer::kummer_ledger(delta).unwrap().total();
        assert_eq!(BigInt::from(tetra_total), want);
        assert_eq!(BigInt::from(kummer_total), want);
    }
}

#[test]
fn monoid_and_triangle_agree() {
    let c = tetra::build_config(2).unwrap();
    let l = tetra::monoid_crude_limit(&c, 3).unwrap();
    assert_eq!(l.entries[0].count, triangle::ledger(1).unwrap().total());
    assert_eq!(l.entries[1].weight() + l.entries[2].weight(), 15);
    let (same, other) = tetra::one_node_audit(&c, 3).unwrap();
    assert_eq!((same.total, other.total), (36, 36));
}

#[test]
fn kummer_ledger_json_is_stable() {
    let json = serde_json::to_string(&kummer::kummer_ledger(3).unwrap()).unwrap();
    assert_eq!(
        json,
        concat!(
            r#"{"target_name":"kummer delta=3","target_degree":3200,"entries":["#,
            r#"{"label":"planes through three nodes on no common trope","count":240,"multiplicity":8,"provenance":"count: count_offtrope_triples(theta); multiplicity 8, points in an intersection of three quadrics"},"#,
            r#"{"label":"tropes","count":16,"multiplicity":80,"provenance":"count: tropes; multiplicity: dejonquieres(8,0,3)"}]}"#
        )
    );
}

#[test]
fn genericity_report_is_mode_independent() {
    let c = tetra::build_config(4).unwrap();
    assert_eq!(
        tetra::verify_genericity_with(&c, Exec::Sequential),
        tetra::verify_genericity_with(&c, Exec::Parallel)
    );
}

#[test]
fn fibre_file_round_trip() {
    let g = fibre::bundled_kummer_fibre().unwrap();
    let dir = std::env::temp_dir().join(format!("enumera-fibre-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("kummer.json");
    std::fs::write(&path, g.to_json()).unwrap();
    let back = FibreGraph::from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(check_triple_point_formula(&back).unwrap().pass());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn malformed_fibre_rejected_on_load() {
    let mut v: serde_json::Value = serde_json::from_str(&fibre::build_kummer_fibre().to_json()).unwrap();
    v["double_curves"][0]["side_b"]["component"] = "Q99".into();
    assert!(FibreGraph::from_json(&v.to_string()).is_err());
}

fn relabel(inc: &Incidence, nodes: &[usize], tropes: &[usize]) -> Incidence {
    Incidence::from_predicate("relabelled", inc.nodes.clone(), inc.tropes.clone(), |n, t| inc.incident(nodes[n], tropes[t]))
}

fn shuffled() -> impl Strategy<Value = Vec<usize>> {
    Just((0..SIZE).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]

    #[test]
    fn ledgers_are_seed_independent(seed in any::<u64>()) {
        let c = tetra::build_config(seed).unwrap();
        prop_assert!(tetra::verify_genericity(&c).is_pass());
        for delta in 1..=3 {
            let shape = tetra::enumerate_ledger(&c, delta, Exec::default()).unwrap().shape();
            prop_assert_eq!(shape.as_slice(), enumera_core::verify::TETRA_SHAPES[delta as usize - 1]);
        }
    }

    #[test]
    fn relabelling_preserves_the_structure(nodes in shuffled(), tropes in shuffled()) {
        let inc = relabel(&kummer::build_theta_model(), &nodes, &tropes);
        prop_assert!(inc.verify_16_6().is_empty());
        prop_assert_eq!(inc.count_offtrope_triples(), 240);
        let g = kummer::automorphism_group(&inc).unwrap();
        prop_assert_eq!(g.order_u64(), Some(11520));
        prop_assert!(kummer::check_transitivity(&g, 2));
    }
}
