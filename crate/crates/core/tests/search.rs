mod common;

use std::collections::BTreeSet;

use brickwall::embed::{
    enumerate_embeddings, find_edge_disjoint_packing, find_linkage, packing_defect, PackingOutcome, find_topological_minor, linkage_defect, LinkageOutcome, verify_embedding, Embedding, Pattern, SearchConstraints,
    SearchOutcome,
};
use brickwall::generators::{brick_wall, condensed_wall, CondensedLayout};
use brickwall::{Edge, EdgeClass, LabeledGraph, Role, VertexId};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn cycle(n: VertexId) -> LabeledGraph {
    let mut g = LabeledGraph::new();
    for v in 0..n {
        g.add_vertex(v, Role::Plain).unwrap();
    }
    for v in 0..n {
        g.add_edge(v, (v + 1) % n, EdgeClass::Plain).unwrap();
    }
    g
}

fn exists(host: &LabeledGraph, p: &Pattern) -> bool {
    match find_topological_minor(host, p, &SearchConstraints::default()).unwrap() {
        SearchOutcome::Found(e, _) => {
            assert!(verify_embedding(host, &e, p).unwrap());
            true
        }
        SearchOutcome::NotFound(s) => {
            assert!(s.complete);
            false
        }
        SearchOutcome::BudgetExceeded(_) => panic!("budget exceeded on a small instance"),
    }
}

#[test]
fn hexagon_in_six_cycle() {
    let p = Pattern::named("B1").unwrap();
    let en = enumerate_embeddings(&cycle(6), &p, &SearchConstraints::default()).unwrap();
    assert!(!en.budget_exceeded);
    let maps: BTreeSet<Vec<VertexId>> = en.embeddings.iter().map(|e| e.branch_map.clone()).collect();
    assert_eq!(maps.len(), 12);
    assert_eq!(en.embeddings.len(), 12);
}

#[test]
fn pattern_in_itself() {
    for n in 1..=5 {
        let (g, _) = brick_wall(n);
        let p = Pattern::named(&format!("B{n}")).unwrap();
        assert!(exists(&g, &p), "B{n}");
    }
}

#[test]
fn identity_embedding_verifies() {
    let (g, _) = brick_wall(1);
    let p = Pattern::named("B1").unwrap();
    let e = Embedding {
        pattern: p.name.clone(),
        branch_map: p.source.clone(),
        path_map: p.edges.iter().map(|e| brickwall::Path(e.chain.clone())).collect(),
    };
    assert!(verify_embedding(&g, &e, &p).unwrap());
}

#[test]
fn b3_in_wall_minus_ab_has_bottleneck_centre() {
    let r = 6;
    let l = CondensedLayout { r };
    let w = condensed_wall(r, false);
    let c = SearchConstraints::default().forbid([l.a(), l.b()]);
    let p = Pattern::named("B3").unwrap();
    let e = find_topological_minor(&w, &p, &c).unwrap().witness().cloned().expect("a B3 exists");
    let x = p.centre_vertices()[0];
    assert!((0..=r).any(|i| l.z(i) == e.branch_map[x]));
}

#[test]
fn no_b4_in_small_wall_minus_ab() {
    let l = CondensedLayout { r: 3 };
    let w = condensed_wall(3, true);
    let c = SearchConstraints::default().forbid([l.a(), l.b()]);
    let out = find_topological_minor(&w, &Pattern::named("B4").unwrap(), &c).unwrap();
    assert!(matches!(out, SearchOutcome::NotFound(s) if s.complete));
}

#[test]
fn packings_are_found_or_exhausted() {
    let b1 = Pattern::named("B1").unwrap();
    let (b4, _) = brick_wall(4);
    match find_edge_disjoint_packing(&b4, &b1, 2, &SearchConstraints::default()).unwrap() {
        PackingOutcome::Found(p, _) => assert!(packing_defect(&b4, &p, &b1).is_none()),
        other => panic!("{other:?}"),
    }
    let w = condensed_wall(2, true);
    assert!(matches!(
        find_edge_disjoint_packing(&w, &b1, 3, &SearchConstraints::default()).unwrap(),
        PackingOutcome::NotFound(s) if s.complete
    ));
}

#[test]
fn agrees_with_naive_oracle_on_fixed_seeds() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..40 {
        let n = 5 + rand::Rng::gen_range(&mut rng, 0..5);
        let m = n + rand::Rng::gen_range(&mut rng, 0..n);
        let host = common::random_graph(&mut rng, n, m);
        let k = 3 + rand::Rng::gen_range(&mut rng, 0..3);
        let p = common::random_pattern(&mut rng, k, k + 1);
        assert_eq!(exists(&host, &p), common::naive_contains(&host, &p));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn linkage_survives_restoring_edges(picks in proptest::collection::vec(any::<prop::sample::Index>(), 1..4)) {
        let w = condensed_wall(3, true);
        let edges: Vec<Edge> = w.edges().collect();
        let f: BTreeSet<Edge> = picks.iter().map(|i| *i.get(&edges)).collect();
        let has = |del: &BTreeSet<Edge>| {
            let g = w.delete_edges(&del.iter().copied().collect::<Vec<_>>()).unwrap();
            match find_linkage(&g, 100_000_000).unwrap() {
                LinkageOutcome::Found(l, _) => {
                    prop_assert!(linkage_defect(&g, &l, g.terminals().unwrap()).is_none());
                    Ok(true)
                }
                LinkageOutcome::NotFound(_) => Ok(false),
                LinkageOutcome::BudgetExceeded(_) => panic!("budget"),
            }
        };
        if has(&f)? {
            for e in &f {
                let mut fewer = f.clone();
                fewer.remove(e);
                prop_assert!(has(&fewer)?);
            }
        }
    }

    #[test]
    fn witnesses_verify_and_match_oracle(seed in any::<u64>(), n in 4usize..10, extra in 0usize..8, k in 2usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let host = common::random_graph(&mut rng, n, (n + extra).min(n * (n - 1) / 2));
        let p = common::random_pattern(&mut rng, k, k + 1);
        prop_assert_eq!(exists(&host, &p), common::naive_contains(&host, &p));
    }

    #[test]
    fn forbidden_vertices_are_avoided(seed in any::<u64>(), n in 5usize..10) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let host = common::random_graph(&mut rng, n, 2 * n);
        let p = common::random_pattern(&mut rng, 3, 3);
        let forbidden: [VertexId; 2] = [0, 1];
        let c = SearchConstraints::default().forbid(forbidden);
        if let SearchOutcome::Found(e, _) = find_topological_minor(&host, &p, &c).unwrap() {
            prop_assert!(e.vertices().iter().all(|v| !forbidden.contains(v)));
        } else {
            let rest = host.delete_vertices(&forbidden).unwrap();
            prop_assert!(!common::naive_contains(&rest, &p));
        }
    }
}
