mod common;

use std::collections::{BTreeMap, BTreeSet};

use brickwall::generators::{
    apply_subdivision, brick_wall, condensed_wall, gen_elementary_grid, gen_elementary_wall, CondensedLayout,
};
use brickwall::{Edge, LabeledGraph, VertexId};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn condensed_wall_matches_definition() {
    for r in 1..=8 {
        for jump in [true, false] {
            let g = condensed_wall(r, jump);
            let named = common::rename_by_roles(&g).expect("every vertex has a wall role");
            let want = common::named_wall(r, jump);
            assert_eq!(named.vertices, want.vertices, "r={r}");
            assert_eq!(named.edges, want.edges, "r={r} jump={jump}");
            assert_eq!(g.num_vertices(), want.vertices.len());
            assert_eq!(g.num_edges(), want.edges.len());
        }
    }
}

#[test]
fn small_wall_counts() {
    let counts: Vec<(usize, usize)> = [1, 2, 5].iter().map(|&r| {
        let g = condensed_wall(r, true);
        (g.num_vertices(), g.num_edges())
    }).collect();
    assert_eq!(counts, vec![(6, 6), (13, 20), (58, 110)]);
}

#[test]
fn layers_are_the_blocks_without_terminals() {
    for r in 1..=6 {
        let l = CondensedLayout { r };
        // At r = 1 a layer of W- is a bare path, not a block.
        for jump in [true, false].into_iter().filter(|&j| j || r > 1) {
            let g = condensed_wall(r, jump).delete_vertices(&[l.a(), l.b()]).unwrap();
            let blocks: BTreeSet<BTreeSet<VertexId>> = g.blocks().into_iter().collect();
            let layers: BTreeSet<BTreeSet<VertexId>> = (1..=r).map(|j| l.layer_vertices(j)).collect();
            assert_eq!(blocks, layers, "r={r} jump={jump}");
        }
    }
}

#[test]
fn wall_six_by_four() {
    let (g, cert) = gen_elementary_wall(6, 4).unwrap();
    assert_eq!(cert.bricks.len(), 24);
    assert_eq!(cert.outer_bricks().len(), 16);
    cert.validate(&g).unwrap();
    assert!(g.max_degree() <= 3);
    assert!(g.vertices().all(|v| g.degree(v) >= 2));
}

#[test]
fn grid_counts() {
    for m in 1..=6 {
        for n in 1..=6 {
            let g = gen_elementary_grid(m, n).unwrap();
            assert_eq!(g.num_vertices(), m * n);
            assert_eq!(g.num_edges(), m * (n - 1) + n * (m - 1));
        }
    }
}

#[test]
fn numbered_brick_walls() {
    for n in 1..=10 {
        let (g, cert) = brick_wall(n);
        assert_eq!(cert.bricks.len(), n);
        cert.validate(&g).unwrap();
        assert!(g.max_degree() <= 3 && g.is_connected());
    }
}

fn arbitrary_graph() -> impl Strategy<Value = LabeledGraph> {
    (any::<u64>(), 2usize..12, 0usize..20).prop_map(|(seed, n, m)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        common::random_graph(&mut rng, n, m.min(n * (n - 1) / 2))
    })
}

fn is_simple(g: &LabeledGraph) -> bool {
    g.edges().all(|e| e.0 != e.1 && g.contains_vertex(e.0) && g.contains_vertex(e.1))
}

proptest! {
    #[test]
    fn subdivision_adds_a_path(g in arbitrary_graph(), pick in any::<prop::sample::Index>(), t in 0usize..5) {
        let edges: Vec<Edge> = g.edges().collect();
        prop_assume!(!edges.is_empty());
        let e = *pick.get(&edges);
        let (h, inner) = g.subdivide_edge_with(e, t).unwrap();
        prop_assert_eq!(h.num_vertices(), g.num_vertices() + t);
        prop_assert_eq!(h.num_edges(), g.num_edges() + t);
        prop_assert_eq!(inner.len(), t);
        prop_assert!(inner.iter().all(|&v| h.degree(v) == 2));
        prop_assert!(g.vertices().all(|v| h.degree(v) == g.degree(v)));
        prop_assert_eq!(t == 0, h.has_edge(e.0, e.1));
        prop_assert!(is_simple(&h));
    }

    #[test]
    fn r_fold_counts(g in arbitrary_graph(), r in 1usize..5) {
        let (h, mids) = g.r_fold_with(r).unwrap();
        prop_assert_eq!(h.num_vertices(), g.num_vertices() + r * g.num_edges());
        prop_assert_eq!(h.num_edges(), 2 * r * g.num_edges());
        prop_assert!(g.vertices().all(|v| h.degree(v) == r * g.degree(v)));
        prop_assert_eq!(mids.len(), g.num_edges());
        for (e, ms) in &mids {
            prop_assert!(ms.iter().all(|&m| h.degree(m) == 2 && h.has_edge(e.0, m) && h.has_edge(m, e.1)));
        }
        prop_assert!(is_simple(&h));
    }

    #[test]
    fn identification_stays_simple(g in arbitrary_graph(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let vs: Vec<VertexId> = g.vertices().collect();
        let (u, v) = (*i.get(&vs), *j.get(&vs));
        prop_assume!(u != v);
        let h = g.identify_vertices(u, v).unwrap();
        let nu: BTreeSet<VertexId> = g.neighbors(u).collect();
        let nv: BTreeSet<VertexId> = g.neighbors(v).collect();
        let merged: BTreeSet<VertexId> = nu.union(&nv).copied().filter(|&w| w != u && w != v).collect();
        prop_assert_eq!(h.num_vertices(), g.num_vertices() - 1);
        prop_assert_eq!(h.neighbors(u).collect::<BTreeSet<_>>(), merged);
        prop_assert!(!h.contains_vertex(v));
        prop_assert!(is_simple(&h));
    }

    #[test]
    fn deletion_removes_exactly(g in arbitrary_graph(), picks in proptest::collection::vec(any::<prop::sample::Index>(), 0..5)) {
        let edges: Vec<Edge> = g.edges().collect();
        prop_assume!(!edges.is_empty());
        let del: BTreeSet<Edge> = picks.iter().map(|p| *p.get(&edges)).collect();
        let h = g.delete_edges(&del.iter().copied().collect::<Vec<_>>()).unwrap();
        let left: BTreeSet<Edge> = h.edges().collect();
        let want: BTreeSet<Edge> = edges.iter().copied().filter(|e| !del.contains(e)).collect();
        prop_assert_eq!(left, want);
        prop_assert_eq!(h.num_vertices(), g.num_vertices());
    }

    #[test]
    fn subdivided_walls_keep_their_bricks(rows in 1usize..6, cols in 1usize..5, seed in any::<u64>()) {
        let (g, cert) = gen_elementary_wall(rows, cols).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let plan: BTreeMap<Edge, usize> = g.edges().map(|e| (e, rand::Rng::gen_range(&mut rng, 0..3))).collect();
        let (h, c2) = apply_subdivision(&g, &cert, &plan).unwrap();
        prop_assert_eq!(h.num_vertices(), g.num_vertices() + plan.values().sum::<usize>());
        prop_assert_eq!(c2.bricks.len(), cert.bricks.len());
        prop_assert!(c2.validate(&h).is_ok());
        prop_assert_eq!(c2.outer_bricks().len(), cert.outer_bricks().len());
    }

    #[test]
    fn condensed_wall_degrees(r in 1usize..9) {
        let l = CondensedLayout { r };
        let g = condensed_wall(r, true);
        prop_assert_eq!(g.degree(l.a()), r);
        prop_assert_eq!(g.degree(l.b()), r);
        for j in 1..=r {
            for p in 1..=2 * r {
                prop_assert_eq!(g.degree(l.u(j, p)), 3);
            }
        }
        let h = condensed_wall(r, false);
        prop_assert_eq!(g.num_edges() - h.num_edges(), r);
    }
}
