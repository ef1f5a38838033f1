mod common;

use common::*;
use globalctl::graph::{
    automorphism_group, canonical_form, canonical_labeling, permutation_operator, Graph,
};
use globalctl::pauli::{h_x, h_z, h_zz};
use proptest::prelude::*;

fn arb_perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graph6_round_trip(g in arb_graph(1, 16)) {
        let back = Graph::from_graph6(&g.to_graph6()).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn automorphisms_preserve_edges(g in arb_graph(1, 8)) {
        let grp = automorphism_group(&g);
        for p in grp.elements(50_000).unwrap() {
            for i in 0..g.n() {
                for j in 0..g.n() {
                    prop_assert_eq!(g.has_edge(i, j), g.has_edge(p.apply(i), p.apply(j)));
                }
            }
        }
    }

    #[test]
    fn aut_order_matches_brute_force(g in arb_graph(1, 7)) {
        prop_assert_eq!(automorphism_group(&g).order(), brute_aut_order(&g));
    }

    #[test]
    fn canonical_form_is_relabeling_invariant((g, p) in arb_graph(1, 10).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), arb_perm(n))
    })) {
        let h = g.permuted(&perm(p));
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
    }

    #[test]
    fn canonical_form_is_idempotent(g in arb_graph(1, 10)) {
        let c = canonical_form(&g);
        prop_assert_eq!(canonical_form(&c), c.clone());
        prop_assert_eq!(g.permuted(&canonical_labeling(&g)), c);
    }

    #[test]
    fn operator_is_a_homomorphism((a, b) in (arb_perm(4), arb_perm(4))) {
        let (pa, pb) = (perm(a), perm(b));
        let lhs = permutation_operator(&pa, 4).mul(&permutation_operator(&pb, 4));
        prop_assert_eq!(lhs, permutation_operator(&pa.compose(&pb), 4));
    }

    #[test]
    fn operator_commutes_with_hzz_iff_automorphism((g, p) in arb_graph(2, 5).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), arb_perm(n))
    })) {
        let n = g.n();
        let q = perm(p);
        let op = permutation_operator(&q, n);
        for h in [h_x(n), h_z(n)] {
            prop_assert!(op.commutator(&h.to_integer_matrix().unwrap()).is_zero());
        }
        let zz = h_zz(&g).to_integer_matrix().unwrap();
        prop_assert_eq!(op.commutator(&zz).is_zero(), g.is_automorphism(&q));
    }
}

#[test]
fn path_and_star_differ() {
    let p4 = Graph::path(4).unwrap();
    let s3 = Graph::star(3).unwrap();
    assert_ne!(canonical_form(&p4), canonical_form(&s3));
    assert_eq!(automorphism_group(&p4).order(), 2);
    assert_eq!(automorphism_group(&s3).order(), 6);
}

#[test]
fn transposition_is_swap() {
    let t = globalctl::graph::Permutation::transposition(2, 0, 1);
    let m = permutation_operator(&t, 2);
    assert_eq!(m.get(0b01, 0b10), 1);
    assert_eq!(m.get(0b10, 0b01), 1);
    assert_eq!(m.get(0b00, 0b00), 1);
    assert_eq!(m.get(0b11, 0b11), 1);
}

#[test]
fn orbits_cover_vertices() {
    let g = Graph::path(5).unwrap();
    let orbits = automorphism_group(&g).orbits();
    assert_eq!(orbits, vec![0, 1, 2, 1, 0]);
}
