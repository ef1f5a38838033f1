use globalctl::commutant::symmetry_report;
use globalctl::constructions::{
    build_result_one_from, build_result_two, locate_in_graphs, verify_result_one,
    verify_result_two, Constructions, DenseChecks, SFormula,
};
use globalctl::graph::Graph;
use globalctl::lie::central_membership;
use globalctl::pauli::{build_generators, PauliSum};

#[test]
fn result_two_identities() {
    for interior in [7, 9] {
        let b = build_result_two(interior).unwrap();
        assert_eq!(b.n(), interior + 4);
        let r = verify_result_two(&b, DenseChecks::default()).unwrap();
        assert!(r.passed(), "N = {interior}: {r:?}");
        assert_eq!(r.aut_order, 4);
        assert!(r.dense.is_none());
    }
}

#[test]
fn result_two_below_minimum_is_refused() {
    assert!(build_result_two(5).is_err());
}

#[test]
fn result_two_projectors() {
    let b = build_result_two(7).unwrap();
    let mut total = PauliSum::zero(b.n());
    for s1 in [1, -1] {
        for s2 in [1, -1] {
            let p = b.projector(s1, s2).unwrap();
            assert_eq!(p.mul(&p).unwrap(), p);
            total = total.add(&p).unwrap();
        }
    }
    assert_eq!(total, PauliSum::identity(b.n()));
    let h = b.h_break.clone();
    let minus = b.projector(-1, -1).unwrap();
    assert!(minus.commutes_with(&h).unwrap());
    assert!(!b.r1.commutes_with(&h).unwrap());
    assert!(!b.r2.commutes_with(&h).unwrap());
}

#[test]
fn result_one_symmetric_formula() {
    let cfg = Constructions::builtin();
    let named = cfg.named("H").unwrap();
    let b = build_result_one_from(named, SFormula::Symmetric).unwrap();
    let r = verify_result_one(&b).unwrap();
    assert!(r.passed(), "{r:?}");
    assert!(!central_membership(&b.generators, &b.s).unwrap());
    let rep = symmetry_report(&b.graph, None).unwrap();
    assert_eq!(rep.aut_order, 1);
    assert_eq!(rep.commutant_dim, 2);
    assert!(rep.has_hidden);
}

#[test]
fn result_one_literal_formula_misses_hzz() {
    let cfg = Constructions::builtin();
    let b = build_result_one_from(cfg.named("H").unwrap(), SFormula::Literal).unwrap();
    let r = verify_result_one(&b).unwrap();
    assert!(r.hermitian && r.commutes_hx && r.commutes_hz);
    assert!(!r.commutes_hzz);
    assert!(!r.passed());
}

#[test]
fn locate_finds_the_named_graph() {
    let cfg = Constructions::builtin();
    let g = cfg.named("H").unwrap().graph().unwrap();
    let found = locate_in_graphs(std::slice::from_ref(&g), SFormula::Symmetric).unwrap();
    assert!(!found.is_empty());
    assert!(found
        .iter()
        .all(|l| l.graph6 == g.to_graph6() && l.labeling.len() == 7));
    assert!(locate_in_graphs(&[g], SFormula::Literal)
        .unwrap()
        .is_empty());
}

#[test]
fn hidden_symmetry_at_six_lies_in_the_algebra() {
    let g = Graph::from_graph6("E@Uw").unwrap();
    let gens = build_generators(&g, true);
    let basis = globalctl::commutant::commutant_fast(6, &gens).unwrap();
    assert_eq!(basis.dim(), 2);
    let s = (0..basis.hermitian_count())
        .map(|k| basis.pauli(k).unwrap())
        .find(|p| !p.traceless_part().is_zero())
        .unwrap();
    assert!(central_membership(&gens, &s).unwrap());
}
