mod common;

use common::*;
use globalctl::pauli::{
    build_generators, coeff_int, coeff_ratio, h_x, h_z, h_zz, to_dense, x_all, Letter, PauliString,
    PauliSum,
};
use proptest::prelude::*;

fn arb_sum(n: usize) -> impl Strategy<Value = PauliSum> {
    prop::collection::vec(
        (0u64..1 << n, 0u64..1 << n, -3i64..=3, 1i64..=3, -2i64..=2),
        0..6,
    )
    .prop_map(move |terms| {
        let mut s = PauliSum::zero(n);
        for (x, z, re, den, im) in terms {
            let c = globalctl::pauli::Coeff::new(
                num_rational::BigRational::new(re.into(), den.into()),
                num_rational::BigRational::from_integer(im.into()),
            );
            s.add_term(PauliString::from_bits(n, x, z), c);
        }
        s
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generators_are_real_symmetric_integer(g in arb_connected(2, 5)) {
        for h in build_generators(&g, true) {
            let m = h.to_integer_matrix().unwrap();
            prop_assert!(m.is_symmetric());
        }
        prop_assert!(h_z(g.n()).is_diagonal());
        prop_assert!(h_zz(&g).is_diagonal());
    }

    #[test]
    fn parity_commutes_with_qaoa_set(g in arb_connected(1, 8)) {
        let n = g.n();
        let p = x_all(n);
        prop_assert!(p.commutes_with(&h_x(n)).unwrap());
        prop_assert!(p.commutes_with(&h_zz(&g)).unwrap());
        prop_assert!(!p.commutes_with(&h_z(n)).unwrap());
    }

    #[test]
    fn dense_respects_commutator((a, b) in (arb_sum(3), arb_sum(3))) {
        let lhs = to_dense(&a.commutator(&b).unwrap()).unwrap();
        let rhs = to_dense(&a).unwrap().commutator(&to_dense(&b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn product_is_associative((a, b, c) in (arb_sum(3), arb_sum(3), arb_sum(3))) {
        let l = a.mul(&b).unwrap().mul(&c).unwrap();
        let r = a.mul(&b.mul(&c).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn jacobi((a, b, c) in (arb_sum(3), arb_sum(3), arb_sum(3))) {
        let t1 = a.commutator(&b.commutator(&c).unwrap()).unwrap();
        let t2 = b.commutator(&c.commutator(&a).unwrap()).unwrap();
        let t3 = c.commutator(&a.commutator(&b).unwrap()).unwrap();
        prop_assert!(t1.add(&t2).unwrap().add(&t3).unwrap().is_zero());
    }

    #[test]
    fn no_zero_terms_survive((a, b) in (arb_sum(3), arb_sum(3))) {
        let d = a.sub(&a).unwrap();
        prop_assert!(d.is_empty());
        for s in [a.add(&b).unwrap(), a.mul(&b).unwrap(), a.commutator(&b).unwrap()] {
            prop_assert!(s.terms().all(|(_, c)| !num_traits::Zero::is_zero(c)));
        }
    }

    #[test]
    fn text_round_trip(a in arb_sum(4)) {
        let back = PauliSum::from_text(&a.to_text(), Some(4)).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn matrix_round_trip(a in arb_sum(3)) {
        let m = a.to_sparse().unwrap();
        prop_assert_eq!(PauliSum::from_matrix(3, &m).unwrap(), a);
    }
}

#[test]
fn diagonal_generators_have_expected_entries() {
    let g = globalctl::graph::Graph::path(3).unwrap();
    let hz = to_dense(&h_z(3)).unwrap();
    let hzz = to_dense(&h_zz(&g)).unwrap();
    for b in 0..8usize {
        assert_eq!(*hz.get(b, b), coeff_int(3 - 2 * b.count_ones() as i64));
        let bit = |i: usize| (b >> i & 1) as i64;
        let zz: i64 = g
            .edges()
            .iter()
            .map(|&(i, j)| if bit(i) == bit(j) { 1 } else { -1 })
            .sum();
        assert_eq!(*hzz.get(b, b), coeff_int(zz));
    }
    assert!(hz.is_diagonal() && hzz.is_diagonal());
}

#[test]
fn text_format() {
    let mut s = PauliSum::zero(3);
    s.add_term(
        PauliString::from_letters(&[Letter::X, Letter::Z, Letter::I]),
        coeff_ratio(1, 2),
    );
    let text = s.to_text();
    assert!(
        text.lines()
            .any(|l| l.ends_with("XZI") || l.ends_with("IZX")),
        "{text}"
    );
    assert_eq!(PauliSum::from_text(&text, None).unwrap(), s);
    assert!(PauliSum::from_text("1 0 XQ", None).is_err());
}

#[test]
fn qubit_mismatch_is_an_error() {
    assert!(h_x(2).add(&h_x(3)).is_err());
    assert!(h_x(2).commutator(&h_x(3)).is_err());
}

#[test]
fn dense_matches_integer_matrix() {
    let g = random_connected(4, &mut rand::rng());
    for h in build_generators(&g, true) {
        let a = dense(&h);
        let b = to_dense(&h).unwrap();
        for r in 0..16 {
            for c in 0..16 {
                assert_eq!(coeff_int(a[(r, c)] as i64), *b.get(r, c));
            }
        }
    }
}
