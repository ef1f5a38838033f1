//! Membership of a symmetry in the generated algebra through its centre.
//!
//! For a compact algebra `g` generated by `iH_j`, the orthogonal projection `pi` onto the
//! commutant kills commutators, and `pi(g)` is the centre of `g`. A commutant element `iS`
//! therefore lies in `g` iff `S` lies in the span of the `pi(H_j)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::commutant::{commutant_with, CommutantBasis, CommutantOptions};
use crate::error::{Error, Result};
use crate::linalg::{exact, SparseMatrix};
use crate::pauli::PauliSum;

fn symmetric_matrix(p: &PauliSum) -> Result<SparseMatrix<BigInt>> {
    let m = p.to_integer_matrix()?.map(|&v| BigInt::from(v));
    if !m.is_symmetric() {
        return Err(Error::InvalidOperator(
            "operator is not real symmetric".into(),
        ));
    }
    Ok(m)
}

/// Solve `g x = b_j` for every right-hand side, `g` invertible.
fn solve(g: &[Vec<BigRational>], rhs: &[Vec<BigRational>]) -> Result<Vec<Vec<BigRational>>> {
    let d = g.len();
    let rows: Vec<Vec<BigRational>> = (0..d)
        .map(|i| {
            let mut r = g[i].clone();
            r.extend(rhs.iter().map(|b| b[i].clone()));
            r
        })
        .collect();
    let (red, piv) = exact::rref(rows);
    if piv.len() < d || piv[d - 1] != d - 1 {
        return Err(Error::Verification("singular Gram matrix".into()));
    }
    Ok((0..rhs.len())
        .map(|j| (0..d).map(|i| red[i][d + j].clone()).collect())
        .collect())
}

/// Whether `iS0` lies in the algebra generated by `i H_j`, where `S0` is the traceless part
/// of `s`. `s` must be a real symmetric element of the commutant.
pub fn central_membership(generators: &[PauliSum], s: &PauliSum) -> Result<bool> {
    let n = s.n();
    let basis = commutant_with(n, generators, &CommutantOptions::default())?;
    central_membership_with(generators, s, &basis)
}

pub fn central_membership_with(
    generators: &[PauliSum],
    s: &PauliSum,
    basis: &CommutantBasis,
) -> Result<bool> {
    let sym = basis.hermitian();
    let dim = basis.space_dim();
    let q = |v: BigInt| BigRational::from_integer(v);
    let gram: Vec<Vec<BigRational>> = sym
        .iter()
        .map(|a| sym.iter().map(|b| q(a.frobenius(b))).collect())
        .collect();
    let sm = symmetric_matrix(s)?;
    let mut rhs: Vec<Vec<BigRational>> = Vec::new();
    rhs.push(sym.iter().map(|b| q(b.frobenius(&sm))).collect());
    rhs.push(sym.iter().map(|b| q(b.trace())).collect());
    for h in generators {
        let hm = symmetric_matrix(h)?;
        rhs.push(sym.iter().map(|b| q(b.frobenius(&hm))).collect());
    }
    let sol = solve(&gram, &rhs)?;
    // s must be reproduced exactly by its projection
    let mut back = SparseMatrix::<BigRational>::zeros(dim);
    for (b, c) in sym.iter().zip(&sol[0]) {
        back = back.add(&b.map(|v| q(v.clone())).scale(c));
    }
    if back != sm.map(|v| q(v.clone())) {
        return Err(Error::InvalidOperator(
            "operator is not in the commutant".into(),
        ));
    }
    let shift = BigRational::new(sm.trace(), BigInt::from(dim));
    let target: Vec<BigRational> = sol[0]
        .iter()
        .zip(&sol[1])
        .map(|(c, e)| c - &shift * e)
        .collect();
    if target.iter().all(Zero::is_zero) {
        return Ok(true);
    }
    let mut rows: Vec<Vec<BigRational>> = sol[2..].to_vec();
    let before = exact::rref(rows.clone()).1.len();
    rows.push(target);
    Ok(exact::rref(rows).1.len() == before)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::lie::lie_closure;
    use crate::pauli::{build_generators, swap_operator};

    #[test]
    fn agrees_with_closure_on_p3_reflection() {
        let g = Graph::path(3).unwrap();
        let gens = build_generators(&g, true);
        let r = swap_operator(0, 2, 3).unwrap();
        let central = central_membership(&gens, &r).unwrap();
        let closure = lie_closure(&gens, None).unwrap();
        assert_eq!(central, closure.contains(&r).unwrap());
    }

    #[test]
    fn rejects_non_symmetry() {
        let g = Graph::path(3).unwrap();
        let gens = build_generators(&g, true);
        let x0 = crate::pauli::single(3, 0, crate::pauli::Letter::X);
        assert!(central_membership(&gens, &x0).is_err());
    }
}
