use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{commutant_with, CommutantBasis, CommutantOptions};
use crate::error::{Error, Result};
use crate::graph::{automorphism_group, permutation_operator, Graph, Permutation};
use crate::linalg::sparse::rref_dense;
use crate::linalg::{exact, modp};
use crate::pauli::{build_generators, coeff_i, DenseOperator, PauliString, PauliSum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Commutant dimension against the part explained by graph automorphisms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryReport {
    pub aut_order: u64,
    pub commutant_dim: usize,
    pub aut_span_dim: usize,
    pub has_hidden: bool,
}

/// Largest automorphism group enumerated when an extra generator is present.
const AUT_ELEMENT_CAP: u64 = 50_000;

/// Symmetry report for the full global-control set of `g`, optionally extended by `extra`.
pub fn symmetry_report(g: &Graph, extra: Option<&PauliSum>) -> Result<SymmetryReport> {
    Ok(symmetry_report_with(g, extra, &CommutantOptions::default())?.0)
}

pub fn symmetry_report_with(
    g: &Graph,
    extra: Option<&PauliSum>,
    opts: &CommutantOptions,
) -> Result<(SymmetryReport, CommutantBasis)> {
    symmetry_report_for(g, build_generators(g, true), extra, opts)
}

/// Symmetry report for an arbitrary generator set on the qubits of `g`.
pub fn symmetry_report_for(
    g: &Graph,
    mut gens: Vec<PauliSum>,
    extra: Option<&PauliSum>,
    opts: &CommutantOptions,
) -> Result<(SymmetryReport, CommutantBasis)> {
    let n = g.n();
    if let Some(e) = extra {
        if e.n() != n {
            return Err(Error::QubitMismatch {
                left: n,
                right: e.n(),
            });
        }
        gens.push(e.clone());
    }
    let basis = commutant_with(n, &gens, opts)?;
    let aut = automorphism_group(g);
    let elements = aut.elements(AUT_ELEMENT_CAP)?;
    let span = permutation_span_dim(&elements, opts.seed);
    let aut_span_dim = match extra {
        None => span,
        Some(e) => span - commutator_rank(n, &elements, e)?,
    };
    let commutant_dim = basis.dim();
    Ok((
        SymmetryReport {
            aut_order: aut.order(),
            commutant_dim,
            aut_span_dim,
            has_hidden: commutant_dim > aut_span_dim,
        },
        basis,
    ))
}

/// Exact rank limit for the permutation Gram matrix; larger groups use two primes.
const EXACT_GRAM_MAX: usize = 64;

fn cycles(p: &Permutation) -> u32 {
    let mut seen = vec![false; p.len()];
    let mut c = 0;
    for s in 0..p.len() {
        if !seen[s] {
            c += 1;
            let mut v = s;
            while !seen[v] {
                seen[v] = true;
                v = p.apply(v);
            }
        }
    }
    c
}

/// `dim span{P_s}`: the rank of the Gram matrix `tr(P_s^T P_t) = 2^cycles(s^-1 t)`.
///
/// Permutation operators of distinct permutations need not be independent (the full
/// symmetric group on four or more qubits is not), so the group order is only an upper bound.
pub fn permutation_span_dim(elements: &[Permutation], seed: u64) -> usize {
    let inv: Vec<Permutation> = elements.iter().map(Permutation::inverse).collect();
    let gram: Vec<Vec<u64>> = inv
        .iter()
        .map(|si| {
            elements
                .iter()
                .map(|t| 1u64 << cycles(&si.compose(t)))
                .collect()
        })
        .collect();
    if elements.len() <= EXACT_GRAM_MAX {
        let rows: Vec<Vec<BigInt>> = gram
            .iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        return exact::rank(&rows);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..2)
        .map(|_| {
            let p = modp::random_prime(&mut rng);
            let mut m: Vec<Vec<u64>> = gram
                .iter()
                .map(|r| r.iter().map(|&v| v % p).collect())
                .collect();
            rref_dense(&mut m, p).len()
        })
        .max()
        .unwrap_or(0)
}

/// Rank of `c -> [sum_s c_s P_s, extra]`.
fn commutator_rank(n: usize, elements: &[Permutation], extra: &PauliSum) -> Result<usize> {
    let e = extra.to_integer_matrix()?;
    let mut cols: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let comms: Vec<_> = elements
        .iter()
        .map(|s| permutation_operator(s, n).commutator(&e))
        .collect();
    for c in &comms {
        for (r, k, _) in c.triplets() {
            let next = cols.len();
            cols.entry((r, k)).or_insert(next);
        }
    }
    let mut rows = vec![vec![BigInt::zero(); elements.len()]; cols.len()];
    for (j, c) in comms.iter().enumerate() {
        for (r, k, v) in c.triplets() {
            rows[cols[&(r, k)]][j] = BigInt::from(*v);
        }
    }
    Ok(exact::rank(&rows))
}

/// True iff no non-identity automorphism operator commutes with `h`.
///
/// Conjugating by a qubit permutation only moves letters, so the test is exact at the
/// Pauli level for any size.
pub fn breaks_all_automorphisms(g: &Graph, h: &PauliSum) -> Result<bool> {
    if h.n() != g.n() {
        return Err(Error::QubitMismatch {
            left: g.n(),
            right: h.n(),
        });
    }
    let aut = automorphism_group(g);
    let els = aut.elements(AUT_ELEMENT_CAP)?;
    Ok(els
        .iter()
        .filter(|s| !s.is_identity())
        .all(|s| h.permuted(s) != *h))
}

/// Whether `i` times the traceless Hermitian part of `s` lies in the real span of `basis`.
pub fn membership_in_span(s: &DenseOperator, basis: &[DenseOperator]) -> Result<bool> {
    let sp = s.to_pauli()?;
    let bp: Vec<PauliSum> = basis
        .iter()
        .map(DenseOperator::to_pauli)
        .collect::<Result<_>>()?;
    pauli_membership_in_span(&sp, &bp)
}

/// Pauli-coordinate version of [`membership_in_span`], exact over the rationals.
pub fn pauli_membership_in_span(s: &PauliSum, basis: &[PauliSum]) -> Result<bool> {
    let target = s.hermitian_part().traceless_part().scale(&coeff_i());
    if target.is_zero() {
        return Ok(true);
    }
    let mut index: BTreeMap<PauliString, usize> = BTreeMap::new();
    for p in basis.iter().chain(std::iter::once(&target)) {
        if p.n() != s.n() {
            return Err(Error::QubitMismatch {
                left: s.n(),
                right: p.n(),
            });
        }
        for (k, _) in p.terms() {
            let next = index.len();
            index.entry(*k).or_insert(next);
        }
    }
    let width = 2 * index.len();
    let real_row = |p: &PauliSum| {
        let mut v = vec![BigRational::zero(); width];
        for (k, c) in p.terms() {
            let j = index[k];
            v[2 * j] = c.re.clone();
            v[2 * j + 1] = c.im.clone();
        }
        v
    };
    let mut rows: Vec<Vec<BigRational>> = basis.iter().map(real_row).collect();
    let before = exact::rref(rows.clone()).1.len();
    rows.push(real_row(&target));
    Ok(exact::rref(rows).1.len() == before)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::{single, to_dense, Letter};

    #[test]
    fn identity_in_identity_span() {
        let i = to_dense(&PauliSum::identity(2)).unwrap();
        assert!(membership_in_span(&i, std::slice::from_ref(&i)).unwrap());
    }

    #[test]
    fn x_not_in_z_span() {
        let x0 = to_dense(&single(2, 0, Letter::X)).unwrap();
        let z0 = to_dense(&single(2, 0, Letter::Z).scale(&coeff_i())).unwrap();
        let z1 = to_dense(&single(2, 1, Letter::Z).scale(&coeff_i())).unwrap();
        assert!(!membership_in_span(&x0, &[z0.clone(), z1.clone()]).unwrap());
        let z = to_dense(&single(2, 0, Letter::Z)).unwrap();
        assert!(membership_in_span(&z, &[z0, z1]).unwrap());
    }

    #[test]
    fn p3_breaking() {
        let g = Graph::path(3).unwrap();
        assert!(breaks_all_automorphisms(&g, &single(3, 0, Letter::X)).unwrap());
        assert!(!breaks_all_automorphisms(&g, &crate::pauli::h_x(3)).unwrap());
    }

    #[test]
    fn symmetric_group_span_is_smaller_than_order() {
        let k4 = Graph::complete(4).unwrap();
        let els = automorphism_group(&k4).elements(100).unwrap();
        assert_eq!(els.len(), 24);
        // spins 2, 1, 0 with multiplicities 1, 3, 2
        assert_eq!(permutation_span_dim(&els, 1), 14);
        let r = symmetry_report(&k4, None).unwrap();
        assert_eq!(r.aut_span_dim, 14);
        assert_eq!(r.has_hidden, r.commutant_dim > 14);
    }

    #[test]
    fn p3_report() {
        let r = symmetry_report(&Graph::path(3).unwrap(), None).unwrap();
        assert_eq!(r.aut_order, 2);
        assert!(r.commutant_dim >= 2);
        assert_eq!(r.has_hidden, r.commutant_dim > 2);
    }
}
