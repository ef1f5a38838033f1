//! Exact commutants of generator sets, hidden-symmetry reports and automorphism breaking.
//!
//! The kernel of the stacked commutator maps is found modulo random 62-bit primes, lifted
//! to the rationals by Chinese remaindering and rational reconstruction, and then checked
//! exactly: every returned basis element has zero integer commutator with every generator.
//! Since the kernel dimension modulo a prime bounds the rational dimension from above and
//! the verified basis is independent, the reported dimension is exact.

mod chain;
mod generic;
mod report;
mod space;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{exact, modp, sparse::rref_dense, SparseMatrix};
use crate::pauli::{Coeff, DenseOperator, PauliSum};

pub use report::{
    breaks_all_automorphisms, membership_in_span, pauli_membership_in_span, permutation_span_dim,
    symmetry_report, symmetry_report_for, symmetry_report_with, SymmetryReport,
};
pub(crate) use space::BlockSpace;

/// How unknowns are laid out before solving.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// All `D^2` matrix entries are unknowns.
    BruteForce,
    /// Unknowns restricted to the joint level sets of the diagonal generators.
    Fast,
}

/// Tuning knobs for the commutant solver.
#[derive(Clone, Debug)]
pub struct CommutantOptions {
    pub seed: u64,
    pub max_unknowns: usize,
    pub max_primes: usize,
}

impl Default for CommutantOptions {
    fn default() -> Self {
        CommutantOptions {
            seed: 0x5eed,
            max_unknowns: 1 << 22,
            max_primes: 8,
        }
    }
}

/// Exact basis of the commutant of a generator set.
///
/// Elements are primitive integer matrices. When every generator is real symmetric the
/// first `hermitian_count` elements are symmetric and the rest antisymmetric.
#[derive(Clone, Debug)]
pub struct CommutantBasis {
    n: Option<usize>,
    space_dim: usize,
    basis: Vec<SparseMatrix<BigInt>>,
    hermitian_count: usize,
    split: bool,
}

impl CommutantBasis {
    /// Qubit count, if the underlying space is a qubit register.
    pub fn n(&self) -> Option<usize> {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn space_dim(&self) -> usize {
        self.space_dim
    }

    pub fn basis(&self) -> &[SparseMatrix<BigInt>] {
        &self.basis
    }

    pub fn hermitian_count(&self) -> usize {
        self.hermitian_count
    }

    pub fn is_split(&self) -> bool {
        self.split
    }

    /// Symmetric basis elements (all of them when the basis is not split).
    pub fn hermitian(&self) -> &[SparseMatrix<BigInt>] {
        &self.basis[..self.hermitian_count]
    }

    /// Exact dense view of element `k`.
    pub fn dense(&self, k: usize) -> Result<DenseOperator> {
        let n = self
            .n
            .ok_or_else(|| Error::InvalidOperator("not a qubit space".into()))?;
        DenseOperator::from_sparse(n, &to_coeff(&self.basis[k]))
    }

    /// Pauli expansion of element `k`.
    pub fn pauli(&self, k: usize) -> Result<PauliSum> {
        let n = self
            .n
            .ok_or_else(|| Error::InvalidOperator("not a qubit space".into()))?;
        PauliSum::from_matrix(n, &to_coeff(&self.basis[k]))
    }

    /// Whether `m` lies in the rational span of the basis.
    pub fn contains(&self, m: &SparseMatrix<BigInt>) -> bool {
        let mut cols: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for b in self.basis.iter().chain(std::iter::once(m)) {
            for (r, c, _) in b.triplets() {
                let k = cols.len();
                cols.entry((r, c)).or_insert(k);
            }
        }
        let row = |b: &SparseMatrix<BigInt>| {
            let mut v = vec![BigInt::zero(); cols.len()];
            for (r, c, x) in b.triplets() {
                v[cols[&(r, c)]] = x.clone();
            }
            v
        };
        let mut rows: Vec<Vec<BigInt>> = self.basis.iter().map(row).collect();
        let before = exact::rank(&rows);
        rows.push(row(m));
        exact::rank(&rows) == before
    }
}

pub(crate) fn to_coeff(m: &SparseMatrix<BigInt>) -> SparseMatrix<Coeff> {
    m.map(|v| Coeff::new(BigRational::from_integer(v.clone()), BigRational::zero()))
}

fn qubit_matrices(n: usize, gens: &[PauliSum]) -> Result<Vec<SparseMatrix<i64>>> {
    if n > 12 {
        return Err(Error::Budget(format!(
            "{n} qubits exceed the commutant limit of 12"
        )));
    }
    gens.iter()
        .map(|g| {
            if g.n() != n {
                return Err(Error::QubitMismatch {
                    left: n,
                    right: g.n(),
                });
            }
            g.to_integer_matrix()
        })
        .collect()
}

/// Commutant by the full vectorized system (all `4^n` entries unknown).
pub fn commutant(n: usize, generators: &[PauliSum]) -> Result<CommutantBasis> {
    let mats = qubit_matrices(n, generators)?;
    let opts = CommutantOptions {
        max_unknowns: 1 << 16,
        ..Default::default()
    };
    solve(Some(n), 1 << n, &mats, Strategy::BruteForce, &opts)
}

/// Commutant with unknowns restricted to the level sets of the diagonal generators.
pub fn commutant_fast(n: usize, generators: &[PauliSum]) -> Result<CommutantBasis> {
    commutant_with(n, generators, &CommutantOptions::default())
}

pub fn commutant_with(
    n: usize,
    generators: &[PauliSum],
    opts: &CommutantOptions,
) -> Result<CommutantBasis> {
    if !generators.iter().any(PauliSum::is_diagonal) {
        return Err(Error::InvalidOperator(
            "fast commutant needs at least one diagonal generator".into(),
        ));
    }
    let mats = qubit_matrices(n, generators)?;
    solve(Some(n), 1 << n, &mats, Strategy::Fast, opts)
}

/// Dimension of the commutant modulo a random prime; an upper bound on the exact dimension
/// that is equal to it except with negligible probability.
pub fn commutant_dim_modp(
    n: usize,
    generators: &[PauliSum],
    opts: &CommutantOptions,
) -> Result<usize> {
    let mats = qubit_matrices(n, generators)?;
    let problem = Problem::new(Some(n), 1 << n, &mats, Strategy::Fast);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let p = modp::random_prime(&mut rng);
    Ok(problem.kernel(p, opts)?.len())
}

/// Commutant of arbitrary real integer matrices of size `dim`.
pub fn commutant_of_matrices(
    dim: usize,
    generators: &[SparseMatrix<i64>],
    strategy: Strategy,
    opts: &CommutantOptions,
) -> Result<CommutantBasis> {
    if generators.iter().any(|g| g.dim() != dim) {
        return Err(Error::InvalidOperator("generator size mismatch".into()));
    }
    solve(None, dim, generators, strategy, opts)
}

struct Problem<'a> {
    n: Option<usize>,
    space: BlockSpace,
    chain: bool,
    nondiag: Vec<&'a SparseMatrix<i64>>,
    all: &'a [SparseMatrix<i64>],
}

fn is_sum_x(n: usize, g: &SparseMatrix<i64>) -> bool {
    let dim = 1usize << n;
    if g.dim() != dim || g.nnz() != dim * n {
        return false;
    }
    let s = g.get(1, 0);
    s != 0
        && (0..dim).all(|b| {
            let row = g.row(b);
            row.len() == n
                && row
                    .iter()
                    .all(|&(c, v)| v == s && (c as usize ^ b).count_ones() == 1)
        })
}

impl<'a> Problem<'a> {
    fn new(
        n: Option<usize>,
        dim: usize,
        gens: &'a [SparseMatrix<i64>],
        strategy: Strategy,
    ) -> Self {
        let weight = |s: usize| s.count_ones() as u64;
        let (space, nondiag): (BlockSpace, Vec<&SparseMatrix<i64>>) = match strategy {
            Strategy::BruteForce => (
                BlockSpace::from_diagonals(dim, &[], weight),
                gens.iter().collect(),
            ),
            Strategy::Fast => {
                let diags: Vec<Vec<i64>> = gens
                    .iter()
                    .filter(|g| g.is_diagonal())
                    .map(|g| g.diagonal())
                    .collect();
                (
                    BlockSpace::from_diagonals(dim, &diags, weight),
                    gens.iter().filter(|g| !g.is_diagonal()).collect(),
                )
            }
        };
        let chain = strategy == Strategy::Fast
            && n.is_some_and(|n| nondiag.iter().any(|g| is_sum_x(n, g)))
            && chain::levels_fix_weight(&space);
        Problem {
            n,
            space,
            chain,
            nondiag,
            all: gens,
        }
    }

    fn kernel(&self, p: u64, opts: &CommutantOptions) -> Result<Vec<Vec<u64>>> {
        if self.chain {
            let n = self.n.unwrap();
            let base = chain::chain_kernel(&self.space, n, p, opts.max_unknowns)?;
            let rest: Vec<SparseMatrix<i64>> = self
                .nondiag
                .iter()
                .filter(|g| !is_sum_x(n, g))
                .map(|g| (*g).clone())
                .collect();
            Ok(generic::intersect_kernel(&self.space, &base, &rest, p))
        } else {
            let gens: Vec<SparseMatrix<i64>> = self.nondiag.iter().map(|g| (*g).clone()).collect();
            generic::generic_kernel(&self.space, &gens, p, opts.max_unknowns)
        }
    }
}

/// Canonical rows of one part (symmetric, antisymmetric or whole) modulo `p`.
struct ModRows {
    pivots: Vec<usize>,
    rows: Vec<Vec<(usize, u64)>>,
}

fn canonical_parts(
    space: &BlockSpace,
    kernel: &[Vec<u64>],
    p: u64,
    split: bool,
) -> Option<Vec<ModRows>> {
    let u = space.unknowns();
    let mut parts: Vec<Vec<Vec<u64>>> = Vec::new();
    if split {
        let tmap: Vec<usize> = (0..u).map(|i| space.transpose_index(i)).collect();
        let mut sym = Vec::new();
        let mut anti = Vec::new();
        for v in kernel {
            sym.push(
                (0..u)
                    .map(|i| modp::add(v[i], v[tmap[i]], p))
                    .collect::<Vec<u64>>(),
            );
            anti.push(
                (0..u)
                    .map(|i| modp::sub(v[i], v[tmap[i]], p))
                    .collect::<Vec<u64>>(),
            );
        }
        parts.push(sym);
        parts.push(anti);
    } else {
        parts.push(kernel.to_vec());
    }
    let mut out = Vec::new();
    let mut total = 0;
    for mut m in parts {
        let piv = rref_dense(&mut m, p);
        m.truncate(piv.len());
        total += piv.len();
        out.push(ModRows {
            pivots: piv,
            rows: m
                .into_iter()
                .map(|r| r.into_iter().enumerate().filter(|(_, v)| *v != 0).collect())
                .collect(),
        });
    }
    if total != kernel.len() {
        return None;
    }
    Some(out)
}

/// Pivots of one level block with its sparse integer rows.
type LiftedPart = (Vec<usize>, Vec<BTreeMap<usize, BigInt>>);
type RationalRow = Vec<(usize, BigRational)>;

/// Residues of the canonical rows accumulated over several primes.
struct Lift {
    modulus: BigInt,
    parts: Vec<LiftedPart>,
}

impl Lift {
    fn start(parts: &[ModRows], p: u64) -> Lift {
        Lift {
            modulus: BigInt::from(p),
            parts: parts
                .iter()
                .map(|mr| {
                    (
                        mr.pivots.clone(),
                        mr.rows
                            .iter()
                            .map(|r| r.iter().map(|&(c, v)| (c, BigInt::from(v))).collect())
                            .collect(),
                    )
                })
                .collect(),
        }
    }

    fn absorb(&mut self, parts: &[ModRows], p: u64) -> bool {
        if parts.len() != self.parts.len()
            || parts.iter().zip(&self.parts).any(|(a, b)| a.pivots != b.0)
        {
            return false;
        }
        for (mr, (_, rows)) in parts.iter().zip(self.parts.iter_mut()) {
            for (new, acc) in mr.rows.iter().zip(rows.iter_mut()) {
                let newmap: BTreeMap<usize, u64> = new.iter().copied().collect();
                let cols: Vec<usize> = acc.keys().copied().chain(newmap.keys().copied()).collect();
                for c in cols {
                    let a = acc.get(&c).cloned().unwrap_or_else(BigInt::zero);
                    let b = newmap.get(&c).copied().unwrap_or(0);
                    let (x, _) = exact::crt(&a, &self.modulus, b, p);
                    acc.insert(c, x);
                }
            }
        }
        self.modulus *= BigInt::from(p);
        true
    }

    /// Rational rows, or `None` if some entry does not reconstruct yet.
    fn rational(&self) -> Option<Vec<Vec<RationalRow>>> {
        self.parts
            .iter()
            .map(|(_, rows)| {
                rows.iter()
                    .map(|r| {
                        r.iter()
                            .filter(|(_, v)| !v.is_zero())
                            .map(|(&c, v)| {
                                exact::rational_reconstruct(v, &self.modulus).map(|q| (c, q))
                            })
                            .collect::<Option<Vec<_>>>()
                    })
                    .collect::<Option<Vec<_>>>()
            })
            .collect()
    }
}

fn to_matrix(space: &BlockSpace, row: &[(usize, BigRational)]) -> SparseMatrix<BigInt> {
    let vals: Vec<BigRational> = row.iter().map(|(_, q)| q.clone()).collect();
    let ints = exact::primitive(&vals);
    SparseMatrix::from_triplets(
        space.dim(),
        row.iter().zip(ints).map(|(&(idx, _), v)| {
            let (r, c) = space.entry(idx);
            (r, c, v)
        }),
    )
}

/// Exact check `[b, g] = 0`, in `i128` when entries allow it.
pub(crate) fn commutes_exactly(b: &SparseMatrix<BigInt>, g: &SparseMatrix<i64>) -> bool {
    let small = b
        .triplets()
        .all(|(_, _, v)| v.to_i64().is_some_and(|x| x.abs() < 1 << 40));
    if small {
        let b128 = b.map(|v| v.to_i128().unwrap());
        let g128 = g.map(|&v| v as i128);
        b128.commutator(&g128).is_zero()
    } else {
        let gb = g.map(|&v| BigInt::from(v));
        b.commutator(&gb).is_zero()
    }
}

fn sort_key(m: &SparseMatrix<BigInt>) -> Vec<(usize, usize, BigInt)> {
    m.triplets().map(|(r, c, v)| (r, c, v.clone())).collect()
}

fn solve(
    n: Option<usize>,
    dim: usize,
    gens: &[SparseMatrix<i64>],
    strategy: Strategy,
    opts: &CommutantOptions,
) -> Result<CommutantBasis> {
    let problem = Problem::new(n, dim, gens, strategy);
    let split = gens.iter().all(SparseMatrix::is_symmetric);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let p = modp::random_prime(&mut rng);
    let kernel = problem.kernel(p, opts)?;
    let d = kernel.len();
    if d == 0 {
        return Err(Error::Verification(
            "identity missing from commutant".into(),
        ));
    }
    if d == 1 {
        return Ok(CommutantBasis {
            n,
            space_dim: dim,
            basis: vec![SparseMatrix::identity(dim)],
            hermitian_count: 1,
            split,
        });
    }
    let mut parts = canonical_parts(&problem.space, &kernel, p, split);
    let split = split && parts.is_some();
    if parts.is_none() {
        parts = canonical_parts(&problem.space, &kernel, p, false);
    }
    let mut lift = Lift::start(parts.as_ref().unwrap(), p);
    for _ in 0..opts.max_primes {
        if let Some(rows) = lift.rational() {
            let mut mats: Vec<Vec<SparseMatrix<BigInt>>> = rows
                .iter()
                .map(|part| part.iter().map(|r| to_matrix(&problem.space, r)).collect())
                .collect();
            let ok = mats
                .iter()
                .flatten()
                .all(|b| problem.all.iter().all(|g| commutes_exactly(b, g)));
            if ok {
                for part in mats.iter_mut() {
                    part.sort_by_cached_key(sort_key);
                }
                let hermitian_count = if split { mats[0].len() } else { d };
                return Ok(CommutantBasis {
                    n,
                    space_dim: dim,
                    basis: mats.into_iter().flatten().collect(),
                    hermitian_count,
                    split,
                });
            }
        }
        let q = modp::random_prime(&mut rng);
        let k2 = problem.kernel(q, opts)?;
        if k2.len() != d {
            return Err(Error::Verification(format!(
                "kernel dimension differs between primes ({d} vs {})",
                k2.len()
            )));
        }
        let parts2 = canonical_parts(&problem.space, &k2, q, split).ok_or_else(|| {
            Error::Verification("transpose split failed for a second prime".into())
        })?;
        if !lift.absorb(&parts2, q) {
            lift = Lift::start(&parts2, q);
        }
    }
    Err(Error::Verification(format!(
        "rational reconstruction did not verify after {} primes",
        opts.max_primes
    )))
}

/// Identity matrix in integer form, for membership checks.
pub fn identity_matrix(dim: usize) -> SparseMatrix<BigInt> {
    SparseMatrix::from_triplets(dim, (0..dim).map(|i| (i, i, BigInt::one())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::pauli::{build_generators, x_all};

    #[test]
    fn empty_generators_give_everything() {
        let c = commutant(2, &[]).unwrap();
        assert_eq!(c.dim(), 16);
        assert_eq!(c.hermitian_count(), 10);
    }

    #[test]
    fn k2_brute_and_fast_agree() {
        let g = Graph::complete(2).unwrap();
        let gens = build_generators(&g, true);
        let a = commutant(2, &gens).unwrap();
        let b = commutant_fast(2, &gens).unwrap();
        assert_eq!(a.dim(), b.dim());
        assert_eq!(a.basis(), b.basis());
    }

    #[test]
    fn p3_has_reflection() {
        let g = Graph::path(3).unwrap();
        let c = commutant_fast(3, &build_generators(&g, true)).unwrap();
        assert!(c.dim() >= 2);
        let swap = crate::graph::permutation_operator(
            &crate::graph::Permutation::transposition(3, 0, 2),
            3,
        );
        assert!(c.contains(&swap.map(|&v| BigInt::from(v))));
    }

    #[test]
    fn qaoa_parity() {
        let g = Graph::path(3).unwrap();
        let c = commutant_fast(3, &build_generators(&g, false)).unwrap();
        let x = x_all(3)
            .to_integer_matrix()
            .unwrap()
            .map(|&v| BigInt::from(v));
        assert!(c.contains(&x));
        let full = commutant_fast(3, &build_generators(&g, true)).unwrap();
        assert!(!full.contains(&x));
    }

    #[test]
    fn nondegenerate_diagonal_gives_diagonal_commutant() {
        let d = SparseMatrix::from_triplets(4, (0..4).map(|i| (i, i, i as i64)));
        let c =
            commutant_of_matrices(4, &[d], Strategy::Fast, &CommutantOptions::default()).unwrap();
        assert_eq!(c.dim(), 4);
        assert!(c.basis().iter().all(|b| b.is_diagonal()));
    }
}
