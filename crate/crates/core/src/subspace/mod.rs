//! Invariant subspace decomposition of a generator set.
//!
//! A random symmetric element `X` of the commutant is diagonalized inside the regular
//! representation of the commutant algebra; its spectral idempotents are the projectors
//! onto the blocks. The algebra `E C E` cut out by each idempotent `E` certifies that the
//! block is irreducible: it is one-dimensional for blocks of real type, and two- or
//! four-dimensional when the real block splits into two complex blocks of half the size.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::commutant::{commutant_with, CommutantBasis, CommutantOptions};
use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;
use crate::pauli::PauliSum;

/// Largest Hilbert-space dimension for which block bases are materialized.
pub const BASIS_MAX_DIM: usize = 512;

/// Real structure of a block of the real commutant algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockKind {
    Real,
    Complex,
    Quaternionic,
}

/// One spectral block of the generic commutant element.
#[derive(Clone, Debug)]
pub struct Block {
    /// Dimension of the real invariant subspace (rank of the idempotent).
    pub rank: usize,
    pub kind: BlockKind,
    /// Orthonormal columns spanning the real invariant subspace, when computed.
    pub basis: Option<Vec<Vec<f64>>>,
}

impl Block {
    /// Dimensions of the irreducible complex blocks inside this real block.
    pub fn irreducible_dims(&self) -> Vec<usize> {
        match self.kind {
            BlockKind::Real => vec![self.rank],
            _ => vec![self.rank / 2, self.rank / 2],
        }
    }
}

#[derive(Clone, Debug)]
pub struct SubspaceDecomposition {
    pub n: usize,
    pub blocks: Vec<Block>,
    /// Sorted dimensions of the irreducible invariant subspaces.
    pub dims: Vec<usize>,
    pub seed: u64,
}

impl SubspaceDecomposition {
    /// Largest relative leak `|(1 - QQ^T) G Q| / |G|` over generators and blocks with bases.
    pub fn invariance_residual(&self, generators: &[PauliSum]) -> Result<f64> {
        let mut worst: f64 = 0.0;
        for g in generators {
            let m = g.to_integer_matrix()?.map(|&v| v as f64);
            let gnorm = m.frobenius(&m).sqrt().max(1.0);
            for b in &self.blocks {
                let Some(q) = &b.basis else { continue };
                for col in q {
                    let gv = m.apply(col);
                    let mut res = gv.clone();
                    for u in q {
                        let d: f64 = u.iter().zip(&gv).map(|(a, b)| a * b).sum();
                        for (x, y) in res.iter_mut().zip(u) {
                            *x -= d * y;
                        }
                    }
                    let r = res.iter().map(|x| x * x).sum::<f64>().sqrt() / gnorm;
                    worst = worst.max(r);
                }
            }
        }
        Ok(worst)
    }
}

#[derive(Clone, Debug)]
pub struct DecomposeOptions {
    pub seed: u64,
    /// Materialize block bases (`None`: when `2^n <= 512`).
    pub with_bases: Option<bool>,
    pub commutant: CommutantOptions,
}

impl Default for DecomposeOptions {
    fn default() -> Self {
        DecomposeOptions {
            seed: 1,
            with_bases: None,
            commutant: CommutantOptions::default(),
        }
    }
}

/// Decompose `C^(2^n)` into invariant subspaces of `generators`.
pub fn decompose(generators: &[PauliSum]) -> Result<SubspaceDecomposition> {
    decompose_with(generators, &DecomposeOptions::default())
}

pub fn decompose_with(
    generators: &[PauliSum],
    opts: &DecomposeOptions,
) -> Result<SubspaceDecomposition> {
    let Some(first) = generators.first() else {
        return Err(Error::InvalidOperator("no generators".into()));
    };
    let n = first.n();
    if n > 11 {
        return Err(Error::Budget(format!(
            "decomposition supports at most 11 qubits, got {n}"
        )));
    }
    let basis = commutant_with(n, generators, &opts.commutant)?;
    decompose_commutant(&basis, opts)
}

/// Pivot positions where the basis restricted is invertible, and that restriction.
struct Coordinates {
    positions: Vec<(usize, usize)>,
    lu: nalgebra::LU<f64, nalgebra::Dyn, nalgebra::Dyn>,
}

impl Coordinates {
    fn new(basis: &[SparseMatrix<f64>]) -> Result<Self> {
        let d = basis.len();
        let mut cols: Vec<(usize, usize)> = Vec::new();
        let mut index = std::collections::HashMap::new();
        for b in basis {
            for (r, c, _) in b.triplets() {
                index.entry((r, c)).or_insert_with(|| {
                    cols.push((r, c));
                    cols.len() - 1
                });
            }
        }
        let mut m = vec![vec![0.0; cols.len()]; d];
        for (k, b) in basis.iter().enumerate() {
            for (r, c, v) in b.triplets() {
                m[k][index[&(r, c)]] = *v;
            }
        }
        // complete pivoting on a copy picks well-conditioned positions
        let mut work = m.clone();
        let mut chosen = Vec::new();
        let mut used_rows = vec![false; d];
        for _ in 0..d {
            let mut best = (0.0, 0, 0);
            for (i, row) in work.iter().enumerate() {
                if used_rows[i] {
                    continue;
                }
                for (j, v) in row.iter().enumerate() {
                    if v.abs() > best.0 {
                        best = (v.abs(), i, j);
                    }
                }
            }
            let (piv, i, j) = best;
            if piv < 1e-12 {
                return Err(Error::Numerical(
                    "commutant basis is numerically dependent".into(),
                ));
            }
            used_rows[i] = true;
            chosen.push(j);
            let prow = work[i].clone();
            for (k, row) in work.iter_mut().enumerate() {
                if used_rows[k] && k != i {
                    continue;
                }
                if k == i {
                    continue;
                }
                let f = row[j] / prow[j];
                if f != 0.0 {
                    for (x, y) in row.iter_mut().zip(&prow) {
                        *x -= f * y;
                    }
                }
            }
        }
        let positions: Vec<(usize, usize)> = chosen.iter().map(|&j| cols[j]).collect();
        let a = DMatrix::from_fn(d, d, |j, k| m[k][chosen[j]]);
        Ok(Coordinates {
            positions,
            lu: a.lu(),
        })
    }

    fn solve(&self, values: &[f64]) -> Result<DVector<f64>> {
        self.lu
            .solve(&DVector::from_column_slice(values))
            .ok_or_else(|| Error::Numerical("singular coordinate system".into()))
    }
}

/// Product entry `(a b)[r, c]` of sparse matrices, using the transpose of `b` for columns.
fn product_entry(a: &SparseMatrix<f64>, bt: &SparseMatrix<f64>, r: usize, c: usize) -> f64 {
    let (x, y) = (a.row(r), bt.row(c));
    let (mut i, mut j, mut s) = (0, 0, 0.0);
    while i < x.len() && j < y.len() {
        match x[i].0.cmp(&y[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                s += x[i].1 * y[j].1;
                i += 1;
                j += 1;
            }
        }
    }
    s
}

fn numeric_rank(vectors: &[DVector<f64>], tol: f64) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let m = DMatrix::from_columns(vectors);
    let sv = m.svd(false, false).singular_values;
    let top = sv.iter().cloned().fold(0.0, f64::max);
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > tol * top).count()
}

/// Decompose given an exact commutant basis.
pub fn decompose_commutant(
    basis: &CommutantBasis,
    opts: &DecomposeOptions,
) -> Result<SubspaceDecomposition> {
    let dim = basis.space_dim();
    let n = basis.n().unwrap_or(0);
    let with_bases = opts.with_bases.unwrap_or(dim <= BASIS_MAX_DIM);
    let d = basis.dim();
    if d == 1 {
        let b = Block {
            rank: dim,
            kind: BlockKind::Real,
            basis: with_bases.then(|| {
                (0..dim)
                    .map(|i| {
                        let mut v = vec![0.0; dim];
                        v[i] = 1.0;
                        v
                    })
                    .collect()
            }),
        };
        return Ok(SubspaceDecomposition {
            n,
            blocks: vec![b],
            dims: vec![dim],
            seed: opts.seed,
        });
    }
    let fb: Vec<SparseMatrix<f64>> = basis
        .basis()
        .iter()
        .map(|b| b.map(|v| v.to_f64().unwrap_or(f64::NAN)))
        .collect();
    let fbt: Vec<SparseMatrix<f64>> = fb.iter().map(SparseMatrix::transpose).collect();
    let coords = Coordinates::new(&fb)?;
    // regular representation: column l of L_k holds the coordinates of B_k B_l
    let mut left: Vec<DMatrix<f64>> = Vec::with_capacity(d);
    for a in &fb {
        let mut lk = DMatrix::zeros(d, d);
        for (l, bt) in fbt.iter().enumerate() {
            let vals: Vec<f64> = coords
                .positions
                .iter()
                .map(|&(r, c)| product_entry(a, bt, r, c))
                .collect();
            lk.set_column(l, &coords.solve(&vals)?);
        }
        left.push(lk);
    }
    let id_vals: Vec<f64> = coords
        .positions
        .iter()
        .map(|&(r, c)| if r == c { 1.0 } else { 0.0 })
        .collect();
    let e_id = coords.solve(&id_vals)?;
    let traces: Vec<f64> = fb.iter().map(SparseMatrix::trace).collect();
    // left multiplication by a symmetric element is self-adjoint for the trace form
    let gram = DMatrix::from_fn(d, d, |k, l| fb[k].frobenius(&fb[l]));
    let chol = gram
        .clone()
        .cholesky()
        .ok_or_else(|| Error::Numerical("commutant Gram matrix is not positive definite".into()))?;

    let sym = basis.hermitian_count();
    let mut last_err = None;
    for attempt in 0..8u64 {
        let mut rng =
            ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(attempt.wrapping_mul(0x9e37_79b9)));
        let mut lx = DMatrix::zeros(d, d);
        for lk in left.iter().take(sym) {
            let r: f64 = rng.random_range(-1.0..1.0);
            lx += lk * r;
        }
        match spectral_blocks(&lx, &left, &e_id, &traces, &gram, &chol) {
            Ok(parts) => {
                let mut blocks = Vec::new();
                for (coef, rank, kind) in parts {
                    let basis_cols = if with_bases {
                        Some(range_basis(&fb, &coef, dim)?)
                    } else {
                        None
                    };
                    blocks.push(Block {
                        rank,
                        kind,
                        basis: basis_cols,
                    });
                }
                let mut dims: Vec<usize> =
                    blocks.iter().flat_map(Block::irreducible_dims).collect();
                dims.sort_unstable();
                if dims.iter().sum::<usize>() != dim {
                    return Err(Error::Numerical(
                        "block dimensions do not sum to the space dimension".into(),
                    ));
                }
                return Ok(SubspaceDecomposition {
                    n,
                    blocks,
                    dims,
                    seed: opts.seed,
                });
            }
            Err(e) => last_err = Some(e),
        }
    }
    Err(last_err.unwrap())
}

type SpectralPart = (DVector<f64>, usize, BlockKind);

fn spectral_blocks(
    lx: &DMatrix<f64>,
    left: &[DMatrix<f64>],
    e_id: &DVector<f64>,
    traces: &[f64],
    gram: &DMatrix<f64>,
    chol: &nalgebra::Cholesky<f64, nalgebra::Dyn>,
) -> Result<Vec<SpectralPart>> {
    let d = lx.nrows();
    let l = chol.l();
    let lower = |m: &DMatrix<f64>| {
        l.solve_lower_triangular(m)
            .ok_or_else(|| Error::Numerical("singular Cholesky factor".into()))
    };
    let half = lower(&(gram * lx))?;
    let m = lower(&half.transpose())?;
    let m = (&m + m.transpose()) * 0.5;
    let eig = SymmetricEigen::new(m);
    let scale = eig.eigenvalues.iter().map(|v| v.abs()).fold(1.0, f64::max);
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for k in order {
        match clusters.last_mut() {
            Some(c) if eig.eigenvalues[k] - eig.eigenvalues[c[c.len() - 1]] <= 1e-8 * scale => {
                c.push(k)
            }
            _ => clusters.push(vec![k]),
        }
    }
    // projector of lx onto a cluster is L^-T U_c U_c^T L^T
    let lt_id = l.transpose() * e_id;
    let mut out = Vec::new();
    for c in &clusters {
        let u = eig.eigenvectors.select_columns(c);
        let w = &u * (u.transpose() * &lt_id);
        let v = l
            .transpose()
            .solve_upper_triangular(&w)
            .ok_or_else(|| Error::Numerical("singular Cholesky factor".into()))?;
        let tr: f64 = v.iter().zip(traces).map(|(c, t)| c * t).sum();
        let rank = tr.round();
        if (tr - rank).abs() > 1e-6 * (1.0 + tr.abs()) || rank < 1.0 {
            return Err(Error::Numerical(format!(
                "idempotent trace {tr} is not a positive integer"
            )));
        }
        let le: DMatrix<f64> = left
            .iter()
            .zip(v.iter())
            .fold(DMatrix::zeros(d, d), |acc, (lk, c)| acc + lk * *c);
        let cut: Vec<DVector<f64>> = left.iter().map(|lj| &le * (lj * &v)).collect();
        let k = numeric_rank(&cut, 1e-8);
        let kind = match k {
            1 => BlockKind::Real,
            2 => BlockKind::Complex,
            4 => BlockKind::Quaternionic,
            _ => {
                return Err(Error::Numerical(format!(
                    "spectral idempotent is not minimal (dim ECE = {k})"
                )))
            }
        };
        let rank = rank as usize;
        if kind != BlockKind::Real && rank % 2 == 1 {
            return Err(Error::Numerical("odd rank for a split block".into()));
        }
        out.push((v, rank, kind));
    }
    Ok(out)
}

/// Orthonormal basis of the range of the idempotent `sum_k c_k B_k`.
fn range_basis(fb: &[SparseMatrix<f64>], coef: &DVector<f64>, dim: usize) -> Result<Vec<Vec<f64>>> {
    let mut e = DMatrix::<f64>::zeros(dim, dim);
    for (b, c) in fb.iter().zip(coef.iter()) {
        for (r, col, v) in b.triplets() {
            e[(r, col)] += c * v;
        }
    }
    let sym = (&e + e.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym);
    let mut cols = Vec::new();
    for (k, &ev) in eig.eigenvalues.iter().enumerate() {
        if ev > 0.5 {
            cols.push(eig.eigenvectors.column(k).iter().copied().collect());
        }
    }
    Ok(cols)
}

/// The four joint eigenspaces of two commuting pair swaps on a chain with `N` interior
/// qubits, labelled by `(s1, s2)` with dimension `d_{s1} d_{s2} 2^N`, `d+ = 3`, `d- = 1`.
pub fn reflection_blocks(interior: usize) -> Vec<((i8, i8), usize)> {
    let base = 1usize << interior;
    let d = |s: i8| if s > 0 { 3 } else { 1 };
    [(1, 1), (1, -1), (-1, 1), (-1, -1)]
        .into_iter()
        .map(|(a, b)| ((a, b), d(a) * d(b) * base))
        .collect()
}

/// Symbolic projector onto the `(s1, s2)` block.
pub fn reflection_projector_formula(s1: i8, s2: i8) -> String {
    let sg = |s: i8| if s > 0 { '+' } else { '-' };
    format!("1/4 (1 {} R1)(1 {} R2)", sg(s1), sg(s2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::pauli::build_generators;

    #[test]
    fn reflection_dims() {
        let b = reflection_blocks(7);
        let dims: Vec<usize> = b.iter().map(|x| x.1).collect();
        assert_eq!(dims, vec![1152, 384, 384, 128]);
        assert_eq!(dims.iter().sum::<usize>(), 1 << 11);
        assert_eq!(reflection_projector_formula(-1, -1), "1/4 (1 - R1)(1 - R2)");
    }

    #[test]
    fn path_three_splits_by_reflection() {
        let g = Graph::path(3).unwrap();
        let gens = build_generators(&g, true);
        let dec = decompose(&gens).unwrap();
        assert_eq!(dec.dims.iter().sum::<usize>(), 8);
        assert!(dec.dims.len() >= 2);
        assert!(dec.invariance_residual(&gens).unwrap() < 1e-10);
    }

    #[test]
    fn k2_blocks() {
        let g = Graph::complete(2).unwrap();
        let gens = build_generators(&g, true);
        let dec = decompose(&gens).unwrap();
        // singlet plus triplet
        assert_eq!(dec.dims, vec![1, 3]);
    }
}
