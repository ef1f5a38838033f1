#![allow(dead_code)]

use globalctl::graph::{Graph, Permutation};
use globalctl::pauli::PauliSum;
use nalgebra::{Complex, DMatrix};
use proptest::prelude::*;
use rand::Rng;

type Complex64 = Complex<f64>;

/// Graph on `n` vertices from an upper-triangle bit mask.
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    graph_from_bits(n, &(0..64).map(|k| mask >> k & 1 == 1).collect::<Vec<_>>())
}

fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if bits[k] {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

pub fn arb_graph(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2)
            .prop_map(move |b| graph_from_bits(n, &b))
    })
}

pub fn arb_connected(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    arb_graph(lo, hi).prop_filter("connected", Graph::is_connected)
}

pub fn random_connected<R: Rng>(n: usize, rng: &mut R) -> Graph {
    loop {
        let g = graph_from_mask(n, rng.random());
        if g.is_connected() {
            return g;
        }
    }
}

pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let n = used.len();
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// |Aut(g)| by filtering all n! permutations.
pub fn brute_aut_order(g: &Graph) -> u64 {
    let edges = g.edges();
    all_permutations(g.n())
        .into_iter()
        .filter(|p| edges.iter().all(|&(i, j)| g.has_edge(p[i], p[j])))
        .count() as u64
}

pub fn perm(image: Vec<usize>) -> Permutation {
    Permutation::new(image).unwrap()
}

/// Real dense matrix of a real Pauli sum.
pub fn dense(p: &PauliSum) -> DMatrix<f64> {
    let m = p.to_integer_matrix().unwrap();
    let d = m.dim();
    let mut out = DMatrix::zeros(d, d);
    for (r, c, v) in m.triplets() {
        out[(r, c)] = *v as f64;
    }
    out
}

fn gram_schmidt_insert(basis: &mut Vec<Vec<f64>>, v: Vec<f64>, tol: f64) -> bool {
    let n0 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    gram_schmidt_insert_scaled(basis, v, tol, n0)
}

/// Insert unless the residual is below `tol * scale`.
fn gram_schmidt_insert_scaled(
    basis: &mut Vec<Vec<f64>>,
    mut v: Vec<f64>,
    tol: f64,
    scale: f64,
) -> bool {
    let n0 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if n0 == 0.0 {
        return false;
    }
    for _ in 0..2 {
        for u in basis.iter() {
            let d: f64 = u.iter().zip(&v).map(|(a, b)| a * b).sum();
            for (x, y) in v.iter_mut().zip(u) {
                *x -= d * y;
            }
        }
    }
    let r = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if r <= tol * scale {
        return false;
    }
    basis.push(v.into_iter().map(|x| x / r).collect());
    true
}

/// Dimension of the real Lie algebra generated by `i H_j`, with complex dense matrices and
/// all pairwise brackets.
pub fn dense_closure_dim(gens: &[PauliSum]) -> usize {
    let d = 1usize << gens[0].n();
    let to_c = |m: &DMatrix<f64>| m.map(|x| Complex64::new(0.0, x));
    let flat = |m: &DMatrix<Complex64>| m.iter().flat_map(|z| [z.re, z.im]).collect::<Vec<f64>>();
    let mut elems: Vec<DMatrix<Complex64>> = Vec::new();
    let mut basis = Vec::new();
    for g in gens {
        let m = to_c(&dense(g));
        let tr = m.trace() / Complex64::new(d as f64, 0.0);
        let m = m - DMatrix::identity(d, d) * tr;
        if gram_schmidt_insert(&mut basis, flat(&m), 1e-9) {
            elems.push(m);
        }
    }
    let mut i = 0;
    while i < elems.len() {
        for j in 0..i {
            let c = &elems[i] * &elems[j] - &elems[j] * &elems[i];
            if gram_schmidt_insert(&mut basis, flat(&c), 1e-9) {
                elems.push(c);
            }
        }
        i += 1;
    }
    elems.len()
}

/// Dimension of the span of `v` under repeated application of the generators.
pub fn krylov_dim(gens: &[DMatrix<f64>], v: Vec<f64>) -> usize {
    let mut basis = Vec::new();
    let mut frontier = Vec::new();
    if gram_schmidt_insert(&mut basis, v.clone(), 1e-9) {
        frontier.push(v);
    }
    while let Some(u) = frontier.pop() {
        let uv = nalgebra::DVector::from_vec(u);
        for g in gens {
            let w: Vec<f64> = (g * &uv).iter().copied().collect();
            if gram_schmidt_insert_scaled(&mut basis, w.clone(), 1e-9, g.norm() * uv.norm()) {
                frontier.push(w);
            }
        }
    }
    basis.len()
}

/// Dimension of the unital associative algebra generated by the matrices.
pub fn associative_dim(gens: &[DMatrix<f64>]) -> usize {
    let d = gens[0].nrows();
    let mut basis = Vec::new();
    let mut frontier = vec![DMatrix::<f64>::identity(d, d)];
    gram_schmidt_insert(&mut basis, frontier[0].as_slice().to_vec(), 1e-9);
    while let Some(m) = frontier.pop() {
        for g in gens {
            let w = g * &m;
            if gram_schmidt_insert(&mut basis, w.as_slice().to_vec(), 1e-9) {
                frontier.push(w);
            }
        }
    }
    basis.len()
}
