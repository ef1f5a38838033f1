use num_rational::BigRational;

use std::collections::VecDeque;

use super::{bracket_strings, coeff_real, decode, generator_terms};
use crate::pauli::{PauliString, PauliSum};

/// Orthonormal float basis in dense Pauli coordinates, stored column-major.
#[derive(Clone, Debug)]
pub(crate) struct FloatSpan {
    n: usize,
    len: usize,
    cols: usize,
    q: Vec<f64>,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    let mut acc = [0.0f64; 8];
    let mut ca = a.chunks_exact(8);
    let mut cb = b.chunks_exact(8);
    for (x, y) in (&mut ca).zip(&mut cb) {
        for k in 0..8 {
            acc[k] += x[k] * y[k];
        }
    }
    let tail: f64 = ca
        .remainder()
        .iter()
        .zip(cb.remainder())
        .map(|(x, y)| x * y)
        .sum();
    acc.iter().sum::<f64>() + tail
}

fn norm(v: &[f64]) -> f64 {
    dot(v, v).sqrt()
}

impl FloatSpan {
    fn new(n: usize) -> Self {
        FloatSpan {
            n,
            len: 1 << (2 * n),
            cols: 0,
            q: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.cols
    }

    fn col(&self, k: usize) -> &[f64] {
        &self.q[k * self.len..(k + 1) * self.len]
    }

    /// `c -= Q (Q^T c)` for the `m` columns of `c`.
    fn project_out(&self, c: &mut [f64], m: usize) {
        let (l, d) = (self.len, self.cols);
        if d == 0 || m == 0 {
            return;
        }
        let mut t = vec![0.0; d * m];
        // SAFETY: every pointer spans its buffer under the given strides.
        unsafe {
            matrixmultiply::dgemm(
                d,
                l,
                m,
                1.0,
                self.q.as_ptr(),
                l as isize,
                1,
                c.as_ptr(),
                1,
                l as isize,
                0.0,
                t.as_mut_ptr(),
                1,
                d as isize,
            );
            matrixmultiply::dgemm(
                l,
                d,
                m,
                -1.0,
                self.q.as_ptr(),
                1,
                l as isize,
                t.as_ptr(),
                1,
                d as isize,
                1.0,
                c.as_mut_ptr(),
                1,
                l as isize,
            );
        }
    }

    fn residual(&self, mut v: Vec<f64>) -> f64 {
        let n0 = norm(&v);
        if n0 == 0.0 {
            return 0.0;
        }
        self.project_out(&mut v, 1);
        self.project_out(&mut v, 1);
        norm(&v) / n0
    }

    /// Orthogonalise a batch of candidates and append the independent ones. A candidate is
    /// dropped when its residual is below `tol * scale[j]`, where `scale[j]` bounds the norm
    /// the candidate could have had; measuring against its own norm would promote the
    /// rounding noise left by near-cancelling brackets.
    /// Returns the positions of the accepted candidates and whether `max_dim` was reached.
    fn insert_batch(
        &mut self,
        mut c: Vec<f64>,
        scale: &[f64],
        tol: f64,
        max_dim: usize,
    ) -> (Vec<usize>, bool) {
        let l = self.len;
        let m = scale.len();
        let norms: Vec<f64> = (0..m).map(|j| norm(&c[j * l..(j + 1) * l])).collect();
        let start = self.cols;
        self.project_out(&mut c, m);
        self.project_out(&mut c, m);
        let mut added = Vec::new();
        for j in 0..m {
            if norms[j] == 0.0 {
                continue;
            }
            let v = &mut c[j * l..(j + 1) * l];
            for _ in 0..2 {
                for k in start..self.cols {
                    let u = &self.q[k * l..(k + 1) * l];
                    let d = dot(u, v);
                    for (x, y) in v.iter_mut().zip(u) {
                        *x -= d * y;
                    }
                }
            }
            let r = norm(v);
            if r <= tol * scale[j] {
                continue;
            }
            if self.cols >= max_dim {
                return (added, true);
            }
            self.q.extend(v.iter().map(|x| x / r));
            added.push(j);
            self.cols += 1;
        }
        (added, false)
    }

    pub fn contains(&self, h: &PauliSum) -> bool {
        let mut v = vec![0.0; self.len];
        for (s, c) in generator_terms(h) {
            v[super::code(&s)] = c;
        }
        self.residual(v) <= 1e-8
    }

    pub fn basis_sums(&self) -> Vec<PauliSum> {
        (0..self.cols)
            .map(|k| {
                PauliSum::from_terms(
                    self.n,
                    self.col(k)
                        .iter()
                        .enumerate()
                        .filter(|(_, x)| **x != 0.0)
                        .map(|(k, x)| {
                            (
                                decode(self.n, k),
                                coeff_real(BigRational::from_float(*x).expect("finite coordinate")),
                            )
                        }),
                )
                .expect("consistent qubit count")
            })
            .collect()
    }
}

fn apply_bracket(n: usize, g: &[(PauliString, f64)], u: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; u.len()];
    for (k, &x) in u.iter().enumerate() {
        if x == 0.0 {
            continue;
        }
        let s = decode(n, k);
        for (gs, gx) in g {
            if let Some((sign, r)) = bracket_strings(gs, &s) {
                out[super::code(&r)] += gx * x * sign as f64;
            }
        }
    }
    out
}

/// Candidates per block projection.
const BATCH: usize = 96;

/// Closure under `ad` of the generators. Brackets are taken of the unprojected nested
/// commutators, not of the orthonormal basis: projecting first and bracketing the
/// remainder amplifies rounding noise generation after generation.
pub(crate) fn close(n: usize, gens: &[PauliSum], max_dim: usize, tol: f64) -> (FloatSpan, bool) {
    let mut span = FloatSpan::new(n);
    let terms: Vec<Vec<(PauliString, f64)>> = gens.iter().map(generator_terms).collect();
    // |ad_g| <= 2 sum |c| in Pauli coordinates
    let ad_bound: Vec<f64> = terms
        .iter()
        .map(|g| 2.0 * g.iter().map(|(_, c)| c.abs()).sum::<f64>())
        .collect();
    let len = span.len;
    let mut frontier: VecDeque<Vec<f64>> = VecDeque::new();
    let mut batch = Vec::with_capacity(len * terms.len());
    for g in &terms {
        let mut v = vec![0.0; len];
        for (s, c) in g {
            v[super::code(s)] = *c;
        }
        batch.extend(v);
    }
    let mut scale: Vec<f64> = (0..terms.len())
        .map(|j| norm(&batch[j * len..(j + 1) * len]))
        .collect();
    loop {
        if scale.is_empty() {
            return (span, false);
        }
        let (added, hit) = span.insert_batch(batch.clone(), &scale, tol, max_dim);
        if hit {
            return (span, true);
        }
        for j in added {
            let v = &batch[j * len..(j + 1) * len];
            let r = norm(v);
            frontier.push_back(v.iter().map(|x| x / r).collect());
        }
        batch.clear();
        scale.clear();
        while scale.len() + terms.len() <= BATCH {
            let Some(u) = frontier.pop_front() else { break };
            for (g, b) in terms.iter().zip(&ad_bound) {
                batch.extend(apply_bracket(n, g, &u));
                scale.push(*b);
            }
        }
    }
}
