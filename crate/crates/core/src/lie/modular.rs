//! Closure over a prime field. Generators are scaled to integer Pauli coordinates and every
//! bracket is reduced modulo `p`, so the span is computed without rounding. The dimension
//! found is a lower bound on the rational dimension and equals it unless `p` divides one of
//! the minors involved.
//!
//! Field elements are kept as `f64` in `[0, p)` with `p < 2^20`: a product is below `2^40`,
//! and a dot product over at most 4096 terms stays below `2^53`, so block reductions can go
//! through floating-point gemm without losing exactness.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{bracket_strings, decode, herm_coords};
use crate::linalg::modp;
use crate::pauli::{PauliString, PauliSum};

/// Exclusive upper bound for the modulus.
pub(crate) const PRIME_BOUND: u64 = 1 << 20;

const BATCH: usize = 96;

/// Random prime in `[2^19, 2^20)`.
pub(crate) fn small_prime(rng: &mut ChaCha8Rng) -> u64 {
    loop {
        let c = rng.random_range(PRIME_BOUND / 2..PRIME_BOUND) | 1;
        if modp::is_prime(c) {
            return c;
        }
    }
}

#[inline]
fn fmod(x: f64, p: f64) -> f64 {
    let r = x - p * (x / p).floor();
    if r < 0.0 {
        r + p
    } else if r >= p {
        r - p
    } else {
        r
    }
}

/// Integer coordinates of a Hermitian sum modulo `p`, scaled by the lcm of the denominators.
pub(crate) fn coords_mod(h: &PauliSum, len: usize, p: u64) -> Option<Vec<f64>> {
    let coords = herm_coords(h);
    let lcm = coords
        .iter()
        .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let pb = BigInt::from(p);
    if (&lcm % &pb) == BigInt::from(0) {
        return None;
    }
    let mut v = vec![0.0; len];
    for (k, c) in coords {
        let num = c.numer() * (&lcm / c.denom());
        v[k] = num.mod_floor(&pb).to_u64().expect("reduced below p") as f64;
    }
    Some(v)
}

/// Reduced row echelon basis over `F_p`, rows stored row-major.
#[derive(Clone, Debug)]
pub(crate) struct ModSpan {
    len: usize,
    p: u64,
    rows: Vec<f64>,
    pivots: Vec<usize>,
}

impl ModSpan {
    fn new(n: usize, p: u64) -> Self {
        ModSpan {
            len: 1 << (2 * n),
            p,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// Reduce the `m` columns of `c` (column-major) against every stored row.
    fn reduce(&self, c: &mut [f64], m: usize) {
        let (l, d, pf) = (self.len, self.dim(), self.p as f64);
        if d > 0 {
            let mut a = vec![0.0; d * m];
            for j in 0..m {
                for (i, &pc) in self.pivots.iter().enumerate() {
                    a[i + j * d] = c[pc + j * l];
                }
            }
            // SAFETY: strides describe the row-major d x l rows, the d x m coefficients and
            // the column-major l x m candidates, each within its buffer.
            unsafe {
                matrixmultiply::dgemm(
                    l,
                    d,
                    m,
                    -1.0,
                    self.rows.as_ptr(),
                    1,
                    l as isize,
                    a.as_ptr(),
                    1,
                    d as isize,
                    1.0,
                    c.as_mut_ptr(),
                    1,
                    l as isize,
                );
            }
        }
        for x in c.iter_mut() {
            *x = fmod(*x, pf);
        }
    }

    /// Insert a batch of candidates; returns the accepted positions (each with its new row)
    /// and whether `max_dim` was reached.
    fn insert_batch(
        &mut self,
        mut c: Vec<f64>,
        m: usize,
        max_dim: usize,
    ) -> (Vec<(usize, Vec<f64>)>, bool) {
        let (l, p) = (self.len, self.p);
        let pf = p as f64;
        self.reduce(&mut c, m);
        let mut fresh: Vec<(usize, Vec<f64>)> = Vec::new();
        let mut accepted = Vec::new();
        let mut hit = false;
        for j in 0..m {
            let mut v = c[j * l..(j + 1) * l].to_vec();
            for (pc, row) in &fresh {
                let f = v[*pc];
                if f != 0.0 {
                    for (x, y) in v.iter_mut().zip(row) {
                        *x = fmod(*x - f * y, pf);
                    }
                }
            }
            let Some(pc) = v.iter().position(|&x| x != 0.0) else {
                continue;
            };
            if self.dim() + fresh.len() >= max_dim {
                hit = true;
                break;
            }
            let s = modp::inv(v[pc] as u64, p) as f64;
            for x in v.iter_mut() {
                *x = fmod(*x * s, pf);
            }
            for (_, row) in fresh.iter_mut() {
                let f = row[pc];
                if f != 0.0 {
                    for (x, y) in row.iter_mut().zip(&v) {
                        *x = fmod(*x - f * y, pf);
                    }
                }
            }
            accepted.push(j);
            fresh.push((pc, v));
        }
        let k = fresh.len();
        let d = self.dim();
        if k > 0 && d > 0 {
            let mut b = vec![0.0; d * k];
            let mut touched = vec![false; d];
            for i in 0..d {
                for (t, (pc, _)) in fresh.iter().enumerate() {
                    let f = self.rows[i * l + pc];
                    b[i * k + t] = f;
                    touched[i] |= f != 0.0;
                }
            }
            let n: Vec<f64> = fresh.iter().flat_map(|(_, r)| r.iter().copied()).collect();
            // SAFETY: row-major d x k coefficients, k x l new rows and d x l stored rows.
            unsafe {
                matrixmultiply::dgemm(
                    d,
                    k,
                    l,
                    -1.0,
                    b.as_ptr(),
                    k as isize,
                    1,
                    n.as_ptr(),
                    l as isize,
                    1,
                    1.0,
                    self.rows.as_mut_ptr(),
                    l as isize,
                    1,
                );
            }
            for i in (0..d).filter(|&i| touched[i]) {
                for x in &mut self.rows[i * l..(i + 1) * l] {
                    *x = fmod(*x, pf);
                }
            }
        }
        let mut out = Vec::with_capacity(k);
        for (j, (pc, row)) in accepted.into_iter().zip(fresh) {
            self.rows.extend_from_slice(&row);
            self.pivots.push(pc);
            out.push((j, row));
        }
        (out, hit)
    }

    /// Whether the coordinates reduce to zero; `None` when a denominator vanishes mod `p`.
    pub fn contains(&self, h: &PauliSum) -> Option<bool> {
        let mut v = coords_mod(h, self.len, self.p)?;
        self.reduce(&mut v, 1);
        Some(v.iter().all(|&x| x == 0.0))
    }
}

/// `ad_g` applied modulo `p`, dropping the common factor 2 of the structure constants.
fn apply_bracket(n: usize, g: &[(PauliString, u64)], u: &[f64], p: u64) -> Vec<f64> {
    let mut acc = vec![0u64; u.len()];
    for (k, &x) in u.iter().enumerate() {
        if x == 0.0 {
            continue;
        }
        let s = decode(n, k);
        let x = x as u64;
        for (gs, gx) in g {
            if let Some((sign, r)) = bracket_strings(gs, &s) {
                let t = gx * x % p;
                let e = &mut acc[super::code(&r)];
                *e += if sign > 0 { t } else { p - t };
            }
        }
    }
    acc.into_iter().map(|v| (v % p) as f64).collect()
}

/// Closure modulo a prime drawn from `seed`.
pub(crate) fn close(n: usize, gens: &[PauliSum], max_dim: usize, seed: u64) -> (ModSpan, bool) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let p = small_prime(&mut rng);
        if let Some(r) = close_with(n, gens, max_dim, p) {
            return r;
        }
    }
}

/// `None` when `p` divides a generator denominator.
fn close_with(n: usize, gens: &[PauliSum], max_dim: usize, p: u64) -> Option<(ModSpan, bool)> {
    let mut span = ModSpan::new(n, p);
    let len = span.len;
    let mut terms: Vec<Vec<(PauliString, u64)>> = Vec::new();
    let mut batch = Vec::new();
    for g in gens {
        let v = coords_mod(g, len, p)?;
        terms.push(
            v.iter()
                .enumerate()
                .filter(|(_, x)| **x != 0.0)
                .map(|(k, x)| (decode(n, k), *x as u64))
                .collect(),
        );
        batch.extend(v);
    }
    let mut m = gens.len();
    let mut frontier: VecDeque<Vec<f64>> = VecDeque::new();
    loop {
        if m == 0 {
            return Some((span, false));
        }
        let (added, hit) = span.insert_batch(std::mem::take(&mut batch), m, max_dim);
        if hit {
            return Some((span, true));
        }
        frontier.extend(added.into_iter().map(|(_, row)| row));
        m = 0;
        while m + terms.len() <= BATCH {
            let Some(u) = frontier.pop_front() else { break };
            for g in &terms {
                batch.extend(apply_bracket(n, g, &u, p));
                m += 1;
            }
        }
    }
}
