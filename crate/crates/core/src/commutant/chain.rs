//! Commutant of `sum_j X_j` together with diagonal generators that fix the Hamming weight,
//! solved one weight sector at a time.
//!
//! With the weight conserved, `[S, sum_j X_j] = 0` splits into `S U = U S` and `S L = L S`
//! where `U` adds one bit and `L = U^T`. Sector `k+1` of `S` is solved given a
//! parametrization of sectors `0..=k`, carrying the parameters along.

use super::space::BlockSpace;
use crate::error::{Error, Result};
use crate::linalg::{modp, Echelon};

/// Whether every level has a single Hamming weight.
pub(crate) fn levels_fix_weight(space: &BlockSpace) -> bool {
    space.levels().iter().all(|l| {
        let w = l[0].count_ones();
        l.iter().all(|s| s.count_ones() == w)
    })
}

/// Kernel of `S -> [S, sum_j X_j]` on the block space, modulo `p`.
///
/// Levels must be ordered by weight (see [`BlockSpace::from_diagonals`]).
pub(crate) fn chain_kernel(
    space: &BlockSpace,
    n: usize,
    p: u64,
    max_step: usize,
) -> Result<Vec<Vec<u64>>> {
    let u = space.unknowns();
    let levels = space.levels();
    let mut sector_range = vec![(usize::MAX, 0usize); n + 1];
    let mut sector_states: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for (l, states) in levels.iter().enumerate() {
        let w = states[0].count_ones() as usize;
        let (a, b) = space.level_range(l);
        let r = &mut sector_range[w];
        r.0 = r.0.min(a);
        r.1 = r.1.max(b);
        sector_states[w].extend(states.iter().map(|&s| s as usize));
    }
    let (s0, e0) = sector_range[0];
    let mut params: Vec<Vec<u64>> = (s0..e0)
        .map(|k| {
            let mut v = vec![0u64; u];
            v[k] = 1;
            v
        })
        .collect();

    for k in 0..n {
        let (xs, xe) = sector_range[k + 1];
        let nx = xe - xs;
        let m = params.len();
        if nx + m > max_step {
            return Err(Error::Budget(format!(
                "sector step with {} unknowns exceeds limit {max_step}",
                nx + m
            )));
        }
        let mut ech = Echelon::new(nx + m, p);
        let mut rows_a: std::collections::BTreeMap<usize, Vec<(u32, u64)>> = Default::default();
        let mut rows_b: std::collections::BTreeMap<usize, Vec<(u32, u64)>> = Default::default();
        let one_neg = p - 1;
        for &a in &sector_states[k + 1] {
            rows_a.clear();
            rows_b.clear();
            let level = &levels[space.level_of(a)];
            for &c in level {
                let c = c as usize;
                let xa = (space.index(a, c).unwrap() - xs) as u32;
                let xb = (space.index(c, a).unwrap() - xs) as u32;
                let mut bits = c;
                while bits != 0 {
                    let j = bits.trailing_zeros();
                    bits &= bits - 1;
                    let b = c ^ (1 << j);
                    rows_a.entry(b).or_default().push((xa, 1));
                    rows_b.entry(b).or_default().push((xb, one_neg));
                }
            }
            let mut bits = a;
            while bits != 0 {
                let j = bits.trailing_zeros();
                bits &= bits - 1;
                let c = a ^ (1 << j);
                for &b in &levels[space.level_of(c)] {
                    let b = b as usize;
                    let i_cb = space.index(c, b).unwrap();
                    let i_bc = space.index(b, c).unwrap();
                    for (i, par) in params.iter().enumerate() {
                        let v = par[i_cb];
                        if v != 0 {
                            rows_a
                                .entry(b)
                                .or_default()
                                .push(((nx + i) as u32, modp::neg(v, p)));
                        }
                        let w = par[i_bc];
                        if w != 0 {
                            rows_b.entry(b).or_default().push(((nx + i) as u32, w));
                        }
                    }
                }
            }
            for row in rows_a.values().chain(rows_b.values()) {
                ech.insert(row);
            }
        }
        let kernel = ech.kernel();
        let mut next = Vec::with_capacity(kernel.len());
        for kv in kernel {
            let mut v = vec![0u64; u];
            for (i, par) in params.iter().enumerate() {
                let t = kv[nx + i];
                if t == 0 {
                    continue;
                }
                for (dst, &src) in v[..xs].iter_mut().zip(&par[..xs]) {
                    if src != 0 {
                        *dst = modp::add(*dst, modp::mul(t, src, p), p);
                    }
                }
            }
            v[xs..xe].copy_from_slice(&kv[..nx]);
            next.push(v);
        }
        params = next;
    }
    Ok(params)
}
