//! Commutant constraints for arbitrary non-diagonal generators, modulo a prime.

use std::collections::HashMap;

use super::space::BlockSpace;
use crate::error::{Error, Result};
use crate::linalg::{modp, Echelon, SparseMatrix};

/// Kernel of `S -> ([S, G])_G` on the block space, modulo `p`.
pub(crate) fn generic_kernel(
    space: &BlockSpace,
    gens: &[SparseMatrix<i64>],
    p: u64,
    max_unknowns: usize,
) -> Result<Vec<Vec<u64>>> {
    let u = space.unknowns();
    if u > max_unknowns {
        return Err(Error::Budget(format!(
            "{u} commutant unknowns exceed limit {max_unknowns}"
        )));
    }
    let mut ech = Echelon::new(u, p);
    for g in gens {
        let gt = g.transpose();
        let mut rows: HashMap<(u32, u32), Vec<(u32, u64)>> = HashMap::new();
        for idx in 0..u {
            let (r, k) = space.entry(idx);
            for &(c, v) in g.row(k) {
                rows.entry((r as u32, c))
                    .or_default()
                    .push((idx as u32, modp::from_i64(v, p)));
            }
            let (k, c) = (r, k);
            for &(r2, v) in gt.row(k) {
                rows.entry((r2, c as u32))
                    .or_default()
                    .push((idx as u32, modp::from_i64(-v, p)));
            }
        }
        let mut keys: Vec<_> = rows.keys().copied().collect();
        keys.sort_unstable();
        for key in keys {
            ech.insert(&rows[&key]);
        }
    }
    Ok(ech.kernel())
}

/// Restrict a basis (vectors over the block space) to the combinations that also commute with `gens`.
pub(crate) fn intersect_kernel(
    space: &BlockSpace,
    basis: &[Vec<u64>],
    gens: &[SparseMatrix<i64>],
    p: u64,
) -> Vec<Vec<u64>> {
    let m = basis.len();
    if m == 0 || gens.is_empty() {
        return basis.to_vec();
    }
    let mut rows: HashMap<(u32, u32, u32), Vec<(u32, u64)>> = HashMap::new();
    for (gi, g) in gens.iter().enumerate() {
        let gt = g.transpose();
        for (i, v) in basis.iter().enumerate() {
            let mut acc: HashMap<(u32, u32), u64> = HashMap::new();
            for (idx, &val) in v.iter().enumerate() {
                if val == 0 {
                    continue;
                }
                let (r, k) = space.entry(idx);
                for &(c, gv) in g.row(k) {
                    let e = acc.entry((r as u32, c)).or_insert(0);
                    *e = modp::add(*e, modp::mul(val, modp::from_i64(gv, p), p), p);
                }
                let (k, c) = (r, k);
                for &(r2, gv) in gt.row(k) {
                    let e = acc.entry((r2, c as u32)).or_insert(0);
                    *e = modp::sub(*e, modp::mul(val, modp::from_i64(gv, p), p), p);
                }
            }
            for ((r, c), val) in acc {
                if val != 0 {
                    rows.entry((gi as u32, r, c))
                        .or_default()
                        .push((i as u32, val));
                }
            }
        }
    }
    let mut ech = Echelon::new(m, p);
    let mut keys: Vec<_> = rows.keys().copied().collect();
    keys.sort_unstable();
    for key in keys {
        ech.insert(&rows[&key]);
        if ech.rank() == m {
            return Vec::new();
        }
    }
    let u = space.unknowns();
    ech.kernel()
        .into_iter()
        .map(|t| {
            let mut out = vec![0u64; u];
            for (i, v) in basis.iter().enumerate() {
                if t[i] == 0 {
                    continue;
                }
                for (dst, &src) in out.iter_mut().zip(v) {
                    if src != 0 {
                        *dst = modp::add(*dst, modp::mul(t[i], src, p), p);
                    }
                }
            }
            out
        })
        .collect()
}
