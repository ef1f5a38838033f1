//! Incremental sparse row echelon form over a prime field.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::modp;

/// Sparse row as sorted `(column, value)` pairs with nonzero values.
pub type SparseRow = Vec<(u32, u64)>;

const NONE: u32 = u32::MAX;

/// Row echelon form built one row at a time.
///
/// Stored rows have distinct leading columns and a unit leading entry.
pub struct Echelon {
    p: u64,
    ncols: usize,
    pivot_of: Vec<u32>,
    rows: Vec<SparseRow>,
    work: Vec<u64>,
    queued: Vec<bool>,
    heap: BinaryHeap<Reverse<u32>>,
}

impl Echelon {
    pub fn new(ncols: usize, p: u64) -> Self {
        Echelon {
            p,
            ncols,
            pivot_of: vec![NONE; ncols],
            rows: Vec::new(),
            work: vec![0; ncols],
            queued: vec![false; ncols],
            heap: BinaryHeap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// Reduce `row` against the stored pivots and keep the remainder if nonzero.
    /// Entries may be unsorted and may repeat a column; repeated entries are summed.
    pub fn insert(&mut self, row: &[(u32, u64)]) -> bool {
        let p = self.p;
        for &(c, v) in row {
            let v = v % p;
            if v == 0 {
                continue;
            }
            let c = c as usize;
            self.work[c] = modp::add(self.work[c], v, p);
            if !self.queued[c] {
                self.queued[c] = true;
                self.heap.push(Reverse(c as u32));
            }
        }
        let Echelon {
            pivot_of,
            rows,
            work,
            queued,
            heap,
            ..
        } = self;
        while let Some(Reverse(c)) = heap.pop() {
            let ci = c as usize;
            queued[ci] = false;
            let f = work[ci];
            if f == 0 {
                continue;
            }
            let piv = pivot_of[ci];
            if piv == NONE {
                let scale = modp::inv(f, p);
                let mut out: SparseRow = vec![(c, 1)];
                work[ci] = 0;
                while let Some(Reverse(d)) = heap.pop() {
                    let di = d as usize;
                    queued[di] = false;
                    if work[di] != 0 {
                        out.push((d, modp::mul(work[di], scale, p)));
                        work[di] = 0;
                    }
                }
                pivot_of[ci] = rows.len() as u32;
                rows.push(out);
                return true;
            }
            let prow = &rows[piv as usize];
            for &(d, v) in prow {
                let di = d as usize;
                work[di] = modp::sub(work[di], modp::mul(f, v, p), p);
                if !queued[di] && di != ci {
                    queued[di] = true;
                    heap.push(Reverse(d));
                }
            }
            work[ci] = 0;
        }
        false
    }

    /// Pivot columns in ascending order.
    pub fn pivot_columns(&self) -> Vec<usize> {
        (0..self.ncols)
            .filter(|&c| self.pivot_of[c] != NONE)
            .collect()
    }

    /// Basis of the right kernel as dense vectors, one per free column.
    pub fn kernel(&self) -> Vec<Vec<u64>> {
        let p = self.p;
        let free: Vec<usize> = (0..self.ncols)
            .filter(|&c| self.pivot_of[c] == NONE)
            .collect();
        let nf = free.len();
        if nf == 0 {
            return Vec::new();
        }
        let mut slot = vec![NONE; self.ncols];
        for (k, &c) in free.iter().enumerate() {
            slot[c] = k as u32;
        }
        // values[c] holds x_c as a function of the free variables
        let mut values: Vec<Option<Vec<u64>>> = vec![None; self.ncols];
        for c in (0..self.ncols).rev() {
            let piv = self.pivot_of[c];
            if piv == NONE {
                continue;
            }
            let mut acc = vec![0u64; nf];
            for &(d, v) in &self.rows[piv as usize][1..] {
                let di = d as usize;
                if slot[di] != NONE {
                    let k = slot[di] as usize;
                    acc[k] = modp::sub(acc[k], v, p);
                } else if let Some(xd) = &values[di] {
                    for k in 0..nf {
                        if xd[k] != 0 {
                            acc[k] = modp::sub(acc[k], modp::mul(v, xd[k], p), p);
                        }
                    }
                }
            }
            values[c] = Some(acc);
        }
        let mut out = vec![vec![0u64; self.ncols]; nf];
        for (k, vec) in out.iter_mut().enumerate() {
            vec[free[k]] = 1;
        }
        for c in 0..self.ncols {
            if let Some(xc) = &values[c] {
                for k in 0..nf {
                    out[k][c] = xc[k];
                }
            }
        }
        out
    }
}

/// Reduced row echelon form of a dense matrix in place; returns pivot columns.
pub fn rref_dense(m: &mut [Vec<u64>], p: u64) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(sel) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, sel);
        let s = modp::inv(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = modp::mul(*x, s, p);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (x, &y) in row.iter_mut().zip(pivot_row.iter()) {
                if y != 0 {
                    *x = modp::sub(*x, modp::mul(f, y, p), p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u64 = 1_000_000_007;

    fn dot(a: &[u64], b: &[(u32, u64)]) -> u64 {
        b.iter().fold(0, |s, &(c, v)| {
            modp::add(s, modp::mul(a[c as usize], v, P), P)
        })
    }

    #[test]
    fn kernel_is_annihilated() {
        let rows: Vec<SparseRow> = vec![
            vec![(0, 1), (2, 3), (4, 5)],
            vec![(1, 2), (2, 1)],
            vec![(0, 2), (1, 2), (2, 7), (4, 10)],
            vec![(3, 1), (4, P - 1)],
        ];
        let mut e = Echelon::new(5, P);
        let kept: Vec<bool> = rows.iter().map(|r| e.insert(r)).collect();
        assert_eq!(kept, vec![true, true, false, true]);
        let k = e.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            for r in &rows {
                assert_eq!(dot(v, r), 0);
            }
        }
    }

    #[test]
    fn rref_identity_block() {
        let mut m = vec![vec![2, 4, 6], vec![1, 3, 5]];
        let piv = rref_dense(&mut m, P);
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(m[0][0], 1);
        assert_eq!(m[0][1], 0);
        assert_eq!(m[1][1], 1);
    }
}
