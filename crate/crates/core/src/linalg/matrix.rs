//! Square sparse matrices with row-major storage.

use std::collections::BTreeMap;

use num_traits::Num;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix<T> {
    dim: usize,
    rows: Vec<Vec<(u32, T)>>,
}

impl<T: Num + Clone> SparseMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        SparseMatrix {
            dim,
            rows: vec![Vec::new(); dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        SparseMatrix {
            dim,
            rows: (0..dim).map(|i| vec![(i as u32, T::one())]).collect(),
        }
    }

    /// Build from `(row, col, value)` triplets; duplicates are summed and zeros dropped.
    pub fn from_triplets<I: IntoIterator<Item = (usize, usize, T)>>(dim: usize, it: I) -> Self {
        let mut acc: Vec<BTreeMap<u32, T>> = vec![BTreeMap::new(); dim];
        for (r, c, v) in it {
            let e = acc[r].entry(c as u32).or_insert_with(T::zero);
            *e = e.clone() + v;
        }
        SparseMatrix {
            dim,
            rows: acc
                .into_iter()
                .map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect())
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, r: usize) -> &[(u32, T)] {
        &self.rows[r]
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> T {
        match self.rows[r].binary_search_by_key(&(c as u32), |e| e.0) {
            Ok(k) => self.rows[r][k].1.clone(),
            Err(_) => T::zero(),
        }
    }

    /// Iterate over stored entries as `(row, col, value)`.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c as usize, v)))
    }

    pub fn is_diagonal(&self) -> bool {
        self.triplets().all(|(r, c, _)| r == c)
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(self.dim, self.triplets().map(|(r, c, v)| (c, r, v.clone())))
    }

    pub fn is_symmetric(&self) -> bool {
        self == &self.transpose()
    }

    pub fn map<U: Num + Clone, F: Fn(&T) -> U>(&self, f: F) -> SparseMatrix<U> {
        SparseMatrix::from_triplets(self.dim, self.triplets().map(|(r, c, v)| (r, c, f(v))))
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|v| v.clone() * s.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_triplets(
            self.dim,
            self.triplets()
                .map(|(r, c, v)| (r, c, v.clone()))
                .chain(other.triplets().map(|(r, c, v)| (r, c, v.clone()))),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_triplets(
            self.dim,
            self.triplets().map(|(r, c, v)| (r, c, v.clone())).chain(
                other
                    .triplets()
                    .map(|(r, c, v)| (r, c, T::zero() - v.clone())),
            ),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc: BTreeMap<u32, T> = BTreeMap::new();
                for (k, a) in row {
                    for (c, b) in &other.rows[*k as usize] {
                        let e = acc.entry(*c).or_insert_with(T::zero);
                        *e = e.clone() + a.clone() * b.clone();
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        SparseMatrix {
            dim: self.dim,
            rows,
        }
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn trace(&self) -> T {
        (0..self.dim).fold(T::zero(), |s, i| s + self.get(i, i))
    }

    /// `tr(self^T other)`.
    pub fn frobenius(&self, other: &Self) -> T {
        let mut s = T::zero();
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                let w = other.get(r, *c as usize);
                if !w.is_zero() {
                    s = s + v.clone() * w;
                }
            }
        }
        s
    }

    /// Matrix-vector product.
    pub fn apply(&self, x: &[T]) -> Vec<T> {
        self.rows
            .iter()
            .map(|row| {
                row.iter().fold(T::zero(), |s, (c, v)| {
                    s + v.clone() * x[*c as usize].clone()
                })
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_commutator() {
        let a = SparseMatrix::from_triplets(2, [(0, 1, 1i64), (1, 0, 1)]);
        let b = SparseMatrix::from_triplets(2, [(0, 0, 1i64), (1, 1, -1)]);
        let c = a.commutator(&b);
        assert_eq!(c.get(0, 1), -2);
        assert_eq!(c.get(1, 0), 2);
        assert!(a.mul(&a).sub(&SparseMatrix::identity(2)).is_zero());
        assert!(a.is_symmetric());
        assert!(!c.is_symmetric());
        assert_eq!(b.frobenius(&b), 2);
    }
}
