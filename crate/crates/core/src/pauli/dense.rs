use num_complex::Complex;
use num_traits::{ToPrimitive, Zero};

use super::sum::{dim_checked, Coeff, PauliSum};
use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;

/// Largest qubit count for exact dense matrices.
pub const DENSE_MAX_QUBITS: usize = 8;

/// Exact dense `2^n x 2^n` matrix in row-major order; qubit 0 is the low bit of the index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseOperator {
    n: usize,
    entries: Vec<Coeff>,
}

impl DenseOperator {
    pub fn zeros(n: usize) -> Result<Self> {
        let d = dim_checked(n, DENSE_MAX_QUBITS)?;
        Ok(DenseOperator {
            n,
            entries: vec![Coeff::zero(); d * d],
        })
    }

    pub fn from_sparse(n: usize, m: &SparseMatrix<Coeff>) -> Result<Self> {
        let mut out = Self::zeros(n)?;
        if m.dim() != out.dim() {
            return Err(Error::InvalidOperator("matrix size is not 2^n".into()));
        }
        let d = out.dim();
        for (r, c, v) in m.triplets() {
            out.entries[r * d + c] = v.clone();
        }
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &Coeff {
        &self.entries[r * self.dim() + c]
    }

    pub fn to_sparse(&self) -> SparseMatrix<Coeff> {
        let d = self.dim();
        SparseMatrix::from_triplets(
            d,
            self.entries
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(k, v)| (k / d, k % d, v.clone())),
        )
    }

    pub fn mul(&self, other: &DenseOperator) -> Result<DenseOperator> {
        if self.n != other.n {
            return Err(Error::QubitMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let d = self.dim();
        let mut out = Self::zeros(self.n)?;
        for i in 0..d {
            for k in 0..d {
                let a = &self.entries[i * d + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = &other.entries[k * d + j];
                    if !b.is_zero() {
                        let e = &mut out.entries[i * d + j];
                        *e = &*e + a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &DenseOperator) -> Result<DenseOperator> {
        if self.n != other.n {
            return Err(Error::QubitMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(DenseOperator {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn commutator(&self, other: &DenseOperator) -> Result<DenseOperator> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        let d = self.dim();
        self.entries
            .iter()
            .enumerate()
            .all(|(k, v)| k / d == k % d || v.is_zero())
    }

    /// Floating-point view.
    pub fn to_f64(&self) -> Vec<Complex<f64>> {
        self.entries
            .iter()
            .map(|c| {
                Complex::new(
                    c.re.to_f64().unwrap_or(f64::NAN),
                    c.im.to_f64().unwrap_or(f64::NAN),
                )
            })
            .collect()
    }

    pub fn to_pauli(&self) -> Result<PauliSum> {
        PauliSum::from_matrix(self.n, &self.to_sparse())
    }
}

/// Exact dense realization of a Pauli sum.
pub fn to_dense(p: &PauliSum) -> Result<DenseOperator> {
    dim_checked(p.n(), DENSE_MAX_QUBITS)?;
    DenseOperator::from_sparse(p.n(), &p.to_sparse()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::sum::coeff_int;

    #[test]
    fn z_diagonal() {
        let z: PauliSum = PauliSum::from_string("IZ".parse().unwrap());
        let d = to_dense(&z).unwrap();
        assert!(d.is_diagonal());
        assert_eq!(*d.get(2, 2), coeff_int(-1));
        assert_eq!(*d.get(1, 1), coeff_int(1));
    }

    #[test]
    fn too_large_is_budget_error() {
        assert!(matches!(
            to_dense(&PauliSum::identity(9)),
            Err(Error::Budget(_))
        ));
    }
}
