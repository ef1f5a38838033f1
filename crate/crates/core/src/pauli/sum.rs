use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::string::{PauliString, Phase};
use crate::error::{Error, Result};
use crate::graph::Permutation;
use crate::linalg::SparseMatrix;

/// Exact Gaussian rational.
pub type Coeff = Complex<BigRational>;

pub fn coeff_int(v: i64) -> Coeff {
    Complex::new(BigRational::from_integer(v.into()), BigRational::zero())
}

pub fn coeff_ratio(num: i64, den: i64) -> Coeff {
    Complex::new(
        BigRational::new(num.into(), den.into()),
        BigRational::zero(),
    )
}

pub fn coeff_i() -> Coeff {
    Complex::new(BigRational::zero(), BigRational::one())
}

fn times_phase(c: &Coeff, p: Phase) -> Coeff {
    match p.0 {
        0 => c.clone(),
        1 => Complex::new(-c.im.clone(), c.re.clone()),
        2 => Complex::new(-c.re.clone(), -c.im.clone()),
        _ => Complex::new(c.im.clone(), -c.re.clone()),
    }
}

/// Linear combination of Pauli strings with exact Gaussian rational coefficients.
///
/// Terms are kept in letter order with `I < X < Y < Z` and zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct PauliSum {
    n: usize,
    terms: BTreeMap<PauliString, Coeff>,
}

impl PauliSum {
    pub fn zero(n: usize) -> Self {
        PauliSum {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_string(PauliString::identity(n))
    }

    pub fn from_string(s: PauliString) -> Self {
        Self::from_term(s, coeff_int(1))
    }

    pub fn from_term(s: PauliString, c: Coeff) -> Self {
        let mut out = Self::zero(s.n());
        out.add_term(s, c);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (PauliString, Coeff)>>(
        n: usize,
        it: I,
    ) -> Result<Self> {
        let mut out = Self::zero(n);
        for (s, c) in it {
            if s.n() != n {
                return Err(Error::QubitMismatch {
                    left: n,
                    right: s.n(),
                });
            }
            out.add_term(s, c);
        }
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PauliString, &Coeff)> {
        self.terms.iter()
    }

    pub fn coeff(&self, s: &PauliString) -> Coeff {
        self.terms.get(s).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn add_term(&mut self, s: PauliString, c: Coeff) {
        assert_eq!(s.n(), self.n, "Pauli string size mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(s) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check(&self, other: &PauliSum) -> Result<()> {
        if self.n != other.n {
            return Err(Error::QubitMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &PauliSum) -> Result<PauliSum> {
        self.check(other)?;
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(*s, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &PauliSum) -> Result<PauliSum> {
        self.check(other)?;
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(*s, -c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Coeff) -> PauliSum {
        let mut out = PauliSum::zero(self.n);
        for (s, v) in &self.terms {
            out.add_term(*s, v * c);
        }
        out
    }

    pub fn mul(&self, other: &PauliSum) -> Result<PauliSum> {
        self.check(other)?;
        let mut acc: BTreeMap<PauliString, Coeff> = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let (ph, s) = a.product_unchecked(b);
                let v = times_phase(&(ca * cb), ph);
                let e = acc.entry(s).or_insert_with(Coeff::zero);
                *e = &*e + v;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(PauliSum {
            n: self.n,
            terms: acc,
        })
    }

    /// Exact `[self, other] = self*other - other*self`.
    pub fn commutator(&self, other: &PauliSum) -> Result<PauliSum> {
        self.check(other)?;
        let mut acc: BTreeMap<PauliString, Coeff> = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                if a.commutes_with(b) {
                    continue;
                }
                let (ph, s) = a.product_unchecked(b);
                let v = times_phase(&(ca * cb), ph);
                let v = &v + &v;
                let e = acc.entry(s).or_insert_with(Coeff::zero);
                *e = &*e + v;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(PauliSum {
            n: self.n,
            terms: acc,
        })
    }

    /// Exact `self*other + other*self`.
    pub fn anticommutator(&self, other: &PauliSum) -> Result<PauliSum> {
        self.mul(other)?.add(&other.mul(self)?)
    }

    pub fn commutes_with(&self, other: &PauliSum) -> Result<bool> {
        Ok(self.commutator(other)?.is_zero())
    }

    /// Hermitian conjugate.
    pub fn adjoint(&self) -> PauliSum {
        PauliSum {
            n: self.n,
            terms: self.terms.iter().map(|(s, c)| (*s, c.conj())).collect(),
        }
    }

    pub fn is_hermitian(&self) -> bool {
        self.terms.values().all(|c| c.im.is_zero())
    }

    /// Coefficient of the identity string, i.e. `tr(self) / 2^n`.
    pub fn identity_coeff(&self) -> Coeff {
        self.coeff(&PauliString::identity(self.n))
    }

    pub fn traceless_part(&self) -> PauliSum {
        let mut out = self.clone();
        out.terms.remove(&PauliString::identity(self.n));
        out
    }

    pub fn hermitian_part(&self) -> PauliSum {
        let mut out = PauliSum::zero(self.n);
        for (s, c) in &self.terms {
            out.add_term(*s, Complex::new(c.re.clone(), BigRational::zero()));
        }
        out
    }

    /// Every term is diagonal in the computational basis.
    pub fn is_diagonal(&self) -> bool {
        self.terms.keys().all(PauliString::is_diagonal)
    }

    /// Conjugation `P_p self P_p^†` by a qubit permutation.
    pub fn permuted(&self, p: &Permutation) -> PauliSum {
        PauliSum {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(s, c)| (s.permuted(p), c.clone()))
                .collect(),
        }
    }

    /// Normalized trace inner product `tr(A^† B) / 2^n`.
    pub fn inner(&self, other: &PauliSum) -> Coeff {
        let mut s = Coeff::zero();
        for (k, a) in &self.terms {
            if let Some(b) = other.terms.get(k) {
                s += a.conj() * b;
            }
        }
        s
    }

    /// Sparse matrix with exact entries in the computational basis.
    pub fn to_sparse(&self) -> Result<SparseMatrix<Coeff>> {
        let dim = dim_checked(self.n, 16)?;
        let mut trip = Vec::with_capacity(dim * self.terms.len());
        for (s, c) in &self.terms {
            for b in 0..dim as u64 {
                let (r, ph) = s.act(b);
                trip.push((r as usize, b as usize, times_phase(c, ph)));
            }
        }
        Ok(SparseMatrix::from_triplets(dim, trip))
    }

    /// Integer matrix proportional to `self` (scaled by the common denominator).
    ///
    /// Fails when the matrix has a nonzero imaginary part.
    pub fn to_integer_matrix(&self) -> Result<SparseMatrix<i64>> {
        let dim = dim_checked(self.n, 16)?;
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = den.lcm(c.re.denom()).lcm(c.im.denom());
        }
        let mut trip = Vec::with_capacity(dim * self.terms.len());
        for (s, c) in &self.terms {
            let re = (c.re.numer() * &den / c.re.denom())
                .to_i64()
                .ok_or_else(|| Error::InvalidOperator("coefficient overflow".into()))?;
            let im = (c.im.numer() * &den / c.im.denom())
                .to_i64()
                .ok_or_else(|| Error::InvalidOperator("coefficient overflow".into()))?;
            for b in 0..dim as u64 {
                let (r, ph) = s.act(b);
                let (vr, vi) = match ph.0 {
                    0 => (re, im),
                    1 => (-im, re),
                    2 => (-re, -im),
                    _ => (im, -re),
                };
                trip.push((r as usize, b as usize, Complex::new(vr, vi)));
            }
        }
        let m = SparseMatrix::from_triplets(dim, trip);
        if m.triplets().any(|(_, _, v)| v.im != 0) {
            return Err(Error::InvalidOperator(
                "operator has complex matrix entries; only real operators are supported".into(),
            ));
        }
        Ok(m.map(|v| v.re))
    }

    /// Pauli expansion of a matrix, `c_P = tr(P^† M) / 2^n`.
    pub fn from_matrix(n: usize, m: &SparseMatrix<Coeff>) -> Result<PauliSum> {
        let dim = dim_checked(n, 10)?;
        if m.dim() != dim {
            return Err(Error::InvalidOperator("matrix size is not 2^n".into()));
        }
        let mut acc: BTreeMap<PauliString, Coeff> = BTreeMap::new();
        let norm = BigRational::new(BigInt::one(), BigInt::from(dim as u64));
        for (r, c, v) in m.triplets() {
            // P has entry at (c ^ x, c); match x = r ^ c, scan z
            let x = (r ^ c) as u64;
            for z in 0..dim as u64 {
                let s = PauliString::from_bits(n, x, z);
                let (_, ph) = s.act(c as u64);
                // conj(P[r,c]) * M[r,c]
                let conj = Phase((4 - ph.0) % 4);
                let e = acc.entry(s).or_insert_with(Coeff::zero);
                *e = &*e + times_phase(v, conj);
            }
        }
        let terms = acc
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(s, v)| (s, Complex::new(&v.re * &norm, &v.im * &norm)))
            .collect();
        Ok(PauliSum { n, terms })
    }

    /// Largest absolute numerator or denominator among the coefficients, for diagnostics.
    pub fn height(&self) -> BigInt {
        let mut h = BigInt::zero();
        for c in self.terms.values() {
            for q in [&c.re, &c.im] {
                h = h.max(q.numer().abs()).max(q.denom().abs());
            }
        }
        h
    }
}

pub(crate) fn dim_checked(n: usize, max: usize) -> Result<usize> {
    if n > max {
        return Err(Error::Budget(format!(
            "{n} qubits exceed the matrix limit of {max}"
        )));
    }
    Ok(1usize << n)
}

impl fmt::Debug for PauliSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliSum[")?;
        for (k, (s, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if c.im.is_zero() {
                write!(f, "({}){}", c.re, s)?;
            } else {
                write!(f, "({}+{}i){}", c.re, c.im, s)?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(s: &str) -> PauliSum {
        PauliSum::from_string(s.parse().unwrap())
    }

    #[test]
    fn single_qubit_commutator() {
        let c = ps("X").commutator(&ps("Z")).unwrap();
        assert_eq!(c, ps("Y").scale(&(coeff_i() * coeff_int(-2))));
        assert!(ps("X").commutator(&ps("X")).unwrap().is_zero());
    }

    #[test]
    fn sparse_matrix_of_y() {
        let m = ps("Y").to_sparse().unwrap();
        assert_eq!(m.get(1, 0), coeff_i());
        assert_eq!(m.get(0, 1), -coeff_i());
        assert!(ps("Y").to_integer_matrix().is_err());
        let yy = ps("YY").to_integer_matrix().unwrap();
        assert_eq!(yy.get(3, 0), -1);
    }

    #[test]
    fn matrix_roundtrip() {
        let a = ps("XZ").add(&ps("YI").scale(&coeff_ratio(3, 2))).unwrap();
        let m = a.to_sparse().unwrap();
        assert_eq!(PauliSum::from_matrix(2, &m).unwrap(), a);
    }

    #[test]
    fn qubit_zero_is_low_bit() {
        let m = ps("XI").to_integer_matrix().unwrap();
        assert_eq!(m.get(1, 0), 1);
        assert_eq!(m.get(2, 0), 0);
    }
}
