//! Exact rational linear algebra and modular lifting.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Combine `a mod m` with `b mod p` into a residue modulo `m*p`.
pub fn crt(a: &BigInt, m: &BigInt, b: u64, p: u64) -> (BigInt, BigInt) {
    let pb = BigInt::from(p);
    let m_mod_p = (m % &pb).to_u64_digits().1.first().copied().unwrap_or(0);
    let a_mod_p = (a % &pb).to_u64_digits().1.first().copied().unwrap_or(0);
    let inv = super::modp::inv(m_mod_p, p);
    let t = super::modp::mul(super::modp::sub(b, a_mod_p, p), inv, p);
    let mp = m * &pb;
    let x = (a + m * BigInt::from(t)).mod_floor(&mp);
    (x, mp)
}

/// Recover `r/s` with `|r|, |s| <= sqrt(m/2)` from `a mod m`.
pub fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<BigRational> {
    let a = a.mod_floor(m);
    if a.is_zero() {
        return Some(BigRational::zero());
    }
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a);
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// Reduced row echelon form over the rationals; returns the nonzero rows and pivot columns.
pub fn rref(mut m: Vec<Vec<BigRational>>) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let rows = m.len();
    if rows == 0 {
        return (m, Vec::new());
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(sel) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, sel);
        let s = m[r][c].recip();
        for x in m[r].iter_mut() {
            if !x.is_zero() {
                *x = &*x * &s;
            }
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(pivot_row.iter()) {
                if !y.is_zero() {
                    *x = &*x - &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

/// Right kernel of a rational matrix with `ncols` columns.
pub fn kernel(m: Vec<Vec<BigRational>>, ncols: usize) -> Vec<Vec<BigRational>> {
    let (r, pivots) = rref(m);
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut out = Vec::new();
    for f in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![BigRational::zero(); ncols];
        v[f] = BigRational::one();
        for (row, &pc) in r.iter().zip(pivots.iter()) {
            v[pc] = -row[f].clone();
        }
        out.push(v);
    }
    out
}

/// Scale a rational vector to a primitive integer vector whose first nonzero entry is positive.
pub fn primitive(v: &[BigRational]) -> Vec<BigInt> {
    let mut den = BigInt::one();
    for x in v {
        if !x.is_zero() {
            den = den.lcm(x.denom());
        }
    }
    let mut ints: Vec<BigInt> = v.iter().map(|x| (x.numer() * &den) / x.denom()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return ints;
    }
    let first_neg = ints
        .iter()
        .find(|x| !x.is_zero())
        .is_some_and(|x| x.is_negative());
    if first_neg {
        g = -g;
    }
    for x in ints.iter_mut() {
        *x = &*x / &g;
    }
    ints
}

/// Rank of an integer matrix by exact rational elimination.
pub fn rank(m: &[Vec<BigInt>]) -> usize {
    let q: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    rref(q).1.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn reconstruct_small_fraction() {
        let p = 1_000_000_007u64;
        let m = BigInt::from(p);
        let x = (BigInt::from(-3) * BigInt::from(super::super::modp::inv(7, p))).mod_floor(&m);
        assert_eq!(rational_reconstruct(&x, &m), Some(q(-3, 7)));
    }

    #[test]
    fn crt_combines() {
        let (x, m) = crt(&BigInt::from(2), &BigInt::from(3), 3, 5);
        assert_eq!(m, BigInt::from(15));
        assert_eq!(x, BigInt::from(8));
    }

    #[test]
    fn kernel_of_rank_one() {
        let k = kernel(vec![vec![q(1, 1), q(2, 1), q(3, 1)]], 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            let s = &v[0] + &v[1] * q(2, 1) + &v[2] * q(3, 1);
            assert!(s.is_zero());
        }
    }

    #[test]
    fn primitive_normalizes_sign_and_content() {
        let v = primitive(&[q(0, 1), q(-2, 3), q(4, 3)]);
        assert_eq!(v, vec![BigInt::from(0), BigInt::from(1), BigInt::from(-2)]);
    }
}
