use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{bracket_strings, coeff_real, decode, herm_coords, Frontier};
use crate::linalg::exact::primitive;
use crate::pauli::PauliSum;

type Row = Vec<(usize, BigInt)>;

/// Integer row echelon basis of a real subspace of Pauli coordinates.
#[derive(Clone, Debug)]
pub(crate) struct ExactSpan {
    n: usize,
    rows: Vec<Row>,
    pivot: HashMap<usize, usize>,
}

impl ExactSpan {
    fn new(n: usize) -> Self {
        ExactSpan {
            n,
            rows: Vec::new(),
            pivot: HashMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut v: BTreeMap<usize, BigInt>) -> BTreeMap<usize, BigInt> {
        let mut cursor = 0usize;
        loop {
            let next = v
                .range(cursor..)
                .find(|(c, _)| self.pivot.contains_key(c))
                .map(|(c, x)| (*c, x.clone()));
            let Some((c, f)) = next else { break };
            let row = &self.rows[self.pivot[&c]];
            let a = row[0].1.clone();
            let g = a.gcd(&f);
            let (sa, sf) = (&a / &g, &f / &g);
            for x in v.values_mut() {
                *x *= &sa;
            }
            for (k, r) in row {
                let e = v.entry(*k).or_insert_with(BigInt::zero);
                *e -= &sf * r;
            }
            v.retain(|_, x| !x.is_zero());
            cursor = c + 1;
        }
        v
    }

    /// Insert `v` if it is independent; returns the new row index.
    fn insert(&mut self, v: BTreeMap<usize, BigInt>) -> Option<usize> {
        let r = self.reduce(v);
        if r.is_empty() {
            return None;
        }
        let mut g = BigInt::zero();
        for x in r.values() {
            g = g.gcd(x);
        }
        let lead_neg = r.values().next().unwrap().is_negative();
        if lead_neg {
            g = -g;
        }
        let row: Row = r.into_iter().map(|(k, x)| (k, x / &g)).collect();
        self.pivot.insert(row[0].0, self.rows.len());
        self.rows.push(row);
        Some(self.rows.len() - 1)
    }

    pub fn contains(&self, coords: &[(usize, BigRational)]) -> bool {
        let vals: Vec<BigRational> = coords.iter().map(|(_, q)| q.clone()).collect();
        let ints = primitive(&vals);
        let v: BTreeMap<usize, BigInt> = coords
            .iter()
            .zip(ints)
            .filter(|(_, x)| !x.is_zero())
            .map(|((k, _), x)| (*k, x))
            .collect();
        self.reduce(v).is_empty()
    }

    /// Rational Gram-Schmidt of the echelon rows, scaled to primitive integer vectors.
    pub fn orthogonal_basis(&self) -> Vec<PauliSum> {
        let mut done: Vec<(BTreeMap<usize, BigInt>, BigInt)> = Vec::new();
        for row in &self.rows {
            let mut v: BTreeMap<usize, BigRational> = row
                .iter()
                .map(|(k, x)| (*k, BigRational::from_integer(x.clone())))
                .collect();
            for (u, norm) in &done {
                let mut dot = BigInt::zero();
                for (k, x) in row {
                    if let Some(y) = u.get(k) {
                        dot += x * y;
                    }
                }
                if dot.is_zero() {
                    continue;
                }
                let f = BigRational::new(dot, norm.clone());
                for (k, y) in u {
                    let e = v.entry(*k).or_insert_with(BigRational::zero);
                    *e -= &f * BigRational::from_integer(y.clone());
                }
            }
            v.retain(|_, x| !x.is_zero());
            let keys: Vec<usize> = v.keys().copied().collect();
            let vals: Vec<BigRational> = v.into_values().collect();
            let ints = primitive(&vals);
            let u: BTreeMap<usize, BigInt> = keys.into_iter().zip(ints).collect();
            let norm = u.values().fold(BigInt::zero(), |s, x| s + x * x);
            done.push((u, norm));
        }
        done.into_iter()
            .map(|(u, _)| {
                PauliSum::from_terms(
                    self.n,
                    u.into_iter().map(|(k, x)| {
                        (decode(self.n, k), coeff_real(BigRational::from_integer(x)))
                    }),
                )
                .expect("consistent qubit count")
            })
            .collect()
    }
}

fn integer_generator(g: &PauliSum) -> Vec<(crate::pauli::PauliString, BigInt)> {
    let coords = herm_coords(g);
    let vals: Vec<BigRational> = coords.iter().map(|(_, q)| q.clone()).collect();
    let ints = primitive(&vals);
    g.terms().map(|(s, _)| *s).zip(ints).collect()
}

pub(crate) fn close(n: usize, gens: &[PauliSum], max_dim: usize) -> (ExactSpan, bool) {
    let mut span = ExactSpan::new(n);
    let mut frontier = Frontier::new();
    let int_gens: Vec<_> = gens.iter().map(integer_generator).collect();
    for g in &int_gens {
        if span.dim() >= max_dim {
            return (span, true);
        }
        let v: BTreeMap<usize, BigInt> =
            g.iter().map(|(s, x)| (super::code(s), x.clone())).collect();
        if let Some(k) = span.insert(v) {
            frontier.push(k);
        }
    }
    while let Some(k) = frontier.pop() {
        for g in &int_gens {
            let mut cand: BTreeMap<usize, BigInt> = BTreeMap::new();
            for (gs, gx) in g {
                for (c, x) in &span.rows[k] {
                    let s = decode(n, *c);
                    if let Some((sign, r)) = bracket_strings(gs, &s) {
                        let e = cand.entry(super::code(&r)).or_insert_with(BigInt::zero);
                        *e += gx * x * BigInt::from(sign);
                    }
                }
            }
            cand.retain(|_, x| !x.is_zero());
            if cand.is_empty() {
                continue;
            }
            if span.dim() >= max_dim {
                return (span, true);
            }
            if let Some(j) = span.insert(cand) {
                frontier.push(j);
            }
        }
    }
    (span, false)
}
