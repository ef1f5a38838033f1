//! Dynamical Lie algebra closures in Pauli coordinates, the adjoint symmetry criterion and
//! the universality decision pipeline.
//!
//! Elements are stored as Hermitian operators `H`, standing for `iH`; the bracket is
//! `-i[A, B]`, which keeps coefficients real. New directions are generated by applying
//! `ad` of the generators to the current basis until nothing new appears.

mod adjoint;
mod central;
mod exact;
mod float;
mod modular;
mod universal;

use std::collections::VecDeque;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::pauli::{coeff_i, Coeff, PauliString, PauliSum};

pub use adjoint::{adjoint_superoperator, adjoint_symmetry_dim};
pub use central::{central_membership, central_membership_with};
pub use universal::{
    is_universal, is_universal_with, UniversalityOptions, UniversalityReport, Verdict,
};

/// Which arithmetic a closure used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClosureMethod {
    Exact,
    Float,
    /// Exact arithmetic modulo random primes below `2^20`.
    Modular,
}

#[derive(Clone, Debug)]
pub struct ClosureOptions {
    /// Stop after this many basis elements (default `4^n - 1`).
    pub max_dim: Option<usize>,
    /// `None` picks exact for `n <= 3` and modular otherwise.
    pub method: Option<ClosureMethod>,
    /// Residual below which a float candidate is discarded, relative to the norm bound of
    /// the bracket that produced it.
    pub tol: f64,
    /// Primes tried by the modular method when the first one does not reach `4^n - 1`;
    /// the largest dimension wins.
    pub primes: usize,
    pub seed: u64,
}

impl Default for ClosureOptions {
    fn default() -> Self {
        ClosureOptions {
            max_dim: None,
            method: None,
            tol: 1e-9,
            primes: 2,
            seed: 1,
        }
    }
}

/// Largest qubit count for the dense float and modular closures.
pub const FLOAT_MAX_QUBITS: usize = 6;

#[derive(Clone, Debug)]
enum Elements {
    Exact(exact::ExactSpan),
    Float(float::FloatSpan),
    Modular(modular::ModSpan),
}

/// Basis of the generated Lie algebra with its universality verdict.
#[derive(Clone, Debug)]
pub struct LieClosure {
    n: usize,
    dim: usize,
    universal: bool,
    budget_hit: bool,
    method: ClosureMethod,
    elements: Elements,
}

impl LieClosure {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn universal(&self) -> bool {
        self.universal
    }

    pub fn budget_hit(&self) -> bool {
        self.budget_hit
    }

    pub fn method(&self) -> ClosureMethod {
        self.method
    }

    /// Orthogonal basis of anti-Hermitian traceless elements `iH`.
    ///
    /// Exact closures are orthogonalized in rational arithmetic; float closures are returned
    /// with the binary values of their orthonormal coordinates. Modular closures carry no
    /// rational basis.
    pub fn basis(&self) -> Result<Vec<PauliSum>> {
        let herm = match &self.elements {
            Elements::Exact(s) => s.orthogonal_basis(),
            Elements::Float(s) => s.basis_sums(),
            Elements::Modular(_) => {
                return Err(Error::InvalidOperator(
                    "modular closures have no rational basis".into(),
                ))
            }
        };
        Ok(herm.into_iter().map(|h| h.scale(&coeff_i())).collect())
    }

    /// Modulus of a modular closure.
    pub fn prime(&self) -> Option<u64> {
        match &self.elements {
            Elements::Modular(s) => Some(s.prime()),
            _ => None,
        }
    }

    /// Whether `i` times the traceless Hermitian part of `s` lies in the algebra.
    pub fn contains(&self, s: &PauliSum) -> Result<bool> {
        if s.n() != self.n {
            return Err(Error::QubitMismatch {
                left: self.n,
                right: s.n(),
            });
        }
        let h = s.hermitian_part().traceless_part();
        Ok(match &self.elements {
            Elements::Exact(sp) => sp.contains(&herm_coords(&h)),
            Elements::Float(sp) => sp.contains(&h),
            Elements::Modular(sp) => sp.contains(&h).ok_or_else(|| {
                Error::Numerical("coefficient denominator vanishes modulo the closure prime".into())
            })?,
        })
    }
}

/// Dense index of a Pauli string in `0..4^n`.
#[inline]
pub(crate) fn code(s: &PauliString) -> usize {
    s.x_bits() as usize | (s.z_bits() as usize) << s.n()
}

#[inline]
pub(crate) fn decode(n: usize, k: usize) -> PauliString {
    let mask = (1usize << n) - 1;
    PauliString::from_bits(n, (k & mask) as u64, (k >> n) as u64)
}

/// Real coordinates of a Hermitian Pauli sum.
pub(crate) fn herm_coords(h: &PauliSum) -> Vec<(usize, BigRational)> {
    let mut v: Vec<(usize, BigRational)> =
        h.terms().map(|(s, c)| (code(s), c.re.clone())).collect();
    v.sort_by_key(|e| e.0);
    v
}

/// Sparse generator in float coordinates.
pub(crate) fn generator_terms(h: &PauliSum) -> Vec<(PauliString, f64)> {
    h.terms()
        .map(|(s, c)| (*s, c.re.to_f64().unwrap_or(f64::NAN)))
        .collect()
}

/// `-i[P, Q] = sign * 2 R` for anticommuting strings, `None` when they commute.
#[inline]
pub(crate) fn bracket_strings(p: &PauliString, q: &PauliString) -> Option<(i64, PauliString)> {
    if p.commutes_with(q) {
        return None;
    }
    let (ph, r) = p.product_unchecked(q);
    // -i * 2 * i^e: e = 1 gives +2, e = 3 gives -2
    Some((if ph.0 == 1 { 2 } else { -2 }, r))
}

fn prepare(generators: &[PauliSum]) -> Result<(usize, Vec<PauliSum>)> {
    let Some(first) = generators.first() else {
        return Err(Error::InvalidOperator("no generators".into()));
    };
    let n = first.n();
    let mut out = Vec::new();
    for g in generators {
        if g.n() != n {
            return Err(Error::QubitMismatch {
                left: n,
                right: g.n(),
            });
        }
        if *g != g.adjoint() {
            return Err(Error::InvalidOperator(
                "generators must be Hermitian".into(),
            ));
        }
        let t = g.traceless_part();
        if !t.is_zero() {
            out.push(t);
        }
    }
    Ok((n, out))
}

/// Lie closure with default options.
pub fn lie_closure(generators: &[PauliSum], max_dim: Option<usize>) -> Result<LieClosure> {
    lie_closure_with(
        generators,
        &ClosureOptions {
            max_dim,
            ..Default::default()
        },
    )
}

pub fn lie_closure_with(generators: &[PauliSum], opts: &ClosureOptions) -> Result<LieClosure> {
    let (n, gens) = prepare(generators)?;
    let full = (1usize << (2 * n)) - 1;
    let max_dim = opts.max_dim.unwrap_or(full).min(full);
    let method = opts.method.unwrap_or(if n <= 3 {
        ClosureMethod::Exact
    } else {
        ClosureMethod::Modular
    });
    let (elements, dim, budget_hit) = match method {
        ClosureMethod::Exact => {
            let (s, hit) = exact::close(n, &gens, max_dim);
            let d = s.dim();
            (Elements::Exact(s), d, hit)
        }
        ClosureMethod::Float => {
            if n > FLOAT_MAX_QUBITS {
                return Err(Error::Budget(format!(
                    "float closure supports at most {FLOAT_MAX_QUBITS} qubits"
                )));
            }
            let (s, hit) = float::close(n, &gens, max_dim, opts.tol);
            let d = s.dim();
            (Elements::Float(s), d, hit)
        }
        ClosureMethod::Modular => {
            if n > FLOAT_MAX_QUBITS {
                return Err(Error::Budget(format!(
                    "modular closure supports at most {FLOAT_MAX_QUBITS} qubits"
                )));
            }
            let mut best: Option<(modular::ModSpan, bool)> = None;
            for k in 0..opts.primes.max(1) as u64 {
                let (s, hit) = modular::close(n, &gens, max_dim, opts.seed.wrapping_add(k));
                let done = hit || s.dim() == full;
                if best.as_ref().is_none_or(|(b, _)| s.dim() > b.dim()) {
                    best = Some((s, hit));
                }
                if done {
                    break;
                }
            }
            let (s, hit) = best.expect("at least one prime");
            let d = s.dim();
            (Elements::Modular(s), d, hit)
        }
    };
    Ok(LieClosure {
        n,
        dim,
        universal: dim == full,
        budget_hit: budget_hit && dim < full,
        method,
        elements,
    })
}

/// Breadth-first frontier over basis indices shared by both arithmetics.
pub(crate) struct Frontier {
    queue: VecDeque<usize>,
}

impl Frontier {
    pub fn new() -> Self {
        Frontier {
            queue: VecDeque::new(),
        }
    }

    pub fn push(&mut self, k: usize) {
        self.queue.push_back(k);
    }

    pub fn pop(&mut self) -> Option<usize> {
        self.queue.pop_front()
    }
}

pub(crate) fn coeff_real(v: BigRational) -> Coeff {
    Coeff::new(v, BigRational::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::pauli::{build_generators, single, Letter};

    #[test]
    fn one_qubit_xz_is_universal() {
        let c = lie_closure(&[single(1, 0, Letter::X), single(1, 0, Letter::Z)], None).unwrap();
        assert_eq!(c.dim(), 3);
        assert!(c.universal());
        assert!(!c.budget_hit());
        let b = c.basis().unwrap();
        assert_eq!(b.len(), 3);
        for x in &b {
            assert!(x.identity_coeff().is_zero());
            assert_eq!(x.adjoint(), x.scale(&crate::pauli::coeff_int(-1)));
        }
    }

    #[test]
    fn p3_not_universal_until_broken() {
        let g = Graph::path(3).unwrap();
        let gens = build_generators(&g, true);
        let c = lie_closure(&gens, None).unwrap();
        assert!(!c.universal());
        let mut ext = gens.clone();
        ext.push(single(3, 0, Letter::X));
        let c2 = lie_closure(&ext, None).unwrap();
        assert_eq!(c2.dim(), 63);
    }

    #[test]
    fn exact_and_float_agree() {
        let g = Graph::path(3).unwrap();
        let gens = build_generators(&g, true);
        let e = lie_closure_with(
            &gens,
            &ClosureOptions {
                method: Some(ClosureMethod::Exact),
                ..Default::default()
            },
        )
        .unwrap();
        let f = lie_closure_with(
            &gens,
            &ClosureOptions {
                method: Some(ClosureMethod::Float),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(e.dim(), f.dim());
        for x in e.basis().unwrap() {
            assert!(f.contains(&x.scale(&(-coeff_i()))).unwrap());
        }
    }

    #[test]
    fn budget_is_reported() {
        let c = lie_closure(&[single(1, 0, Letter::X), single(1, 0, Letter::Z)], Some(2)).unwrap();
        assert!(c.budget_hit());
        assert_eq!(c.dim(), 2);
        assert!(!c.universal());
    }
}
