use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Permutation;

/// Largest qubit count for Pauli strings.
pub const MAX_QUBITS: usize = 32;

/// Single-qubit Pauli letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    fn bits(self) -> (u64, u64) {
        match self {
            Letter::I => (0, 0),
            Letter::X => (1, 0),
            Letter::Y => (1, 1),
            Letter::Z => (0, 1),
        }
    }

    fn from_bits(x: u64, z: u64) -> Letter {
        match (x, z) {
            (0, 0) => Letter::I,
            (1, 0) => Letter::X,
            (1, 1) => Letter::Y,
            _ => Letter::Z,
        }
    }

    pub fn to_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }
}

/// Power of `i` in `{1, i, -1, -i}`, stored as the exponent mod 4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Phase(pub u8);

impl Phase {
    pub const ONE: Phase = Phase(0);
    pub const I: Phase = Phase(1);
    pub const MINUS_ONE: Phase = Phase(2);
    pub const MINUS_I: Phase = Phase(3);
}

impl std::ops::Mul for Phase {
    type Output = Phase;

    fn mul(self, other: Phase) -> Phase {
        Phase((self.0 + other.0) % 4)
    }
}

/// Tensor product of single-qubit Paulis; character `k` of the text form is qubit `k`.
///
/// Stored in symplectic form: letter `k` is `i^{x_k z_k} X^{x_k} Z^{z_k}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: u8,
    x: u64,
    z: u64,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_QUBITS);
        PauliString {
            n: n as u8,
            x: 0,
            z: 0,
        }
    }

    pub fn from_bits(n: usize, x: u64, z: u64) -> Self {
        assert!(n <= MAX_QUBITS);
        let m = mask(n);
        PauliString {
            n: n as u8,
            x: x & m,
            z: z & m,
        }
    }

    /// String with `letter` on `qubit` and identity elsewhere.
    pub fn single(n: usize, qubit: usize, letter: Letter) -> Self {
        let mut s = Self::identity(n);
        s.set(qubit, letter);
        s
    }

    pub fn from_letters(letters: &[Letter]) -> Self {
        let mut s = Self::identity(letters.len());
        for (k, &l) in letters.iter().enumerate() {
            s.set(k, l);
        }
        s
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn x_bits(&self) -> u64 {
        self.x
    }

    pub fn z_bits(&self) -> u64 {
        self.z
    }

    pub fn letter(&self, k: usize) -> Letter {
        Letter::from_bits(self.x >> k & 1, self.z >> k & 1)
    }

    pub fn set(&mut self, k: usize, l: Letter) {
        let (xb, zb) = l.bits();
        self.x = (self.x & !(1 << k)) | xb << k;
        self.z = (self.z & !(1 << k)) | zb << k;
    }

    pub fn letters(&self) -> Vec<Letter> {
        (0..self.n()).map(|k| self.letter(k)).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    /// Diagonal in the computational basis.
    pub fn is_diagonal(&self) -> bool {
        self.x == 0
    }

    /// Number of non-identity letters.
    pub fn weight(&self) -> usize {
        (self.x | self.z).count_ones() as usize
    }

    pub fn commutes_with(&self, other: &PauliString) -> bool {
        ((self.x & other.z).count_ones() + (self.z & other.x).count_ones()).is_multiple_of(2)
    }

    /// Letter-wise product `self * other = phase * result`.
    pub fn product(&self, other: &PauliString) -> Result<(Phase, PauliString)> {
        if self.n != other.n {
            return Err(Error::QubitMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        Ok(self.product_unchecked(other))
    }

    pub(crate) fn product_unchecked(&self, other: &PauliString) -> (Phase, PauliString) {
        let x3 = self.x ^ other.x;
        let z3 = self.z ^ other.z;
        let e = (self.x & self.z).count_ones() as i64
            + (other.x & other.z).count_ones() as i64
            + 2 * (self.z & other.x).count_ones() as i64
            - (x3 & z3).count_ones() as i64;
        (
            Phase(e.rem_euclid(4) as u8),
            PauliString {
                n: self.n,
                x: x3,
                z: z3,
            },
        )
    }

    /// `P|b> = phase * sign * |b ^ x>`; returns `(row, phase)` for column `b`.
    #[inline]
    pub(crate) fn act(&self, b: u64) -> (u64, Phase) {
        let y = (self.x & self.z).count_ones() as u8;
        let s = if (b & self.z).count_ones() % 2 == 1 {
            2
        } else {
            0
        };
        (b ^ self.x, Phase((y + s) % 4))
    }

    /// Conjugate by the qubit permutation `P_p`: the letter on qubit `k` moves to `p(k)`.
    pub fn permuted(&self, p: &Permutation) -> PauliString {
        let mut out = PauliString::identity(self.n());
        for k in 0..self.n() {
            out.set(p.apply(k), self.letter(k));
        }
        out
    }

    fn code(&self, k: usize) -> u8 {
        self.letter(k) as u8
    }
}

fn mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl Ord for PauliString {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n.cmp(&other.n).then_with(|| {
            for k in 0..self.n() {
                match self.code(k).cmp(&other.code(k)) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for PauliString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in self.letters() {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() || s.len() > MAX_QUBITS {
            return Err(Error::InvalidOperator(format!(
                "Pauli string length {} outside 1..={MAX_QUBITS}",
                s.len()
            )));
        }
        let letters = s
            .chars()
            .map(|c| match c {
                'I' => Ok(Letter::I),
                'X' => Ok(Letter::X),
                'Y' => Ok(Letter::Y),
                'Z' => Ok(Letter::Z),
                _ => Err(Error::InvalidOperator(format!("bad Pauli letter {c:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_letters(&letters))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    #[test]
    fn pauli_table() {
        assert_eq!(p("X").product(&p("Y")).unwrap(), (Phase::I, p("Z")));
        assert_eq!(p("Y").product(&p("X")).unwrap(), (Phase::MINUS_I, p("Z")));
        assert_eq!(p("Z").product(&p("X")).unwrap(), (Phase::I, p("Y")));
        assert_eq!(p("XZ").product(&p("ZX")).unwrap(), (Phase::ONE, p("YY")));
        for s in ["XYZI", "YYYY", "IZXY"] {
            assert_eq!(p(s).product(&p(s)).unwrap(), (Phase::ONE, p("IIII")));
        }
        assert!(p("X").product(&p("XX")).is_err());
    }

    #[test]
    fn ordering_is_letterwise() {
        let mut v = vec![p("ZI"), p("IZ"), p("XY"), p("II"), p("YX")];
        v.sort();
        assert_eq!(v, vec![p("II"), p("IZ"), p("XY"), p("YX"), p("ZI")]);
    }

    #[test]
    fn display_roundtrip() {
        assert_eq!(p("XIYZ").to_string(), "XIYZ");
        assert_eq!(p("IX").letter(1), Letter::X);
        assert!("XA".parse::<PauliString>().is_err());
    }
}
