//! Line format `re im LETTERS`, rationals written as `p/q`.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::One;

use super::string::PauliString;
use super::sum::PauliSum;
use crate::error::{Error, Result};

fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.parse::<BigInt>().ok()?, b.parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if den == BigInt::from(0) {
        return None;
    }
    Some(BigRational::new(num, den))
}

impl PauliSum {
    /// One line per term in canonical term order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (s, c) in self.terms() {
            out.push_str(&format!(
                "{} {} {}\n",
                fmt_rational(&c.re),
                fmt_rational(&c.im),
                s
            ));
        }
        out
    }

    /// Parse the line format; blank lines and lines starting with `#` are skipped.
    ///
    /// `n` fixes the qubit count when the text has no terms.
    pub fn from_text(text: &str, n: Option<usize>) -> Result<PauliSum> {
        let mut out: Option<PauliSum> = n.map(PauliSum::zero);
        for (k, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| Error::Parse { line: k + 1, msg };
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 3 {
                return Err(err(format!("expected `re im LETTERS`, got {line:?}")));
            }
            let re = parse_rational(parts[0])
                .ok_or_else(|| err(format!("bad rational {:?}", parts[0])))?;
            let im = parse_rational(parts[1])
                .ok_or_else(|| err(format!("bad rational {:?}", parts[1])))?;
            let s: PauliString = parts[2].parse().map_err(|e: Error| err(e.to_string()))?;
            let acc = out.get_or_insert_with(|| PauliSum::zero(s.n()));
            if acc.n() != s.n() {
                return Err(err(format!(
                    "string length {} differs from {}",
                    s.n(),
                    acc.n()
                )));
            }
            acc.add_term(s, Complex::new(re, im));
        }
        out.ok_or_else(|| Error::Parse {
            line: 0,
            msg: "no terms and no qubit count".into(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::builders::swap_operator;

    #[test]
    fn text_roundtrip() {
        let s = swap_operator(0, 2, 3).unwrap();
        let t = s.to_text();
        assert!(t.starts_with("1/2 0 III\n"));
        assert_eq!(PauliSum::from_text(&t, None).unwrap(), s);
    }

    #[test]
    fn text_errors_carry_lines() {
        let e = PauliSum::from_text("1 0 XX\n1 0 XQ\n", None).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        assert!(PauliSum::from_text("1/0 0 X", None).is_err());
        assert!(PauliSum::from_text("1 0 X\n1 0 XX", None).is_err());
    }
}
