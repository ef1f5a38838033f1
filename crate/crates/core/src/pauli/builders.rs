use super::string::{Letter, PauliString};
use super::sum::{coeff_int, coeff_ratio, PauliSum};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// `sum_j X_j`.
pub fn h_x(n: usize) -> PauliSum {
    single_sum(n, Letter::X)
}

/// `sum_j Z_j`.
pub fn h_z(n: usize) -> PauliSum {
    single_sum(n, Letter::Z)
}

fn single_sum(n: usize, l: Letter) -> PauliSum {
    let mut out = PauliSum::zero(n);
    for j in 0..n {
        out.add_term(PauliString::single(n, j, l), coeff_int(1));
    }
    out
}

/// `sum_{(i,j) in E} Z_i Z_j`.
pub fn h_zz(g: &Graph) -> PauliSum {
    let n = g.n();
    let mut out = PauliSum::zero(n);
    for (i, j) in g.edges() {
        out.add_term(two_site(n, i, j, Letter::Z, Letter::Z), coeff_int(1));
    }
    out
}

/// `[H_X, H_ZZ]` or `[H_X, H_ZZ, H_Z]`.
pub fn build_generators(g: &Graph, include_hz: bool) -> Vec<PauliSum> {
    let mut out = vec![h_x(g.n()), h_zz(g)];
    if include_hz {
        out.push(h_z(g.n()));
    }
    out
}

/// Single-qubit operator `letter` on qubit `j`.
pub fn single(n: usize, j: usize, l: Letter) -> PauliSum {
    PauliSum::from_string(PauliString::single(n, j, l))
}

fn two_site(n: usize, i: usize, j: usize, a: Letter, b: Letter) -> PauliString {
    let mut s = PauliString::identity(n);
    s.set(i, a);
    s.set(j, b);
    s
}

/// `X^{⊗n}`.
pub fn x_all(n: usize) -> PauliSum {
    PauliSum::from_string(PauliString::from_letters(&vec![Letter::X; n]))
}

/// `SWAP_ij = (II + XX + YY + ZZ) / 2` on qubits `i, j`.
pub fn swap_operator(i: usize, j: usize, n: usize) -> Result<PauliSum> {
    if i == j || i >= n || j >= n {
        return Err(Error::InvalidOperator(format!(
            "swap needs distinct qubits below {n}, got ({i},{j})"
        )));
    }
    let half = coeff_ratio(1, 2);
    let mut out = PauliSum::zero(n);
    out.add_term(PauliString::identity(n), half.clone());
    for l in [Letter::X, Letter::Y, Letter::Z] {
        out.add_term(two_site(n, i, j, l, l), half.clone());
    }
    Ok(out)
}

/// `Π_ij = 2 SWAP_ij - 1 = XX + YY + ZZ`.
pub fn pi_operator(i: usize, j: usize, n: usize) -> Result<PauliSum> {
    let s = swap_operator(i, j, n)?;
    s.scale(&coeff_int(2)).sub(&PauliSum::identity(n))
}
