use crate::commutant::{commutant_of_matrices, CommutantOptions, Strategy};
use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;
use crate::pauli::PauliSum;

/// `ad_H` on the `4^n`-dimensional operator space in the matrix-unit basis `|a><b| -> a*D + b`.
pub fn adjoint_superoperator(h: &PauliSum) -> Result<SparseMatrix<i64>> {
    let m = h.to_integer_matrix()?;
    let d = m.dim();
    let mut trip = Vec::new();
    for a in 0..d {
        for b in 0..d {
            let col = a * d + b;
            // H |a><b| = sum_r H[r,a] |r><b|
            for (r, v) in (0..d).map(|r| (r, m.get(r, a))).filter(|(_, v)| *v != 0) {
                trip.push((r * d + b, col, v));
            }
            // |a><b| H = sum_c H[b,c] |a><c|
            for &(c, v) in m.row(b) {
                trip.push((a * d + c as usize, col, -v));
            }
        }
    }
    Ok(SparseMatrix::from_triplets(d * d, trip))
}

/// Dimension of the commutant of `{ad_H}` on the full operator space; equals 2 exactly
/// when the generators are universal.
pub fn adjoint_symmetry_dim(generators: &[PauliSum]) -> Result<usize> {
    let Some(first) = generators.first() else {
        return Err(Error::InvalidOperator("no generators".into()));
    };
    let n = first.n();
    if n > 3 {
        return Err(Error::Budget(format!(
            "adjoint criterion supports at most 3 qubits, got {n}"
        )));
    }
    let ads: Vec<SparseMatrix<i64>> = generators
        .iter()
        .map(adjoint_superoperator)
        .collect::<Result<_>>()?;
    let c = commutant_of_matrices(
        1 << (2 * n),
        &ads,
        Strategy::Fast,
        &CommutantOptions::default(),
    )?;
    Ok(c.dim())
}
