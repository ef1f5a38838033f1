//! Exact Pauli-string algebra, the global-control Hamiltonians and dense realizations.

mod builders;
mod dense;
mod string;
mod sum;
mod text;

pub use builders::{build_generators, h_x, h_z, h_zz, pi_operator, single, swap_operator, x_all};
pub use dense::{to_dense, DenseOperator, DENSE_MAX_QUBITS};
pub use string::{Letter, PauliString, Phase, MAX_QUBITS};
pub use sum::{coeff_i, coeff_int, coeff_ratio, Coeff, PauliSum};

/// Letter-wise product of two strings with its phase.
pub fn pauli_product(a: &PauliString, b: &PauliString) -> crate::Result<(Phase, PauliString)> {
    a.product(b)
}

/// Exact commutator of two Pauli sums.
pub fn commutator(a: &PauliSum, b: &PauliSum) -> crate::Result<PauliSum> {
    a.commutator(b)
}

/// SHA-256 (hex) of the text encodings of a generator list, separated by blank lines.
pub fn generators_hash(generators: &[PauliSum]) -> String {
    use sha2::{Digest, Sha256};
    let mut h = Sha256::new();
    for g in generators {
        h.update(g.to_text().as_bytes());
        h.update(b"\n");
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}
