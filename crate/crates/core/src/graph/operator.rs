use super::Permutation;
use crate::linalg::SparseMatrix;

/// Qubit permutation operator `P_p` on `2^n` states: bit `i` of the input lands on bit `p(i)`.
///
/// `P_s P_t = P_{s∘t}`.
pub fn permutation_operator(p: &Permutation, n: usize) -> SparseMatrix<i64> {
    assert_eq!(p.len(), n, "permutation size must equal qubit count");
    let dim = 1usize << n;
    SparseMatrix::from_triplets(dim, (0..dim).map(|b| (permute_bits(p, b), b, 1i64)))
}

pub(crate) fn permute_bits(p: &Permutation, b: usize) -> usize {
    let mut out = 0;
    for i in 0..p.len() {
        if b >> i & 1 == 1 {
            out |= 1 << p.apply(i);
        }
    }
    out
}
