//! Exact linear algebra over a field.
//!
//! Everything higher up in the crate is phrased in terms of [`Matrix`],
//! [`Subspace`] and the incremental [`SparseEchelon`] eliminator.

mod matrix;
mod poly;
mod scalar;
mod sparse;
mod split;
mod subspace;

pub use matrix::Matrix;
pub use poly::Poly;
pub use scalar::{is_prime, modulus, set_modulus, Field, Fp, Q};
pub use sparse::{densify, sparsify, SparseEchelon, SparseVec};
pub use split::{radical_of_span, split_idempotents};
pub use subspace::Subspace;

/// Reduced row echelon form of `m` together with its pivot columns.
pub fn rref<F: Field>(m: &Matrix<F>) -> (Matrix<F>, alloc::vec::Vec<usize>) {
    let mut r = m.clone();
    let pivots = r.rref_in_place();
    (r, pivots)
}

/// Solution space of `m·x = 0`.
pub fn kernel<F: Field>(m: &Matrix<F>) -> Subspace<F> {
    m.kernel()
}

/// Some solution of `m·x = b`, or `None` when the system is inconsistent.
pub fn solve<F: Field>(m: &Matrix<F>, b: &[F]) -> Option<alloc::vec::Vec<F>> {
    m.solve(b)
}
