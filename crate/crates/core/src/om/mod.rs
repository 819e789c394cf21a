//! Oriented matroids given by realizations: chirotopes, signed cocircuits
//! and the nonnegative part of the covector lattice.

mod chirotope;
mod lattice;
mod realized;
mod sign_vector;

pub use chirotope::{chirotope_from_matrix, Chirotope};
pub use lattice::{compose_closure, mobius_from_bottom, nonneg_face_lattice, FaceLattice};
pub use realized::{cocircuits, dual_realization, RealizedOM};
pub use sign_vector::{Sign, SignVector};

/// `X ∘ Y`
pub fn compose(x: &SignVector, y: &SignVector) -> crate::Result<SignVector> {
    x.compose(y)
}
