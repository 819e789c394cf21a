//! Exact rational and symbolic-infinitesimal linear algebra.

mod eps;
mod matrix;
pub(crate) mod ring;

pub use eps::{det_sign_eps, EpsMatrix, EpsPoly};
pub use matrix::{det_rat, rank_rat, rat, standard_form, RatMatrix, Rational, StandardForm};
