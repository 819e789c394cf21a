//! NL-coflow, NL-flow and dichromate polynomials of digraphs and of
//! rational-realized oriented matroids, computed exactly.

pub mod bits;
pub mod digraph;
mod error;
pub mod exact;
pub mod nl;
pub mod om;
pub mod poly;
pub mod union;
pub mod verify;

pub use error::{Error, Result};
