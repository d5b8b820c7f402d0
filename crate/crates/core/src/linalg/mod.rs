//! Exact and floating linear algebra used throughout the crate.

pub mod complex;
pub mod exact;
pub mod poly;

pub use exact::QMatrix;
pub use poly::{char_poly, Poly};
