pub mod arrangement;
pub mod convolution;
pub mod error;
pub mod io;
pub mod katz;
pub mod linalg;
pub mod numeric;
pub mod pfaffian;
pub mod rational;

pub use error::{Error, Result};
