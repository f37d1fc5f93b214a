//! Exact linear and polynomial algebra over the rationals or a prime field.

mod matrix;
mod poly;
mod scalar;
mod system;

pub use matrix::{integer_nullvector, Echelon, Matrix};
pub use poly::{charpoly, Polynomial};
pub use scalar::{is_prime, Field, Scalar, MIN_PRIME};
pub use system::LinearSystem;
