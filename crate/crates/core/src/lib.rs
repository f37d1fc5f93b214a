pub mod calculus;
pub mod cli;
pub mod components;
pub mod error;
pub mod json;
pub mod leclerc;
pub mod linalg;
pub mod quiver;
pub mod ext;
pub mod rep;
pub mod roots;

pub use error::{Error, Result};
