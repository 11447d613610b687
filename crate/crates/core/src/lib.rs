//! Postcritically finite rational maps: orbits, curve lifting, equator
//! verdicts, capture parameters and finite-map closures.

pub mod cli;
pub mod curve;
pub mod equator;
pub mod error;
pub mod families;
pub mod isotopy;
pub mod map;
pub mod numeric;
pub mod render;
pub mod semigroup;

pub use error::{Error, Result};
