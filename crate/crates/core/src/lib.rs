//! Orbit-map images of discriminant linking classes, computed in rational
//! equivariant cohomology from ring presentations.

pub mod algebra;
pub mod charclass;
pub mod division;
pub mod error;
pub mod orbitmap;
pub mod spaces;

pub use error::{Error, Result};
