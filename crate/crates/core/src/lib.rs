//! Exact and floating-point algebra for Jacobi-model elliptic curves,
//! diagonal quadric intersections and the genus-9 canonical map lab.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod diagonal;
pub mod error;
pub mod fiberlab;
pub mod genus9;
pub mod jacobi;
pub mod numeric;
pub mod polyform;
pub mod projective;
pub mod scalars;
pub mod sections;

pub use error::{Error, Result};
