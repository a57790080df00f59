//! Twisted Alexander polynomials and Reidemeister torsion over skew Laurent
//! polynomial rings `K_γ[t^±1]`, with the Thurston norm and Harvey degree
//! bounds they produce.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod complexes;
pub mod error;
pub mod invariants;
pub mod presentations;
pub mod scalars;
pub mod skewlinalg;
pub mod skewpoly;
#[cfg(feature = "testkit")]
pub mod testkit;

pub use error::{Error, Result};
