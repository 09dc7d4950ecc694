//! Exact computer algebra for Courant algebroids, para-complex geometry and
//! Lie bialgebras on polynomial coordinate patches.
//!
//! All arithmetic is over ℚ. Smooth functions are modelled by polynomials,
//! so every identity is checked by exact equality.

pub mod cartan;
pub mod courant;
pub mod error;
pub mod lie;
pub mod linalg;
pub mod scalar;
pub mod scenarios;

pub use error::{Error, Result};
