//! Exact numerical invariants of varieties in positive characteristic:
//! slope numbers of Frobenius, domino numbers of the slope spectral
//! sequence, Hodge-Witt numbers, hypersurface Hodge numbers, and the
//! Chern-number inequalities they control.
//!
//! Everything is computed with exact integers and rationals.

pub mod error;
pub mod hodgewitt;
pub mod hypersurface;
pub mod matrix;
pub mod rational;
pub mod series;
pub mod slopes;
pub mod surface;
pub mod threefold;

pub use error::*;
pub use matrix::IntMatrix;
pub use rational::Rational;
