//! Rational points of schemes over finite topological rings.

mod error;

pub use error::{Error, Result};

pub mod axioms;
pub mod defs;
pub mod finring;
pub mod fintop;
pub mod rational_points;
