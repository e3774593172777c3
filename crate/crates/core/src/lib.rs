//! Finite presentations of associative algebras over the rationals.
//!
//! The crate turns a presentation of a Z/2-graded algebra generated in odd
//! degree into a presentation of its even part, turns a presentation with a
//! full idempotent `e` into a presentation of the corner `eAe`, and checks
//! every transformation with degree-truncated rewriting.

pub mod cli;
pub mod equiv;
pub mod error;
pub mod freealg;
pub mod grading;
pub mod ncgb;
pub mod peirce;
pub mod presio;

pub use error::{Error, Result};
