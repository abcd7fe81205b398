//! Quantum f-divergences through Nussbaum–Szkoła distributions, with the
//! classical inequality machinery and binary hypothesis-testing bounds built on them.

pub mod error;
pub mod extended;
pub mod fdiv;
pub mod generators;
pub mod hyptest;
pub mod ineq;
pub mod linalg;
pub mod ns;
pub mod qdiv;

pub use error::{Error, Result};
pub use extended::ExtendedReal;
