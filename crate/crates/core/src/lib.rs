//! Exact and high-precision machinery for trigonometric identities over
//! quadratic residues, the class numbers and units they encode, and the
//! polynomial `S_p(x) = prod (x - e^{2 pi i k^2 / p})`.

pub mod arith;
pub mod catalog;
pub mod error;
pub mod lab;
pub mod numerics;
pub mod quadratic;
pub mod runner;

pub use error::{Error, Result};
