//! Exact computations with graded Specht modules of cyclotomic KLR algebras
//! of type A, and with the Carter-Payne homomorphisms between them.

pub mod combinatorics;
pub mod cyclotomic;
pub mod error;
pub mod hom;
pub mod klr;
pub mod linalg;
pub mod ring;
pub mod specht;
pub mod stubborn;

pub use error::{Error, Result};
