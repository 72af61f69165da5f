//! Noncommutative Fourier analysis on SU(2).
//!
//! Matrix coefficients of the irreducible representations, left-invariant
//! vector fields as per-level symbols, finite Peter-Weyl series, and the
//! `d'` complexes of corank 1 and corank 2 left-invariant involutive
//! structures, reduced level by level to small dense linear algebra.

pub mod cohomology;
pub mod error;
pub mod fields;
pub mod fourier;
pub mod group;
pub mod halfint;
pub mod linalg;
pub mod poly;
pub mod repr;
pub mod structures;
pub mod verify;

pub use error::{Error, Result};
pub use group::{AlgebraElement, Complex, GroupPoint};
pub use halfint::HalfInt;
pub use repr::{RepLevel, Weight};
