//! Exact computational Galois theory.
//!
//! Builds splitting fields over Q with their full automorphism groups,
//! the coordinate rings of the associated finite group schemes (with Hopf
//! structure, points, and restriction maps), algebraic Frobenius points at
//! unramified primes, and finite-level Artin motives with etale and
//! de Rham realizations. All arithmetic is exact: arbitrary-precision
//! rationals, dense polynomials, and number fields; no floating point.

pub mod error;
pub mod etale;
pub mod frobenius;



pub mod galois;
pub mod linalg;
pub mod modp;

pub mod motives;
pub mod numfield;
pub mod poly;
pub mod rat;
pub mod ring;

pub mod splitting;
pub mod trager;
pub mod verify;

pub mod zassenhaus;

pub use error::{Error, Result};
