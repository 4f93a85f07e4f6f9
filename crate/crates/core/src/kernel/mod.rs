//! Exact arithmetic: rationals, sparse integer polynomials and exact
//! matrix predicates.
//!
//! Everything here is immutable once built and safe to share across
//! threads.

mod matrix;
mod poly;
mod rational;

pub use matrix::RatMatrix;
pub use poly::SparsePoly;
pub use rational::Rational;

pub use num_bigint::BigInt;
