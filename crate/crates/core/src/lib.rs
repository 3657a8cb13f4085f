//! Decision engine for embeddings of decomposition spaces into Sobolev,
//! `C_b^k` and `BV^k` spaces.
//!
//! The crate is `no_std` (with `alloc`). Exponents are exact rationals, weights
//! are symbolic exp-poly expressions over index lattices, and every symbolic
//! summability decision can be cross-checked by a numeric truncation oracle.

#![no_std]

extern crate alloc;

pub mod covering;
pub mod embedding;
pub mod exponents;
pub mod families;
pub mod numeric;
pub mod seqspace;
pub mod weights;

pub use exponents::{ExtExponent, Rational};
