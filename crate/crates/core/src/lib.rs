//! Generalized Thue-Morse words `t_{b,m}` and their repetitions.
//!
//! The word `t_{b,m}` over the alphabet `{0, .., m-1}` is the fixpoint of the
//! morphism `a -> a σ(a) σ²(a) .. σ^{b-1}(a)` where `σ` is the cyclic shift
//! `i -> i + 1 mod m`. Its `n`-th letter is `σ^{s_b(n)}(start)`, with `s_b`
//! the base-`b` digit sum.
//!
//! The crate is split into:
//!
//! * [`word`]: letters, the cyclic permutation, parameters, lazy and finite
//!   words, block structure and periodicity.
//! * [`exponent`]: exact rational exponents with an infinite value.
//! * [`repetition`]: rational powers, factor indices, critical exponents
//!   (closed form and empirical scan), overlap and square detection.
//! * [`runs`]: linear-size enumeration of the maximal repetitions of a
//!   finite word, used to accelerate the empirical scan.
//! * [`occurrences`]: closed-form position sets of critical powers and the
//!   brute-force scan they are checked against.
//!
//! Everything here is `no_std` with `alloc`; IO lives in the `tmlab` crate.

#![no_std]
#![warn(missing_debug_implementations, rust_2018_idioms, unused_qualifications)]

extern crate alloc;

mod error;
pub mod exponent;
pub mod occurrences;
pub mod repetition;
pub mod runs;
pub mod word;

pub use error::{Error, Result};
pub use exponent::RationalExponent;
pub use word::{CyclicPermutation, FiniteWord, LazyWord, Letter, TMParams};
