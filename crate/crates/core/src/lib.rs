//! Exact sumsets of squares.
//!
//! The crate is `no_std` (it only needs `alloc`). It covers:
//!
//! * [`arith`]: canonical rationals over arbitrary-precision integers, with
//!   integer square roots and square detection.
//! * [`curve`]: rational points on `y² = x³ − d²x` and their correspondence
//!   with three-term progressions of rational squares.
//! * [`sumset`]: `A + A` over the rationals, scaling and denominator clearing.
//! * [`constructions`]: explicit square sets with small sumsets, generalized
//!   arithmetic progressions, the seven-square magic square and Euler bricks.
//! * [`zp`]: the exact minimum of `|A + A|` over `n`-subsets of the squares
//!   modulo a prime, by pruned depth-first search.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod arith;
pub mod constructions;
pub mod curve;
mod error;
pub mod sumset;
pub mod zp;

pub use arith::{isqrt, Integer, Rational};
pub use error::{Error, Result};
