//! Exact integer algorithms over an instrumented unit-cost machine model.
//!
//! Everything here operates on arbitrary-precision integers through a
//! [`CountedContext`] that charges one unit per machine primitive
//! (`+`, `-`, `*`, `div`, `rem`, `&`, `gcd`, `gcdex`, shifts, comparisons)
//! and can restrict the permitted instruction set. On top of that sit the
//! algorithm families this crate exists for:
//!
//! * [`packing`]: radix digit codecs, geometric series by a single
//!   division, packed (SWAR-style) comparisons and a linear-operation 3SUM,
//! * [`polyeval`]: polynomial evaluation in sublinear or constant
//!   operation counts, including prepared evaluation on a bounded domain,
//!   adaptive evaluation on all of `N`, and the square-root power tower,
//! * [`linalg`]: digit-packed matrix products, an exact permanent in a
//!   quadratic number of operations, and gcd-based matrix powering,
//! * [`numtheory`]: CRT solvers, coprime chains, gcd floor points, Wilson
//!   and randomized prime search, Newton refinement of algebraic numbers,
//!   Mills-style prime extraction and related encodings,
//! * [`native64`]: the 64-bit fixed-width fast path with exhaustive
//!   validation of its published operating ranges.
//!
//! Each fast algorithm ships next to a naive oracle so its results (and its
//! operation counts) can be checked rather than trusted.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod error;
pub mod linalg;
pub mod native64;
pub mod numtheory;
pub mod opcore;
pub mod packing;
pub mod polyeval;
pub mod rng;

pub use error::{Error, Result};
pub use opcore::{BigInt, BigNat, CountedContext, OpSet, OpTally, PrimOp};
