//! Fiedler-like linearizations of matrix polynomials and their block Kronecker structure.
//!
//! The crate builds Fiedler, generalized Fiedler (GFP) and generalized Fiedler pencils with
//! repetition (GFPR) from index tuples, and derives the block permutations that turn them into
//! extended block Kronecker pencils. It is `no_std` and needs only `alloc`.

#![cfg_attr(not(test), no_std)]
#![warn(missing_docs)]

extern crate alloc;

pub mod error;
pub mod kronecker;
pub mod elementary;
pub mod matrix;
pub mod pencils;
pub mod poly;
pub mod tuples;

pub use error::{Error, Result};
pub use matrix::{BlockPermutation, Mat, C64};
pub use poly::{BlockPencil, MatrixPolynomial};
pub use tuples::Index;
