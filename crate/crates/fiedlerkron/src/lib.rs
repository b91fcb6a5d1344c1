//! Spectral certification, JSON formats and the command-line front end for Fiedler-like pencils.
//!
//! The algebra lives in [`fiedlerkron_core`]; this crate adds a generalized eigensolver adapter,
//! minimal-index oracles, fixture polynomials and the `fiedlerkron` binary.

#![warn(missing_docs)]

pub mod cli;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod verify;

pub use error::{Error, Result};
