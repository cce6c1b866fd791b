//! Exact computations with the star zigzag algebras `Λ_n`, their quotients
//! `A_n`, projective bimodules, birepresentations and the presented
//! categories that classify them.
//!
//! The crate is `no_std` with `alloc`; see the `starcat` crate for the
//! command line front end and file formats.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bicategory;
pub mod bimodule;
pub mod error;
pub mod linalg;
pub mod presented;
pub mod classification;
pub mod quiver;

pub use error::{Error, Result};
pub use linalg::{Field, Matrix, Subspace, Q};
