//! Exact pp-formula calculus over finite-dimensional algebras, one-point extension towers
//! of a truncated discrete valuation ring, ray tubes with mesh relations, and symbolic
//! Ziegler spectra.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod field;
pub mod matrix;
pub mod subspace;
pub mod algebra;
pub mod module;
pub mod decompose;
pub mod pp;
pub mod radical;
pub mod lattice;
pub mod tower;
pub mod tube;
pub mod realize;
pub mod ziegler;
pub mod universe;

pub use error::{Error, Result};
pub use field::{Field, Fp, PrimeField, Rat, Rationals};
pub use matrix::Matrix;
pub use subspace::Subspace;
