//! Exact orbit Zariski closures for finitely generated groups of polynomial
//! automorphisms of the affine plane over a number field.

pub mod error;
pub mod numfield;
pub mod poly2;
pub mod planeauto;
pub mod amalgam;
pub mod lattice;
pub mod closure;
pub mod cli;

pub use error::{Error, Result};
