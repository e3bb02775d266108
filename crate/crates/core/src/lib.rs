//! Exact computations for double complexes: Dolbeault, Bott–Chern and Aeppli
//! cohomology, Frölicher spectral sequences, Hodge decompositions and
//! zigzag decompositions, with builders for Lie algebras and solvmanifolds.

pub mod bicomplex;
pub mod error;
pub mod exact;
pub mod lie;
pub mod solv;
pub mod spectral;
pub mod text;
pub mod zigzag;

pub use error::{Error, Result};
