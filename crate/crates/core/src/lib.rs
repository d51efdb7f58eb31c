//! Combinatorial spectral structure of cone-preserving maps.
//!
//! For a nonnegative matrix the library computes its classes, accessibility
//! relation, initial subsets, and the lattice of invariant faces of the
//! nonnegative orthant; for a map preserving a finitely generated polyhedral
//! cone it computes the invariant face lattice, spectral pairs of faces,
//! distinguished/semi-distinguished classifications, and maximal chains of
//! semi-distinguished invariant faces. All kernel-level computation is exact
//! over the rationals; floating point is confined to root-modulus and
//! Perron-root estimates.

pub mod classes;
pub mod dot;
pub mod error;
pub mod fixtures;
pub mod orthantfaces;
pub mod polycone;
pub mod ratmath;
pub mod spectra;

pub use error::{Error, Result};
pub use ratmath::{RatMatrix, RatPoly, Rational};
pub use spectra::{Radius, SpectralPair, ToleranceConfig};
