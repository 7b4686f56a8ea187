//! Regularity toolkit for Stanley–Reisner and edge ideals: monomial ideal
//! arithmetic, simplicial complexes and their homology, symbolic powers, and
//! Castelnuovo–Mumford regularity with checkable certificates.

pub mod complexes;
pub mod error;
pub mod graphs;
pub mod harness;
pub mod homology;
pub mod io;
pub mod monomials;
pub mod regularity;
pub mod symbolic;
pub mod vertex_set;

pub use error::{Error, Result};
