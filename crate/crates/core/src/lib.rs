//! Exact characteristic classes of smooth complete toric varieties.
//!
//! The crate computes Hirzebruch, Todd and Chern classes as cycle classes
//! modulo rational equivalence, the χ_y genus and E-polynomial calculus,
//! virtual classes of hypersurfaces with their Milnor-type corrections, and
//! generating series for symmetric products. Every quantity is exact: integers
//! are arbitrary precision and coefficients live in ℚ[y] localized at (1+y).

pub mod char_classes;
pub mod cli;
pub mod error;
pub mod genera;
pub mod hypersurface;
pub mod lattice_geom;
pub mod poly;
pub mod sym_products;
pub mod toric_cycles;

pub use error::{Error, Result};

pub type Rational = num_rational::BigRational;
