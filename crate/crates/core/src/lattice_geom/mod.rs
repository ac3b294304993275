//! Integer lattice geometry: matrices and their Smith form, fans with their
//! validity checks, orbit-closure stars, products, and lattice polytopes
//! with a brute-force point counter.

mod fan;
pub(crate) mod linalg;
mod matrix;
mod polytope;
mod star;

pub use fan::{cone_label, standard, ConeId, Fan, Violation};
pub use matrix::{smith_normal_form, IntMatrix, SmithForm};
pub use polytope::{
    enumerate_lattice_points, normal_fan, Facet, LatticeCount, Polytope, ENUMERATION_GUARD,
};
pub use star::{fan_product, product_cone, star_fan, StarData};

/// Every violated fan invariant; empty iff the fan is valid.
pub fn validate_fan(fan: &Fan) -> Vec<Violation> {
    fan.validate().to_vec()
}

pub fn is_smooth(fan: &Fan) -> crate::Result<bool> {
    fan.is_smooth()
}

pub fn is_complete(fan: &Fan) -> crate::Result<bool> {
    fan.is_complete()
}
