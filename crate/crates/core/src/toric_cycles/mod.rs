//! Cycle classes on smooth complete toric varieties with coefficients in
//! ℚ[y] localized at `1+y`.
//!
//! A class is a formal sum of orbit closures `[V_σ]`; the grading of
//! `[V_σ]` is its complex dimension `n − dim σ`. Equality is only meaningful
//! after [`CycleClass::canonical_form`].

pub mod chow;
mod coeff;
mod cycle;

pub use chow::{chow_ranks, relation_basis, Relation};
pub use coeff::CoeffElem;
pub use cycle::{
    cap_series, degree, external_product, external_product_on, intersect_divisor,
    orbit_closure_class, pushforward_from_star, CycleClass, TDivisor,
};
