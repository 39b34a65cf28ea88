//! Presented Picard groups, torsion certificates and genus one.
//!
//! A presented group here is the free abelian group on the chosen generators
//! modulo the known relations. It maps onto the subgroup of the Picard group
//! those generators span, so every order computed from it is an upper bound.

mod genus1;
mod presentation;
mod torsion;

pub use genus1::{
    genus1_chow, genus1_component_bounds, genus1_component_one, genus1_sanity_residual,
    ChowPresentation, ComponentBounds, Conjecture, Genus1Chow,
};
pub use presentation::{
    open_generators, presented_open_picard, AbelianPresentation, GroupStructure,
};
pub use torsion::{
    torsion_certificate, ConstantCheck, OrderStatement, TorsionCase, TorsionCertificate, Witness,
};
