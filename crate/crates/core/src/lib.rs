//! Exact calculator for Picard-group relations on moduli of r-spin curves.
//!
//! Everything here is exact integer (or rational, where an elimination needs it)
//! arithmetic. The crate is organized bottom-up:
//!
//! * [`lattice`]: Smith normal form, rational solving, lattice membership and
//!   element orders modulo a row lattice.
//! * [`combinatorics`]: closed-form invariants of spin boundary strata.
//! * [`divisor`]: the canonical divisor basis and expansions of derived symbols.
//! * [`relations`]: the relation family, the Deligne-pairing derivation and the
//!   special-case table with errata.
//! * [`picard`]: presented Picard groups, torsion certificates, genus one.

pub mod combinatorics;
pub mod divisor;
mod error;
pub mod lattice;
pub mod picard;
pub mod relations;
pub mod serde_int;

pub use combinatorics::{
    BoundaryKind, BoundaryLabel, MarkingVector, NodeOrder, Sector, SectorClass,
};
pub use divisor::{BasisContext, DivisorClass, GeneratorId, Genus};
pub use error::{Error, Result};
pub use lattice::{IntMatrix, Order, RationalSolution, SnfResult};
pub use picard::{AbelianPresentation, GroupStructure, TorsionCase, TorsionCertificate};
pub use relations::{Origin, ProofTrace, Relation, TableRow};
