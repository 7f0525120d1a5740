//! Exact computational group theory for bounding representation dimensions
//! of finite groups.
//!
//! The crate is layered bottom-up:
//!
//! * [`exact`]: rationals, cyclotomic numbers, matrices over cyclotomic fields
//!   and over residue rings `Z/mZ`.
//! * [`fingroup`]: finite groups materialized by closure, with conjugacy
//!   classes, normal structure, quotients, products and isomorphism testing.
//! * [`chartab`]: Dixon–Schneider character tables and the minimal faithful
//!   representation dimension solver.
//! * [`lattice`]: root and weight lattices with Weyl group actions, orbit
//!   enumeration modulo `d` and symmetric ranks.
//! * [`constructions`]: the explicit matrix constructions and the catalog of
//!   polyhedral group extensions.
//! * [`fixtures`]: embedded reference tables.

// Row reduction reads better with explicit indices.
#![allow(clippy::needless_range_loop)]

pub mod chartab;
pub mod constructions;
pub mod error;
pub mod exact;
pub mod fingroup;
pub mod fixtures;
pub mod lattice;

pub use chartab::{Character, CharacterTable, RdimWitness};
pub use constructions::{ExtensionRecord, HeisenbergData};
pub use error::{Error, Result};
pub use exact::{CyclotomicNumber, ExactMatrix, Rational, ResidueMatrix};
pub use fingroup::{ConcreteGroup, FiniteGroup, GroupFingerprint, Subgroup};
pub use lattice::{LatticeAction, OrbitDecomposition, SymrankCertificate};


