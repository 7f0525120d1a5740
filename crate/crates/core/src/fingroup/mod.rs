//! Finite groups materialized by closure, with their normal structure,
//! quotients, products and isomorphism testing.

mod group;
mod iso;
mod perm;
mod products;
mod structure;

pub use group::{closure, closure_with_cap, ConcreteGroup, FiniteGroup, DEFAULT_CAP, TABLE_THRESHOLD};
pub use iso::{fingerprint, is_isomorphic, verify_isomorphism, GroupFingerprint, Isomorphism, ISO_ORDER_CAP};
pub use perm::Perm;
pub use products::{direct_product, semidirect_product, Action};
pub use structure::{minimal_normal_subgroups, normal_subgroups_of_order, quotient_group, Quotient, Subgroup};
