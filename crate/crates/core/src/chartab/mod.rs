//! Character tables by the Dixon–Schneider method and the faithful
//! representation dimension solver built on them.

pub(crate) mod modp;
mod rdim;
mod table;

pub use rdim::{
    galois_orbits, is_faithful, minimal_normal_classes, rdim_rational_lower, rdim_rational_lower_with, rdim_split,
    rdim_split_with, RdimWitness,
};
pub use table::{character_table, dixon_prime, frobenius_schur, Character, CharacterTable, TABLE_ORDER_CAP};
