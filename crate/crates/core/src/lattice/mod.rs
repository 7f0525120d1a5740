//! Root and weight lattices with their Weyl groups, orbit enumeration on
//! `L/dL`, generation tests and symmetric ranks.

mod build;
mod orbits;
mod symrank;

pub use build::{b_weight_basis, b_weight_lattice, build_lattice, int_mat_apply, int_mat_mul, LatticeAction};
pub use orbits::{
    decode, encode, generates_mod, generator_permutations, orbits_mod, primes_of, rank_mod_p, reduce, Orbit,
    OrbitDecomposition, ORBIT_GUARD,
};
pub use symrank::{symrank, SymrankCertificate};


/// Codes of Ω reduced modulo `d`, sorted and deduplicated.
pub fn omega_codes(l: &LatticeAction, d: u32) -> Vec<u32> {
    let mut codes: Vec<u32> = l.omega().iter().map(|v| encode(&reduce(v, d), d)).collect();
    codes.sort_unstable();
    codes.dedup();
    codes
}

/// Whether Ω reduced mod `d` is exactly one orbit of the decomposition, and
/// which one.
pub fn omega_orbit(l: &LatticeAction, dec: &OrbitDecomposition) -> Option<usize> {
    let codes = omega_codes(l, dec.modulus);
    dec.orbits.iter().position(|o| o.members == codes)
}
