//! The explicit constructions: Heisenberg matrices, torus points, the maps
//! ψ and φ_n, the structure of `GL_2(Z/4)` and the polyhedral extension
//! catalog.

pub mod catalog;
mod gl2z4;
pub mod groups;
mod heisenberg;
mod maps;
pub mod recipe;

pub use catalog::{
    build_group, catalog_entries, evaluate_record, extension_kernel, isomorphic_pairs, polyhedral_catalog,
    transposition_preimage_orders, verify_extension, ComputedExtension, ExtensionRecord, NType, PType,
};
pub use gl2z4::{a4_by_c4, gl2z4_structure, klein_by_s4_sign, klein_by_s4_through_s3, Gl2z4Report};
pub use heisenberg::{
    heisenberg_matrices, heisenberg_verify, v_exponent, HeisenbergData, HeisenbergOptions, HeisenbergSummary,
    HEISENBERG_GUARD,
};
pub use maps::{
    monomial_matrix, monomial_psi, symmetric_square, torus_point_order, wps_phi, TorusForm, PSI_BASIS,
    TORUS_ORDER_CAP,
};
pub use recipe::{build_recipe, parse_recipe};
