//! The exact scalar layer: rationals, cyclotomic numbers, and matrices over
//! cyclotomic fields and residue rings.

pub mod cyclotomic;
pub mod matrix;
pub mod rational;
pub mod residue;

pub use cyclotomic::{euler_phi, gcd, lcm, CyclotomicField, CyclotomicNumber};
pub use matrix::ExactMatrix;
pub use rational::Rational;
pub use residue::{inverse_mod, ResidueMatrix};
