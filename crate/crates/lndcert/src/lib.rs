//! Exact verification toolkit for additive-group invariant theory: locally
//! nilpotent derivations, the exponential map, local-slice generators of
//! localized invariant rings, quasi-affine presentation certificates, and
//! separating-algebra checks, over exact rational arithmetic.

pub mod catalog;
pub mod derivation;
pub mod dsl;
pub mod ideals;
pub mod maubach;
pub mod oracle;
pub mod order;
pub mod registry;
pub mod report;
pub mod ring;
pub mod runner;
pub mod slices;
pub mod subalgebra;
pub mod symmetry;
pub mod theorem;
