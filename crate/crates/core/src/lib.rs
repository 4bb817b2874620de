//! Exact HP-model folding on square, cubic, triangular and hexagonal lattices.

pub mod fold;
pub mod lattice;
pub mod notation;
pub mod word;
pub mod bounds;
pub mod scoring;
pub mod search;
pub mod multichain;
pub mod constructions;
pub mod topology;
