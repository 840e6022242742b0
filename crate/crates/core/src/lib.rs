//! Hamiltonian monodromy invariants of monotone Lagrangian tori in R^4.
//!
//! The algebraic side works in `H_1(L, Z) = Z^2`: the group `G_mu` of
//! Maslov-preserving automorphisms is the infinite dihedral group, its
//! subgroups are classified, and the twist number `t` and spectrum `s` are
//! read off. The numerical side ([`symgeo`]) checks the explicit charts,
//! flows and monodromies for the Clifford and Chekanov tori.

pub mod classifier;
pub mod dihedral;
pub mod error;
pub mod exact;
pub mod spectrum;
pub mod symgeo;

pub use error::{Error, Result};
