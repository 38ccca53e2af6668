//! Exact arithmetic for finite symplectic similitude groups over `Z/ℓ^N`.
//!
//! This crate provides the computational core for working with the groups
//! `Sp_{2g}` and `GSp_{2g}` over truncated `ℓ`-adic rings, together with the
//! lattice and torsion-subgroup algorithms built on top of them:
//!
//! * [`padic`] — residues mod `ℓ^N`, valuations, exact matrices, Smith normal
//!   form with unimodular transforms, and exact rationals;
//! * [`symplectic`] — group descriptors, multipliers, membership tests, order
//!   formulas, codimensions, chain indices, and factorizations;
//! * [`enumerate`] — column-constrained exhaustive enumeration and counting of
//!   the finite groups at word-sized moduli, with explicit budgets;
//! * [`lattice`] — saturation, complements, symplectic completion of
//!   lagrangian sublattices, and isotropic lifting of subspaces and subgroups;
//! * [`torsion`] — torsion points and subgroups, own-level alternating
//!   pairings, the non-isotropy invariants `m` and `m₁`, isotropy flag chains,
//!   stabilizers, and degree-exponent predictions;
//! * [`exponent`] — the exact rational exponent calculus: `γ`, `α`, `ρ₀`,
//!   `ρ₁`, Abel prefix maxima, exceptional dimensions, and the ratio search;
//! * [`rng`] — a tiny deterministic generator for reproducible sampling.
//!
//! The crate is `no_std` (it requires `alloc`); every computation is exact —
//! no floating point is used anywhere.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
#[macro_use]
extern crate std;

pub mod enumerate;
pub mod error;
pub mod exponent;
pub mod lattice;
pub mod padic;
pub mod rng;
pub mod symplectic;
pub mod torsion;

pub use error::{CoreError, Result};
pub use padic::{ExactRational, PrecisionContext, Residue, ResidueMatrix, SmithForm};
