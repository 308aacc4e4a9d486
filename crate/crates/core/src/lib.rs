//! Nucleus and singular locus of `BG` for compact Lie groups `G = T^n ⋊ W`
//! in non-modular characteristic.
//!
//! The group is given by its Weyl-group data: a finite group `W` of integer
//! matrices acting on `H₂(BT; Z) = Z^n`. From that the crate computes
//!
//! * the nucleus as a union of linear strata `V^K` ([`strata`]),
//! * a presentation of `H*(BG; k) = k[V]^W` ([`invariants`]),
//! * an independent Jacobian-criterion singular locus and the support of the
//!   singularity category ([`singular`]),
//!
//! and cross-checks that nuclear strata are exactly the singular points.

pub mod cli;
pub mod error;
pub mod exactmath;
pub mod group;
pub mod lattice;
pub mod invariants;
pub mod singular;
pub mod strata;

pub use error::{Error, Result};
