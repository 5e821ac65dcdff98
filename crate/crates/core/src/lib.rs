//! Symmetrization of scalar fields on triangulated spheres.
//!
//! The pipeline: a field on a [`mesh::SphereMesh`] is turned into a measured
//! Reeb tree ([`contour`]), the tree function is split into elementary
//! pieces and symmetrized into an even profile on `(-1/2, 1/2)` ([`tree`],
//! [`profile`]), and the profile is classified and fed to the bound
//! calculators ([`analysis`]).

// `!(x > 0.0)` is used on purpose: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod config;
pub mod contour;
pub mod error;
pub mod flatten;
pub mod mesh;
pub mod oracle;
pub mod pl;
pub mod profile;
pub mod tree;
pub mod verify;

pub use error::{Error, Result};
