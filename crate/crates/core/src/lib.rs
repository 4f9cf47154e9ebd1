//! Numerical laboratory for linking numbers arising from commutators of
//! smeared free fields.
//!
//! The pipeline: closed spatial loops ([`geometry`]) are smeared into
//! co-closed one-forms and surfaces into two-forms ([`smearing`]); a
//! Källén–Lehmann type spectral model ([`spectral`]) gives the commutator
//! as a mass-shell integral ([`commutator`]); the Gauss integral and a
//! crossing count ([`linking`]) provide the topological reference.

pub mod error;
pub mod geometry;
pub mod linking;
pub mod quadrature;

pub use error::{Error, Result};
pub mod smearing;
pub mod spectral;
pub mod commutator;

mod par;
