//! Core algorithms for screening generated fragrance molecules.
//!
//! Everything in this crate is pure computation over in-memory values and
//! builds without `std` (an allocator is required). File formats, the network
//! client and the command line live in the `odorscreen` companion crate.
//!
//! The usual flow is
//!
//! 1. [`smiles::parse_smiles`] → [`molgraph::prepare`] (hydrogens, rings,
//!    aromaticity) → [`molgraph::sanitize`];
//! 2. [`descriptors`] for physicochemical features and fingerprints;
//! 3. [`likeliness`] for the literature criteria, the logistic model, SHAP
//!    and classification metrics;
//! 4. [`genmetrics`] for set-level benchmark metrics.

#![no_std]

extern crate alloc;

pub mod descriptors;
pub mod element;
pub mod genmetrics;
pub mod likeliness;
pub mod mol;
pub mod molgraph;
pub mod smiles;
mod tables;

pub use element::Element;
pub use mol::{Atom, Bond, BondOrder, Molecule};
