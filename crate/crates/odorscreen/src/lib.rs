//! Files, network and command line around `odorscreen-core`.
//!
//! [`screen::screen`] runs the full pipeline over a SMILES file: sanitize,
//! canonicalize, dedupe, novelty against a [`dataset::Dataset`], the three
//! literature criteria, the logistic model, label suggestions and the PubChem
//! check. [`cli`] exposes each stage as a subcommand.

pub mod cli;
pub mod dataset;
pub mod emit;
pub mod error;
pub mod graph;
pub mod knn;
pub mod model;
pub mod pubchem;
pub mod screen;
pub mod settings;
pub mod smiles_file;

pub use error::{Error, Result};
