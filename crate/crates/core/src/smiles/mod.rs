//! SMILES reading, writing and canonical form.

mod canon;
mod parse;
mod write;

pub use canon::{canonical_ranks, canonicalize, canonicalize_unchecked, CanonError};
pub use parse::{parse_smiles, SmilesError, SmilesErrorKind};
pub use write::write_smiles;

use alloc::string::String;

use crate::mol::Molecule;
use crate::molgraph;

/// Parses, prepares and sanitizes `text`, returning the molecule and its
/// canonical SMILES.
pub fn parse_canonical(text: &str) -> Result<(Molecule, String), CanonError> {
    let mut mol = parse_smiles(text).map_err(CanonError::Parse)?;
    molgraph::prepare(&mut mol);
    let smiles = canonicalize(&mol)?;
    Ok((mol, smiles))
}
