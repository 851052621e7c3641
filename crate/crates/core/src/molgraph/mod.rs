//! Chemical semantics on top of the parsed graph.

mod aromaticity;
mod hybridization;
pub mod hydrogens;
mod rings;
mod sanitize;
mod scaffold;

pub use aromaticity::{perceive_aromaticity, pi_electrons};
pub use hybridization::{hybridization, Hybridization};
pub use hydrogens::assign_implicit_hydrogens;
pub use rings::{perceive_rings, RingSet};
pub use sanitize::{sanitize, CheckId, Locus, SanitizeFailure, SanitizeReport};
pub use scaffold::{murcko_scaffold, Scaffold};

use crate::mol::Molecule;

/// Runs ring perception, hydrogen assignment (with Kekulé resolution of
/// aromatic input) and aromaticity perception, in that order.
///
/// Safe to call again on an already prepared molecule.
pub fn prepare(mol: &mut Molecule) {
    let rings = perceive_rings(mol);
    for (i, &flag) in rings.ring_bond_flags.iter().enumerate() {
        mol.bond_mut(i).in_ring = flag;
    }
    mol.rings = Some(rings);
    assign_implicit_hydrogens(mol);
    perceive_aromaticity(mol);
}
