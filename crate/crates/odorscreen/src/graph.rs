//! Machine-readable atom graph emitted by `parse` for external featurizers.

use odorscreen_core::molgraph::{hybridization, Hybridization};
use odorscreen_core::smiles::{canonicalize, parse_smiles, CanonError};
use odorscreen_core::{BondOrder, Molecule};
use serde::{Deserialize, Serialize};

pub const GRAPH_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphAtom {
    pub index: usize,
    pub element: String,
    pub atomic_number: u8,
    pub charge: i8,
    pub aromatic: bool,
    /// Explicit neighbours in the graph.
    pub degree: usize,
    pub total_h: u8,
    /// Kekulé bond orders plus hydrogens.
    pub valence: u32,
    pub in_ring: bool,
    pub hybridization: Hybridization,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphBond {
    pub begin: usize,
    pub end: usize,
    /// "single", "double", "triple" or "aromatic".
    pub order: String,
    pub kekule: u8,
    pub in_ring: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AtomGraph {
    pub schema_version: u32,
    pub input: String,
    pub canonical: String,
    pub atoms: Vec<GraphAtom>,
    pub bonds: Vec<GraphBond>,
}

fn order_name(o: BondOrder) -> &'static str {
    match o {
        BondOrder::Single => "single",
        BondOrder::Double => "double",
        BondOrder::Triple => "triple",
        BondOrder::Aromatic => "aromatic",
    }
}

/// Graph of a prepared, sanitized molecule.
pub fn atom_graph(input: &str, canonical: String, mol: &Molecule) -> AtomGraph {
    let rings = mol.rings();
    let atoms = mol
        .atoms()
        .iter()
        .enumerate()
        .map(|(i, a)| GraphAtom {
            index: i,
            element: a.element.symbol().to_owned(),
            atomic_number: a.element.atomic_number(),
            charge: a.charge,
            aromatic: a.aromatic,
            degree: mol.degree(i),
            total_h: a.total_h(),
            valence: mol.bond_order_sum(i) + u32::from(a.total_h()),
            in_ring: rings.is_some_and(|r| r.atom_in_ring(i)),
            hybridization: hybridization(mol, i),
        })
        .collect();
    let bonds = mol
        .bonds()
        .iter()
        .map(|b| GraphBond {
            begin: b.begin,
            end: b.end,
            order: order_name(b.order).to_owned(),
            kekule: b.kekule,
            in_ring: b.in_ring,
        })
        .collect();
    AtomGraph {
        schema_version: GRAPH_SCHEMA_VERSION,
        input: input.to_owned(),
        canonical,
        atoms,
        bonds,
    }
}

/// Parses, prepares and sanitizes `smiles`, keeping the input atom order.
pub fn parse_graph(smiles: &str) -> Result<AtomGraph, CanonError> {
    let mut mol = parse_smiles(smiles).map_err(CanonError::Parse)?;
    odorscreen_core::molgraph::prepare(&mut mol);
    let canonical = canonicalize(&mol)?;
    Ok(atom_graph(smiles, canonical, &mol))
}
