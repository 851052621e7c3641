//! Physicochemical descriptors and circular fingerprints.

mod counts;
mod crippen;
mod fingerprint;
mod schema;
mod vsa;

pub use counts::{aliphatic_heteroatoms, basic_counts, spiro_atoms, CountSet};
pub use crippen::{crippen_contribs, crippen_logp, CrippenContribs, CrippenType};
pub use fingerprint::{
    ecfp4, fcfp4_count, feature_flags, fnv1a, functional_flags, morgan_fingerprint, Fingerprint, InvariantKind,
    DEFAULT_WIDTH,
};
pub use schema::{descriptor_vector, Feature, FeatureSchema, FeatureVector, SchemaError, EQ4_FEATURES};
pub use vsa::{atom_surface_areas, slogp_vsa, slogp_vsa3, SLOGP_VSA_BINS};

use crate::element::Element;
use crate::mol::{BondOrder, Molecule};

const HYDROGEN_MASS: f64 = 1.008;

/// Average molecular weight in Da: atomic weights of all atoms plus
/// 1.008 per attached hydrogen.
pub fn molecular_weight(mol: &Molecule) -> f64 {
    mol.atoms()
        .iter()
        .map(|a| a.element.mass() + a.total_h() as f64 * HYDROGEN_MASS)
        .sum()
}

/// Fraction of heavy atoms that are aromatic or carry a double bond.
/// Zero for a molecule with no heavy atoms.
pub fn fraction_sp2(mol: &Molecule) -> f64 {
    let mut heavy = 0usize;
    let mut sp2 = 0usize;
    for (i, atom) in mol.atoms().iter().enumerate() {
        if atom.element == Element::H {
            continue;
        }
        heavy += 1;
        let double = mol
            .neighbors(i)
            .iter()
            .any(|&(_, b)| mol.bond(b).order == BondOrder::Double);
        if atom.aromatic || double {
            sp2 += 1;
        }
    }
    if heavy == 0 {
        0.0
    } else {
        sp2 as f64 / heavy as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::molgraph::prepare;
    use crate::smiles::parse_smiles;

    fn prepared(s: &str) -> Molecule {
        let mut m = parse_smiles(s).unwrap();
        prepare(&mut m);
        m
    }

    #[test]
    fn weights() {
        let ethanol = 2.0 * 12.011 + 6.0 * 1.008 + 15.999;
        assert!((molecular_weight(&prepared("CCO")) - ethanol).abs() < 1e-9);
        assert!((molecular_weight(&prepared("C")) - 16.043).abs() < 1e-9);
        assert!((molecular_weight(&prepared("[H]")) - 1.008).abs() < 1e-9);
    }

    #[test]
    fn sp2_fraction() {
        assert_eq!(fraction_sp2(&prepared("c1ccccc1")), 1.0);
        assert_eq!(fraction_sp2(&prepared("CCO")), 0.0);
        assert_eq!(fraction_sp2(&prepared("C=Cc1ccccc1")), 1.0);
        assert_eq!(fraction_sp2(&prepared("CC(=O)C")), 2.0 / 4.0);
    }
}
