use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::element::Element;
use crate::mol::{BondOrder, Molecule};
use crate::molgraph::{perceive_rings, RingSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountSet {
    pub hac: u32,
    pub heteroatoms: u32,
    pub s_plus_o: u32,
    pub hbd: u32,
    pub hba: u32,
    pub rotatable_bonds: u32,
    pub ring_count: u32,
    pub aromatic_rings: u32,
    pub formal_charge: i32,
    /// Elements present, hydrogen included when any atom carries one; sorted.
    pub element_set: Vec<Element>,
}

fn ring_set(mol: &Molecule) -> RingSet {
    match mol.rings() {
        Some(r) => r.clone(),
        None => perceive_rings(mol),
    }
}

pub fn basic_counts(mol: &Molecule) -> CountSet {
    let mut c = CountSet {
        hac: 0,
        heteroatoms: 0,
        s_plus_o: 0,
        hbd: 0,
        hba: 0,
        rotatable_bonds: 0,
        ring_count: 0,
        aromatic_rings: 0,
        formal_charge: mol.net_charge(),
        element_set: Vec::new(),
    };
    for (i, atom) in mol.atoms().iter().enumerate() {
        let e = atom.element;
        c.element_set.push(e);
        if atom.total_h() > 0 {
            c.element_set.push(Element::H);
        }
        if atom.is_hydrogen() {
            continue;
        }
        c.hac += 1;
        if e != Element::C {
            c.heteroatoms += 1;
        }
        if matches!(e, Element::S | Element::O) {
            c.s_plus_o += 1;
        }
        if matches!(e, Element::N | Element::O) {
            c.hba += 1;
            if mol.hydrogen_count(i) > 0 {
                c.hbd += 1;
            }
        }
    }
    c.element_set.sort_unstable();
    c.element_set.dedup();

    let rings = ring_set(mol);
    for (b, bond) in mol.bonds().iter().enumerate() {
        let heavy_ends = !mol.atom(bond.begin).is_hydrogen() && !mol.atom(bond.end).is_hydrogen();
        if bond.order == BondOrder::Single
            && !rings.ring_bond_flags[b]
            && heavy_ends
            && mol.heavy_degree(bond.begin) > 1
            && mol.heavy_degree(bond.end) > 1
        {
            c.rotatable_bonds += 1;
        }
    }
    c.ring_count = rings.len() as u32;
    c.aromatic_rings = aromatic_ring_count(mol, &rings);
    c
}

fn aromatic_ring_count(mol: &Molecule, rings: &RingSet) -> u32 {
    rings
        .rings
        .iter()
        .filter(|r| {
            r.iter().enumerate().all(|(k, &a)| {
                let next = r[(k + 1) % r.len()];
                mol.atom(a).aromatic
                    && mol
                        .bond_between(a, next)
                        .is_some_and(|b| mol.bond(b).order == BondOrder::Aromatic)
            })
        })
        .count() as u32
}

/// Heteroatoms outside aromatic rings.
pub fn aliphatic_heteroatoms(mol: &Molecule) -> u32 {
    mol.atoms()
        .iter()
        .filter(|a| !a.is_hydrogen() && a.element != Element::C && !a.aromatic)
        .count() as u32
}

/// Atoms shared by exactly two rings that have no other atom in common.
pub fn spiro_atoms(mol: &Molecule) -> u32 {
    let rings = ring_set(mol);
    let mut spiro = alloc::vec![false; mol.atom_count()];
    for x in 0..rings.len() {
        for y in x + 1..rings.len() {
            let shared: Vec<usize> = rings.rings[x]
                .iter()
                .copied()
                .filter(|a| rings.rings[y].contains(a))
                .collect();
            if let [a] = shared[..] {
                spiro[a] = true;
            }
        }
    }
    spiro.iter().filter(|&&s| s).count() as u32
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::molgraph::prepare;
    use crate::smiles::parse_smiles;

    fn counts(s: &str) -> CountSet {
        let mut m = parse_smiles(s).unwrap();
        prepare(&mut m);
        basic_counts(&m)
    }

    #[test]
    fn ethanol() {
        let c = counts("CCO");
        assert_eq!((c.hac, c.heteroatoms, c.hbd, c.hba, c.s_plus_o), (3, 1, 1, 1, 1));
        assert_eq!(c.element_set, [Element::H, Element::C, Element::O]);
    }

    #[test]
    fn benzene() {
        let c = counts("c1ccccc1");
        assert_eq!((c.hac, c.heteroatoms, c.hbd, c.aromatic_rings, c.ring_count), (6, 0, 0, 1, 1));
    }

    #[test]
    fn rotatable_bonds() {
        assert_eq!(counts("CCOCC").rotatable_bonds, 2);
        assert_eq!(counts("c1ccccc1-c1ccccc1").rotatable_bonds, 1);
        assert_eq!(counts("CC=CC").rotatable_bonds, 0);
        assert_eq!(counts("C1CCCCC1C").rotatable_bonds, 0);
    }

    #[test]
    fn spiro() {
        let mut m = parse_smiles("C1CCC2(CC1)CCCC2").unwrap();
        prepare(&mut m);
        assert_eq!(spiro_atoms(&m), 1);
        let mut m = parse_smiles("c1ccc2ccccc2c1").unwrap();
        prepare(&mut m);
        assert_eq!(spiro_atoms(&m), 0);
    }
}
