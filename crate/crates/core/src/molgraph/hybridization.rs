//! Orbital hybridization from a VSEPR steric number.

use serde::{Deserialize, Serialize};

use crate::mol::Molecule;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Hybridization {
    S,
    Sp,
    Sp2,
    Sp3,
    /// Steric number above 4, or no main-group electron count.
    Other,
}

impl Hybridization {
    pub fn as_str(self) -> &'static str {
        match self {
            Hybridization::S => "s",
            Hybridization::Sp => "sp",
            Hybridization::Sp2 => "sp2",
            Hybridization::Sp3 => "sp3",
            Hybridization::Other => "other",
        }
    }
}

/// Valence electrons of a main-group element.
fn valence_electrons(z: u8) -> Option<i32> {
    let z = i32::from(z);
    let offset = match z {
        1..=2 => 0,
        3..=10 => 2,
        11..=18 => 10,
        19..=20 => 18,
        31..=36 => 28,
        37..=38 => 36,
        49..=54 => 46,
        55..=56 => 54,
        81..=86 => 78,
        _ => return None,
    };
    Some(z - offset)
}

/// Hybridization of atom `i` in a prepared molecule.
///
/// Aromatic atoms are sp2. Otherwise the steric number is the count of
/// sigma partners (neighbours plus hydrogens) plus lone pairs, where lone
/// pairs are whatever valence electrons the Kekulé bonds and charge leave.
pub fn hybridization(mol: &Molecule, i: usize) -> Hybridization {
    let atom = mol.atom(i);
    if atom.is_hydrogen() {
        return Hybridization::S;
    }
    if atom.aromatic {
        return Hybridization::Sp2;
    }
    let Some(electrons) = valence_electrons(atom.element.atomic_number()) else {
        return Hybridization::Other;
    };
    let h = i32::from(atom.total_h());
    let sigma = mol.degree(i) as i32 + h;
    let bonding = mol.bond_order_sum(i) as i32 + h;
    let lone_pairs = ((electrons - i32::from(atom.charge) - bonding) / 2).max(0);
    match sigma + lone_pairs {
        0 | 1 => Hybridization::S,
        2 => Hybridization::Sp,
        3 => Hybridization::Sp2,
        4 => Hybridization::Sp3,
        _ => Hybridization::Other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::molgraph::prepare;
    use crate::smiles::parse_smiles;

    fn hyb(s: &str) -> alloc::vec::Vec<&'static str> {
        let mut m = parse_smiles(s).unwrap();
        prepare(&mut m);
        (0..m.atom_count()).map(|i| hybridization(&m, i).as_str()).collect()
    }

    #[test]
    fn common_centres() {
        assert_eq!(hyb("CC=O"), ["sp3", "sp2", "sp2"]);
        assert_eq!(hyb("CC#N"), ["sp3", "sp", "sp"]);
        assert_eq!(hyb("C=C=C"), ["sp2", "sp", "sp2"]);
        assert_eq!(hyb("CS(C)=O"), ["sp3", "sp3", "sp3", "sp2"]);
        assert_eq!(hyb("CS(=O)(=O)C")[1], "sp3");
        assert_eq!(hyb("c1cc[nH]c1"), ["sp2"; 5]);
        assert_eq!(hyb("CCl"), ["sp3", "sp3"]);
        assert_eq!(hyb("[CH3+]"), ["sp2"]);
        assert_eq!(hyb("FP(F)(F)(F)F")[1], "other");
        assert_eq!(hyb("[H][H]"), ["s", "s"]);
    }
}
