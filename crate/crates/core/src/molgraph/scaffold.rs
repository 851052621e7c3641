use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::rings::perceive_rings;
use crate::mol::{BondOrder, Molecule};
use crate::smiles::canonicalize_unchecked;

/// Ring systems plus the linkers between them.
#[derive(Debug, Clone, PartialEq)]
pub struct Scaffold {
    pub molecule: Molecule,
}

impl Scaffold {
    pub fn is_empty(&self) -> bool {
        self.molecule.is_empty()
    }

    /// Canonical SMILES of the scaffold; empty for acyclic molecules.
    pub fn smiles(&self) -> String {
        canonicalize_unchecked(&self.molecule)
    }
}

/// Bemis–Murcko scaffold: repeatedly removes non-ring atoms with at most one
/// remaining neighbour. Atoms double-bonded to a ring or linker atom stay,
/// so C=O on a ring is kept. Atom and bond types are preserved; atoms that
/// lose neighbours gain the corresponding hydrogens.
pub fn murcko_scaffold(mol: &Molecule) -> Scaffold {
    let n = mol.atom_count();
    let ring_flags: Vec<bool> = match mol.rings() {
        Some(r) => r.ring_bond_flags.clone(),
        None => perceive_rings(mol).ring_bond_flags,
    };
    let mut in_ring = vec![false; n];
    for (b, &flag) in ring_flags.iter().enumerate() {
        if flag {
            in_ring[mol.bond(b).begin] = true;
            in_ring[mol.bond(b).end] = true;
        }
    }
    if !in_ring.iter().any(|&r| r) {
        return Scaffold {
            molecule: Molecule::new(),
        };
    }

    let mut alive = vec![true; n];
    let live_degree = |alive: &[bool], a: usize| mol.neighbors(a).iter().filter(|&&(nb, _)| alive[nb]).count();
    // A pendant hangs off its only live neighbour by a double bond.
    let is_pendant = |alive: &[bool], a: usize| {
        !in_ring[a]
            && live_degree(alive, a) == 1
            && mol
                .neighbors(a)
                .iter()
                .any(|&(nb, b)| alive[nb] && mol.bond(b).order == BondOrder::Double)
    };
    loop {
        let mut changed = false;
        for a in 0..n {
            if !alive[a] || in_ring[a] || is_pendant(&alive, a) {
                continue;
            }
            let mut pendants = Vec::new();
            let mut others = 0;
            for &(nb, _) in mol.neighbors(a) {
                if !alive[nb] {
                    continue;
                }
                if is_pendant(&alive, nb) {
                    pendants.push(nb);
                } else {
                    others += 1;
                }
            }
            if others <= 1 {
                alive[a] = false;
                for p in pendants {
                    alive[p] = false;
                }
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    let (mut scaffold, map) = mol.subgraph(&alive);
    for b in mol.bonds() {
        let (x, y) = (b.begin, b.end);
        if alive[x] != alive[y] {
            let kept = if alive[x] { x } else { y };
            let k = map[kept].expect("kept atom is mapped");
            let atom = scaffold.atom_mut(k);
            if atom.bracket {
                atom.explicit_h += b.kekule;
            } else {
                atom.implicit_h += b.kekule;
            }
        }
    }
    let rings = perceive_rings(&scaffold);
    for (i, &flag) in rings.ring_bond_flags.iter().enumerate() {
        scaffold.bond_mut(i).in_ring = flag;
    }
    scaffold.rings = Some(rings);
    Scaffold { molecule: scaffold }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::molgraph::prepare;
    use crate::smiles::parse_canonical;

    fn scaffold_of(s: &str) -> String {
        let (m, _) = parse_canonical(s).unwrap();
        murcko_scaffold(&m).smiles()
    }

    fn canon(s: &str) -> String {
        parse_canonical(s).unwrap().1
    }

    #[test]
    fn toluene_gives_benzene() {
        assert_eq!(scaffold_of("Cc1ccccc1"), canon("c1ccccc1"));
    }

    #[test]
    fn acyclic_is_empty() {
        assert_eq!(scaffold_of("CCO"), "");
        let (m, _) = parse_canonical("CC(=O)C").unwrap();
        assert!(murcko_scaffold(&m).is_empty());
    }

    #[test]
    fn biphenyl_with_tail() {
        assert_eq!(scaffold_of("CCCc1ccc(cc1)-c1ccccc1"), canon("c1ccc(cc1)-c1ccccc1"));
    }

    #[test]
    fn linkers_and_ring_carbonyls_stay() {
        assert_eq!(scaffold_of("c1ccccc1CCOC(=O)C"), canon("c1ccccc1"));
        assert_eq!(scaffold_of("CC1CCC(=O)CC1"), canon("O=C1CCCCC1"));
        assert_eq!(scaffold_of("c1ccccc1CC(=O)C1CC1"), canon("c1ccccc1CC(=O)C1CC1"));
    }

    #[test]
    fn idempotent() {
        for s in ["CCCc1ccc(cc1)-c1ccccc1", "CC1CCC(=O)CC1", "c1ccc2ccccc2c1CCN"] {
            let (m, _) = parse_canonical(s).unwrap();
            let once = murcko_scaffold(&m);
            let mut twice_in = once.molecule.clone();
            prepare(&mut twice_in);
            let twice = murcko_scaffold(&twice_in);
            assert_eq!(once.smiles(), twice.smiles());
        }
    }
}
