//! Hückel aromaticity over SSSR rings and small fused ring groups.

use alloc::vec;
use alloc::vec::Vec;

use super::hydrogens::organic_implicit_h;
use super::rings::perceive_rings;
use crate::element::Element;
use crate::mol::{BondOrder, Molecule};

/// π electrons atom `i` donates to a ring, or `None` if it cannot be part of
/// an aromatic ring. Reads the Kekulé bond orders.
///
/// A ring double bond gives 1; an exocyclic double bond gives 0; a lone pair
/// on a trivalent N/P, divalent O/S/Se or a carbanion gives 2; an empty p
/// orbital (carbocation, trivalent boron) gives 0. Atoms above their
/// lowest (charge-adjusted) valence, such as sulfoxide S, never qualify.
pub fn pi_electrons(mol: &Molecule, i: usize) -> Option<u8> {
    let atom = mol.atom(i);
    let mut doubles = 0;
    let mut ring_double = false;
    let mut valence = u32::from(atom.total_h());
    for &(_, b) in mol.neighbors(i) {
        let bond = mol.bond(b);
        match bond.kekule {
            1 => {}
            2 => {
                doubles += 1;
                ring_double |= bond.in_ring;
            }
            _ => return None,
        }
        valence += u32::from(bond.kekule);
    }
    if let Some(lowest) = atom.element.allowed_valences(atom.charge).and_then(|v| v.as_slice().first().copied()) {
        if valence != u32::from(lowest) {
            return None;
        }
    }
    if doubles > 1 {
        return None;
    }
    if doubles == 1 {
        return Some(ring_double as u8);
    }
    let connections = mol.degree(i) + atom.total_h() as usize;
    let e = atom.element;
    match (e, atom.charge, connections) {
        (Element::N | Element::P, 0, 3) => Some(2),
        (Element::N, -1, 2) => Some(2),
        (Element::O | Element::S | Element::SE, 0, 2) => Some(2),
        (Element::C, -1, 3) => Some(2),
        (Element::C, 1, 3) | (Element::B, 0, 3) => Some(0),
        _ => None,
    }
}

fn huckel(electrons: u32) -> bool {
    electrons % 4 == 2
}

const MAX_GROUP_RINGS: usize = 6;
const MAX_GROUPS: usize = 20_000;

/// Connected sets of 2 to `MAX_GROUP_RINGS` candidate rings, where rings
/// are connected when they share a bond. Each set is sorted.
fn fused_groups(ring_bonds: &[Vec<usize>], candidate: &[bool]) -> Vec<Vec<usize>> {
    let n = ring_bonds.len();
    let adjacent = |x: usize, y: usize| ring_bonds[x].iter().any(|b| ring_bonds[y].contains(b));
    let mut seen = alloc::collections::BTreeSet::new();
    let mut frontier: Vec<Vec<usize>> = (0..n).filter(|&k| candidate[k]).map(|k| vec![k]).collect();
    let mut out = Vec::new();
    for _ in 1..MAX_GROUP_RINGS {
        let mut next = Vec::new();
        for set in &frontier {
            for k in 0..n {
                if !candidate[k] || set.contains(&k) || !set.iter().any(|&s| adjacent(s, k)) {
                    continue;
                }
                let mut grown = set.clone();
                grown.push(k);
                grown.sort_unstable();
                if seen.insert(grown.clone()) {
                    next.push(grown);
                }
            }
            if seen.len() > MAX_GROUPS {
                break;
            }
        }
        out.extend(next.iter().cloned());
        if next.is_empty() || seen.len() > MAX_GROUPS {
            break;
        }
        frontier = next;
    }
    out
}

/// Re-derives aromatic flags from the Kekulé structure.
///
/// Every SSSR ring whose atoms all donate π electrons and whose count is
/// 4n+2 becomes aromatic. Small fused groups of such rings are also tested
/// as a whole (azulene); there only the outer cycle's bonds turn aromatic.
/// Atoms the Kekulé step could not resolve keep their input flags.
pub fn perceive_aromaticity(mol: &mut Molecule) {
    let rings = match mol.rings.take() {
        Some(r) => r,
        None => perceive_rings(mol),
    };
    let n = mol.atom_count();
    let locked: Vec<bool> = {
        let mut v = vec![false; n];
        for &a in &mol.aromatic_issues {
            v[a] = true;
        }
        v
    };

    // Back to the Kekulé form.
    for i in 0..n {
        if !locked[i] {
            mol.atom_mut(i).aromatic = false;
        }
    }
    for b in 0..mol.bond_count() {
        let bond = mol.bond(b);
        if locked[bond.begin] || locked[bond.end] {
            continue;
        }
        let order = match bond.kekule {
            2 => BondOrder::Double,
            3 => BondOrder::Triple,
            _ => BondOrder::Single,
        };
        mol.bond_mut(b).order = order;
    }

    let pi: Vec<Option<u8>> = (0..n).map(|i| pi_electrons(mol, i)).collect();
    let candidate: Vec<bool> = rings
        .rings
        .iter()
        .map(|r| r.iter().all(|&a| pi[a].is_some() && !locked[a]))
        .collect();
    let count = |atoms: &[usize]| atoms.iter().map(|&a| pi[a].unwrap_or(0) as u32).sum::<u32>();

    let mut aromatic_ring = vec![false; rings.len()];
    for (k, r) in rings.rings.iter().enumerate() {
        aromatic_ring[k] = candidate[k] && huckel(count(r));
    }
    let mut aromatic_bond = vec![false; mol.bond_count()];
    let ring_bonds: Vec<Vec<usize>> = rings
        .rings
        .iter()
        .map(|r| {
            (0..r.len())
                .map(|j| mol.bond_between(r[j], r[(j + 1) % r.len()]).expect("ring atoms are bonded"))
                .collect()
        })
        .collect();
    for (k, r) in rings.rings.iter().enumerate() {
        if aromatic_ring[k] {
            for &a in r {
                mol.atom_mut(a).aromatic = true;
            }
            for &b in &ring_bonds[k] {
                aromatic_bond[b] = true;
            }
        }
    }
    // Fused groups of candidate rings (azulene, ring-fused anhydrides): the
    // group's atoms are aromatic when their total is 4n+2, but only bonds on
    // the group's outer cycle become aromatic.
    for group in fused_groups(&ring_bonds, &candidate) {
        let mut atoms: Vec<usize> = group.iter().flat_map(|&k| rings.rings[k].iter().copied()).collect();
        atoms.sort_unstable();
        atoms.dedup();
        if !huckel(count(&atoms)) {
            continue;
        }
        for &a in &atoms {
            mol.atom_mut(a).aromatic = true;
        }
        for &k in &group {
            for &b in &ring_bonds[k] {
                if group.iter().filter(|&&o| ring_bonds[o].contains(&b)).count() == 1 {
                    aromatic_bond[b] = true;
                }
            }
        }
    }
    for (b, &flag) in aromatic_bond.iter().enumerate() {
        if flag {
            mol.bond_mut(b).order = BondOrder::Aromatic;
        }
    }

    // Hydrogens a reader would not infer from the new flags become explicit,
    // as in "[nH]", so that preparing again changes nothing.
    for i in 0..n {
        let atom = mol.atom(i);
        if !atom.bracket && organic_implicit_h(mol, i).0 != atom.total_h() {
            let total = atom.total_h();
            let a = mol.atom_mut(i);
            a.bracket = true;
            a.explicit_h = total;
            a.implicit_h = 0;
        }
    }
    mol.rings = Some(rings);
}

#[cfg(test)]
mod tests {
    use crate::mol::BondOrder;
    use crate::molgraph::prepare;
    use crate::smiles::parse_smiles;

    fn prepared(s: &str) -> crate::Molecule {
        let mut m = parse_smiles(s).unwrap();
        prepare(&mut m);
        m
    }

    fn aromatic_atoms(s: &str) -> usize {
        prepared(s).atoms().iter().filter(|a| a.aromatic).count()
    }

    #[test]
    fn benzene_forms_agree() {
        let a = prepared("c1ccccc1");
        let k = prepared("C1=CC=CC=C1");
        assert_eq!(a.atoms(), k.atoms());
        assert!(k.bonds().iter().all(|b| b.order == BondOrder::Aromatic));
        assert_eq!(
            a.bonds().iter().map(|b| b.order).collect::<alloc::vec::Vec<_>>(),
            k.bonds().iter().map(|b| b.order).collect::<alloc::vec::Vec<_>>()
        );
    }

    #[test]
    fn non_aromatic_rings() {
        assert_eq!(aromatic_atoms("C1CCCCC1"), 0);
        assert_eq!(aromatic_atoms("C1=CCC=C1"), 0);
        assert_eq!(aromatic_atoms("C1=CC=CC=CC=C1"), 0);
    }

    #[test]
    fn heteroaromatics() {
        assert_eq!(aromatic_atoms("c1ccncc1"), 6);
        assert_eq!(aromatic_atoms("C1=CNC=C1"), 5);
        assert_eq!(aromatic_atoms("c1ccsc1"), 5);
        assert_eq!(aromatic_atoms("O=C1C=COC=C1"), 6);
    }

    #[test]
    fn pyridine_pi_count_is_six() {
        let m = prepared("C1=CC=NC=C1");
        let total: u32 = (0..6).map(|i| super::pi_electrons(&m, i).unwrap() as u32).sum();
        assert_eq!(total, 6);
        assert_eq!(super::pi_electrons(&m, 3), Some(1));
    }

    #[test]
    fn azulene_is_aromatic_through_its_outer_cycle() {
        assert_eq!(aromatic_atoms("C1=CC=C2C=CC=C2C=C1"), 10);
    }

    #[test]
    fn pyrrole_hydrogen_becomes_explicit() {
        let m = prepared("C1=CNC=C1");
        let n = &m.atoms()[2];
        assert!(n.aromatic && n.bracket && n.explicit_h == 1);
        let mut again = m.clone();
        prepare(&mut again);
        assert_eq!(again.atoms(), m.atoms());
    }
}
