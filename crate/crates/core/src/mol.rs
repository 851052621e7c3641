//! The attributed molecular graph shared by every stage of the toolkit.

use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::element::Element;
use crate::molgraph::RingSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum BondOrder {
    Single,
    Double,
    Triple,
    Aromatic,
}

impl BondOrder {
    /// Integer order; aromatic bonds report 1 here and get their Kekulé order
    /// from [`Bond::kekule`].
    pub fn integral(self) -> u8 {
        match self {
            BondOrder::Single | BondOrder::Aromatic => 1,
            BondOrder::Double => 2,
            BondOrder::Triple => 3,
        }
    }

    pub(crate) fn code(self) -> u8 {
        match self {
            BondOrder::Single => 1,
            BondOrder::Double => 2,
            BondOrder::Triple => 3,
            BondOrder::Aromatic => 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Atom {
    pub element: Element,
    pub charge: i8,
    pub isotope: Option<u16>,
    pub aromatic: bool,
    /// Written as a bracket atom; its hydrogen count is fixed by `explicit_h`.
    pub bracket: bool,
    pub explicit_h: u8,
    /// Hydrogens added by [`crate::molgraph::assign_implicit_hydrogens`].
    pub implicit_h: u8,
}

impl Atom {
    pub fn new(element: Element) -> Self {
        Atom {
            element,
            charge: 0,
            isotope: None,
            aromatic: false,
            bracket: false,
            explicit_h: 0,
            implicit_h: 0,
        }
    }

    pub fn total_h(&self) -> u8 {
        self.explicit_h + self.implicit_h
    }

    pub fn is_hydrogen(&self) -> bool {
        self.element == Element::H
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bond {
    pub begin: usize,
    pub end: usize,
    pub order: BondOrder,
    /// Order in the current Kekulé structure (1, 2 or 3).
    pub kekule: u8,
    pub in_ring: bool,
}

impl Bond {
    pub fn other(&self, atom: usize) -> usize {
        if self.begin == atom {
            self.end
        } else {
            self.begin
        }
    }

    pub fn contains(&self, atom: usize) -> bool {
        self.begin == atom || self.end == atom
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("atom index {0} out of range")]
    AtomOutOfRange(usize),
    #[error("bond from atom {0} to itself")]
    SelfLoop(usize),
    #[error("duplicate bond between atoms {0} and {1}")]
    DuplicateBond(usize, usize),
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Molecule {
    atoms: Vec<Atom>,
    bonds: Vec<Bond>,
    adjacency: Vec<Vec<(usize, usize)>>,
    pub(crate) rings: Option<RingSet>,
    /// Atoms parsed as aromatic whose aromaticity could not be made sense of
    /// (no Kekulé structure, or not in a ring).
    pub(crate) aromatic_issues: Vec<usize>,
}

impl Molecule {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_atom(&mut self, atom: Atom) -> usize {
        self.atoms.push(atom);
        self.adjacency.push(Vec::new());
        self.rings = None;
        self.atoms.len() - 1
    }

    pub fn add_bond(&mut self, a: usize, b: usize, order: BondOrder) -> Result<usize, GraphError> {
        let n = self.atoms.len();
        if a >= n {
            return Err(GraphError::AtomOutOfRange(a));
        }
        if b >= n {
            return Err(GraphError::AtomOutOfRange(b));
        }
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        if self.bond_between(a, b).is_some() {
            return Err(GraphError::DuplicateBond(a, b));
        }
        let idx = self.bonds.len();
        self.bonds.push(Bond {
            begin: a,
            end: b,
            order,
            kekule: order.integral(),
            in_ring: false,
        });
        self.adjacency[a].push((b, idx));
        self.adjacency[b].push((a, idx));
        self.rings = None;
        Ok(idx)
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn atom(&self, i: usize) -> &Atom {
        &self.atoms[i]
    }

    pub(crate) fn atom_mut(&mut self, i: usize) -> &mut Atom {
        &mut self.atoms[i]
    }

    pub fn bonds(&self) -> &[Bond] {
        &self.bonds
    }

    pub fn bond(&self, i: usize) -> &Bond {
        &self.bonds[i]
    }

    pub(crate) fn bond_mut(&mut self, i: usize) -> &mut Bond {
        &mut self.bonds[i]
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn bond_count(&self) -> usize {
        self.bonds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// `(neighbour, bond index)` pairs in insertion order.
    pub fn neighbors(&self, atom: usize) -> &[(usize, usize)] {
        &self.adjacency[atom]
    }

    pub fn degree(&self, atom: usize) -> usize {
        self.adjacency[atom].len()
    }

    /// Neighbours that are not hydrogen atoms.
    pub fn heavy_degree(&self, atom: usize) -> usize {
        self.adjacency[atom]
            .iter()
            .filter(|(n, _)| !self.atoms[*n].is_hydrogen())
            .count()
    }

    pub fn bond_between(&self, a: usize, b: usize) -> Option<usize> {
        self.adjacency
            .get(a)?
            .iter()
            .find(|(n, _)| *n == b)
            .map(|&(_, bi)| bi)
    }

    /// Sum of Kekulé bond orders around an atom.
    pub fn bond_order_sum(&self, atom: usize) -> u32 {
        self.adjacency[atom]
            .iter()
            .map(|&(_, b)| self.bonds[b].kekule as u32)
            .sum()
    }

    /// Hydrogens on an atom, counting both H counts and explicit `[H]` neighbours.
    pub fn hydrogen_count(&self, atom: usize) -> u32 {
        self.atoms[atom].total_h() as u32
            + self.adjacency[atom]
                .iter()
                .filter(|(n, _)| self.atoms[*n].is_hydrogen())
                .count() as u32
    }

    pub fn rings(&self) -> Option<&RingSet> {
        self.rings.as_ref()
    }

    pub fn net_charge(&self) -> i32 {
        self.atoms.iter().map(|a| a.charge as i32).sum()
    }

    pub fn component_count(&self) -> usize {
        let n = self.atoms.len();
        let mut seen = vec![false; n];
        let mut count = 0;
        let mut stack = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            count += 1;
            seen[start] = true;
            stack.push(start);
            while let Some(a) = stack.pop() {
                for &(nb, _) in &self.adjacency[a] {
                    if !seen[nb] {
                        seen[nb] = true;
                        stack.push(nb);
                    }
                }
            }
        }
        count
    }

    /// Relabels atoms: atom `i` of `self` becomes atom `order[i]` of the result.
    /// Bonds are re-listed in an order derived from the new labels so that the
    /// result carries no trace of the original numbering.
    ///
    /// Panics if `order` is not a permutation of `0..atom_count()`.
    pub fn permuted(&self, order: &[usize]) -> Molecule {
        let n = self.atoms.len();
        assert_eq!(order.len(), n, "permutation length mismatch");
        let mut inverse = vec![usize::MAX; n];
        for (old, &new) in order.iter().enumerate() {
            assert!(new < n && inverse[new] == usize::MAX, "not a permutation");
            inverse[new] = old;
        }
        let mut out = Molecule::new();
        for &old in &inverse {
            out.add_atom(self.atoms[old].clone());
        }
        let mut bonds: Vec<(usize, usize, usize)> = self
            .bonds
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let (x, y) = (order[b.begin], order[b.end]);
                (x.min(y), x.max(y), i)
            })
            .collect();
        bonds.sort_unstable();
        for (x, y, i) in bonds {
            let src = &self.bonds[i];
            // Keep the original begin/end orientation for the relabelled atoms.
            let (a, b) = if order[src.begin] == x { (x, y) } else { (y, x) };
            let bi = out.add_bond(a, b, src.order).expect("relabelled bond is valid");
            out.bonds[bi].kekule = src.kekule;
            out.bonds[bi].in_ring = src.in_ring;
        }
        out.aromatic_issues = self.aromatic_issues.iter().map(|&a| order[a]).collect();
        out.aromatic_issues.sort_unstable();
        out
    }

    /// Induced subgraph on the atoms flagged in `keep`; returns the new
    /// molecule and, for every old atom, its new index if kept.
    pub fn subgraph(&self, keep: &[bool]) -> (Molecule, Vec<Option<usize>>) {
        let mut map = vec![None; self.atoms.len()];
        let mut out = Molecule::new();
        for (i, atom) in self.atoms.iter().enumerate() {
            if keep[i] {
                map[i] = Some(out.add_atom(atom.clone()));
            }
        }
        for b in &self.bonds {
            if let (Some(x), Some(y)) = (map[b.begin], map[b.end]) {
                let bi = out.add_bond(x, y, b.order).expect("subgraph bond is valid");
                out.bonds[bi].kekule = b.kekule;
                out.bonds[bi].in_ring = b.in_ring;
            }
        }
        (out, map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ethanol() -> Molecule {
        let mut m = Molecule::new();
        let c1 = m.add_atom(Atom::new(Element::C));
        let c2 = m.add_atom(Atom::new(Element::C));
        let o = m.add_atom(Atom::new(Element::O));
        m.add_bond(c1, c2, BondOrder::Single).unwrap();
        m.add_bond(c2, o, BondOrder::Single).unwrap();
        m
    }

    #[test]
    fn rejects_bad_bonds() {
        let mut m = ethanol();
        assert_eq!(m.add_bond(0, 0, BondOrder::Single), Err(GraphError::SelfLoop(0)));
        assert_eq!(m.add_bond(1, 0, BondOrder::Single), Err(GraphError::DuplicateBond(1, 0)));
        assert_eq!(m.add_bond(0, 7, BondOrder::Single), Err(GraphError::AtomOutOfRange(7)));
    }

    #[test]
    fn permutation_moves_atoms() {
        let m = ethanol();
        let p = m.permuted(&[2, 1, 0]);
        assert_eq!(p.atom(0).element, Element::O);
        assert_eq!(p.atom(2).element, Element::C);
        assert!(p.bond_between(0, 1).is_some());
        assert!(p.bond_between(1, 2).is_some());
        assert!(p.bond_between(0, 2).is_none());
    }

    #[test]
    fn components() {
        let mut m = ethanol();
        assert_eq!(m.component_count(), 1);
        m.add_atom(Atom::new(Element::C));
        assert_eq!(m.component_count(), 2);
    }
}
