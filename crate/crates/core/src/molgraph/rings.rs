//! Smallest set of smallest rings.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::mol::Molecule;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSet {
    /// Each ring as atoms in cycle order, starting from its lowest index.
    pub rings: Vec<Vec<usize>>,
    pub ring_bond_flags: Vec<bool>,
}

impl RingSet {
    pub fn len(&self) -> usize {
        self.rings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rings.is_empty()
    }

    pub fn atom_in_ring(&self, atom: usize) -> bool {
        self.rings.iter().any(|r| r.contains(&atom))
    }
}

/// A cycle as a set of bond indices (bitset) plus its sort key.
#[derive(Clone, PartialEq, Eq)]
struct Cycle {
    size: usize,
    atoms: Vec<usize>,
    bonds: Vec<u64>,
}

impl Cycle {
    fn key(&self) -> (usize, &[usize]) {
        (self.size, &self.atoms)
    }
}

/// Perceives the SSSR: a minimum cycle basis whose size is the cyclomatic
/// number. Among equal-size alternatives the cycle with the lexicographically
/// smallest sorted atom list is kept.
pub fn perceive_rings(mol: &Molecule) -> RingSet {
    let n = mol.atom_count();
    let m = mol.bond_count();
    let target = (m + mol.component_count()).saturating_sub(n);
    let mut flags = vec![false; m];
    if target == 0 {
        return RingSet {
            rings: Vec::new(),
            ring_bond_flags: flags,
        };
    }

    let words = m.div_ceil(64);
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut candidates = Vec::new();
    for b in 0..m {
        let bond = mol.bond(b);
        if let Some(path) = shortest_path_avoiding(mol, bond.begin, bond.end, b) {
            push_cycle(mol, &path, words, &mut seen, &mut candidates);
        }
    }
    let mut basis = select_basis(&mut candidates, target);
    if basis.len() < target {
        // Per-bond shortest cycles do not always span the cycle space;
        // Horton's candidate set always contains a minimum basis.
        for root in 0..n {
            let parent = bfs_tree(mol, root);
            for b in 0..m {
                let bond = mol.bond(b);
                if let Some(path) = horton_cycle(&parent, root, bond.begin, bond.end) {
                    push_cycle(mol, &path, words, &mut seen, &mut candidates);
                }
            }
        }
        basis = select_basis(&mut candidates, target);
    }

    let rings = basis
        .into_iter()
        .map(|c| {
            for (b, flag) in flags.iter_mut().enumerate() {
                if c.bonds[b / 64] >> (b % 64) & 1 == 1 {
                    *flag = true;
                }
            }
            cycle_order(mol, &c)
        })
        .collect();
    RingSet {
        rings,
        ring_bond_flags: flags,
    }
}

/// Closed walk `path[0] .. path[k]` with an implied bond back to `path[0]`.
fn push_cycle(
    mol: &Molecule,
    path: &[usize],
    words: usize,
    seen: &mut BTreeSet<Vec<u64>>,
    out: &mut Vec<Cycle>,
) {
    let mut bonds = vec![0u64; words];
    for k in 0..path.len() {
        let a = path[k];
        let b = path[(k + 1) % path.len()];
        let bi = mol.bond_between(a, b).expect("cycle walks along bonds");
        bonds[bi / 64] |= 1 << (bi % 64);
    }
    if seen.insert(bonds.clone()) {
        let mut atoms = path.to_vec();
        atoms.sort_unstable();
        out.push(Cycle {
            size: path.len(),
            atoms,
            bonds,
        });
    }
}

/// Keeps GF(2)-independent cycles in (size, atoms) order until `target`.
fn select_basis(candidates: &mut [Cycle], target: usize) -> Vec<Cycle> {
    candidates.sort_by(|a, b| a.key().cmp(&b.key()));
    let mut reduced: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut chosen = Vec::new();
    for c in candidates.iter() {
        let mut v = c.bonds.clone();
        for (pivot, row) in &reduced {
            if v[pivot / 64] >> (pivot % 64) & 1 == 1 {
                for (x, y) in v.iter_mut().zip(row) {
                    *x ^= y;
                }
            }
        }
        let Some(pivot) = first_bit(&v) else {
            continue;
        };
        // Keep rows fully reduced so the pivot test above stays valid.
        for (_, row) in reduced.iter_mut() {
            if row[pivot / 64] >> (pivot % 64) & 1 == 1 {
                for (x, y) in row.iter_mut().zip(&v) {
                    *x ^= y;
                }
            }
        }
        reduced.push((pivot, v));
        chosen.push(c.clone());
        if chosen.len() == target {
            break;
        }
    }
    chosen
}

fn first_bit(v: &[u64]) -> Option<usize> {
    v.iter()
        .enumerate()
        .find(|(_, w)| **w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

fn sorted_neighbors(mol: &Molecule, a: usize) -> Vec<(usize, usize)> {
    let mut v = mol.neighbors(a).to_vec();
    v.sort_unstable();
    v
}

/// Shortest path from `from` to `to` that does not use bond `skip`.
fn shortest_path_avoiding(mol: &Molecule, from: usize, to: usize, skip: usize) -> Option<Vec<usize>> {
    let n = mol.atom_count();
    let mut parent = vec![usize::MAX; n];
    parent[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(a) = queue.pop_front() {
        if a == to {
            break;
        }
        for (nb, b) in sorted_neighbors(mol, a) {
            if b == skip || parent[nb] != usize::MAX {
                continue;
            }
            parent[nb] = a;
            queue.push_back(nb);
        }
    }
    if parent[to] == usize::MAX {
        return None;
    }
    let mut path = vec![to];
    let mut cur = to;
    while cur != from {
        cur = parent[cur];
        path.push(cur);
    }
    Some(path)
}

fn bfs_tree(mol: &Molecule, root: usize) -> Vec<usize> {
    let mut parent = vec![usize::MAX; mol.atom_count()];
    parent[root] = root;
    let mut queue = VecDeque::from([root]);
    while let Some(a) = queue.pop_front() {
        for (nb, _) in sorted_neighbors(mol, a) {
            if parent[nb] == usize::MAX {
                parent[nb] = a;
                queue.push_back(nb);
            }
        }
    }
    parent
}

/// Cycle root → x, x–y, y → root if the two tree paths only share the root.
fn horton_cycle(parent: &[usize], root: usize, x: usize, y: usize) -> Option<Vec<usize>> {
    if parent[x] == usize::MAX || parent[y] == usize::MAX || parent[x] == y || parent[y] == x {
        return None;
    }
    let path_to_root = |mut v: usize| {
        let mut p = vec![v];
        while v != root {
            v = parent[v];
            p.push(v);
        }
        p
    };
    let px = path_to_root(x);
    let py = path_to_root(y);
    if px.iter().filter(|a| py.contains(a)).count() != 1 {
        return None;
    }
    // x .. root, then root's successor towards y .. y
    let mut cycle = px;
    cycle.extend(py.iter().rev().skip(1));
    Some(cycle)
}

/// Walks a bond-set cycle starting at its lowest atom, heading to the lower
/// of its two ring neighbours.
fn cycle_order(mol: &Molecule, c: &Cycle) -> Vec<usize> {
    let in_cycle = |b: usize| c.bonds[b / 64] >> (b % 64) & 1 == 1;
    let start = c.atoms[0];
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let next = mol
            .neighbors(cur)
            .iter()
            .filter(|&&(nb, b)| in_cycle(b) && nb != prev)
            .map(|&(nb, _)| nb)
            .min()
            .expect("cycle atoms have two cycle bonds");
        if next == start {
            break;
        }
        order.push(next);
        prev = cur;
        cur = next;
        if order.len() > c.size {
            break;
        }
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smiles::parse_smiles;

    fn rings(s: &str) -> RingSet {
        perceive_rings(&parse_smiles(s).unwrap())
    }

    #[test]
    fn acyclic() {
        assert!(rings("CCO").is_empty());
    }

    #[test]
    fn cyclohexane() {
        let r = rings("C1CCCCC1");
        assert_eq!(r.rings, [vec![0, 1, 2, 3, 4, 5]]);
        assert!(r.ring_bond_flags.iter().all(|&f| f));
    }

    #[test]
    fn naphthalene() {
        let r = rings("c1ccc2ccccc2c1");
        assert_eq!(r.len(), 2);
        assert!(r.rings.iter().all(|x| x.len() == 6));
        assert_eq!(r.ring_bond_flags.iter().filter(|&&f| f).count(), 11);
    }

    #[test]
    fn cubane_needs_five_rings() {
        let r = rings("C12C3C4C1C5C2C3C45");
        assert_eq!(r.len(), 5);
        assert!(r.rings.iter().all(|x| x.len() == 4));
    }

    #[test]
    fn exocyclic_bonds_are_not_ring_bonds() {
        let r = rings("CC1CC1");
        assert_eq!(r.ring_bond_flags, [false, true, true, true]);
    }
}
