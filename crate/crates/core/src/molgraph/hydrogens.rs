//! Implicit hydrogens and Kekulé resolution of aromatic input.

use alloc::vec;
use alloc::vec::Vec;

use crate::mol::{BondOrder, Molecule};

const MATCH_STEP_LIMIT: usize = 100_000;

/// Valence "used" by bonds when an atom is read as an organic-subset atom:
/// aromatic bonds count one each, the rest their integer order.
fn used_by_bonds(mol: &Molecule, i: usize) -> u32 {
    mol.neighbors(i)
        .iter()
        .map(|&(_, b)| mol.bond(b).order.integral() as u32)
        .sum()
}

/// Hydrogen count a SMILES reader would give atom `i` if it were written
/// without brackets, and whether it then needs a double bond in the Kekulé
/// form (aromatic atoms only).
pub fn organic_implicit_h(mol: &Molecule, i: usize) -> (u8, bool) {
    let atom = mol.atom(i);
    let used = used_by_bonds(mol, i);
    let Some(&v) = atom
        .element
        .default_valences()
        .iter()
        .find(|&&v| v as u32 >= used)
    else {
        return (0, false);
    };
    let rem = v as u32 - used;
    if atom.aromatic {
        let needs_double = rem >= 1;
        ((rem - needs_double as u32) as u8, needs_double)
    } else {
        (rem as u8, false)
    }
}

/// Whether a bracket aromatic atom still has room for a ring double bond.
fn bracket_needs_double(mol: &Molecule, i: usize) -> bool {
    let atom = mol.atom(i);
    let used = used_by_bonds(mol, i) + atom.explicit_h as u32;
    atom.element
        .allowed_valences(atom.charge)
        .and_then(|vals| vals.as_slice().iter().copied().find(|&v| v as u32 >= used))
        .is_some_and(|v| v as u32 > used)
}

/// Sets `implicit_h` on every atom and gives aromatic bonds a Kekulé order.
///
/// Organic-subset atoms take the smallest default valence that fits their
/// bonds; bracket atoms keep their written H count. Aromatic atoms that are
/// not in a ring, or whose system has no Kekulé structure, are recorded for
/// [`super::sanitize`] to report.
pub fn assign_implicit_hydrogens(mol: &mut Molecule) {
    let n = mol.atom_count();
    let mut needs_double = vec![false; n];
    for i in 0..n {
        let atom = mol.atom(i);
        if atom.bracket {
            needs_double[i] = atom.aromatic && bracket_needs_double(mol, i);
            mol.atom_mut(i).implicit_h = 0;
        } else {
            let (h, d) = organic_implicit_h(mol, i);
            needs_double[i] = d;
            mol.atom_mut(i).implicit_h = h;
        }
    }
    let mut issues = kekulize(mol, &needs_double);
    for i in 0..n {
        if !mol.atom(i).aromatic {
            continue;
        }
        let in_ring = mol.neighbors(i).iter().any(|&(_, b)| {
            let bond = mol.bond(b);
            bond.in_ring && bond.order == BondOrder::Aromatic
        });
        if !in_ring {
            issues.push(i);
        }
    }
    issues.sort_unstable();
    issues.dedup();
    mol.aromatic_issues = issues;
}

/// Places double bonds on aromatic bonds so that every atom flagged in
/// `needs_double` gets exactly one. Returns atoms of systems where that is
/// impossible.
fn kekulize(mol: &mut Molecule, needs_double: &[bool]) -> Vec<usize> {
    let n = mol.atom_count();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for bi in 0..mol.bond_count() {
        let b = mol.bond(bi);
        if b.order != BondOrder::Aromatic {
            continue;
        }
        if needs_double[b.begin] && needs_double[b.end] {
            adj[b.begin].push((b.end, bi));
            adj[b.end].push((b.begin, bi));
        }
        mol.bond_mut(bi).kekule = 1;
    }

    let mut matcher = Matcher {
        adj: &adj,
        mate: vec![None; n],
        steps: 0,
    };
    let mut seen = vec![false; n];
    let mut failed = Vec::new();
    for start in 0..n {
        if !needs_double[start] || seen[start] {
            continue;
        }
        let mut component = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < component.len() {
            for &(nb, _) in &adj[component[k]] {
                if !seen[nb] {
                    seen[nb] = true;
                    component.push(nb);
                }
            }
            k += 1;
        }
        matcher.steps = 0;
        if component.len() % 2 == 1 || !matcher.solve(&component) {
            for &a in &component {
                matcher.mate[a] = None;
            }
            failed.extend(component);
        }
    }
    for i in 0..n {
        if let Some(b) = matcher.mate[i] {
            mol.bond_mut(b).kekule = 2;
        }
    }
    failed
}

struct Matcher<'a> {
    adj: &'a [Vec<(usize, usize)>],
    /// Bond matched to each atom.
    mate: Vec<Option<usize>>,
    steps: usize,
}

impl Matcher<'_> {
    fn free_degree(&self, v: usize) -> usize {
        self.adj[v].iter().filter(|&&(u, _)| self.mate[u].is_none()).count()
    }

    /// Perfect matching by backtracking, always branching on the unmatched
    /// atom with the fewest free neighbours.
    fn solve(&mut self, nodes: &[usize]) -> bool {
        self.steps += 1;
        if self.steps > MATCH_STEP_LIMIT {
            return false;
        }
        let mut best: Option<(usize, usize)> = None;
        for &v in nodes {
            if self.mate[v].is_some() {
                continue;
            }
            let d = self.free_degree(v);
            if d == 0 {
                return false;
            }
            if best.is_none_or(|(_, bd)| d < bd) {
                best = Some((v, d));
                if d == 1 {
                    break;
                }
            }
        }
        let Some((v, _)) = best else {
            return true;
        };
        for k in 0..self.adj[v].len() {
            let (u, b) = self.adj[v][k];
            if self.mate[u].is_some() {
                continue;
            }
            self.mate[v] = Some(b);
            self.mate[u] = Some(b);
            if self.solve(nodes) {
                return true;
            }
            self.mate[v] = None;
            self.mate[u] = None;
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use crate::molgraph::prepare;
    use crate::smiles::parse_smiles;

    fn hs(s: &str) -> alloc::vec::Vec<u8> {
        let mut m = parse_smiles(s).unwrap();
        prepare(&mut m);
        m.atoms().iter().map(|a| a.total_h()).collect()
    }

    #[test]
    fn simple_counts() {
        assert_eq!(hs("C"), [4]);
        assert_eq!(hs("O"), [2]);
        assert_eq!(hs("[NH4+]"), [4]);
        assert_eq!(hs("[NH4+]")[0], 4);
        assert_eq!(hs("CC=O"), [3, 1, 0]);
        assert_eq!(hs("CS(=O)C"), [3, 0, 0, 3]);
        assert_eq!(hs("[C]"), [0]);
    }

    #[test]
    fn aromatic_counts() {
        assert_eq!(hs("c1ccccc1"), [1; 6]);
        assert_eq!(hs("c1ccncc1"), [1, 1, 1, 0, 1, 1]);
        assert_eq!(hs("c1cc[nH]c1"), [1, 1, 1, 1, 1]);
        assert_eq!(hs("c1ccoc1"), [1, 1, 1, 0, 1]);
    }

    #[test]
    fn kekule_structure_is_valid() {
        let mut m = parse_smiles("c1ccc2ccccc2c1").unwrap();
        prepare(&mut m);
        assert!(m.aromatic_issues.is_empty());
        for i in 0..m.atom_count() {
            assert_eq!(m.bond_order_sum(i) + m.atom(i).total_h() as u32, 4);
        }
    }

    #[test]
    fn unkekulizable_rings_are_recorded() {
        let mut m = parse_smiles("c1cccc1").unwrap();
        prepare(&mut m);
        assert!(!m.aromatic_issues.is_empty());
        let mut m = parse_smiles("c1ccnc1").unwrap();
        prepare(&mut m);
        assert!(!m.aromatic_issues.is_empty());
        let mut m = parse_smiles("Cc").unwrap();
        prepare(&mut m);
        assert_eq!(m.aromatic_issues, [1]);
    }
}
