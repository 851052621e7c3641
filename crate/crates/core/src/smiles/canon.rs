use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::parse::SmilesError;
use super::write::write_ranked;
use crate::mol::Molecule;
use crate::molgraph::{sanitize, SanitizeReport};

/// Leaves visited by the tie-breaking search before it stops branching.
/// Real molecules stay far below this; highly symmetric cages may not.
const LEAF_LIMIT: usize = 4096;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CanonError {
    #[error("{0}")]
    Parse(SmilesError),
    #[error("molecule failed sanitization: {}", .0.summary())]
    Invalid(SanitizeReport),
}

/// Canonical SMILES of a prepared molecule. Fails if sanitization does.
pub fn canonicalize(mol: &Molecule) -> Result<String, CanonError> {
    let report = sanitize(mol);
    if !report.valid {
        return Err(CanonError::Invalid(report));
    }
    Ok(canonicalize_unchecked(mol))
}

/// Canonical SMILES without the sanitization gate. Used for scaffolds and
/// other fragments that need a stable key but are not whole molecules.
pub fn canonicalize_unchecked(mol: &Molecule) -> String {
    search(mol).1
}

/// A canonical atom ranking: a permutation of `0..n` that depends only on
/// the labelled graph, not on the input atom order.
pub fn canonical_ranks(mol: &Molecule) -> Vec<usize> {
    search(mol).0
}

fn search(mol: &Molecule) -> (Vec<usize>, String) {
    let n = mol.atom_count();
    if n == 0 {
        return (Vec::new(), String::new());
    }
    let graph = RankGraph::new(mol);
    let start = graph.refine(graph.seed_ranks());

    let mut best: Option<(String, Vec<usize>)> = None;
    let mut leaves = 0usize;
    let mut stack = vec![start];
    while let Some(ranks) = stack.pop() {
        let Some(cell) = graph.smallest_tied_cell(&ranks) else {
            leaves += 1;
            let s = write_ranked(mol, &ranks);
            if best.as_ref().is_none_or(|(b, _)| s < *b) {
                best = Some((s, ranks));
            }
            continue;
        };
        let mut candidates = graph.distinct_candidates(&ranks, cell);
        if leaves >= LEAF_LIMIT {
            candidates.truncate(1);
        }
        // Pushed in reverse so the lowest-index candidate is explored first.
        for &c in candidates.iter().rev() {
            stack.push(graph.refine(individualize(&ranks, cell, c)));
        }
    }
    let (s, ranks) = best.expect("at least one leaf");
    (ranks, s)
}

struct RankGraph<'a> {
    mol: &'a Molecule,
    in_ring: Vec<bool>,
}

impl<'a> RankGraph<'a> {
    fn new(mol: &'a Molecule) -> Self {
        let mut in_ring = vec![false; mol.atom_count()];
        for b in mol.bonds() {
            if b.in_ring {
                in_ring[b.begin] = true;
                in_ring[b.end] = true;
            }
        }
        RankGraph { mol, in_ring }
    }

    fn seed_ranks(&self) -> Vec<usize> {
        let keys: Vec<_> = (0..self.mol.atom_count())
            .map(|i| {
                let a = self.mol.atom(i);
                (
                    a.element.atomic_number(),
                    self.mol.degree(i),
                    a.charge,
                    a.total_h(),
                    self.in_ring[i],
                    a.aromatic,
                    a.isotope,
                )
            })
            .collect();
        ranks_from_keys(&keys)
    }

    /// Refines ranks by neighbour environments until the partition is stable.
    fn refine(&self, mut ranks: Vec<usize>) -> Vec<usize> {
        let n = ranks.len();
        let mut classes = count_classes(&ranks);
        let mut env: Vec<(usize, u8)> = Vec::new();
        loop {
            let keys: Vec<(usize, Vec<(usize, u8)>)> = (0..n)
                .map(|i| {
                    env.clear();
                    env.extend(
                        self.mol
                            .neighbors(i)
                            .iter()
                            .map(|&(nb, b)| (ranks[nb], self.mol.bond(b).order.code())),
                    );
                    env.sort_unstable();
                    (ranks[i], env.clone())
                })
                .collect();
            let next = ranks_from_keys(&keys);
            let next_classes = count_classes(&next);
            ranks = next;
            if next_classes == classes {
                return ranks;
            }
            classes = next_classes;
        }
    }

    /// Lowest rank shared by more than one atom.
    fn smallest_tied_cell(&self, ranks: &[usize]) -> Option<usize> {
        let mut counts = vec![0u32; ranks.len()];
        for &r in ranks {
            counts[r] += 1;
        }
        counts.iter().position(|&c| c > 1)
    }

    /// Members of a tied cell, skipping terminal atoms interchangeable with
    /// an earlier member (same parent, same bond): they give the same leaves.
    fn distinct_candidates(&self, ranks: &[usize], cell: usize) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        let mut seen_terminal: Vec<(usize, u8)> = Vec::new();
        for i in 0..ranks.len() {
            if ranks[i] != cell {
                continue;
            }
            if self.mol.degree(i) == 1 {
                let (parent, b) = self.mol.neighbors(i)[0];
                let key = (parent, self.mol.bond(b).order.code());
                if seen_terminal.contains(&key) {
                    continue;
                }
                seen_terminal.push(key);
            }
            out.push(i);
        }
        out
    }
}

fn individualize(ranks: &[usize], cell: usize, chosen: usize) -> Vec<usize> {
    let keys: Vec<(usize, bool)> = ranks
        .iter()
        .enumerate()
        .map(|(i, &r)| (r, r == cell && i != chosen))
        .collect();
    ranks_from_keys(&keys)
}

/// Rank of each key = number of keys strictly smaller, so ties share a rank.
fn ranks_from_keys<K: Ord>(keys: &[K]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..keys.len()).collect();
    order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
    let mut ranks = vec![0; keys.len()];
    for (pos, &i) in order.iter().enumerate() {
        ranks[i] = if pos > 0 && keys[order[pos - 1]] == keys[i] {
            ranks[order[pos - 1]]
        } else {
            pos
        };
    }
    ranks
}

fn count_classes(ranks: &[usize]) -> usize {
    let mut seen = vec![false; ranks.len()];
    let mut count = 0;
    for &r in ranks {
        if !seen[r] {
            seen[r] = true;
            count += 1;
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::molgraph::prepare;
    use crate::smiles::parse_smiles;

    fn canon(s: &str) -> String {
        let mut m = parse_smiles(s).unwrap();
        prepare(&mut m);
        canonicalize(&m).unwrap()
    }

    #[test]
    fn ethanol_forms_agree() {
        assert_eq!(canon("CCO"), canon("OCC"));
        assert_eq!(canon("C(O)C"), canon("CCO"));
    }

    #[test]
    fn kekule_and_aromatic_benzene_agree() {
        assert_eq!(canon("c1ccccc1"), canon("C1=CC=CC=C1"));
        assert_eq!(canon("c1ccccc1"), "c1ccccc1");
    }

    #[test]
    fn single_atom() {
        assert_eq!(canon("C"), "C");
        let mut m = parse_smiles("O").unwrap();
        prepare(&mut m);
        assert_eq!(canonical_ranks(&m), vec![0]);
    }

    #[test]
    fn ranks_are_a_permutation() {
        let mut m = parse_smiles("CC(C)(C)c1ccc(O)cc1").unwrap();
        prepare(&mut m);
        let mut r = canonical_ranks(&m);
        r.sort_unstable();
        assert_eq!(r, (0..m.atom_count()).collect::<Vec<_>>());
    }

    #[test]
    fn invalid_molecule_is_rejected() {
        let mut m = parse_smiles("CC(C)(C)(C)C").unwrap();
        prepare(&mut m);
        assert!(matches!(canonicalize(&m), Err(CanonError::Invalid(_))));
    }
}
