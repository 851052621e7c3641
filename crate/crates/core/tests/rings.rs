mod common;

use common::{fixture_lines, prepared, random_molecule};
use odorscreen_core::molgraph::{perceive_rings, prepare};
use odorscreen_core::Molecule;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn connected_without(m: &Molecule, skip: usize, from: usize, to: usize) -> bool {
    let mut seen = vec![false; m.atom_count()];
    let mut stack = vec![from];
    seen[from] = true;
    while let Some(a) = stack.pop() {
        if a == to {
            return true;
        }
        for &(nbr, bond) in m.neighbors(a) {
            if bond != skip && !seen[nbr] {
                seen[nbr] = true;
                stack.push(nbr);
            }
        }
    }
    false
}

/// Rank over GF(2) of the rings' bond incidence vectors.
fn gf2_rank(m: &Molecule, rings: &[Vec<usize>]) -> usize {
    let mut rows: Vec<Vec<bool>> = rings
        .iter()
        .map(|r| {
            let mut v = vec![false; m.bond_count()];
            for k in 0..r.len() {
                let b = m.bond_between(r[k], r[(k + 1) % r.len()]).expect("ring atoms not bonded");
                v[b] = true;
            }
            v
        })
        .collect();
    let mut rank = 0;
    for col in 0..m.bond_count() {
        if let Some(p) = (rank..rows.len()).find(|&r| rows[r][col]) {
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[col] {
                    row.iter_mut().zip(&pivot).for_each(|(x, y)| *x ^= *y);
                }
            }
            rank += 1;
        }
    }
    rank
}

fn check(m: &Molecule) {
    let rs = perceive_rings(m);
    let expected = m.bond_count() + m.component_count() - m.atom_count();
    assert_eq!(rs.len(), expected);
    assert_eq!(gf2_rank(m, &rs.rings), expected, "rings are not independent");
    for (i, b) in m.bonds().iter().enumerate() {
        assert_eq!(rs.ring_bond_flags[i], connected_without(m, i, b.begin, b.end), "bond {i}");
    }
    for r in &rs.rings {
        let mut sorted = r.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), r.len(), "ring repeats an atom");
    }
}

#[test]
fn random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for round in 0..2000 {
        let mut m = random_molecule(&mut rng, 2 + round % 12);
        prepare(&mut m);
        check(&m);
    }
}

#[test]
fn corpus() {
    for s in fixture_lines("corpus_1000.smi") {
        check(&prepared(&s));
    }
}

#[test]
fn known_sizes() {
    for (s, sizes) in [
        ("C1CCCCC1", vec![6]),
        ("c1ccc2ccccc2c1", vec![6, 6]),
        ("C12CC1C2", vec![3, 3]),
        ("C1CC2CCC1C2", vec![5, 5]),
        ("C12C3C4C1C5C2C3C45", vec![4, 4, 4, 4, 4]),
    ] {
        let mut got: Vec<usize> = perceive_rings(&prepared(s)).rings.iter().map(Vec::len).collect();
        got.sort_unstable();
        assert_eq!(got, sizes, "{s}");
    }
}
