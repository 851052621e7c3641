#![allow(dead_code)]

use std::path::PathBuf;

use odorscreen_core::molgraph::prepare;
use odorscreen_core::smiles::parse_smiles;
use odorscreen_core::{Atom, BondOrder, Element, Molecule};
use rand::Rng;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn fixture_lines(name: &str) -> Vec<String> {
    std::fs::read_to_string(fixture(name))
        .unwrap()
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(str::to_owned)
        .collect()
}

pub fn prepared(s: &str) -> Molecule {
    let mut m = parse_smiles(s).unwrap_or_else(|e| panic!("{s}: {e}"));
    prepare(&mut m);
    m
}

/// A random connected graph on `n` atoms from a small alphabet so that
/// independently drawn graphs collide often. Mostly single bonds, a few
/// double bonds and ring closures.
pub fn random_molecule<R: Rng>(rng: &mut R, n: usize) -> Molecule {
    let alphabet = [Element::C, Element::C, Element::C, Element::N, Element::O];
    let mut m = Molecule::new();
    for _ in 0..n {
        m.add_atom(Atom::new(alphabet[rng.random_range(0..alphabet.len())]));
    }
    let cap = |m: &Molecule, i: usize| match m.atom(i).element {
        Element::C => 4,
        Element::N => 3,
        _ => 2,
    };
    for i in 1..n {
        let open: Vec<usize> = (0..i).filter(|&a| (m.bond_order_sum(a) as i32) < cap(&m, a)).collect();
        let j = open[rng.random_range(0..open.len())];
        // The parent keeps spare valence, so `open` is never empty.
        let order = if rng.random_range(0..5) == 0 { BondOrder::Double } else { BondOrder::Single };
        let room = |m: &Molecule, a: usize| cap(m, a) - m.bond_order_sum(a) as i32;
        let order = if order == BondOrder::Double && room(&m, i) >= 2 && room(&m, j) >= 3 {
            BondOrder::Double
        } else {
            BondOrder::Single
        };
        m.add_bond(i, j, order).unwrap();
    }
    for _ in 0..rng.random_range(0..=2) {
        let a = rng.random_range(0..n);
        let b = rng.random_range(0..n);
        if a != b
            && m.bond_between(a, b).is_none()
            && (m.bond_order_sum(a) as i32) < cap(&m, a)
            && (m.bond_order_sum(b) as i32) < cap(&m, b)
        {
            m.add_bond(a, b, BondOrder::Single).unwrap();
        }
    }
    m
}

/// Uniform random permutation of `0..n`.
pub fn shuffled<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        v.swap(i, j);
    }
    v
}
