//! Morgan-style circular fingerprints.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::element::Element;
use crate::mol::{BondOrder, Molecule};

pub const DEFAULT_WIDTH: usize = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InvariantKind {
    Ecfp,
    Fcfp,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fingerprint {
    words: Vec<u64>,
    width: usize,
    pub radius: u32,
    pub kind: InvariantKind,
}

impl Fingerprint {
    pub fn empty(width: usize, radius: u32, kind: InvariantKind) -> Self {
        assert!(width > 0, "fingerprint width must be positive");
        Fingerprint {
            words: vec![0; width.div_ceil(64)],
            width,
            radius,
            kind,
        }
    }

    /// A fingerprint with exactly the given bits set (taken modulo width).
    pub fn from_bits(width: usize, bits: impl IntoIterator<Item = usize>) -> Self {
        let mut fp = Fingerprint::empty(width, 0, InvariantKind::Ecfp);
        for b in bits {
            fp.set(b % width);
        }
        fp
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn set(&mut self, bit: usize) {
        self.words[bit / 64] |= 1 << (bit % 64);
    }

    pub fn get(&self, bit: usize) -> bool {
        self.words[bit / 64] >> (bit % 64) & 1 == 1
    }

    pub fn popcount(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.width).filter(|&b| self.get(b))
    }
}

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

struct Fnv(u64);

impl Fnv {
    fn new() -> Self {
        Fnv(FNV_OFFSET)
    }

    fn bytes(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 ^= b as u64;
            self.0 = self.0.wrapping_mul(FNV_PRIME);
        }
    }

    fn u64(&mut self, v: u64) {
        self.bytes(&v.to_le_bytes());
    }
}

/// 64-bit FNV-1a of a sequence of integers, each fed as 8 little-endian bytes.
pub fn fnv1a(values: &[u64]) -> u64 {
    let mut h = Fnv::new();
    for &v in values {
        h.u64(v);
    }
    h.0
}

fn bond_code(order: BondOrder) -> u64 {
    order.code() as u64
}

/// Functional-class flags used as FCFP seeds.
pub mod feature_flags {
    pub const DONOR: u8 = 1;
    pub const ACCEPTOR: u8 = 2;
    pub const AROMATIC: u8 = 4;
    pub const HALOGEN: u8 = 8;
    pub const BASIC: u8 = 16;
    pub const ACIDIC: u8 = 32;
}

/// Functional-class flags of atom `i`.
pub fn functional_flags(mol: &Molecule, i: usize) -> u8 {
    use feature_flags::*;
    let atom = mol.atom(i);
    let e = atom.element;
    let h = mol.hydrogen_count(i);
    let mut f = 0;
    if matches!(e, Element::N | Element::O) && h > 0 {
        f |= DONOR;
    }
    if matches!(e, Element::N | Element::O) && atom.charge <= 0 {
        f |= ACCEPTOR;
    }
    if atom.aromatic {
        f |= AROMATIC;
    }
    if e.is_halogen() {
        f |= HALOGEN;
    }
    let heavy_nbs = || {
        mol.neighbors(i)
            .iter()
            .filter(|&&(nb, _)| !mol.atom(nb).is_hydrogen())
            .map(|&(nb, b)| (nb, mol.bond(b).order))
    };
    // Amines: aliphatic N, all single bonds, not next to a carbonyl-like or
    // aromatic atom.
    if e == Element::N && !atom.aromatic && atom.charge >= 0 {
        let plain = heavy_nbs().all(|(nb, order)| {
            order == BondOrder::Single && !mol.atom(nb).aromatic && !has_double_to_hetero(mol, nb)
        });
        if plain {
            f |= BASIC;
        }
    }
    // Acids: O-H or O- on a C, S or P that carries a double-bonded O.
    if e == Element::O && (h > 0 || atom.charge < 0) {
        let acid = heavy_nbs().any(|(nb, order)| {
            order == BondOrder::Single
                && matches!(mol.atom(nb).element, Element::C | Element::S | Element::P)
                && has_double_to_hetero(mol, nb)
        });
        if acid {
            f |= ACIDIC;
        }
    }
    f
}

fn has_double_to_hetero(mol: &Molecule, i: usize) -> bool {
    mol.neighbors(i).iter().any(|&(nb, b)| {
        mol.bond(b).order == BondOrder::Double && matches!(mol.atom(nb).element, Element::O | Element::S | Element::N)
    })
}

fn seed(mol: &Molecule, i: usize, kind: InvariantKind, in_ring: &[bool]) -> u64 {
    match kind {
        InvariantKind::Ecfp => {
            let a = mol.atom(i);
            fnv1a(&[
                a.element.atomic_number() as u64,
                mol.heavy_degree(i) as u64,
                a.charge as i64 as u64,
                mol.hydrogen_count(i) as u64,
                in_ring[i] as u64,
            ])
        }
        InvariantKind::Fcfp => fnv1a(&[0xfc, functional_flags(mol, i) as u64]),
    }
}

/// Circular fingerprint: every heavy atom's environment at radius 0..=`radius`
/// is hashed and folded into `width` bits.
///
/// An environment that covers the same bonds as one already seen adds
/// nothing, and an atom whose environment stops growing drops out, so a
/// lone atom yields a single feature at any radius.
pub fn morgan_fingerprint(mol: &Molecule, radius: u32, width: usize, kind: InvariantKind) -> Fingerprint {
    let mut fp = Fingerprint::empty(width, radius, kind);
    let n = mol.atom_count();
    let heavy: Vec<usize> = (0..n).filter(|&i| !mol.atom(i).is_hydrogen() || mol.heavy_degree(i) == 0).collect();
    let mut in_ring = vec![false; n];
    for b in mol.bonds() {
        if b.in_ring {
            in_ring[b.begin] = true;
            in_ring[b.end] = true;
        }
    }
    let words = mol.bond_count().div_ceil(64).max(1);
    let mut ids = vec![0u64; n];
    let mut cover: Vec<Vec<u64>> = vec![vec![0; words]; n];
    let mut active = vec![false; n];
    for &i in &heavy {
        ids[i] = seed(mol, i, kind, &in_ring);
        active[i] = true;
        fp.set((ids[i] % width as u64) as usize);
    }
    let mut seen_covers: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut env: Vec<(u64, u64)> = Vec::new();
    let mut buf: Vec<u64> = Vec::new();
    for iteration in 1..=radius {
        let mut next = ids.clone();
        let mut next_cover = cover.clone();
        let mut round: Vec<(Vec<u64>, u64)> = Vec::new();
        for &i in &heavy {
            if !active[i] {
                continue;
            }
            env.clear();
            for &(nb, b) in mol.neighbors(i) {
                if mol.atom(nb).is_hydrogen() {
                    continue;
                }
                env.push((bond_code(mol.bond(b).order), ids[nb]));
                next_cover[i][b / 64] |= 1 << (b % 64);
                for (w, x) in next_cover[i].iter_mut().zip(&cover[nb]) {
                    *w |= x;
                }
            }
            env.sort_unstable();
            buf.clear();
            buf.push(iteration as u64);
            buf.push(ids[i]);
            for &(b, id) in &env {
                buf.push(b);
                buf.push(id);
            }
            next[i] = fnv1a(&buf);
            if next_cover[i] == cover[i] {
                active[i] = false;
                continue;
            }
            round.push((next_cover[i].clone(), next[i]));
        }
        // Among environments covering the same bonds, the smallest hash wins.
        let mut best: BTreeMap<Vec<u64>, u64> = BTreeMap::new();
        for (bonds, id) in round {
            let slot = best.entry(bonds).or_insert(id);
            *slot = (*slot).min(id);
        }
        for (bonds, id) in best {
            if seen_covers.insert(bonds) {
                fp.set((id % width as u64) as usize);
            }
        }
        ids = next;
        cover = next_cover;
    }
    fp
}

/// Popcount of the radius-2 FCFP at the default width.
pub fn fcfp4_count(mol: &Molecule) -> u32 {
    morgan_fingerprint(mol, 2, DEFAULT_WIDTH, InvariantKind::Fcfp).popcount()
}

/// Radius-2 ECFP at the default width, as used for similarity metrics.
pub fn ecfp4(mol: &Molecule) -> Fingerprint {
    morgan_fingerprint(mol, 2, DEFAULT_WIDTH, InvariantKind::Ecfp)
}
