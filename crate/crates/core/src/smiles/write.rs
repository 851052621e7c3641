use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::element::Element;
use crate::mol::{BondOrder, Molecule};
use crate::molgraph::hydrogens::organic_implicit_h;

/// Writes a SMILES string using the input atom order (DFS from atom 0).
///
/// The output re-parses to a graph isomorphic to `mol`. Disconnected inputs
/// are written with `.` separators, which [`super::parse_smiles`] rejects.
pub fn write_smiles(mol: &Molecule) -> String {
    let ranks: Vec<usize> = (0..mol.atom_count()).collect();
    write_ranked(mol, &ranks)
}

/// Depth-first traversal order and ring closures for a ranked graph.
struct Traversal {
    /// Atoms in visit order.
    order: Vec<usize>,
    parent_bond: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    /// Ring bonds this atom opens, in discovery order: (partner, bond).
    opens: Vec<Vec<(usize, usize)>>,
    /// Ring bonds this atom closes, in neighbour-rank order.
    closes: Vec<Vec<(usize, usize)>>,
    roots: Vec<usize>,
}

fn traverse(mol: &Molecule, ranks: &[usize]) -> Traversal {
    let n = mol.atom_count();
    let mut sorted_nbrs: Vec<Vec<(usize, usize)>> = (0..n)
        .map(|a| {
            let mut v = mol.neighbors(a).to_vec();
            v.sort_unstable_by_key(|&(nb, _)| ranks[nb]);
            v
        })
        .collect();
    let mut t = Traversal {
        order: Vec::with_capacity(n),
        parent_bond: vec![None; n],
        children: vec![Vec::new(); n],
        opens: vec![Vec::new(); n],
        closes: vec![Vec::new(); n],
        roots: Vec::new(),
    };
    let mut visited = vec![false; n];
    let mut bond_used = vec![false; mol.bond_count()];
    let mut starts: Vec<usize> = (0..n).collect();
    starts.sort_unstable_by_key(|&a| ranks[a]);

    for root in starts {
        if visited[root] {
            continue;
        }
        t.roots.push(root);
        visited[root] = true;
        t.order.push(root);
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        while let Some(top) = stack.last_mut() {
            let (atom, next) = *top;
            if next == sorted_nbrs[atom].len() {
                stack.pop();
                continue;
            }
            top.1 += 1;
            let (nb, bond) = sorted_nbrs[atom][next];
            if bond_used[bond] {
                continue;
            }
            bond_used[bond] = true;
            if visited[nb] {
                t.opens[nb].push((atom, bond));
                t.closes[atom].push((nb, bond));
            } else {
                visited[nb] = true;
                t.order.push(nb);
                t.parent_bond[nb] = Some(bond);
                t.children[atom].push(nb);
                stack.push((nb, 0));
            }
        }
    }
    // Free the neighbour lists early; only the traversal is needed from here.
    sorted_nbrs.clear();
    t
}

/// Writes the molecule with DFS from the lowest-ranked atom, visiting
/// neighbours in ascending rank. `ranks` must be distinct per atom for the
/// output to be independent of the input numbering.
pub(crate) fn write_ranked(mol: &Molecule, ranks: &[usize]) -> String {
    let t = traverse(mol, ranks);
    let n = mol.atom_count();
    let mut out = String::with_capacity(n * 2);
    let mut free_digits: BTreeSet<u32> = BTreeSet::new();
    let mut next_digit = 1u32;
    let mut bond_digit: Vec<u32> = vec![0; mol.bond_count()];

    for (ci, &root) in t.roots.iter().enumerate() {
        if ci > 0 {
            out.push('.');
        }
        // (atom, index of next child to emit)
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        emit_atom(mol, &t, root, &mut out, &mut free_digits, &mut next_digit, &mut bond_digit);
        while let Some(top) = stack.last_mut() {
            let (atom, ci) = *top;
            let kids = &t.children[atom];
            if ci == kids.len() {
                stack.pop();
                if let Some(&(parent, pci)) = stack.last() {
                    // Branches other than the last child are parenthesised.
                    if pci < t.children[parent].len() {
                        out.push(')');
                    }
                }
                continue;
            }
            top.1 += 1;
            let child = kids[ci];
            if ci + 1 < kids.len() {
                out.push('(');
            }
            let bond = t.parent_bond[child].expect("child has a parent bond");
            out.push_str(bond_symbol(mol, bond));
            emit_atom(mol, &t, child, &mut out, &mut free_digits, &mut next_digit, &mut bond_digit);
            stack.push((child, 0));
        }
    }
    out
}

fn emit_atom(
    mol: &Molecule,
    t: &Traversal,
    atom: usize,
    out: &mut String,
    free: &mut BTreeSet<u32>,
    next_digit: &mut u32,
    bond_digit: &mut [u32],
) {
    write_atom(mol, atom, out);
    let mut released = Vec::new();
    for &(_, bond) in &t.closes[atom] {
        write_digit(out, bond_digit[bond]);
        released.push(bond_digit[bond]);
    }
    for &(_, bond) in &t.opens[atom] {
        let d = match free.pop_first() {
            Some(d) => d,
            None => {
                *next_digit += 1;
                *next_digit - 1
            }
        };
        bond_digit[bond] = d;
        out.push_str(bond_symbol(mol, bond));
        write_digit(out, d);
    }
    free.extend(released);
}

fn write_digit(out: &mut String, d: u32) {
    match d {
        0..=9 => out.push(char::from(b'0' + d as u8)),
        10..=99 => {
            let _ = write!(out, "%{d}");
        }
        _ => {
            let _ = write!(out, "%({d})");
        }
    }
}

fn bond_symbol(mol: &Molecule, bond: usize) -> &'static str {
    let b = mol.bond(bond);
    let both_aromatic = mol.atom(b.begin).aromatic && mol.atom(b.end).aromatic;
    match b.order {
        BondOrder::Single if both_aromatic => "-",
        BondOrder::Single => "",
        BondOrder::Double => "=",
        BondOrder::Triple => "#",
        BondOrder::Aromatic if both_aromatic => "",
        BondOrder::Aromatic => ":",
    }
}

fn write_atom(mol: &Molecule, i: usize, out: &mut String) {
    let a = mol.atom(i);
    let aromatic_ok = matches!(
        a.element,
        Element::B | Element::C | Element::N | Element::O | Element::P | Element::S
    );
    let shorthand = a.element.is_organic_subset()
        && a.charge == 0
        && a.isotope.is_none()
        && (!a.aromatic || aromatic_ok)
        && organic_implicit_h(mol, i).0 == a.total_h();
    if shorthand {
        push_symbol(out, a.element, a.aromatic);
        return;
    }
    out.push('[');
    if let Some(iso) = a.isotope {
        let _ = write!(out, "{iso}");
    }
    push_symbol(out, a.element, a.aromatic);
    match a.total_h() {
        0 => {}
        1 => out.push('H'),
        h => {
            let _ = write!(out, "H{h}");
        }
    }
    match a.charge {
        0 => {}
        1 => out.push('+'),
        -1 => out.push('-'),
        c if c > 0 => {
            let _ = write!(out, "+{c}");
        }
        c => {
            let _ = write!(out, "-{}", -c);
        }
    }
    out.push(']');
}

fn push_symbol(out: &mut String, element: Element, aromatic: bool) {
    if aromatic {
        out.extend(element.symbol().chars().map(|c| c.to_ascii_lowercase()));
    } else {
        out.push_str(element.symbol());
    }
}
