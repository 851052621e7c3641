use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};

use crate::element::Element;
use crate::mol::{Atom, BondOrder, GraphError, Molecule};

/// A parse failure with the byte offset it was detected at.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{kind} at position {position}")]
pub struct SmilesError {
    pub kind: SmilesErrorKind,
    pub position: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SmilesErrorKind {
    #[error("empty SMILES")]
    Empty,
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("unterminated bracket atom")]
    UnclosedBracket,
    #[error("ring closure {0} is never closed")]
    UnmatchedRingClosure(u16),
    #[error("unmatched parenthesis")]
    UnmatchedParenthesis,
    #[error("multi-component SMILES ('.') is not accepted")]
    MultiComponent,
    #[error("bond symbol without a following atom")]
    DanglingBond,
    #[error("branch or ring closure before any atom")]
    MissingAtom,
    #[error("conflicting bond orders on ring closure {0}")]
    RingBondConflict(u16),
    #[error("ring closure {0} bonds an atom to itself")]
    RingSelfLoop(u16),
    #[error("ring closure {0} duplicates an existing bond")]
    DuplicateBond(u16),
    #[error("formal charge out of range [-4, 4]")]
    ChargeOutOfRange,
    #[error("unsupported bond symbol {0:?}")]
    UnsupportedBond(char),
}

fn err<T>(kind: SmilesErrorKind, position: usize) -> Result<T, SmilesError> {
    Err(SmilesError { kind, position })
}

struct RingOpening {
    atom: usize,
    bond: Option<BondOrder>,
    position: usize,
}

/// Parses a single-component SMILES string into a molecular graph.
///
/// Aromatic atoms are flagged but hydrogens are not yet assigned; see
/// [`crate::molgraph::prepare`]. Parsing stops at the first whitespace, so a
/// trailing name field is ignored. Stereo marks are accepted and dropped.
pub fn parse_smiles(text: &str) -> Result<Molecule, SmilesError> {
    let start = text.len() - text.trim_start().len();
    let body = &text[start..];
    let end = body
        .find(|c: char| c.is_ascii_whitespace())
        .unwrap_or(body.len());
    let bytes = &body.as_bytes()[..end];
    if bytes.is_empty() {
        return err(SmilesErrorKind::Empty, start);
    }

    let mut mol = Molecule::new();
    let mut prev: Option<usize> = None;
    let mut pending: Option<(BondOrder, usize)> = None;
    let mut branches: alloc::vec::Vec<(usize, usize)> = alloc::vec::Vec::new();
    let mut rings: BTreeMap<u16, RingOpening> = BTreeMap::new();
    let mut stereo_dropped = false;
    let mut i = 0;

    while i < bytes.len() {
        let pos = start + i;
        let c = bytes[i];
        match c {
            b'-' | b'=' | b'#' | b':' | b'/' | b'\\' => {
                if pending.is_some() {
                    return err(SmilesErrorKind::UnexpectedChar(c as char), pos);
                }
                if prev.is_none() {
                    return err(SmilesErrorKind::MissingAtom, pos);
                }
                let order = match c {
                    b'=' => BondOrder::Double,
                    b'#' => BondOrder::Triple,
                    b':' => BondOrder::Aromatic,
                    b'/' | b'\\' => {
                        stereo_dropped = true;
                        BondOrder::Single
                    }
                    _ => BondOrder::Single,
                };
                pending = Some((order, pos));
                i += 1;
            }
            b'$' => return err(SmilesErrorKind::UnsupportedBond('$'), pos),
            b'.' => return err(SmilesErrorKind::MultiComponent, pos),
            b'(' => {
                let Some(p) = prev else {
                    return err(SmilesErrorKind::MissingAtom, pos);
                };
                if pending.is_some() {
                    return err(SmilesErrorKind::DanglingBond, pos);
                }
                branches.push((p, pos));
                i += 1;
            }
            b')' => {
                if let Some((_, bpos)) = pending {
                    return err(SmilesErrorKind::DanglingBond, bpos);
                }
                let Some((p, _)) = branches.pop() else {
                    return err(SmilesErrorKind::UnmatchedParenthesis, pos);
                };
                prev = Some(p);
                i += 1;
            }
            b'0'..=b'9' | b'%' => {
                let (label, next) = ring_label(bytes, i, start)?;
                let Some(atom) = prev else {
                    return err(SmilesErrorKind::MissingAtom, pos);
                };
                let bond = pending.take().map(|(o, _)| o);
                match rings.remove(&label) {
                    Some(open) => {
                        let order = match (open.bond, bond) {
                            (Some(a), Some(b)) if a != b => {
                                return err(SmilesErrorKind::RingBondConflict(label), pos)
                            }
                            (Some(a), _) | (None, Some(a)) => a,
                            (None, None) => default_bond(&mol, open.atom, atom),
                        };
                        match mol.add_bond(open.atom, atom, order) {
                            Ok(_) => {}
                            Err(GraphError::SelfLoop(_)) => {
                                return err(SmilesErrorKind::RingSelfLoop(label), pos)
                            }
                            Err(_) => return err(SmilesErrorKind::DuplicateBond(label), pos),
                        }
                    }
                    None => {
                        rings.insert(label, RingOpening { atom, bond, position: pos });
                    }
                }
                i = next;
            }
            b'[' => {
                let (atom, next, stereo) = bracket_atom(bytes, i, start)?;
                stereo_dropped |= stereo;
                let idx = mol.add_atom(atom);
                connect(&mut mol, prev, idx, pending.take());
                prev = Some(idx);
                i = next;
            }
            _ => {
                let (atom, next) = organic_atom(bytes, i, start)?;
                let idx = mol.add_atom(atom);
                connect(&mut mol, prev, idx, pending.take());
                prev = Some(idx);
                i = next;
            }
        }
    }

    if let Some((_, pos)) = pending {
        return err(SmilesErrorKind::DanglingBond, pos);
    }
    if let Some(&(_, pos)) = branches.last() {
        return err(SmilesErrorKind::UnmatchedParenthesis, pos);
    }
    if let Some((&label, open)) = rings.iter().min_by_key(|(_, o)| o.position) {
        return err(SmilesErrorKind::UnmatchedRingClosure(label), open.position);
    }
    if stereo_dropped {
        log::warn!("stereochemistry in {:?} discarded", core::str::from_utf8(bytes).unwrap_or(""));
    }
    Ok(mol)
}

fn default_bond(mol: &Molecule, a: usize, b: usize) -> BondOrder {
    if mol.atom(a).aromatic && mol.atom(b).aromatic {
        BondOrder::Aromatic
    } else {
        BondOrder::Single
    }
}

fn connect(mol: &mut Molecule, prev: Option<usize>, idx: usize, pending: Option<(BondOrder, usize)>) {
    if let Some(p) = prev {
        let order = pending.map(|(o, _)| o).unwrap_or_else(|| default_bond(mol, p, idx));
        // A freshly added atom cannot already be bonded to `p`.
        mol.add_bond(p, idx, order).expect("chain bond to a new atom");
    }
}

fn ring_label(bytes: &[u8], i: usize, offset: usize) -> Result<(u16, usize), SmilesError> {
    let c = bytes[i];
    if c.is_ascii_digit() {
        return Ok(((c - b'0') as u16, i + 1));
    }
    // '%nn' or '%(n...)'
    match bytes.get(i + 1) {
        Some(b'(') => {
            let mut j = i + 2;
            let mut value: u32 = 0;
            while j < bytes.len() && bytes[j].is_ascii_digit() && value <= u16::MAX as u32 {
                value = value * 10 + (bytes[j] - b'0') as u32;
                j += 1;
            }
            if j == i + 2 || bytes.get(j) != Some(&b')') || value > u16::MAX as u32 {
                return err(SmilesErrorKind::UnexpectedChar('%'), offset + i);
            }
            Ok((value as u16, j + 1))
        }
        Some(a) if a.is_ascii_digit() => match bytes.get(i + 2) {
            Some(b) if b.is_ascii_digit() => Ok((((a - b'0') * 10 + (b - b'0')) as u16, i + 3)),
            _ => err(SmilesErrorKind::UnexpectedChar('%'), offset + i),
        },
        _ => err(SmilesErrorKind::UnexpectedChar('%'), offset + i),
    }
}

fn organic_atom(bytes: &[u8], i: usize, offset: usize) -> Result<(Atom, usize), SmilesError> {
    let c = bytes[i];
    let two = |second: u8| bytes.get(i + 1) == Some(&second);
    let (element, aromatic, len) = match c {
        b'C' if two(b'l') => (Element::CL, false, 2),
        b'B' if two(b'r') => (Element::BR, false, 2),
        b'B' => (Element::B, false, 1),
        b'C' => (Element::C, false, 1),
        b'N' => (Element::N, false, 1),
        b'O' => (Element::O, false, 1),
        b'P' => (Element::P, false, 1),
        b'S' => (Element::S, false, 1),
        b'F' => (Element::F, false, 1),
        b'I' => (Element::I, false, 1),
        b'b' => (Element::B, true, 1),
        b'c' => (Element::C, true, 1),
        b'n' => (Element::N, true, 1),
        b'o' => (Element::O, true, 1),
        b'p' => (Element::P, true, 1),
        b's' => (Element::S, true, 1),
        b'*' => return err(SmilesErrorKind::UnknownElement("*".into()), offset + i),
        _ if c.is_ascii_alphabetic() => {
            let sym = core::str::from_utf8(&bytes[i..i + 1]).unwrap_or("?");
            return err(SmilesErrorKind::UnknownElement(sym.into()), offset + i);
        }
        _ => return err(SmilesErrorKind::UnexpectedChar(char_at(bytes, i)), offset + i),
    };
    let mut atom = Atom::new(element);
    atom.aromatic = aromatic;
    Ok((atom, i + len))
}

fn char_at(bytes: &[u8], i: usize) -> char {
    // Non-ASCII input: report the replacement character rather than decoding.
    if bytes[i].is_ascii() {
        bytes[i] as char
    } else {
        char::REPLACEMENT_CHARACTER
    }
}

/// Parses `[isotope? symbol chiral? hcount? charge? class?]`.
fn bracket_atom(bytes: &[u8], open: usize, offset: usize) -> Result<(Atom, usize, bool), SmilesError> {
    let close = match bytes[open..].iter().position(|&b| b == b']') {
        Some(p) => open + p,
        None => return err(SmilesErrorKind::UnclosedBracket, offset + open),
    };
    let mut i = open + 1;
    let at = |i: usize| if i < close { Some(bytes[i]) } else { None };

    let mut isotope: Option<u32> = None;
    while let Some(d) = at(i).filter(u8::is_ascii_digit) {
        let v = isotope.unwrap_or(0) * 10 + (d - b'0') as u32;
        if v > 999 {
            return err(SmilesErrorKind::UnexpectedChar(d as char), offset + i);
        }
        isotope = Some(v);
        i += 1;
    }

    let sym_start = i;
    let (element, aromatic) = match at(i) {
        Some(c) if c.is_ascii_lowercase() => {
            // Aromatic: two-letter forms first.
            let pair = at(i + 1).filter(u8::is_ascii_lowercase);
            let two = pair.and_then(|p| match (c, p) {
                (b's', b'e') => Some(Element::SE),
                (b'a', b's') => Element::from_symbol("As"),
                (b't', b'e') => Element::from_symbol("Te"),
                _ => None,
            });
            if let Some(e) = two {
                i += 2;
                (e, true)
            } else {
                let e = match c {
                    b'b' => Element::B,
                    b'c' => Element::C,
                    b'n' => Element::N,
                    b'o' => Element::O,
                    b'p' => Element::P,
                    b's' => Element::S,
                    _ => {
                        return err(
                            SmilesErrorKind::UnknownElement((c as char).to_string()),
                            offset + i,
                        )
                    }
                };
                i += 1;
                (e, true)
            }
        }
        Some(c) if c.is_ascii_uppercase() => {
            let mut buf = [c, 0];
            let mut found = None;
            if let Some(l) = at(i + 1).filter(u8::is_ascii_lowercase) {
                buf[1] = l;
                found = core::str::from_utf8(&buf).ok().and_then(Element::from_symbol);
                if found.is_some() {
                    i += 2;
                }
            }
            match found {
                Some(e) => (e, false),
                None => match core::str::from_utf8(&buf[..1]).ok().and_then(Element::from_symbol) {
                    Some(e) => {
                        i += 1;
                        (e, false)
                    }
                    None => {
                        let end = (i + 2).min(close);
                        let sym = lossy_ascii(&bytes[i..end]);
                        return err(SmilesErrorKind::UnknownElement(sym), offset + i);
                    }
                },
            }
        }
        Some(b'*') => return err(SmilesErrorKind::UnknownElement("*".into()), offset + i),
        Some(c) => return err(SmilesErrorKind::UnexpectedChar(c as char), offset + i),
        None => return err(SmilesErrorKind::UnknownElement(String::new()), offset + sym_start),
    };

    let mut stereo = false;
    if at(i) == Some(b'@') {
        stereo = true;
        while at(i).is_some_and(|c| c == b'@' || c.is_ascii_uppercase() && c != b'H' || c.is_ascii_digit()) {
            i += 1;
        }
    }

    let mut hcount = 0u8;
    if at(i) == Some(b'H') {
        i += 1;
        hcount = 1;
        if let Some(d) = at(i).filter(u8::is_ascii_digit) {
            hcount = d - b'0';
            i += 1;
        }
    }

    let mut charge: i32 = 0;
    if let Some(sign @ (b'+' | b'-')) = at(i) {
        let unit = if sign == b'+' { 1 } else { -1 };
        i += 1;
        if let Some(d) = at(i).filter(u8::is_ascii_digit) {
            let mut v = (d - b'0') as i32;
            i += 1;
            if let Some(d2) = at(i).filter(u8::is_ascii_digit) {
                v = v * 10 + (d2 - b'0') as i32;
                i += 1;
            }
            charge = unit * v;
        } else {
            charge = unit;
            while at(i) == Some(sign) {
                charge += unit;
                i += 1;
            }
        }
        if !(-4..=4).contains(&charge) {
            return err(SmilesErrorKind::ChargeOutOfRange, offset + i - 1);
        }
    }

    if at(i) == Some(b':') {
        i += 1;
        let digits = i;
        while at(i).is_some_and(|c| c.is_ascii_digit()) {
            i += 1;
        }
        if i == digits {
            return err(SmilesErrorKind::UnexpectedChar(':'), offset + i - 1);
        }
    }

    if i != close {
        return err(SmilesErrorKind::UnexpectedChar(char_at(bytes, i)), offset + i);
    }

    let mut atom = Atom::new(element);
    atom.aromatic = aromatic;
    atom.bracket = true;
    atom.explicit_h = hcount;
    atom.charge = charge as i8;
    atom.isotope = isotope.map(|v| v as u16);
    Ok((atom, close + 1, stereo))
}

fn lossy_ascii(bytes: &[u8]) -> String {
    bytes
        .iter()
        .map(|&b| if b.is_ascii() { b as char } else { char::REPLACEMENT_CHARACTER })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kind(s: &str) -> SmilesErrorKind {
        parse_smiles(s).unwrap_err().kind
    }

    #[test]
    fn ethanol() {
        let m = parse_smiles("CCO").unwrap();
        assert_eq!(m.atom_count(), 3);
        assert_eq!(m.bond_count(), 2);
        assert!(m.bonds().iter().all(|b| b.order == BondOrder::Single));
        assert_eq!(m.atom(2).element, Element::O);
    }

    #[test]
    fn benzene_is_one_aromatic_ring() {
        let m = parse_smiles("c1ccccc1").unwrap();
        assert_eq!(m.atom_count(), 6);
        assert_eq!(m.bond_count(), 6);
        assert!(m.atoms().iter().all(|a| a.aromatic && a.element == Element::C));
        assert!(m.bonds().iter().all(|b| b.order == BondOrder::Aromatic));
    }

    #[test]
    fn branches_and_bonds() {
        let m = parse_smiles("CC(=O)OC#N").unwrap();
        assert_eq!(m.atom_count(), 6);
        assert_eq!(m.bond(m.bond_between(1, 2).unwrap()).order, BondOrder::Double);
        assert_eq!(m.bond(m.bond_between(1, 3).unwrap()).order, BondOrder::Single);
        assert_eq!(m.bond(m.bond_between(4, 5).unwrap()).order, BondOrder::Triple);
    }

    #[test]
    fn bracket_atoms() {
        let m = parse_smiles("[NH4+]").unwrap();
        let a = m.atom(0);
        assert_eq!((a.element, a.explicit_h, a.charge, a.bracket), (Element::N, 4, 1, true));

        let m = parse_smiles("[13CH3][O-]").unwrap();
        assert_eq!(m.atom(0).isotope, Some(13));
        assert_eq!(m.atom(0).explicit_h, 3);
        assert_eq!(m.atom(1).charge, -1);

        let m = parse_smiles("[Fe+++]").unwrap();
        assert_eq!(m.atom(0).charge, 3);
        let m = parse_smiles("[C@@H](F)(Cl)Br").unwrap();
        assert_eq!(m.atom(0).explicit_h, 1);
        let m = parse_smiles("[se]1cccc1").unwrap();
        assert_eq!(m.atom(0).element, Element::SE);
        assert!(m.atom(0).aromatic);
        let m = parse_smiles("[CH3:7]C").unwrap();
        assert_eq!(m.atom(0).explicit_h, 3);
    }

    #[test]
    fn ring_closures() {
        let m = parse_smiles("C1CC%10CC1CC%10").unwrap();
        assert_eq!(m.bond_count(), m.atom_count() + 1);
        let m = parse_smiles("C=1CCCCC=1").unwrap();
        assert_eq!(m.bond(m.bond_between(0, 5).unwrap()).order, BondOrder::Double);
        let m = parse_smiles("C%(123)CC%(123)").unwrap();
        assert!(m.bond_between(0, 2).is_some());
    }

    #[test]
    fn stereo_is_dropped() {
        let m = parse_smiles("F/C=C/F").unwrap();
        assert_eq!(m.atom_count(), 4);
        assert_eq!(m.bond(0).order, BondOrder::Single);
    }

    #[test]
    fn errors() {
        assert_eq!(kind("C1CC"), SmilesErrorKind::UnmatchedRingClosure(1));
        assert_eq!(kind(""), SmilesErrorKind::Empty);
        assert_eq!(kind("CC(C"), SmilesErrorKind::UnmatchedParenthesis);
        assert_eq!(kind("CC)C"), SmilesErrorKind::UnmatchedParenthesis);
        assert_eq!(kind("CCO.O"), SmilesErrorKind::MultiComponent);
        assert_eq!(kind("[Xy]"), SmilesErrorKind::UnknownElement("Xy".into()));
        assert_eq!(kind("CX"), SmilesErrorKind::UnknownElement("X".into()));
        assert_eq!(kind("C="), SmilesErrorKind::DanglingBond);
        assert_eq!(kind("=C"), SmilesErrorKind::MissingAtom);
        assert_eq!(kind("C11"), SmilesErrorKind::RingSelfLoop(1));
        assert_eq!(kind("C12CC12"), SmilesErrorKind::DuplicateBond(2));
        assert_eq!(kind("C=1CC#1"), SmilesErrorKind::RingBondConflict(1));
        assert_eq!(kind("[C+5]"), SmilesErrorKind::ChargeOutOfRange);
        assert_eq!(kind("[CH4"), SmilesErrorKind::UnclosedBracket);
        assert_eq!(kind("C$C"), SmilesErrorKind::UnsupportedBond('$'));
    }

    #[test]
    fn error_positions() {
        assert_eq!(parse_smiles("C1CC").unwrap_err().position, 1);
        assert_eq!(parse_smiles("CCCX").unwrap_err().position, 3);
        assert_eq!(parse_smiles("  CC.C").unwrap_err().position, 4);
    }

    #[test]
    fn trailing_name_is_ignored() {
        let m = parse_smiles("CCO ethanol").unwrap();
        assert_eq!(m.atom_count(), 3);
    }
}
