use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::element::Element;
use crate::mol::Molecule;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckId {
    InvalidValence,
    TooManyHydrogens,
    UnrealisticCharge,
    UnperceivableAromaticity,
    UnstableMotif,
}

impl CheckId {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::InvalidValence => "invalid_valence",
            CheckId::TooManyHydrogens => "too_many_hydrogens",
            CheckId::UnrealisticCharge => "unrealistic_charge",
            CheckId::UnperceivableAromaticity => "unperceivable_aromaticity",
            CheckId::UnstableMotif => "unstable_motif",
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Locus {
    Atom(usize),
    Bond(usize),
    Molecule,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SanitizeFailure {
    pub check: CheckId,
    pub locus: Locus,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SanitizeReport {
    pub valid: bool,
    pub failures: Vec<SanitizeFailure>,
}

impl SanitizeReport {
    pub fn has(&self, check: CheckId) -> bool {
        self.failures.iter().any(|f| f.check == check)
    }

    /// Distinct failed check ids, comma separated.
    pub fn summary(&self) -> String {
        let mut ids: Vec<CheckId> = self.failures.iter().map(|f| f.check).collect();
        ids.sort_unstable();
        ids.dedup();
        ids.iter().map(|c| c.as_str()).collect::<Vec<_>>().join(",")
    }
}

/// Runs every check and lists every failure. Expects hydrogens to have been
/// assigned (see [`super::prepare`]).
pub fn sanitize(mol: &Molecule) -> SanitizeReport {
    let mut failures = Vec::new();
    let mut fail = |check, locus, message| {
        failures.push(SanitizeFailure {
            check,
            locus,
            message,
        })
    };

    for (i, atom) in mol.atoms().iter().enumerate() {
        let Some(allowed) = atom.element.allowed_valences(atom.charge) else {
            continue;
        };
        let max = allowed.max().unwrap_or(0) as u32;
        let valence = mol.bond_order_sum(i) + atom.total_h() as u32;
        if valence > max {
            fail(
                CheckId::InvalidValence,
                Locus::Atom(i),
                format!("{} with charge {} has valence {valence}, max {max}", atom.element, atom.charge),
            );
        }
        if atom.explicit_h as u32 > max {
            fail(
                CheckId::TooManyHydrogens,
                Locus::Atom(i),
                format!("{} carries {} hydrogens, max {max}", atom.element, atom.explicit_h),
            );
        }
    }

    for (i, atom) in mol.atoms().iter().enumerate() {
        if atom.charge.unsigned_abs() > 2 {
            fail(
                CheckId::UnrealisticCharge,
                Locus::Atom(i),
                format!("formal charge {}", atom.charge),
            );
        }
    }
    let net = mol.net_charge();
    if net.abs() > 1 {
        fail(CheckId::UnrealisticCharge, Locus::Molecule, format!("net charge {net}"));
    }

    for &i in &mol.aromatic_issues {
        fail(
            CheckId::UnperceivableAromaticity,
            Locus::Atom(i),
            String::from("aromatic atom has no Kekulé structure or is not in a ring"),
        );
    }

    for (i, atom) in mol.atoms().iter().enumerate() {
        if atom.element != Element::O {
            continue;
        }
        let oxygens = mol
            .neighbors(i)
            .iter()
            .filter(|&&(nb, _)| mol.atom(nb).element == Element::O)
            .count();
        if oxygens >= 2 {
            fail(CheckId::UnstableMotif, Locus::Atom(i), String::from("O-O-O chain"));
        }
    }
    for (b, bond) in mol.bonds().iter().enumerate() {
        if mol.atom(bond.begin).element.is_halogen() && mol.atom(bond.end).element.is_halogen() {
            fail(CheckId::UnstableMotif, Locus::Bond(b), String::from("halogen-halogen bond"));
        }
    }

    SanitizeReport {
        valid: failures.is_empty(),
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::molgraph::prepare;
    use crate::smiles::parse_smiles;

    fn report(s: &str) -> SanitizeReport {
        let mut m = parse_smiles(s).unwrap();
        prepare(&mut m);
        sanitize(&m)
    }

    #[test]
    fn valid_molecules() {
        for s in ["CCO", "c1ccccc1", "C[N+](=O)[O-]", "CS(C)=O", "c1cc[nH]c1", "[NH4+]", "OO"] {
            let r = report(s);
            assert!(r.valid, "{s}: {r:?}");
        }
    }

    #[test]
    fn pentavalent_carbon() {
        let r = report("CC(C)(C)(C)C");
        assert!(!r.valid);
        assert_eq!(r.failures[0].check, CheckId::InvalidValence);
        assert_eq!(r.failures[0].locus, Locus::Atom(1));
    }

    #[test]
    fn charges() {
        let r = report("[C+4]");
        assert!(r.has(CheckId::UnrealisticCharge));
        assert!(report("[O-]CC[O-]").has(CheckId::UnrealisticCharge));
        assert!(!report("[O-]CC[NH3+]").has(CheckId::UnrealisticCharge));
    }

    #[test]
    fn hydrogens_and_motifs() {
        let r = report("[CH5]");
        assert!(r.has(CheckId::TooManyHydrogens));
        assert!(r.has(CheckId::InvalidValence));
        assert!(report("COOOC").has(CheckId::UnstableMotif));
        assert!(report("ClCl").has(CheckId::UnstableMotif));
        assert!(report("c1cccc1").has(CheckId::UnperceivableAromaticity));
    }

    #[test]
    fn every_failure_is_listed() {
        let r = report("[C+4]C(C)(C)(C)(C)Cl");
        assert!(r.has(CheckId::UnrealisticCharge));
        assert!(r.has(CheckId::InvalidValence));
        assert_eq!(r.valid, r.failures.is_empty());
        assert_eq!(r.summary(), "invalid_valence,unrealistic_charge");
    }
}
