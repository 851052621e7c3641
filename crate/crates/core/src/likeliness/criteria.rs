//! Literature odor-likeliness rules.

use serde::{Deserialize, Serialize};

use crate::descriptors::{basic_counts, molecular_weight, CountSet};
use crate::element::Element;
use crate::mol::Molecule;

/// 30 ≤ MW ≤ 300 Da and fewer than three heteroatoms.
pub fn rule_of_three(counts: &CountSet, mw: f64) -> bool {
    (30.0..=300.0).contains(&mw) && counts.heteroatoms < 3
}

/// HAC ≤ 21, only C, H, O and S, S + O ≤ 3 and at most one H-bond donor.
pub fn fl_property(counts: &CountSet) -> bool {
    counts.hac <= 21
        && counts
            .element_set
            .iter()
            .all(|e| matches!(*e, Element::C | Element::H | Element::O | Element::S))
        && counts.s_plus_o <= 3
        && counts.hbd <= 1
}

/// HAC ≤ 17 with only C, H, O, N, S and halogens.
pub fn gdb17_criterion(counts: &CountSet) -> bool {
    counts.hac <= 17
        && counts.element_set.iter().all(|e| {
            matches!(*e, Element::C | Element::H | Element::O | Element::N | Element::S) || e.is_halogen()
        })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriteriaResult {
    pub rule_of_three: bool,
    pub fl_property: bool,
    pub gdb17: bool,
}

pub fn evaluate_criteria(mol: &Molecule) -> CriteriaResult {
    let counts = basic_counts(mol);
    let mw = molecular_weight(mol);
    CriteriaResult {
        rule_of_three: rule_of_three(&counts, mw),
        fl_property: fl_property(&counts),
        gdb17: gdb17_criterion(&counts),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::molgraph::prepare;
    use crate::smiles::parse_smiles;

    fn criteria(s: &str) -> CriteriaResult {
        let mut m = parse_smiles(s).unwrap();
        prepare(&mut m);
        evaluate_criteria(&m)
    }

    #[test]
    fn ethanol_passes_all() {
        let c = criteria("CCO");
        assert!(c.rule_of_three && c.fl_property && c.gdb17);
    }

    #[test]
    fn failures() {
        assert!(!criteria("C").rule_of_three);
        // Sucrose: 11 heteroatoms.
        assert!(!criteria("OCC1OC(OC2(CO)OC(CO)C(O)C2O)C(O)C(O)C1O").rule_of_three);
        assert!(!criteria("c1ccncc1").fl_property);
        assert!(!criteria(&"C".repeat(22)).fl_property);
        assert!(criteria(&"C".repeat(21)).fl_property);
        assert!(!criteria("C[Si](C)(C)C").gdb17);
        assert!(!criteria(&"C".repeat(18)).gdb17);
        assert!(criteria("ClCCBr").gdb17);
    }
}
