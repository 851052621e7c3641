use alloc::string::{String, ToString};
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::counts::{aliphatic_heteroatoms, basic_counts, spiro_atoms, CountSet};
use super::crippen::crippen_logp;
use super::fingerprint::fcfp4_count;
use super::vsa::slogp_vsa3;
use super::{fraction_sp2, molecular_weight};
use crate::mol::Molecule;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SchemaError {
    #[error("unknown feature {0:?}")]
    UnknownFeature(String),
    #[error("feature {0:?} is not implemented")]
    Unimplemented(String),
    #[error("feature {0:?} appears twice")]
    Duplicate(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Feature {
    LogP,
    MolecularWeight,
    SlogPVsa3,
    FractionSp2,
    Fcfp4Count,
    AromaticRings,
    RingCount,
    AliphaticHeteroatoms,
    AverageMolecularWeight,
    RotatableBonds,
    FormalCharge,
    SpiroAtoms,
    HeavyAtoms,
    Heteroatoms,
    Donors,
    Acceptors,
    SulfurPlusOxygen,
}

impl Feature {
    pub const ALL: [Feature; 17] = [
        Feature::LogP,
        Feature::MolecularWeight,
        Feature::SlogPVsa3,
        Feature::FractionSp2,
        Feature::Fcfp4Count,
        Feature::AromaticRings,
        Feature::RingCount,
        Feature::AliphaticHeteroatoms,
        Feature::AverageMolecularWeight,
        Feature::RotatableBonds,
        Feature::FormalCharge,
        Feature::SpiroAtoms,
        Feature::HeavyAtoms,
        Feature::Heteroatoms,
        Feature::Donors,
        Feature::Acceptors,
        Feature::SulfurPlusOxygen,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Feature::LogP => "logP",
            Feature::MolecularWeight => "Molecular Weight",
            Feature::SlogPVsa3 => "SlogP_VSA3",
            Feature::FractionSp2 => "Fraction Sp2",
            Feature::Fcfp4Count => "FCFP4 Count",
            Feature::AromaticRings => "Number of Aromatic Rings",
            Feature::RingCount => "Ring Count",
            Feature::AliphaticHeteroatoms => "Aliphatic Heteroatom Count",
            Feature::AverageMolecularWeight => "Average Molecular Weight",
            Feature::RotatableBonds => "Rotatable Bonds",
            Feature::FormalCharge => "Formal Charge",
            Feature::SpiroAtoms => "Num Spiro Atoms",
            Feature::HeavyAtoms => "HAC",
            Feature::Heteroatoms => "Heteroatoms",
            Feature::Donors => "HBD",
            Feature::Acceptors => "HBA",
            Feature::SulfurPlusOxygen => "S+O",
        }
    }

    pub fn from_name(name: &str) -> Result<Feature, SchemaError> {
        if let Some(f) = Feature::ALL.iter().find(|f| f.name() == name) {
            return Ok(*f);
        }
        match name {
            "Fraction of Sp2 Hybridized Atoms" => Ok(Feature::FractionSp2),
            "Heavy Atom Count" => Ok(Feature::HeavyAtoms),
            _ if UNIMPLEMENTED.contains(&name) => Err(SchemaError::Unimplemented(name.to_string())),
            _ => Err(SchemaError::UnknownFeature(name.to_string())),
        }
    }
}

/// Descriptor names that are recognised but have no implementation here.
const UNIMPLEMENTED: &[&str] = &[
    "QED", "SMR_VSA2", "SMR_VSA3", "PEOE_VSA2", "PEOE_VSA3", "Kappa1", "Kappa3", "Ipc", "TPSA", "LabuteASA",
];

pub const EQ4_FEATURES: [&str; 5] = ["logP", "Molecular Weight", "SlogP_VSA3", "Fraction Sp2", "FCFP4 Count"];

/// An ordered, validated list of features.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureSchema {
    pub id: String,
    features: Vec<Feature>,
}

impl FeatureSchema {
    pub fn new<S: AsRef<str>>(id: &str, names: &[S]) -> Result<Self, SchemaError> {
        let mut features = Vec::with_capacity(names.len());
        for n in names {
            let f = Feature::from_name(n.as_ref())?;
            if features.contains(&f) {
                return Err(SchemaError::Duplicate(n.as_ref().to_string()));
            }
            features.push(f);
        }
        Ok(FeatureSchema {
            id: id.to_string(),
            features,
        })
    }

    /// The five features of the published odor-likeliness equation.
    pub fn eq4() -> Self {
        Self::new("eq4", &EQ4_FEATURES).expect("built-in schema is valid")
    }

    /// Every implemented feature; the pool the training workflow prunes.
    pub fn training() -> Self {
        let names: Vec<&str> = Feature::ALL.iter().map(|f| f.name()).collect();
        Self::new("training", &names).expect("built-in schema is valid")
    }

    pub fn features(&self) -> &[Feature] {
        &self.features
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.features.iter().map(|f| f.name()).collect()
    }

    pub fn len(&self) -> usize {
        self.features.len()
    }

    pub fn is_empty(&self) -> bool {
        self.features.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    pub schema_id: String,
    pub names: Vec<String>,
    pub values: Vec<f64>,
}

impl FeatureVector {
    pub fn get(&self, name: &str) -> Option<f64> {
        self.names.iter().position(|n| n == name).map(|i| self.values[i])
    }
}

/// Computes every feature of `schema` for a prepared molecule.
pub fn descriptor_vector(mol: &Molecule, schema: &FeatureSchema) -> FeatureVector {
    let mut counts: Option<CountSet> = None;
    let mut mw: Option<f64> = None;
    let mut values = Vec::with_capacity(schema.len());
    for &f in schema.features() {
        let mut c = || counts.get_or_insert_with(|| basic_counts(mol)).clone();
        let v = match f {
            Feature::LogP => crippen_logp(mol),
            Feature::MolecularWeight | Feature::AverageMolecularWeight => *mw.get_or_insert_with(|| molecular_weight(mol)),
            Feature::SlogPVsa3 => slogp_vsa3(mol),
            Feature::FractionSp2 => fraction_sp2(mol),
            Feature::Fcfp4Count => fcfp4_count(mol) as f64,
            Feature::AromaticRings => c().aromatic_rings as f64,
            Feature::RingCount => c().ring_count as f64,
            Feature::AliphaticHeteroatoms => aliphatic_heteroatoms(mol) as f64,
            Feature::RotatableBonds => c().rotatable_bonds as f64,
            Feature::FormalCharge => c().formal_charge as f64,
            Feature::SpiroAtoms => spiro_atoms(mol) as f64,
            Feature::HeavyAtoms => c().hac as f64,
            Feature::Heteroatoms => c().heteroatoms as f64,
            Feature::Donors => c().hbd as f64,
            Feature::Acceptors => c().hba as f64,
            Feature::SulfurPlusOxygen => c().s_plus_o as f64,
        };
        values.push(v);
    }
    FeatureVector {
        schema_id: schema.id.clone(),
        names: schema.names().into_iter().map(String::from).collect(),
        values,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::molgraph::prepare;
    use crate::smiles::parse_smiles;

    #[test]
    fn eq4_on_ethanol() {
        let mut m = parse_smiles("CCO").unwrap();
        prepare(&mut m);
        let v = descriptor_vector(&m, &FeatureSchema::eq4());
        assert_eq!(v.names, EQ4_FEATURES);
        assert!(v.values.iter().all(|x| x.is_finite()));
        assert!((v.get("Molecular Weight").unwrap() - 46.069).abs() < 0.01);
    }

    #[test]
    fn empty_schema() {
        let s = FeatureSchema::new::<&str>("none", &[]).unwrap();
        let mut m = parse_smiles("C").unwrap();
        prepare(&mut m);
        assert!(descriptor_vector(&m, &s).values.is_empty());
    }

    #[test]
    fn bad_names() {
        assert_eq!(
            FeatureSchema::new("x", &["QED"]),
            Err(SchemaError::Unimplemented("QED".into()))
        );
        assert_eq!(
            FeatureSchema::new("x", &["Nonsense"]),
            Err(SchemaError::UnknownFeature("Nonsense".into()))
        );
        assert!(matches!(FeatureSchema::new("x", &["logP", "logP"]), Err(SchemaError::Duplicate(_))));
        assert_eq!(
            FeatureSchema::new("x", &["Fraction of Sp2 Hybridized Atoms"]).unwrap().names(),
            ["Fraction Sp2"]
        );
    }
}
