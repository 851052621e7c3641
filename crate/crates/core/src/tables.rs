//! Embedded constant tables.
//!
//! The tables ship as tab-separated text under `data/`. Lines starting with
//! `#` are comments; the first data line must be `format_version<TAB>1`.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;

use once_cell::race::OnceBox;

pub(crate) const ELEMENTS_TSV: &str = include_str!("../data/elements.tsv");
pub(crate) const CRIPPEN_TSV: &str = include_str!("../data/crippen.tsv");
pub(crate) const VSA_TSV: &str = include_str!("../data/vsa.tsv");

const SUPPORTED_VERSION: &str = "1";

#[derive(Debug, Clone)]
pub(crate) struct ElementRow {
    pub symbol: String,
    pub mass: f64,
    pub vdw_radius: f64,
}

#[derive(Debug, Clone)]
pub(crate) struct CrippenRow {
    pub label: String,
    pub logp: f64,
    pub mr: f64,
}

#[derive(Debug, Clone)]
pub(crate) struct VsaModel {
    pub bin_upper_bounds: Vec<f64>,
    pub cap_bond_length: f64,
    pub cap_probe_radius: f64,
}

/// Iterates over the data rows of a table, checking the version header.
fn data_rows(text: &'static str) -> impl Iterator<Item = Vec<&'static str>> {
    let mut lines = text
        .lines()
        .map(str::trim_end)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header: Vec<&str> = lines.next().map(|l| l.split('\t').collect()).unwrap_or_default();
    assert!(
        header.len() == 2 && header[0] == "format_version" && header[1] == SUPPORTED_VERSION,
        "embedded table has an unsupported format header: {header:?}"
    );
    lines.map(|l| l.split('\t').collect())
}

fn num(field: &str) -> f64 {
    field
        .parse()
        .unwrap_or_else(|_| panic!("embedded table has a non-numeric field {field:?}"))
}

pub(crate) fn elements() -> &'static [ElementRow] {
    static CELL: OnceBox<Vec<ElementRow>> = OnceBox::new();
    CELL.get_or_init(|| {
        let mut rows = Vec::with_capacity(118);
        for (i, f) in data_rows(ELEMENTS_TSV).enumerate() {
            assert_eq!(f.len(), 4, "elements.tsv: expected 4 columns");
            assert_eq!(num(f[0]) as usize, i + 1, "elements.tsv must be ordered by atomic number");
            rows.push(ElementRow {
                symbol: f[1].into(),
                mass: num(f[2]),
                vdw_radius: num(f[3]),
            });
        }
        Box::new(rows)
    })
}

pub(crate) fn crippen() -> &'static [CrippenRow] {
    static CELL: OnceBox<Vec<CrippenRow>> = OnceBox::new();
    CELL.get_or_init(|| {
        let rows = data_rows(CRIPPEN_TSV)
            .map(|f| {
                assert_eq!(f.len(), 3, "crippen.tsv: expected 3 columns");
                CrippenRow {
                    label: f[0].into(),
                    logp: num(f[1]),
                    mr: num(f[2]),
                }
            })
            .collect();
        Box::new(rows)
    })
}

pub(crate) fn vsa() -> &'static VsaModel {
    static CELL: OnceBox<VsaModel> = OnceBox::new();
    CELL.get_or_init(|| {
        let mut model = VsaModel {
            bin_upper_bounds: Vec::new(),
            cap_bond_length: f64::NAN,
            cap_probe_radius: f64::NAN,
        };
        for f in data_rows(VSA_TSV) {
            match f[0] {
                "bin_upper_bounds" => model.bin_upper_bounds = f[1..].iter().map(|s| num(s)).collect(),
                "cap_bond_length" => model.cap_bond_length = num(f[1]),
                "cap_probe_radius" => model.cap_probe_radius = num(f[1]),
                other => panic!("vsa.tsv: unknown key {other:?}"),
            }
        }
        assert_eq!(model.bin_upper_bounds.len(), 11, "vsa.tsv: 12 bins need 11 bounds");
        assert!(model.bin_upper_bounds.windows(2).all(|w| w[0] < w[1]));
        Box::new(model)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_load() {
        assert_eq!(elements().len(), 118);
        assert_eq!(elements()[5].symbol, "C");
        assert!(crippen().iter().any(|r| r.label == "UNK"));
        assert_eq!(vsa().bin_upper_bounds[2], 0.0);
    }
}
