use alloc::vec::Vec;
use core::f64::consts::PI;

use super::crippen::crippen_contribs;
use crate::mol::Molecule;
use crate::tables;

pub const SLOGP_VSA_BINS: usize = 12;

/// Approximate van der Waals surface area of every atom, in Å².
///
/// Each atom is a sphere of its Bondi radius with one spherical cap removed
/// per bonded heavy neighbour. Hydrogens count toward their heavy atom, so
/// hydrogen nodes with a heavy neighbour get 0.
pub fn atom_surface_areas(mol: &Molecule) -> Vec<f64> {
    let model = tables::vsa();
    let (d, p) = (model.cap_bond_length, model.cap_probe_radius);
    (0..mol.atom_count())
        .map(|i| {
            let atom = mol.atom(i);
            if atom.is_hydrogen() && mol.heavy_degree(i) > 0 {
                return 0.0;
            }
            let r = atom.element.vdw_radius();
            let cap_height = (r - (r * r - p * p + d * d) / (2.0 * d)).clamp(0.0, 2.0 * r);
            let caps = mol.heavy_degree(i) as f64 * 2.0 * PI * r * cap_height;
            (4.0 * PI * r * r - caps).max(0.0)
        })
        .collect()
}

/// Surface area binned by per-atom Crippen logP contribution. Index 2 is
/// SlogP_VSA3, the bin (−0.2, 0].
pub fn slogp_vsa(mol: &Molecule) -> [f64; SLOGP_VSA_BINS] {
    let bounds = &tables::vsa().bin_upper_bounds;
    let contribs = crippen_contribs(mol);
    let areas = atom_surface_areas(mol);
    let mut bins = [0.0; SLOGP_VSA_BINS];
    for (i, &area) in areas.iter().enumerate() {
        if area == 0.0 {
            continue;
        }
        let c = contribs.logp[i];
        let bin = bounds.iter().position(|&ub| c <= ub).unwrap_or(bounds.len());
        bins[bin] += area;
    }
    bins
}

pub fn slogp_vsa3(mol: &Molecule) -> f64 {
    slogp_vsa(mol)[2]
}
