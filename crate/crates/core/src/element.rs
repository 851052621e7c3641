use core::fmt;

use serde::{Deserialize, Serialize};

use crate::tables;

/// A chemical element, stored as its atomic number (1..=118).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Element(u8);

impl Element {
    pub const H: Element = Element(1);
    pub const B: Element = Element(5);
    pub const C: Element = Element(6);
    pub const N: Element = Element(7);
    pub const O: Element = Element(8);
    pub const F: Element = Element(9);
    pub const SI: Element = Element(14);
    pub const P: Element = Element(15);
    pub const S: Element = Element(16);
    pub const CL: Element = Element(17);
    pub const SE: Element = Element(34);
    pub const BR: Element = Element(35);
    pub const I: Element = Element(53);

    pub fn from_atomic_number(z: u8) -> Option<Element> {
        (1..=118).contains(&z).then_some(Element(z))
    }

    /// Looks up an element by its case-sensitive symbol (`"Cl"`, not `"CL"`).
    pub fn from_symbol(symbol: &str) -> Option<Element> {
        tables::elements()
            .iter()
            .position(|row| row.symbol == symbol)
            .map(|i| Element(i as u8 + 1))
    }

    pub fn atomic_number(self) -> u8 {
        self.0
    }

    pub fn symbol(self) -> &'static str {
        &tables::elements()[self.0 as usize - 1].symbol
    }

    /// Standard atomic weight in Da.
    pub fn mass(self) -> f64 {
        tables::elements()[self.0 as usize - 1].mass
    }

    /// Van der Waals radius in Å (Bondi where available).
    pub fn vdw_radius(self) -> f64 {
        tables::elements()[self.0 as usize - 1].vdw_radius
    }

    pub fn is_halogen(self) -> bool {
        matches!(self.0, 9 | 17 | 35 | 53)
    }

    /// Atoms that may be written without brackets in SMILES.
    pub fn is_organic_subset(self) -> bool {
        matches!(self.0, 5 | 6 | 7 | 8 | 9 | 15 | 16 | 17 | 35 | 53)
    }

    /// Normal valences of the element in its neutral state, smallest first.
    /// Empty for elements outside the organic valence model.
    pub fn default_valences(self) -> &'static [u8] {
        match self.0 {
            1 => &[1],
            5 => &[3],
            6 | 14 => &[4],
            7 => &[3, 5],
            8 => &[2],
            9 | 17 | 35 | 53 => &[1],
            15 => &[3, 5],
            16 => &[2, 4, 6],
            34 => &[2, 4, 6],
            _ => &[],
        }
    }

    /// Valences accepted by sanitisation, adjusted for formal charge.
    ///
    /// Group 15-17 elements gain one bond per positive charge and lose one per
    /// negative charge (N+ behaves like C, O- like F); group 14 loses one per
    /// unit of charge either way; boron gains one per negative charge.
    /// Returns `None` for elements outside the model, which are not checked.
    pub fn allowed_valences(self, charge: i8) -> Option<Valences> {
        let c = charge as i32;
        let adjust = |base: &[i32], f: &dyn Fn(i32) -> i32| {
            let mut v = Valences::default();
            for &b in base {
                let x = f(b);
                if x >= 0 {
                    v.push(x as u8);
                }
            }
            v
        };
        let v = match self.0 {
            // Sanitisation uses the strict table: nitrogen is trivalent.
            7 => adjust(&[3], &|b| b + c),
            8 => adjust(&[2], &|b| b + c),
            15 => adjust(&[3, 5], &|b| b + c),
            16 | 34 => adjust(&[2, 4, 6], &|b| b + c),
            9 | 17 | 35 | 53 => adjust(&[1], &|b| b + c),
            6 | 14 => adjust(&[4], &|b| b - c.abs()),
            5 => adjust(&[3], &|b| b - c),
            1 => adjust(&[1], &|b| b - c.abs()),
            _ => return None,
        };
        Some(v)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// A short, fixed-capacity list of valences.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Valences {
    items: [u8; 3],
    len: u8,
}

impl Valences {
    fn push(&mut self, v: u8) {
        self.items[self.len as usize] = v;
        self.len += 1;
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.items[..self.len as usize]
    }

    pub fn max(&self) -> Option<u8> {
        self.as_slice().iter().copied().max()
    }
}
