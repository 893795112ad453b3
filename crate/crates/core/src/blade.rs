//! Basis blades of Cl(1,3) and the sign rule for their products.

use std::fmt;

/// Algebraic signature `eta^{mu mu}`; off-diagonal entries vanish.
pub const ETA: [i8; 4] = [1, -1, -1, -1];

/// Structure constants of the Clifford algebra.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Metric;

impl Metric {
    pub fn eta(mu: usize, nu: usize) -> i8 {
        if mu == nu {
            ETA[mu]
        } else {
            0
        }
    }
}

/// A basis blade `l^{mu1...muk}` stored as a 4-bit mask over the indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Blade(u8);

/// Masks in the conventional listing order: by grade, then lexicographic.
pub const CANONICAL_ORDER: [u8; 16] = [
    0b0000, 0b0001, 0b0010, 0b0100, 0b1000, 0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100,
    0b0111, 0b1011, 0b1101, 0b1110, 0b1111,
];

impl Blade {
    pub const UNIT: Blade = Blade(0);
    pub const PSEUDOSCALAR: Blade = Blade(0b1111);

    pub const fn new(mask: u8) -> Option<Blade> {
        if mask < 16 {
            Some(Blade(mask))
        } else {
            None
        }
    }

    pub(crate) const fn from_mask(mask: u8) -> Blade {
        Blade(mask & 0b1111)
    }

    pub const fn vector(mu: usize) -> Blade {
        Blade(1 << mu)
    }

    /// Blade from strictly ascending indices.
    pub fn from_indices(indices: &[usize]) -> Option<Blade> {
        let mut mask = 0u8;
        let mut last: Option<usize> = None;
        for &i in indices {
            if i > 3 || last.is_some_and(|l| l >= i) {
                return None;
            }
            mask |= 1 << i;
            last = Some(i);
        }
        Some(Blade(mask))
    }

    pub const fn mask(self) -> u8 {
        self.0
    }

    pub const fn index(self) -> usize {
        self.0 as usize
    }

    pub const fn grade(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn indices(self) -> Vec<usize> {
        (0..4).filter(|i| self.0 >> i & 1 == 1).collect()
    }

    pub const fn complement(self) -> Blade {
        Blade(!self.0 & 0b1111)
    }

    /// All 16 blades in canonical order.
    pub fn all() -> impl Iterator<Item = Blade> {
        CANONICAL_ORDER.iter().map(|&m| Blade(m))
    }

    pub fn of_grade(k: usize) -> impl Iterator<Item = Blade> {
        Blade::all().filter(move |b| b.grade() == k)
    }

    /// Index label such as `""`, `"0"`, `"013"`.
    pub fn label(self) -> String {
        self.indices().iter().map(|i| i.to_string()).collect()
    }

    /// `(-1)^{k(k-1)/2}`, the sign picked up by reversing the factors.
    pub const fn reversion_sign(self) -> i8 {
        match self.grade() % 4 {
            0 | 1 => 1,
            _ => -1,
        }
    }
}

impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.label())
    }
}

/// Sign from sorting the concatenated index list of `a` then `b`.
const fn reorder_sign(a: u8, b: u8) -> i8 {
    let mut swaps = 0u32;
    let mut rest = a >> 1;
    while rest != 0 {
        swaps += (rest & b).count_ones();
        rest >>= 1;
    }
    if swaps.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

const fn contraction_sign(common: u8) -> i8 {
    // eta^{00} = +1, the spatial ones are -1
    if (common & 0b1110).count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

const fn build_product_table() -> [[(i8, u8); 16]; 16] {
    let mut table = [[(0i8, 0u8); 16]; 16];
    let mut a = 0;
    while a < 16 {
        let mut b = 0;
        while b < 16 {
            let sign = reorder_sign(a as u8, b as u8) * contraction_sign((a & b) as u8);
            table[a][b] = (sign, (a ^ b) as u8);
            b += 1;
        }
        a += 1;
    }
    table
}

static PRODUCT_TABLE: [[(i8, u8); 16]; 16] = build_product_table();

/// Clifford product of two basis blades: `l^A l^B = sign * l^C`.
#[inline]
pub fn product(a: Blade, b: Blade) -> (i8, Blade) {
    let (sign, mask) = PRODUCT_TABLE[a.index()][b.index()];
    (sign, Blade(mask))
}

/// Exterior product of two basis blades; `None` when they share an index.
#[inline]
pub fn wedge(a: Blade, b: Blade) -> Option<(i8, Blade)> {
    if a.0 & b.0 != 0 {
        None
    } else {
        Some((reorder_sign(a.0, b.0), Blade(a.0 | b.0)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sixteen_distinct_blades_with_binomial_grades() {
        let all: Vec<_> = Blade::all().collect();
        assert_eq!(all.len(), 16);
        let mut masks: Vec<_> = all.iter().map(|b| b.mask()).collect();
        masks.sort();
        masks.dedup();
        assert_eq!(masks.len(), 16);
        let counts: Vec<_> = (0..5).map(|k| Blade::of_grade(k).count()).collect();
        assert_eq!(counts, vec![1, 4, 6, 4, 1]);
        assert_eq!(Blade::UNIT.grade(), 0);
    }

    #[test]
    fn from_indices_requires_ascending() {
        assert_eq!(Blade::from_indices(&[0, 1]).unwrap().mask(), 0b0011);
        assert!(Blade::from_indices(&[1, 0]).is_none());
        assert!(Blade::from_indices(&[1, 1]).is_none());
        assert!(Blade::from_indices(&[4]).is_none());
    }

    #[test]
    fn vector_products() {
        let e0 = Blade::vector(0);
        let e1 = Blade::vector(1);
        assert_eq!(product(e0, e0), (1, Blade::UNIT));
        assert_eq!(product(e1, e1), (-1, Blade::UNIT));
        assert_eq!(product(e0, e1), (1, Blade::from_mask(0b11)));
        assert_eq!(product(e1, e0), (-1, Blade::from_mask(0b11)));
    }

    #[test]
    fn pseudoscalar_squares_to_minus_one() {
        assert_eq!(product(Blade::PSEUDOSCALAR, Blade::PSEUDOSCALAR), (-1, Blade::UNIT));
    }

    #[test]
    fn wedge_rejects_shared_indices() {
        assert!(wedge(Blade::vector(0), Blade::vector(0)).is_none());
        let e01 = Blade::from_mask(0b0011);
        let e23 = Blade::from_mask(0b1100);
        assert_eq!(wedge(e01, e23), Some((1, Blade::PSEUDOSCALAR)));
        assert_eq!(wedge(Blade::vector(1), Blade::vector(0)), Some((-1, e01)));
    }
}
