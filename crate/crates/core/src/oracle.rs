//! Independent reference computations used to cross-check the fast paths.
//!
//! Nothing here shares code with the mask-based sign rule: blade products are
//! evaluated by bubble-sorting the concatenated index word one adjacent
//! transposition at a time and contracting equal neighbours against the metric.

use crate::blade::{Blade, ETA};
use crate::multivector::Multivector;
use crate::scalar::Scalar;

/// Product of two blades given as index words.
pub fn word_product(left: &[usize], right: &[usize]) -> (i8, Vec<usize>) {
    let mut word: Vec<usize> = left.iter().chain(right).copied().collect();
    let mut sign = 1i8;
    loop {
        let mut changed = false;
        let mut i = 0;
        while i + 1 < word.len() {
            if word[i] > word[i + 1] {
                word.swap(i, i + 1);
                sign = -sign;
                changed = true;
            } else if word[i] == word[i + 1] {
                sign *= ETA[word[i]];
                word.drain(i..i + 2);
                changed = true;
                continue;
            }
            i += 1;
        }
        if !changed {
            return (sign, word);
        }
    }
}

pub fn blade_product(a: Blade, b: Blade) -> (i8, Blade) {
    let (sign, word) = word_product(&a.indices(), &b.indices());
    (sign, Blade::from_indices(&word).expect("sorted word without repeats"))
}

/// Clifford product through [`blade_product`].
pub fn product<S: Scalar>(u: &Multivector<S>, v: &Multivector<S>) -> Multivector<S> {
    let mut out = Multivector::<S>::zero();
    for (a, x) in u.terms() {
        for (b, y) in v.terms() {
            let (sign, c) = blade_product(a, b);
            let t = x.times(y);
            let slot = if sign > 0 { out.coeff(c).plus(&t) } else { out.coeff(c).minus(&t) };
            out.set(c, slot);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_examples() {
        assert_eq!(word_product(&[1], &[0]), (-1, vec![0, 1]));
        assert_eq!(word_product(&[1], &[1]), (-1, vec![]));
        assert_eq!(word_product(&[0, 1, 2, 3], &[0, 1, 2, 3]), (-1, vec![]));
    }
}
