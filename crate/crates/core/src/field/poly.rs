//! Sparse polynomials in the four coordinates `x^0..x^3`.

use std::cmp::Ordering;

use crate::scalar::{Field, RealField};

pub type Powers = [u32; 4];

/// Sum of `c x^a`; terms sorted by exponent vector, no zero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<C> {
    terms: Vec<(Powers, C)>,
}

impl<C: Field> Default for Poly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Field> Poly<C> {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::monomial([0; 4], c)
    }

    pub fn monomial(powers: Powers, c: C) -> Self {
        Self::from_terms(vec![(powers, c)])
    }

    /// The coordinate `x^mu`.
    pub fn variable(mu: usize) -> Self {
        let mut p = [0; 4];
        p[mu] = 1;
        Self::monomial(p, C::one())
    }

    /// `p_mu x^mu`.
    pub fn linear(p: &[C; 4]) -> Self {
        Self::from_terms((0..4).map(|mu| {
            let mut a = [0; 4];
            a[mu] = 1;
            (a, p[mu].clone())
        }))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Powers, C)>) -> Self {
        let mut v: Vec<(Powers, C)> = terms.into_iter().collect();
        v.sort_by_key(|t| t.0);
        let mut out: Vec<(Powers, C)> = Vec::with_capacity(v.len());
        for (a, c) in v {
            match out.last_mut() {
                Some((b, d)) if *b == a => *d = d.plus(&c),
                _ => out.push((a, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { terms: out }
    }

    pub fn terms(&self) -> &[(Powers, C)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|(a, _)| a.iter().sum()).max().unwrap_or(0)
    }

    pub fn constant_term(&self) -> C {
        self.terms
            .iter()
            .find(|(a, _)| *a == [0; 4])
            .map(|(_, c)| c.clone())
            .unwrap_or_else(C::zero)
    }

    pub fn without_constant(&self) -> Self {
        Poly {
            terms: self.terms.iter().filter(|(a, _)| *a != [0; 4]).cloned().collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_terms(self.terms.iter().chain(&other.terms).cloned())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&C::from_i64(-1))
    }

    pub fn scale(&self, s: &C) -> Self {
        Self::from_terms(self.terms.iter().map(|(a, c)| (*a, c.times(s))))
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_terms(self.terms.iter().flat_map(|(a, c)| {
            other.terms.iter().map(move |(b, d)| (add_powers(a, b), c.times(d)))
        }))
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::constant(C::one()), |acc, _| acc.mul(self))
    }

    /// `d/dx^mu`.
    pub fn derivative(&self, mu: usize) -> Self {
        Self::from_terms(self.terms.iter().filter(|(a, _)| a[mu] > 0).map(|(a, c)| {
            let mut b = *a;
            b[mu] -= 1;
            (b, c.times(&C::from_i64(a[mu] as i64)))
        }))
    }

    /// Composition with the linear change `x^mu = q[mu][nu] y^nu`.
    pub fn substitute(&self, q: &[[C; 4]; 4]) -> Self {
        let rows: Vec<Self> = (0..4)
            .map(|mu| Self::from_terms((0..4).map(|nu| (unit(nu), q[mu][nu].clone()))))
            .collect();
        self.terms.iter().fold(Self::zero(), |acc, (a, c)| {
            let image = (0..4).fold(Self::constant(c.clone()), |m, mu| m.mul(&rows[mu].pow(a[mu])));
            acc.add(&image)
        })
    }

    pub fn map<D: Field>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        Poly::from_terms(self.terms.iter().map(|(a, c)| (*a, f(c))))
    }
}

impl<R: RealField> Poly<R> {
    pub fn eval(&self, x: &[f64; 4]) -> f64 {
        self.terms.iter().map(|(a, c)| c.to_f64() * monomial_value(a, x)).sum()
    }

    /// Total order used to canonicalize sums of terms keyed by phase.
    pub fn total_cmp(&self, other: &Self) -> Ordering {
        for ((a, c), (b, d)) in self.terms.iter().zip(&other.terms) {
            let o = a.cmp(b).then_with(|| c.total_cmp(d));
            if o != Ordering::Equal {
                return o;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

pub fn add_powers(a: &Powers, b: &Powers) -> Powers {
    std::array::from_fn(|i| a[i] + b[i])
}

pub fn unit(mu: usize) -> Powers {
    let mut a = [0; 4];
    a[mu] = 1;
    a
}

pub fn monomial_value(a: &Powers, x: &[f64; 4]) -> f64 {
    (0..4).map(|mu| x[mu].powi(a[mu] as i32)).product()
}
