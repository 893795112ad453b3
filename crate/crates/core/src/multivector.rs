//! Elements of the complexified Clifford algebra Cl(1,3).

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::blade::{self, Blade};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::scalar::{Backend, Exact, Field, Float, Scalar};

/// Dense multivector: one coefficient per basis blade, indexed by blade mask.
#[derive(Clone, Debug, PartialEq)]
pub struct Multivector<S> {
    coeffs: [S; 16],
}

impl<S: Scalar> Default for Multivector<S> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<S: Scalar> Multivector<S> {
    pub fn zero() -> Self {
        Multivector {
            coeffs: std::array::from_fn(|_| S::zero()),
        }
    }

    pub fn one() -> Self {
        Self::scalar(S::one())
    }

    pub fn scalar(value: S) -> Self {
        let mut mv = Self::zero();
        mv.coeffs[0] = value;
        mv
    }

    pub fn blade(b: Blade) -> Self {
        Self::term(S::one(), b)
    }

    pub fn term(value: S, b: Blade) -> Self {
        let mut mv = Self::zero();
        mv.coeffs[b.index()] = value;
        mv
    }

    /// Generator `l^mu`.
    pub fn basis_vector(mu: usize) -> Self {
        Self::blade(Blade::vector(mu))
    }

    /// Blade from ascending indices; panics on invalid input.
    pub fn basis(indices: &[usize]) -> Self {
        Self::blade(Blade::from_indices(indices).expect("ascending indices in 0..4"))
    }

    /// `l^5 = l^0 l^1 l^2 l^3`.
    pub fn pseudoscalar() -> Self {
        Self::blade(Blade::PSEUDOSCALAR)
    }

    pub fn from_coeffs(coeffs: [S; 16]) -> Self {
        Multivector { coeffs }
    }

    /// Builds from `(blade, coefficient)` pairs, summing repeats.
    pub fn from_terms(terms: impl IntoIterator<Item = (Blade, S)>) -> Self {
        let mut mv = Self::zero();
        for (b, c) in terms {
            mv.coeffs[b.index()] = mv.coeffs[b.index()].plus(&c);
        }
        mv
    }

    pub fn from_fn(f: impl FnMut(usize) -> S) -> Self {
        Multivector {
            coeffs: std::array::from_fn(f),
        }
    }

    pub fn backend(&self) -> Backend {
        S::BACKEND
    }

    pub fn coeffs(&self) -> &[S; 16] {
        &self.coeffs
    }

    pub fn coeff(&self, b: Blade) -> &S {
        &self.coeffs[b.index()]
    }

    pub fn set(&mut self, b: Blade, value: S) {
        self.coeffs[b.index()] = value;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Field::is_zero)
    }

    pub fn is_negligible(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|c| c.is_negligible(tol))
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.coeffs
            .iter()
            .zip(other.coeffs.iter())
            .all(|(a, b)| a.approx_eq(b, tol))
    }

    /// Largest coefficient-wise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(other.coeffs.iter())
            .map(|(a, b)| a.minus(b).magnitude())
            .fold(0.0, f64::max)
    }

    /// Euclidean norm of the coefficient vector.
    pub fn norm(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| c.magnitude().powi(2))
            .sum::<f64>()
            .sqrt()
    }

    pub fn max_coeff(&self) -> f64 {
        self.coeffs.iter().map(Field::magnitude).fold(0.0, f64::max)
    }

    /// Nonzero `(blade, coefficient)` pairs in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (Blade, &S)> {
        Blade::all()
            .map(move |b| (b, &self.coeffs[b.index()]))
            .filter(|(_, c)| !c.is_zero())
    }

    pub fn map(&self, mut f: impl FnMut(Blade, &S) -> S) -> Self {
        Self::from_fn(|i| f(Blade::from_mask(i as u8), &self.coeffs[i]))
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        self.map(|_, v| v.times(c))
    }

    pub fn scale_real(&self, c: &S::Real) -> Self {
        self.scale(&S::from_real(c.clone()))
    }

    /// Clifford product.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in other.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let (sign, c) = blade::product(Blade::from_mask(a as u8), Blade::from_mask(b as u8));
                accumulate(&mut out.coeffs[c.index()], &x.times(y), sign);
            }
        }
        out
    }

    /// Exterior product.
    pub fn wedge(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in other.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                if let Some((sign, c)) =
                    blade::wedge(Blade::from_mask(a as u8), Blade::from_mask(b as u8))
                {
                    accumulate(&mut out.coeffs[c.index()], &x.times(y), sign);
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        self.mul(other).add(&other.mul(self))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_fn(|i| self.coeffs[i].plus(&other.coeffs[i]))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_fn(|i| self.coeffs[i].minus(&other.coeffs[i]))
    }

    pub fn neg(&self) -> Self {
        self.map(|_, v| v.negated())
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn grade_part(&self, k: usize) -> Result<Self> {
        if k > 4 {
            return Err(Error::GradeOutOfRange(k));
        }
        Ok(self.keep(|b| b.grade() == k))
    }

    pub fn even_part(&self) -> Self {
        self.keep(|b| b.grade() % 2 == 0)
    }

    pub fn odd_part(&self) -> Self {
        self.keep(|b| b.grade() % 2 == 1)
    }

    fn keep(&self, pred: impl Fn(Blade) -> bool) -> Self {
        self.map(|b, v| if pred(b) { v.clone() } else { S::zero() })
    }

    /// Grades carrying a non-negligible coefficient.
    pub fn grades(&self, tol: f64) -> Vec<usize> {
        let mut grades: Vec<usize> = Blade::all()
            .filter(|b| !self.coeffs[b.index()].is_negligible(tol))
            .map(Blade::grade)
            .collect();
        grades.sort_unstable();
        grades.dedup();
        grades
    }

    pub fn is_homogeneous(&self, k: usize, tol: f64) -> bool {
        self.grades(tol).iter().all(|&g| g == k)
    }

    pub fn is_even(&self, tol: f64) -> bool {
        self.odd_part().is_negligible(tol)
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|c| c.is_real(tol))
    }

    /// Unit-blade coefficient; the matrix trace of any 4x4 representation is
    /// four times this value.
    pub fn trace(&self) -> S {
        self.coeffs[0].clone()
    }

    /// Coefficient-wise complex conjugation.
    pub fn conj(&self) -> Self {
        self.map(|_, v| v.conj())
    }

    /// Order reversal `(-1)^{k(k-1)/2}` per grade, without conjugation.
    pub fn reverse(&self) -> Self {
        self.map(|b, v| {
            if b.reversion_sign() < 0 {
                v.negated()
            } else {
                v.clone()
            }
        })
    }

    /// The involution `U*`: reversal combined with complex conjugation.
    pub fn star(&self) -> Self {
        self.map(|b, v| {
            let c = v.conj();
            if b.reversion_sign() < 0 {
                c.negated()
            } else {
                c
            }
        })
    }

    /// `U† = H U* H`; requires `H H = l`.
    pub fn hermitian_conjugate(&self, h: &Self, tol: f64) -> Result<Self> {
        if !h.mul(h).approx_eq(&Self::one(), tol) {
            return Err(Error::generator("H^2 != l"));
        }
        Ok(self.hermitian_unchecked(h))
    }

    pub(crate) fn hermitian_unchecked(&self, h: &Self) -> Self {
        h.mul(&self.star()).mul(h)
    }

    /// 16x16 matrix of `V -> self * V` in the mask-indexed basis.
    pub fn left_matrix(&self) -> Mat<S> {
        let mut m: Mat<S> = Mat::zeros(16, 16);
        for (a, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for b in 0..16 {
                let (sign, c) = blade::product(Blade::from_mask(a as u8), Blade::from_mask(b as u8));
                let mut entry = m.get(c.index(), b).clone();
                accumulate(&mut entry, x, sign);
                m.set(c.index(), b, entry);
            }
        }
        m
    }

    /// Two-sided inverse, via the left-regular representation.
    pub fn inverse(&self, tol: f64) -> Option<Self> {
        let m = self.left_matrix();
        let rhs: Vec<S> = (0..16).map(|i| if i == 0 { S::one() } else { S::zero() }).collect();
        let x = m.solve(&rhs, tol)?;
        Some(Self::from_fn(|i| x[i].clone()))
    }

    pub fn to_float(&self) -> Multivector<Float> {
        Multivector::from_fn(|i| self.coeffs[i].to_c64())
    }

    /// Coefficients as `f64` pairs, canonical blade order.
    pub fn to_c64_vec(&self) -> Vec<Complex64> {
        Blade::all().map(|b| self.coeffs[b.index()].to_c64()).collect()
    }
}

impl Multivector<Exact> {
    pub fn from_i64_terms(terms: &[(&[usize], i64)]) -> Self {
        Self::from_terms(
            terms
                .iter()
                .map(|(idx, c)| (Blade::from_indices(idx).expect("ascending"), Exact::from_i64(*c))),
        )
    }
}

#[inline]
fn accumulate<S: Field>(slot: &mut S, value: &S, sign: i8) {
    *slot = if sign > 0 {
        slot.plus(value)
    } else {
        slot.minus(value)
    };
}

impl<S: Scalar> Add for &Multivector<S> {
    type Output = Multivector<S>;
    fn add(self, rhs: Self) -> Multivector<S> {
        Multivector::add(self, rhs)
    }
}

impl<S: Scalar> Sub for &Multivector<S> {
    type Output = Multivector<S>;
    fn sub(self, rhs: Self) -> Multivector<S> {
        Multivector::sub(self, rhs)
    }
}

impl<S: Scalar> Mul for &Multivector<S> {
    type Output = Multivector<S>;
    fn mul(self, rhs: Self) -> Multivector<S> {
        Multivector::mul(self, rhs)
    }
}

impl<S: Scalar> Neg for &Multivector<S> {
    type Output = Multivector<S>;
    fn neg(self) -> Multivector<S> {
        Multivector::neg(self)
    }
}

impl<S: Scalar> Neg for Multivector<S> {
    type Output = Multivector<S>;
    fn neg(self) -> Multivector<S> {
        Multivector::neg(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{exact, rational};

    type Mv = Multivector<Exact>;

    fn e(idx: &[usize]) -> Mv {
        Mv::basis(idx)
    }

    #[test]
    fn generator_squares_follow_signature() {
        assert_eq!(e(&[0]).mul(&e(&[0])), Mv::one());
        assert_eq!(e(&[1]).mul(&e(&[1])), Mv::one().neg());
        assert_eq!(e(&[0]).mul(&e(&[1])), e(&[0, 1]));
        assert_eq!(e(&[1]).mul(&e(&[0])), e(&[0, 1]).neg());
        let l5 = Mv::pseudoscalar();
        assert_eq!(l5.mul(&l5), Mv::one().neg());
    }

    #[test]
    fn exterior_examples() {
        assert_eq!(e(&[0]).wedge(&e(&[1])), e(&[0, 1]));
        assert!(e(&[0]).wedge(&e(&[0])).is_zero());
        assert_eq!(e(&[0, 1]).wedge(&e(&[2, 3])), e(&[0, 1, 2, 3]));
    }

    #[test]
    fn grade_parts() {
        let u = Mv::one().add(&e(&[0, 1]));
        assert_eq!(u.grade_part(2).unwrap(), e(&[0, 1]));
        assert_eq!(Mv::pseudoscalar().grade_part(4).unwrap(), Mv::pseudoscalar());
        assert!(matches!(u.grade_part(5), Err(Error::GradeOutOfRange(5))));
        let v = e(&[0]).add(&e(&[1, 2]));
        assert_eq!(v.even_part(), e(&[1, 2]));
        assert_eq!(v.odd_part(), e(&[0]));
    }

    #[test]
    fn trace_picks_unit_coefficient() {
        assert_eq!(Mv::one().trace(), Exact::one());
        assert_eq!(Mv::pseudoscalar().trace(), Exact::zero());
    }

    #[test]
    fn star_involution_examples() {
        assert_eq!(e(&[0, 1]).star(), e(&[0, 1]).neg());
        assert_eq!(e(&[0]).star(), e(&[0]));
        let i_unit = Mv::scalar(Exact::i());
        assert_eq!(i_unit.star(), Mv::scalar(Exact::i().negated()));
    }

    #[test]
    fn hermitian_conjugate_examples() {
        let h = e(&[0]);
        assert_eq!(Mv::one().hermitian_conjugate(&h, 0.0).unwrap(), Mv::one());
        assert_eq!(e(&[1]).hermitian_conjugate(&h, 0.0).unwrap(), e(&[1]).neg());
        assert!(e(&[1]).hermitian_conjugate(&e(&[1]), 0.0).is_err());
    }

    #[test]
    fn inverse_of_near_unit_element() {
        let v = Mv::one().add(&e(&[1, 2]).scale(&exact(rational(1, 3), rational(0, 1))));
        let inv = v.inverse(0.0).unwrap();
        assert_eq!(v.mul(&inv), Mv::one());
        assert_eq!(inv.mul(&v), Mv::one());
        // (1 + e01)(1 - e01) = 0, so 1 + e01 is a zero divisor
        assert!(Mv::one().add(&e(&[0, 1])).inverse(0.0).is_none());
    }

    #[test]
    fn left_matrix_matches_product() {
        let u = e(&[0]).add(&e(&[1, 3]).scale(&Exact::from_i64(2)));
        let v = e(&[2]).add(&Mv::one());
        let m = u.left_matrix();
        let prod: Vec<Exact> = (0..16)
            .map(|r| (0..16).fold(Exact::zero(), |acc, c| acc.plus(&m.get(r, c).times(&v.coeffs()[c]))))
            .collect();
        assert_eq!(Mv::from_fn(|i| prod[i].clone()), u.mul(&v));
    }
}
