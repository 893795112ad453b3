//! Coefficient fields.
//!
//! Two backends share one interface: Gaussian rationals ([`Exact`]) for the
//! algebraic identities, and double-precision complex numbers ([`Float`]) for
//! anything that needs transcendental functions or finite differences.

use std::cmp::Ordering;
use std::fmt::{self, Debug};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::linalg::{self, Mat};

/// Complex numbers with arbitrary-precision rational parts.
pub type Exact = Complex<BigRational>;
/// Complex numbers with `f64` parts.
pub type Float = Complex64;

/// Default comparison tolerance for the float backend.
pub const DEFAULT_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Float,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::Exact => f.write_str("exact"),
            Backend::Float => f.write_str("float"),
        }
    }
}

impl std::str::FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(Backend::Exact),
            "float" => Ok(Backend::Float),
            other => Err(format!("unknown backend `{other}` (expected exact|float)")),
        }
    }
}

/// Arithmetic shared by real and complex coefficient types.
///
/// Method names avoid the `std::ops` names so that calls stay unambiguous on
/// types that also implement the operator traits.
pub trait Field: Clone + Debug + PartialEq + Send + Sync + 'static {
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn recip(&self) -> Option<Self>;
    /// Absolute value (modulus for complex values) as `f64`.
    fn magnitude(&self) -> f64;

    /// Exact zero on the exact backend, `|x| <= tol` otherwise.
    fn is_negligible(&self, tol: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.magnitude() <= tol
        }
    }

    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.minus(other).is_negligible(tol)
    }

    fn divided(&self, other: &Self) -> Option<Self> {
        other.recip().map(|r| self.times(&r))
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num)
            .divided(&Self::from_i64(den))
            .expect("nonzero denominator")
    }
}

pub trait RealField: Field + PartialOrd {
    fn to_f64(&self) -> f64;
    fn from_f64(v: f64) -> Self;
    /// Square root if it exists in the field (exact perfect squares only on
    /// the rational backend).
    fn sqrt(&self) -> Option<Self>;
    fn total_cmp(&self, other: &Self) -> Ordering;
    /// Basis of the null space of `m`; rank decisions use `rel_tol` relative
    /// to the largest singular value (float) or exact zero (rational).
    fn nullspace(m: &Mat<Self>, rel_tol: f64) -> Vec<Vec<Self>>;
}

/// Complex coefficient field of a multivector.
pub trait Scalar: Field {
    type Real: RealField;
    const BACKEND: Backend;

    fn from_parts(re: Self::Real, im: Self::Real) -> Self;
    fn re(&self) -> Self::Real;
    fn im(&self) -> Self::Real;
    fn conj(&self) -> Self;
    fn to_c64(&self) -> Complex64;

    fn from_real(re: Self::Real) -> Self {
        Self::from_parts(re, Self::Real::zero())
    }

    fn i() -> Self {
        Self::from_parts(Self::Real::zero(), Self::Real::one())
    }

    fn is_real(&self, tol: f64) -> bool {
        self.im().is_negligible(tol)
    }
}

impl Field for BigRational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        if Zero::is_zero(self) {
            return other.clone();
        }
        if Zero::is_zero(other) {
            return self.clone();
        }
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        if Zero::is_zero(other) {
            return self.clone();
        }
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        if Zero::is_zero(self) || Zero::is_zero(other) {
            return Zero::zero();
        }
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn recip(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| num_traits::Inv::inv(self.clone()))
    }
    fn magnitude(&self) -> f64 {
        ToPrimitive::to_f64(&self.abs()).unwrap_or(f64::INFINITY)
    }
}

impl RealField for BigRational {
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn from_f64(v: f64) -> Self {
        BigRational::from_float(v).expect("finite float")
    }
    fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        (&n * &n == *self.numer() && &d * &d == *self.denom()).then(|| BigRational::new(n, d))
    }
    fn total_cmp(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }
    fn nullspace(m: &Mat<Self>, _rel_tol: f64) -> Vec<Vec<Self>> {
        linalg::rref_nullspace(m, 0.0)
    }
}

impl Field for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
    fn recip(&self) -> Option<Self> {
        (*self != 0.0).then(|| 1.0 / self)
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl RealField for f64 {
    fn to_f64(&self) -> f64 {
        *self
    }
    fn from_f64(v: f64) -> Self {
        v
    }
    fn sqrt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| f64::sqrt(*self))
    }
    fn total_cmp(&self, other: &Self) -> Ordering {
        f64::total_cmp(self, other)
    }
    fn nullspace(m: &Mat<Self>, rel_tol: f64) -> Vec<Vec<Self>> {
        linalg::svd_nullspace(m, rel_tol)
    }
}

impl<R: RealField> Field for Complex<R> {
    const EXACT: bool = R::EXACT;

    fn zero() -> Self {
        Complex::new(R::zero(), R::zero())
    }
    fn one() -> Self {
        Complex::new(R::one(), R::zero())
    }
    fn from_i64(v: i64) -> Self {
        Complex::new(R::from_i64(v), R::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        Complex::new(self.re.plus(&other.re), self.im.plus(&other.im))
    }
    fn minus(&self, other: &Self) -> Self {
        Complex::new(self.re.minus(&other.re), self.im.minus(&other.im))
    }
    fn times(&self, other: &Self) -> Self {
        // real-only operands are the common case on the exact backend
        match (self.im.is_zero(), other.im.is_zero()) {
            (true, true) => Complex::new(self.re.times(&other.re), R::zero()),
            (true, false) => Complex::new(self.re.times(&other.re), self.re.times(&other.im)),
            (false, true) => Complex::new(self.re.times(&other.re), self.im.times(&other.re)),
            (false, false) => Complex::new(
                self.re.times(&other.re).minus(&self.im.times(&other.im)),
                self.re.times(&other.im).plus(&self.im.times(&other.re)),
            ),
        }
    }
    fn negated(&self) -> Self {
        Complex::new(self.re.negated(), self.im.negated())
    }
    fn recip(&self) -> Option<Self> {
        let norm2 = self.re.times(&self.re).plus(&self.im.times(&self.im));
        let inv = norm2.recip()?;
        Some(Complex::new(self.re.times(&inv), self.im.negated().times(&inv)))
    }
    fn magnitude(&self) -> f64 {
        self.re.to_f64().hypot(self.im.to_f64())
    }
}

impl<R: RealField> Scalar for Complex<R>
where
    Complex<R>: BackendTag,
{
    type Real = R;
    const BACKEND: Backend = <Complex<R> as BackendTag>::TAG;

    fn from_parts(re: R, im: R) -> Self {
        Complex::new(re, im)
    }
    fn re(&self) -> R {
        self.re.clone()
    }
    fn im(&self) -> R {
        self.im.clone()
    }
    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), self.im.negated())
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

/// Associates each complex coefficient type with its backend tag.
pub trait BackendTag {
    const TAG: Backend;
}

impl BackendTag for Exact {
    const TAG: Backend = Backend::Exact;
}

impl BackendTag for Float {
    const TAG: Backend = Backend::Float;
}

/// Exact rational `num/den`.
pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn exact(re: BigRational, im: BigRational) -> Exact {
    Complex::new(re, im)
}

pub fn exact_int(v: i64) -> Exact {
    Exact::from_i64(v)
}

/// Renders a rational as `p` or `p/q`.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `p/q` or a terminating decimal such as `-1.25` exactly.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    if text.is_empty() {
        return None;
    }
    if let Some((n, d)) = text.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if Zero::is_zero(&d) {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = digits.parse().ok()?;
    let denom = num_traits::pow(BigInt::from(10), frac_part.len());
    let value = BigRational::new(numer, denom);
    Some(if negative { -value } else { value })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_and_fraction_parse_exactly() {
        assert_eq!(parse_rational("1.25"), Some(rational(5, 4)));
        assert_eq!(parse_rational("-3/6"), Some(rational(-1, 2)));
        assert_eq!(parse_rational(".5"), Some(rational(1, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
    }

    #[test]
    fn rational_sqrt_only_for_perfect_squares() {
        assert_eq!(RealField::sqrt(&rational(9, 4)), Some(rational(3, 2)));
        assert_eq!(RealField::sqrt(&rational(2, 1)), None);
        assert_eq!(RealField::sqrt(&rational(-1, 1)), None);
    }

    #[test]
    fn complex_reciprocal() {
        let z = exact(rational(1, 1), rational(2, 1));
        let r = z.recip().unwrap();
        assert_eq!(z.times(&r), <Exact as Field>::one());
        assert!(<Exact as Field>::zero().recip().is_none());
    }

    #[test]
    fn backend_tags() {
        assert_eq!(<Exact as Scalar>::BACKEND, Backend::Exact);
        assert_eq!(<Float as Scalar>::BACKEND, Backend::Float);
        assert_eq!("float".parse::<Backend>().unwrap(), Backend::Float);
    }
}
