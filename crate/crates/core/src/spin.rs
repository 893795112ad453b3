//! Spin(1,3): even elements with `S* S = l`, their sandwich action, and the
//! proper orthochronous Lorentz matrices they induce.

use num_rational::BigRational;
use serde_json::Value;

use crate::blade::Blade;
use crate::error::{Error, Result};
use crate::ideal::SecondaryGenerators;
use crate::linalg::Mat;
use crate::multivector::Multivector;
use crate::random::{self, TestRng};
use crate::scalar::{Exact, Field, Float, RealField, Scalar};

/// Series terms below this Euclidean norm end the exponential.
pub const SERIES_CUTOFF: f64 = 1e-18;
const SERIES_MAX_TERMS: usize = 400;
/// Relative singular-value cutoff for null spaces on the float backend.
pub const NULLSPACE_TOLERANCE: f64 = 1e-9;

/// `p^nu_mu`, stored with the upper index as the row.
#[derive(Clone, Debug, PartialEq)]
pub struct LorentzMatrix<R> {
    pub p: [[R; 4]; 4],
}

impl<R: RealField> LorentzMatrix<R> {
    pub fn identity() -> Self {
        LorentzMatrix {
            p: std::array::from_fn(|r| std::array::from_fn(|c| if r == c { R::one() } else { R::zero() })),
        }
    }

    pub fn get(&self, nu: usize, mu: usize) -> &R {
        &self.p[nu][mu]
    }

    /// Matrix product `self * other`.
    pub fn compose(&self, other: &Self) -> Self {
        LorentzMatrix {
            p: std::array::from_fn(|r| {
                std::array::from_fn(|c| {
                    (0..4).fold(R::zero(), |acc, k| acc.plus(&self.p[r][k].times(&other.p[k][c])))
                })
            }),
        }
    }

    pub fn transpose(&self) -> Self {
        LorentzMatrix {
            p: std::array::from_fn(|r| std::array::from_fn(|c| self.p[c][r].clone())),
        }
    }

    fn mat(&self) -> Mat<R> {
        Mat::from_rows(self.p.iter().map(|row| row.to_vec()).collect())
    }

    pub fn determinant(&self) -> R {
        self.mat().determinant()
    }

    /// `P^T g P` with `g = diag(1, -1, -1, -1)`.
    pub fn metric_pullback(&self) -> [[R; 4]; 4] {
        std::array::from_fn(|a| {
            std::array::from_fn(|b| {
                (0..4).fold(R::zero(), |acc, k| {
                    let term = self.p[k][a].times(&self.p[k][b]);
                    if k == 0 {
                        acc.plus(&term)
                    } else {
                        acc.minus(&term)
                    }
                })
            })
        })
    }

    /// `max |P^T g P - g|`.
    pub fn metric_defect(&self) -> f64 {
        let pull = self.metric_pullback();
        let mut worst = 0.0f64;
        for (a, row) in pull.iter().enumerate() {
            for (b, v) in row.iter().enumerate() {
                let g = if a != b {
                    0
                } else if a == 0 {
                    1
                } else {
                    -1
                };
                worst = worst.max(v.minus(&R::from_i64(g)).magnitude());
            }
        }
        worst
    }

    /// `true` when the matrix is in SO+(1,3) within `tol`.
    pub fn is_proper_orthochronous(&self, tol: f64) -> bool {
        self.metric_defect() <= tol
            && self.determinant().minus(&R::one()).magnitude() <= tol
            && self.p[0][0].to_f64() > 0.0
    }

    /// Components of `P x` for a contravariant vector.
    pub fn apply(&self, x: &[R; 4]) -> [R; 4] {
        std::array::from_fn(|r| (0..4).fold(R::zero(), |acc, c| acc.plus(&self.p[r][c].times(&x[c]))))
    }

    pub fn to_f64(&self) -> LorentzMatrix<f64> {
        LorentzMatrix {
            p: std::array::from_fn(|r| std::array::from_fn(|c| self.p[r][c].to_f64())),
        }
    }

    /// Row-major JSON array of 16 numbers.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.p
                .iter()
                .flatten()
                .map(|v| serde_json::json!(v.to_f64()))
                .collect(),
        )
    }
}

/// Element of Spin(1,3) together with its inverse `S*`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinElement<S> {
    s: Multivector<S>,
    s_star: Multivector<S>,
}

impl<S: Scalar> SpinElement<S> {
    /// Validates that `s` is even, real, and satisfies `S* S = l`.
    pub fn new(s: Multivector<S>, tol: f64) -> Result<Self> {
        if !s.is_even(tol) {
            return Err(Error::InvalidSpin("element has odd grades".into()));
        }
        if !s.is_real(tol) {
            return Err(Error::InvalidSpin("element has complex coefficients".into()));
        }
        let s_star = s.star();
        let norm = s_star.mul(&s);
        if !norm.approx_eq(&Multivector::one(), tol) {
            return Err(Error::InvalidSpin(format!(
                "S*S differs from l by {:.3e}",
                norm.max_abs_diff(&Multivector::one())
            )));
        }
        Ok(SpinElement { s, s_star })
    }

    pub(crate) fn new_unchecked(s: Multivector<S>) -> Self {
        let s_star = s.star();
        SpinElement { s, s_star }
    }

    pub fn identity() -> Self {
        Self::new_unchecked(Multivector::one())
    }

    pub fn element(&self) -> &Multivector<S> {
        &self.s
    }

    /// `S*`, which is also the inverse.
    pub fn star(&self) -> &Multivector<S> {
        &self.s_star
    }

    pub fn neg(&self) -> Self {
        Self::new_unchecked(self.s.neg())
    }

    pub fn inverse(&self) -> Self {
        Self::new_unchecked(self.s_star.clone())
    }

    /// Group product `self * other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self::new_unchecked(self.s.mul(&other.s))
    }

    /// `G_S(U) = S* U S`.
    pub fn sandwich(&self, u: &Multivector<S>) -> Multivector<S> {
        self.s_star.mul(u).mul(&self.s)
    }

    /// `S U S*`, the inverse action.
    pub fn inverse_sandwich(&self, u: &Multivector<S>) -> Multivector<S> {
        self.s.mul(u).mul(&self.s_star)
    }

    /// `p^nu_mu` from `S* l^nu S = p^nu_mu l^mu`.
    pub fn lorentz(&self, tol: f64) -> Result<LorentzMatrix<S::Real>> {
        read_lorentz(|u| self.sandwich(u), tol)
    }

    /// `q^nu_mu` from `S l^nu S* = q^nu_mu l^mu`; the inverse of [`Self::lorentz`].
    pub fn inverse_lorentz(&self, tol: f64) -> Result<LorentzMatrix<S::Real>> {
        read_lorentz(|u| self.inverse_sandwich(u), tol)
    }

    pub fn to_float(&self) -> SpinElement<Float> {
        SpinElement::new_unchecked(self.s.to_float())
    }
}

fn read_lorentz<S: Scalar>(
    action: impl Fn(&Multivector<S>) -> Multivector<S>,
    tol: f64,
) -> Result<LorentzMatrix<S::Real>> {
    let mut p: [[S::Real; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| S::Real::zero()));
    for (nu, row) in p.iter_mut().enumerate() {
        let image = action(&Multivector::basis_vector(nu));
        let stray = image.map(|b, c| if b.grade() == 1 { S::zero() } else { c.clone() });
        if !stray.is_negligible(tol) {
            return Err(Error::InvalidSpin(format!(
                "image of l^{nu} has non-vector part of size {:.3e}",
                stray.max_coeff()
            )));
        }
        for (mu, slot) in row.iter_mut().enumerate() {
            let c = image.coeff(Blade::vector(mu));
            if !c.im().is_negligible(tol) {
                return Err(Error::InvalidSpin(format!("image of l^{nu} is not real")));
            }
            *slot = c.re();
        }
    }
    Ok(LorentzMatrix { p })
}

impl SpinElement<Float> {
    /// `exp(b)` for a real bivector, by power series.
    pub fn from_bivector(b: &Multivector<Float>) -> Result<Self> {
        if !b.is_homogeneous(2, 0.0) || !b.is_real(0.0) {
            return Err(Error::domain("exponent must be a real bivector"));
        }
        let s = exp_series(b)?;
        SpinElement::new(s, 1e-10)
    }

    pub fn random(rng: &mut TestRng) -> Self {
        Self::from_bivector(&random::bivector_float(rng)).expect("bounded bivector exponentiates")
    }
}

/// Power series `sum b^n / n!` until a term's norm drops below [`SERIES_CUTOFF`].
pub fn exp_series(b: &Multivector<Float>) -> Result<Multivector<Float>> {
    let mut sum = Multivector::one();
    let mut term = Multivector::one();
    for n in 1..=SERIES_MAX_TERMS {
        term = term.mul(b).scale_real(&(1.0 / n as f64));
        let size = term.norm();
        if !size.is_finite() {
            return Err(Error::NumericalFailure(format!("exponential series diverged at term {n}")));
        }
        sum = sum.add(&term);
        if size < SERIES_CUTOFF {
            return Ok(sum);
        }
    }
    Err(Error::NumericalFailure(format!(
        "exponential series did not converge in {SERIES_MAX_TERMS} terms"
    )))
}

impl SpinElement<Exact> {
    /// Rotation in the spatial plane `(i, j)`, rationally parametrized:
    /// `a + b l^{ij}` with `a = (1-s^2)/(1+s^2)`, `b = 2s/(1+s^2)`.
    pub fn rotation(i: usize, j: usize, s: &BigRational) -> Self {
        assert!(0 < i && i < j && j < 4, "spatial plane");
        let one = BigRational::one();
        let s2 = s.times(s);
        let den = one.plus(&s2);
        let a = one.minus(&s2).divided(&den).expect("positive");
        let b = s.plus(s).divided(&den).expect("positive");
        Self::from_pair(a, b, Blade::from_indices(&[i, j]).expect("ascending"))
    }

    /// Boost along axis `i`: `a + b l^{0i}` with `a = (1+s^2)/(1-s^2)`,
    /// `b = 2s/(1-s^2)`, for `|s| < 1`.
    pub fn boost(i: usize, s: &BigRational) -> Self {
        assert!(0 < i && i < 4, "spatial axis");
        let one = BigRational::one();
        let s2 = s.times(s);
        let den = one.minus(&s2);
        assert!(den.to_f64() > 0.0, "|s| < 1");
        let a = one.plus(&s2).divided(&den).expect("nonzero");
        let b = s.plus(s).divided(&den).expect("nonzero");
        Self::from_pair(a, b, Blade::from_indices(&[0, i]).expect("ascending"))
    }

    fn from_pair(a: BigRational, b: BigRational, blade: Blade) -> Self {
        let mut s = Multivector::scalar(Exact::from_real(a));
        s.set(blade, Exact::from_real(b));
        Self::new_unchecked(s)
    }

    /// Product of `factors` random rational rotations and boosts.
    pub fn random(rng: &mut TestRng, factors: usize) -> Self {
        (0..factors).fold(Self::identity(), |acc, _| {
            let t = random::open_unit_rational(rng);
            let f = match random::index(rng, 6) {
                0 => Self::rotation(1, 2, &t),
                1 => Self::rotation(1, 3, &t),
                2 => Self::rotation(2, 3, &t),
                k => Self::boost(k - 2, &t),
            };
            acc.compose(&f)
        })
    }
}

/// Result of solving `S* H S = l^0, S* I S = -l^{12}, S* K S = -l^{13}`.
#[derive(Clone, Debug)]
pub struct SpinRecovery<S> {
    /// Solution normalized so that its first nonzero coefficient is positive.
    pub spin: SpinElement<S>,
    /// The negated solution, which satisfies the same equations.
    pub alternate: SpinElement<S>,
    pub nullspace_dim: usize,
}

fn even_blades() -> Vec<Blade> {
    Blade::all().filter(|b| b.grade() % 2 == 0).collect()
}

/// Stacks `A X + sign X B = 0` over real even `X` into real rows.
fn linear_conditions<S: Scalar>(conditions: &[(Multivector<S>, i64, Multivector<S>)]) -> Mat<S::Real> {
    let basis = even_blades();
    let rows = conditions.len() * 32;
    let mut m = Mat::zeros(rows, basis.len());
    for (col, blade) in basis.iter().enumerate() {
        let x = Multivector::<S>::blade(*blade);
        for (k, (a, sign, b)) in conditions.iter().enumerate() {
            let right = x.mul(b).scale(&S::from_i64(*sign));
            let value = a.mul(&x).add(&right);
            for (i, c) in value.coeffs().iter().enumerate() {
                m.set(k * 32 + 2 * i, col, c.re());
                m.set(k * 32 + 2 * i + 1, col, c.im());
            }
        }
    }
    m
}

fn combine<S: Scalar>(v: &[S::Real]) -> Multivector<S> {
    let mut x = Multivector::zero();
    for (blade, c) in even_blades().into_iter().zip(v) {
        x.set(blade, S::from_real(c.clone()));
    }
    x
}

/// Rescales `x` so that `x* x = l`; requires `x* x` to be a positive scalar.
fn normalize<S: Scalar>(x: &Multivector<S>, tol: f64) -> Option<Multivector<S>> {
    let sq = x.star().mul(x);
    let c = sq.trace();
    if !sq.sub(&Multivector::scalar(c.clone())).is_negligible(tol) || c.re().to_f64() <= 0.0 {
        return None;
    }
    let root = c.re().sqrt()?;
    let inv = root.recip()?;
    let mut s = x.scale_real(&inv);
    let negative = s
        .terms()
        .find(|(_, c)| !c.is_negligible(tol))
        .is_some_and(|(_, first)| first.re().to_f64() < 0.0);
    if negative {
        s = s.neg();
    }
    Some(s)
}

/// Finds `S` with `S* h S = l^0`, `S* i2 S = -l^{12}`, `S* k2 S = -l^{13}`.
///
/// The equations are linear in `S` once rewritten as `h S = S l^0` and so on;
/// the null space over the eight even blades is one-dimensional and fixes `S`
/// up to scale, and `S* S = l` fixes the scale up to sign.
pub fn recover_spin<S: Scalar>(
    h: &Multivector<S>,
    i2: &Multivector<S>,
    k2: &Multivector<S>,
    tol: f64,
) -> Result<SpinRecovery<S>> {
    let gens = SecondaryGenerators::new(h.clone(), i2.clone(), k2.clone(), tol)?;
    if !gens.h().is_homogeneous(1, tol) || !gens.i().is_homogeneous(2, tol) || !gens.k().is_homogeneous(2, tol) {
        return Err(Error::generator("recovery needs H of grade 1 and I, K of grade 2"));
    }
    let canonical = SecondaryGenerators::<S>::canonical();
    let m = linear_conditions(&[
        (h.clone(), -1, canonical.h().clone()),
        (i2.clone(), -1, canonical.i().clone()),
        (k2.clone(), -1, canonical.k().clone()),
    ]);
    let null = S::Real::nullspace(&m, NULLSPACE_TOLERANCE);
    if null.len() != 1 {
        return Err(Error::NumericalFailure(format!(
            "expected a one-dimensional solution space, found dimension {}",
            null.len()
        )));
    }
    let x = combine::<S>(&null[0]);
    let s = normalize(&x, tol)
        .ok_or_else(|| Error::NumericalFailure("solution cannot be normalized to S*S = l".into()))?;
    let spin = SpinElement::new(s, tol)?;
    let checks = [
        (spin.sandwich(h), canonical.h()),
        (spin.sandwich(i2), canonical.i()),
        (spin.sandwich(k2), canonical.k()),
    ];
    if checks.iter().any(|(got, want)| !got.approx_eq(want, tol)) {
        return Err(Error::InternalConsistency("recovered element fails the sandwich equations".into()));
    }
    Ok(SpinRecovery {
        alternate: spin.neg(),
        spin,
        nullspace_dim: null.len(),
    })
}

/// Some `S` with `S* h S = l^0` and `S* i2 S = -l^{12}`. The solution space
/// is two-dimensional, so the answer is one of many.
pub fn recover_spin_pair<S: Scalar>(
    h: &Multivector<S>,
    i2: &Multivector<S>,
    tol: f64,
) -> Result<(SpinElement<S>, usize)> {
    let one = Multivector::<S>::one();
    let mut violations = Vec::new();
    if !h.is_homogeneous(1, tol) {
        violations.push("H must have grade 1".to_string());
    }
    if !i2.is_homogeneous(2, tol) {
        violations.push("I must have grade 2".to_string());
    }
    if !h.mul(h).approx_eq(&one, tol) {
        violations.push("H^2 = l".to_string());
    }
    if !i2.mul(i2).approx_eq(&one.neg(), tol) {
        violations.push("I^2 = -l".to_string());
    }
    if !h.commutator(i2).is_negligible(tol) {
        violations.push("[H, I] = 0".to_string());
    }
    if !violations.is_empty() {
        return Err(Error::InvalidGenerator { violations });
    }
    let canonical = SecondaryGenerators::<S>::canonical();
    let m = linear_conditions(&[
        (h.clone(), -1, canonical.h().clone()),
        (i2.clone(), -1, canonical.i().clone()),
    ]);
    let null = S::Real::nullspace(&m, NULLSPACE_TOLERANCE);
    for v in &null {
        if let Some(s) = normalize(&combine::<S>(v), tol) {
            let spin = SpinElement::new(s, tol)?;
            if spin.sandwich(h).approx_eq(canonical.h(), tol) && spin.sandwich(i2).approx_eq(canonical.i(), tol) {
                return Ok((spin, null.len()));
            }
        }
    }
    Err(Error::NumericalFailure(format!(
        "no normalizable solution in a {}-dimensional null space",
        null.len()
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    type Mv = Multivector<Exact>;

    #[test]
    fn rational_elements_are_spin() {
        let r = SpinElement::rotation(1, 2, &rational(1, 3));
        let b = SpinElement::boost(3, &rational(-1, 2));
        for s in [&r, &b, &r.compose(&b)] {
            assert_eq!(s.star().mul(s.element()), Mv::one());
            let p = s.lorentz(0.0).unwrap();
            assert!(p.is_proper_orthochronous(0.0));
            assert_eq!(p.compose(&s.inverse_lorentz(0.0).unwrap()), LorentzMatrix::identity());
        }
    }

    #[test]
    fn identity_has_identity_matrix() {
        let p = SpinElement::<Exact>::identity().lorentz(0.0).unwrap();
        assert_eq!(p, LorentzMatrix::identity());
    }

    #[test]
    fn bivector_exponential_closed_forms() {
        let theta = std::f64::consts::FRAC_PI_2;
        let b = Multivector::<Float>::basis(&[1, 2]).scale_real(&theta);
        let s = SpinElement::from_bivector(&b).unwrap();
        let expected = Multivector::<Float>::one()
            .scale_real(&theta.cos())
            .add(&Multivector::basis(&[1, 2]).scale_real(&theta.sin()));
        assert!(s.element().approx_eq(&expected, 1e-14));

        let alpha: f64 = 0.7;
        let b = Multivector::<Float>::basis(&[0, 1]).scale_real(&(alpha / 2.0));
        let s = SpinElement::from_bivector(&b).unwrap();
        let expected = Multivector::<Float>::one()
            .scale_real(&(alpha / 2.0).cosh())
            .add(&Multivector::basis(&[0, 1]).scale_real(&(alpha / 2.0).sinh()));
        assert!(s.element().approx_eq(&expected, 1e-14));
    }

    #[test]
    fn exponent_must_be_bivector() {
        assert!(SpinElement::from_bivector(&Multivector::basis_vector(0)).is_err());
    }

    #[test]
    fn canonical_recovery_is_identity() {
        let c = SecondaryGenerators::<Exact>::canonical();
        let rec = recover_spin(c.h(), c.i(), c.k(), 0.0).unwrap();
        assert_eq!(rec.spin.element(), &Mv::one());
        assert_eq!(rec.alternate.element(), &Mv::one().neg());
        assert_eq!(rec.nullspace_dim, 1);
    }
}
