//! Secondary generators, the idempotent `t = (l + H)(l - iI)/4`, the left
//! ideal it generates, and the matrix representation induced on it.

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::matrix4::{Column4, Matrix4};
use crate::multivector::Multivector;
use crate::random::TestRng;
use crate::scalar::{Exact, Float, Scalar};
use crate::spin::SpinElement;

/// A validated quadruple `(H, l^5, I, K)`; `l^5 = l^{0123}` is implicit.
#[derive(Clone, Debug, PartialEq)]
pub struct SecondaryGenerators<S> {
    h: Multivector<S>,
    i: Multivector<S>,
    k: Multivector<S>,
}

impl<S: Scalar> SecondaryGenerators<S> {
    /// Checks `H^2 = l`, `I^2 = K^2 = -l`, `[H,I] = [H,K] = 0`, `{I,K} = 0`
    /// with `H` of grade 1 and `I`, `K` of grade 2; every failure is listed.
    pub fn new(h: Multivector<S>, i: Multivector<S>, k: Multivector<S>, tol: f64) -> Result<Self> {
        let one = Multivector::<S>::one();
        let minus_one = one.neg();
        let mut violations = Vec::new();
        let mut require = |ok: bool, what: &str| {
            if !ok {
                violations.push(what.to_string());
            }
        };
        require(h.is_homogeneous(1, tol) && !h.is_negligible(tol), "H must have grade 1");
        require(i.is_homogeneous(2, tol) && !i.is_negligible(tol), "I must have grade 2");
        require(k.is_homogeneous(2, tol) && !k.is_negligible(tol), "K must have grade 2");
        require(h.mul(&h).approx_eq(&one, tol), "H^2 = l");
        require(i.mul(&i).approx_eq(&minus_one, tol), "I^2 = -l");
        require(k.mul(&k).approx_eq(&minus_one, tol), "K^2 = -l");
        require(h.commutator(&i).is_negligible(tol), "[H, I] = 0");
        require(h.commutator(&k).is_negligible(tol), "[H, K] = 0");
        require(i.anticommutator(&k).is_negligible(tol), "{I, K} = 0");
        if violations.is_empty() {
            Ok(SecondaryGenerators { h, i, k })
        } else {
            Err(Error::InvalidGenerator { violations })
        }
    }

    /// `H = l^0`, `I = -l^{12}`, `K = -l^{13}`.
    pub fn canonical() -> Self {
        SecondaryGenerators {
            h: Multivector::basis_vector(0),
            i: Multivector::basis(&[1, 2]).neg(),
            k: Multivector::basis(&[1, 3]).neg(),
        }
    }

    pub fn h(&self) -> &Multivector<S> {
        &self.h
    }

    pub fn i(&self) -> &Multivector<S> {
        &self.i
    }

    pub fn k(&self) -> &Multivector<S> {
        &self.k
    }

    pub fn l5() -> Multivector<S> {
        Multivector::pseudoscalar()
    }

    /// `(S* H S, l^5, S* I S, S* K S)`.
    pub fn transformed(&self, s: &SpinElement<S>) -> Self {
        SecondaryGenerators {
            h: s.sandwich(&self.h),
            i: s.sandwich(&self.i),
            k: s.sandwich(&self.k),
        }
    }

    /// The relations implied by the definition: `(H, l^5)` generate Cl(1,1),
    /// `(I, K)` generate Cl(0,2), and `H`, `l^5` commute with `I`, `K`.
    pub fn derived_relations(&self, tol: f64) -> Vec<(&'static str, bool)> {
        let one = Multivector::<S>::one();
        let l5 = Self::l5();
        vec![
            ("(l^5)^2 = -l", l5.mul(&l5).approx_eq(&one.neg(), tol)),
            ("{H, l^5} = 0", self.h.anticommutator(&l5).is_negligible(tol)),
            ("{I, K} = 0", self.i.anticommutator(&self.k).is_negligible(tol)),
            ("[l^5, I] = 0", l5.commutator(&self.i).is_negligible(tol)),
            ("[l^5, K] = 0", l5.commutator(&self.k).is_negligible(tol)),
        ]
    }

    /// The sixteen products `l, H, I, K, HI, ..., l^5 HIK`.
    pub fn basis16(&self) -> [Multivector<S>; 16] {
        let (h, i, k) = (&self.h, &self.i, &self.k);
        let l5 = Self::l5();
        let first: [Multivector<S>; 8] = [
            Multivector::one(),
            h.clone(),
            i.clone(),
            k.clone(),
            h.mul(i),
            h.mul(k),
            i.mul(k),
            h.mul(i).mul(k),
        ];
        std::array::from_fn(|n| if n < 8 { first[n].clone() } else { l5.mul(&first[n - 8]) })
    }

    /// [`Self::basis16`] after checking linear independence and that every
    /// element but the first is traceless.
    pub fn basis16_checked(&self, tol: f64) -> Result<[Multivector<S>; 16]> {
        let basis = self.basis16();
        let columns: Vec<Vec<S>> = basis.iter().map(|b| b.coeffs().to_vec()).collect();
        let rank = Mat::from_columns(&columns).rank(rank_tolerance::<S>());
        let mut violations = Vec::new();
        if rank != 16 {
            violations.push(format!("basis has rank {rank}, expected 16"));
        }
        for (n, b) in basis.iter().enumerate().skip(1) {
            if !b.trace().is_negligible(tol) {
                violations.push(format!("basis element {n} has nonzero trace"));
            }
        }
        if violations.is_empty() {
            Ok(basis)
        } else {
            Err(Error::InvalidGenerator { violations })
        }
    }
}

impl SecondaryGenerators<Exact> {
    /// Canonical generators moved by a random exact spin element.
    pub fn random(rng: &mut TestRng) -> Self {
        Self::canonical().transformed(&SpinElement::<Exact>::random(rng, 3))
    }
}

impl SecondaryGenerators<Float> {
    pub fn random(rng: &mut TestRng) -> Self {
        Self::canonical().transformed(&SpinElement::<Float>::random(rng))
    }
}

pub(crate) fn rank_tolerance<S: Scalar>() -> f64 {
    if S::EXACT {
        0.0
    } else {
        1e-9
    }
}

/// The pair `(H, I)` of a first-order equation: `H^2 = l`, `I^2 = -l`,
/// `[H, I] = 0`, `H` of grade 1, `I` of grade 2.
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorPair<S> {
    pub h: Multivector<S>,
    pub i: Multivector<S>,
}

impl<S: Scalar> GeneratorPair<S> {
    pub fn new(h: Multivector<S>, i: Multivector<S>, tol: f64) -> Result<Self> {
        let one = Multivector::<S>::one();
        let mut violations = Vec::new();
        if !h.is_homogeneous(1, tol) {
            violations.push("H must have grade 1".to_string());
        }
        if !i.is_homogeneous(2, tol) {
            violations.push("I must have grade 2".to_string());
        }
        if !h.mul(&h).approx_eq(&one, tol) {
            violations.push("H^2 = e".to_string());
        }
        if !i.mul(&i).approx_eq(&one.neg(), tol) {
            violations.push("I^2 = -e".to_string());
        }
        if !h.commutator(&i).is_negligible(tol) {
            violations.push("[H, I] = 0".to_string());
        }
        if violations.is_empty() {
            Ok(GeneratorPair { h, i })
        } else {
            Err(Error::InvalidGenerator { violations })
        }
    }
}

impl<S: Scalar> From<&SecondaryGenerators<S>> for GeneratorPair<S> {
    fn from(g: &SecondaryGenerators<S>) -> Self {
        GeneratorPair {
            h: g.h.clone(),
            i: g.i.clone(),
        }
    }
}

/// Idempotent, ideal basis `t_k = F_k t`, and the factors `F_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct IdealBasis<S> {
    gens: SecondaryGenerators<S>,
    t: Multivector<S>,
    f: [Multivector<S>; 4],
    tk: [Multivector<S>; 4],
}

impl<S: Scalar> IdealBasis<S> {
    /// Builds the basis and verifies `t^2 = t`, `t_k t_1 = t_k`,
    /// `t_k t_n = 0` for `n != 1`, `(t_k, t^n) = delta`, `Ht = t`, `It = it`.
    pub fn new(gens: SecondaryGenerators<S>, tol: f64) -> Result<Self> {
        let basis = Self::build(gens);
        basis.verify(tol)?;
        Ok(basis)
    }

    fn build(gens: SecondaryGenerators<S>) -> Self {
        let one = Multivector::<S>::one();
        let quarter = S::from_ratio(1, 4);
        let t = one
            .add(&gens.h)
            .mul(&one.sub(&gens.i.scale(&S::i())))
            .scale(&quarter);
        let l5 = SecondaryGenerators::<S>::l5();
        let f = [
            one.clone(),
            gens.k.clone(),
            gens.i.mul(&l5).neg(),
            gens.k.mul(&gens.i).mul(&l5).neg(),
        ];
        let tk = std::array::from_fn(|n| f[n].mul(&t));
        IdealBasis { gens, t, f, tk }
    }

    fn verify(&self, tol: f64) -> Result<()> {
        let mut failures = Vec::new();
        if !self.t.mul(&self.t).approx_eq(&self.t, tol) {
            failures.push("t^2 = t".to_string());
        }
        for k in 0..4 {
            for n in 0..4 {
                let prod = self.tk[k].mul(&self.tk[n]);
                let expected = if n == 0 { self.tk[k].clone() } else { Multivector::zero() };
                if !prod.approx_eq(&expected, tol) {
                    failures.push(format!("t_{} t_{}", k + 1, n + 1));
                }
                let sp = self.scalar_product(&self.tk[k], &self.tk[n]);
                let delta = if k == n { S::one() } else { S::zero() };
                if !sp.approx_eq(&delta, tol) {
                    failures.push(format!("(t_{}, t^{}) = {}", k + 1, n + 1, u8::from(k == n)));
                }
            }
        }
        if !self.gens.h.mul(&self.t).approx_eq(&self.t, tol) {
            failures.push("Ht = t".to_string());
        }
        if !self.gens.i.mul(&self.t).approx_eq(&self.t.scale(&S::i()), tol) {
            failures.push("It = it".to_string());
        }
        if failures.is_empty() {
            Ok(())
        } else {
            Err(Error::InternalConsistency(format!("ideal basis: {}", failures.join(", "))))
        }
    }

    pub fn canonical() -> Self {
        Self::build(SecondaryGenerators::canonical())
    }

    pub fn generators(&self) -> &SecondaryGenerators<S> {
        &self.gens
    }

    pub fn t(&self) -> &Multivector<S> {
        &self.t
    }

    /// `t_k` for `k = 1..=4`.
    pub fn t_lower(&self, k: usize) -> &Multivector<S> {
        &self.tk[k - 1]
    }

    /// `t^k`; the dual basis coincides with `t_k`.
    pub fn t_upper(&self, k: usize) -> &Multivector<S> {
        &self.tk[k - 1]
    }

    pub fn basis(&self) -> &[Multivector<S>; 4] {
        &self.tk
    }

    /// `F_k` for `k = 1..=4`.
    pub fn factor(&self, k: usize) -> &Multivector<S> {
        &self.f[k - 1]
    }

    /// `U† = H U* H`.
    pub fn dagger(&self, u: &Multivector<S>) -> Multivector<S> {
        u.hermitian_unchecked(&self.gens.h)
    }

    /// `(U, V) = 4 Tr(U V†)`.
    pub fn scalar_product(&self, u: &Multivector<S>, v: &Multivector<S>) -> S {
        u.mul(&self.dagger(v)).trace().times(&S::from_i64(4))
    }

    pub fn contains(&self, u: &Multivector<S>, tol: f64) -> bool {
        u.mul(&self.t).approx_eq(u, tol)
    }

    /// Components `(U, t^k)`.
    pub fn decompose(&self, u: &Multivector<S>) -> Column4<S> {
        std::array::from_fn(|k| self.scalar_product(u, &self.tk[k]))
    }

    /// `sum psi_k t_k`.
    pub fn compose(&self, psi: &Column4<S>) -> Multivector<S> {
        self.tk
            .iter()
            .zip(psi)
            .fold(Multivector::zero(), |acc, (t, c)| acc.add(&t.scale(c)))
    }

    /// `gamma(U)^n_k = (U t_k, t^n)`, row `n`, column `k`.
    pub fn gamma(&self, u: &Multivector<S>) -> Matrix4<S> {
        let cols: Vec<Column4<S>> = self.tk.iter().map(|t| self.decompose(&u.mul(t))).collect();
        Matrix4::from_fn(|n, k| cols[k][n].clone())
    }

    /// [`Self::gamma`] together with the reconstruction check
    /// `U t_k = gamma(U)^n_k t_n`.
    pub fn gamma_checked(&self, u: &Multivector<S>, tol: f64) -> Result<Matrix4<S>> {
        let g = self.gamma(u);
        for k in 0..4 {
            let column: Column4<S> = std::array::from_fn(|n| g.m[n][k].clone());
            if !self.compose(&column).approx_eq(&u.mul(&self.tk[k]), tol) {
                return Err(Error::InternalConsistency(format!(
                    "U t_{} is not reproduced by its matrix column",
                    k + 1
                )));
            }
        }
        Ok(g)
    }

    /// Basis after the generators are moved by `S`: `t'_k = S* t_k S`.
    pub fn representation_change(&self, s: &SpinElement<S>) -> Self {
        Self::build(self.gens.transformed(s))
    }

    /// `θ = ψ_k t^k`.
    pub fn ideal_from_bispinor(&self, psi: &Column4<S>) -> Multivector<S> {
        self.compose(psi)
    }

    pub fn bispinor_from_ideal(&self, theta: &Multivector<S>, tol: f64) -> Result<Column4<S>> {
        if !self.contains(theta, tol) {
            return Err(Error::domain("element is not in the left ideal"));
        }
        Ok(self.decompose(theta))
    }

    /// The real even `Ω = F_k(α_k l + β_k I)` with `Ω t = φ`, where
    /// `(φ, t^k) = α_k + i β_k`.
    pub fn even_from_ideal(&self, phi: &Multivector<S>, tol: f64) -> Result<Multivector<S>> {
        if !self.contains(phi, tol) {
            return Err(Error::domain("element is not in the left ideal"));
        }
        Ok(self.even_from_components(&self.decompose(phi)))
    }

    /// `F_k(α_k l + β_k I)` for components `α_k + i β_k`.
    pub fn even_from_components(&self, psi: &Column4<S>) -> Multivector<S> {
        let one = Multivector::<S>::one();
        self.f.iter().zip(psi).fold(Multivector::zero(), |acc, (f, c)| {
            let inner = one
                .scale(&S::from_real(c.re()))
                .add(&self.gens.i.scale(&S::from_real(c.im())));
            acc.add(&f.mul(&inner))
        })
    }

    /// Rank of the real-linear map `Ω -> Ω t` on the eight even blades.
    pub fn even_map_rank(&self) -> usize {
        let even: Vec<_> = crate::blade::Blade::all().filter(|b| b.grade() % 2 == 0).collect();
        let mut m = Mat::<S::Real>::zeros(32, even.len());
        for (col, b) in even.iter().enumerate() {
            let image = Multivector::<S>::blade(*b).mul(&self.t);
            for (i, c) in image.coeffs().iter().enumerate() {
                m.set(2 * i, col, c.re());
                m.set(2 * i + 1, col, c.im());
            }
        }
        m.rank(rank_tolerance::<S>())
    }

    /// `Ψ' t' - ψ'^k t'_k` for `Ψ' = Ψ S`, `t' = S* t S`, `ψ' = γ(S) ψ`,
    /// where `ψ^k = (Ψ t, t^k)`. Vanishes identically.
    pub fn spin_invariance_defect(&self, psi_even: &Multivector<S>, s: &SpinElement<S>) -> Multivector<S> {
        let psi = self.decompose(&psi_even.mul(&self.t));
        let moved = self.representation_change(s);
        let psi_new = self.gamma(s.element()).apply(&psi);
        psi_even
            .mul(s.element())
            .mul(&moved.t)
            .sub(&moved.compose(&psi_new))
    }
}

/// Dirac matrices in the standard representation, row-major.
pub fn dirac_matrices<S: Scalar>() -> [Matrix4<S>; 4] {
    [
        Matrix4::from_gaussian([
            [(1, 0), (0, 0), (0, 0), (0, 0)],
            [(0, 0), (1, 0), (0, 0), (0, 0)],
            [(0, 0), (0, 0), (-1, 0), (0, 0)],
            [(0, 0), (0, 0), (0, 0), (-1, 0)],
        ]),
        Matrix4::from_gaussian([
            [(0, 0), (0, 0), (0, 0), (-1, 0)],
            [(0, 0), (0, 0), (-1, 0), (0, 0)],
            [(0, 0), (1, 0), (0, 0), (0, 0)],
            [(1, 0), (0, 0), (0, 0), (0, 0)],
        ]),
        Matrix4::from_gaussian([
            [(0, 0), (0, 0), (0, 0), (0, 1)],
            [(0, 0), (0, 0), (0, -1), (0, 0)],
            [(0, 0), (0, -1), (0, 0), (0, 0)],
            [(0, 1), (0, 0), (0, 0), (0, 0)],
        ]),
        Matrix4::from_gaussian([
            [(0, 0), (0, 0), (-1, 0), (0, 0)],
            [(0, 0), (0, 0), (0, 0), (1, 0)],
            [(1, 0), (0, 0), (0, 0), (0, 0)],
            [(0, 0), (-1, 0), (0, 0), (0, 0)],
        ]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::rng;
    use crate::scalar::{rational, Field};

    type Mv = Multivector<Exact>;

    #[test]
    fn canonical_generators_are_valid() {
        let c = SecondaryGenerators::<Exact>::canonical();
        assert!(SecondaryGenerators::new(c.h().clone(), c.i().clone(), c.k().clone(), 0.0).is_ok());
        assert!(c.derived_relations(0.0).iter().all(|(_, ok)| *ok));
    }

    #[test]
    fn wrong_h_is_named() {
        let err = SecondaryGenerators::new(Mv::basis_vector(1), Mv::basis(&[1, 2]).neg(), Mv::basis(&[1, 3]).neg(), 0.0)
            .unwrap_err();
        match err {
            Error::InvalidGenerator { violations } => assert!(violations.contains(&"H^2 = l".to_string())),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn canonical_idempotent_expansion() {
        let basis = IdealBasis::<Exact>::new(SecondaryGenerators::canonical(), 0.0).unwrap();
        // (l + l^0)(l + i l^{12}) / 4
        let one = Mv::one();
        let expected = one
            .add(&Mv::basis_vector(0))
            .mul(&one.add(&Mv::basis(&[1, 2]).scale(&Exact::i())))
            .scale(&Exact::from_real(rational(1, 4)));
        assert_eq!(basis.t(), &expected);
        assert_eq!(basis.scalar_product(basis.t_lower(2), basis.t_upper(2)), Exact::one());
        assert_eq!(basis.scalar_product(basis.t_lower(2), basis.t_upper(3)), Exact::zero());
    }

    #[test]
    fn gamma_reproduces_dirac_matrices() {
        let basis = IdealBasis::<Exact>::canonical();
        let dirac = dirac_matrices::<Exact>();
        for (mu, g) in dirac.iter().enumerate() {
            assert_eq!(&basis.gamma_checked(&Mv::basis_vector(mu), 0.0).unwrap(), g, "gamma^{mu}");
        }
        assert_eq!(basis.gamma(&Mv::one()), Matrix4::identity());
    }

    #[test]
    fn random_generators_give_valid_bases() {
        let mut r = rng(3, 0);
        for _ in 0..3 {
            let g = SecondaryGenerators::<Exact>::random(&mut r);
            let basis = IdealBasis::new(g.clone(), 0.0).unwrap();
            assert_eq!(basis.even_map_rank(), 8);
            assert!(g.basis16_checked(0.0).is_ok());
        }
    }

    #[test]
    fn even_from_ideal_examples() {
        let basis = IdealBasis::<Exact>::canonical();
        assert_eq!(basis.even_from_ideal(basis.t(), 0.0).unwrap(), Mv::one());
        let it = basis.t().scale(&Exact::i());
        assert_eq!(&basis.even_from_ideal(&it, 0.0).unwrap(), basis.generators().i());
        assert!(basis.even_from_ideal(&Mv::basis_vector(1), 0.0).is_err());
    }
}
