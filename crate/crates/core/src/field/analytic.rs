//! Symbolic fields: finite sums of `c · x^a · exp(i φ(x))` with constant
//! multivector `c`, monomial `x^a` and polynomial phase `φ`.

use std::cmp::Ordering;

use num_complex::Complex64;
use std::sync::LazyLock;

use super::poly::{add_powers, monomial_value, Poly, Powers};
use super::{FieldOps, ValueMap, ValuePairing};
use crate::error::Result;
use crate::literal::{self, Cursor};
use crate::multivector::Multivector;
use crate::random::{self, rng, stream_id, RandomScalar, TestRng};
use crate::scalar::{Exact, Field, Float, RealField, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Term<S: Scalar> {
    pub coeff: Multivector<S>,
    pub powers: Powers,
    pub phase: Poly<S::Real>,
}

impl<S: Scalar> Term<S> {
    fn key_cmp(&self, other: &Self) -> Ordering {
        self.phase
            .total_cmp(&other.phase)
            .then_with(|| self.powers.cmp(&other.powers))
    }

    fn same_key(&self, other: &Self) -> bool {
        self.powers == other.powers && self.phase == other.phase
    }

    /// `x^a exp(i φ(x))` at a point.
    pub fn factor_at(&self, x: &[f64; 4]) -> Complex64 {
        Complex64::from_polar(monomial_value(&self.powers, x), self.phase.eval(x))
    }
}

/// A field with a closed form, differentiated symbolically.
#[derive(Clone, Debug, PartialEq)]
pub struct AnalyticField<S: Scalar> {
    terms: Vec<Term<S>>,
}

/// Fixed probe points in `[-1, 1]^4` used for pointwise norms.
pub fn sample_points() -> &'static [[f64; 4]] {
    static POINTS: LazyLock<Vec<[f64; 4]>> = LazyLock::new(|| {
        let mut r = rng(0x5eed, stream_id("analytic-probe-points"));
        let mut pts = vec![[0.0; 4]];
        pts.extend((0..23).map(|_| std::array::from_fn(|_| random::uniform(&mut r, -1.0, 1.0))));
        pts
    });
    &POINTS
}

impl<S: Scalar> AnalyticField<S> {
    pub fn zero() -> Self {
        AnalyticField { terms: Vec::new() }
    }

    pub fn constant(value: Multivector<S>) -> Self {
        Self::from_terms(vec![Term { coeff: value, powers: [0; 4], phase: Poly::zero() }])
    }

    pub fn monomial(value: Multivector<S>, powers: Powers) -> Self {
        Self::from_terms(vec![Term { coeff: value, powers, phase: Poly::zero() }])
    }

    /// `value · exp(i p·x)`.
    pub fn plane_wave(value: Multivector<S>, p: &[S::Real; 4]) -> Self {
        Self::from_terms(vec![Term { coeff: value, powers: [0; 4], phase: Poly::linear(p) }])
    }

    /// `value · exp(i φ(x))`.
    pub fn with_phase(value: Multivector<S>, phase: Poly<S::Real>) -> Self {
        Self::from_terms(vec![Term { coeff: value, powers: [0; 4], phase }])
    }

    /// The real polynomial `f` as a scalar-valued field.
    pub fn scalar_polynomial(f: &Poly<S::Real>) -> Self {
        Self::from_terms(f.terms().iter().map(|(a, c)| Term {
            coeff: Multivector::scalar(S::from_real(c.clone())),
            powers: *a,
            phase: Poly::zero(),
        }))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = Term<S>>) -> Self {
        let mut v: Vec<Term<S>> = terms.into_iter().map(absorb_constant_phase).collect();
        v.sort_by(|a, b| a.key_cmp(b));
        let mut out: Vec<Term<S>> = Vec::with_capacity(v.len());
        for t in v {
            match out.last_mut() {
                Some(last) if last.same_key(&t) => last.coeff = last.coeff.add(&t.coeff),
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.coeff.is_zero());
        AnalyticField { terms: out }
    }

    pub fn terms(&self) -> &[Term<S>] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest coefficient magnitude over all terms.
    pub fn max_coeff(&self) -> f64 {
        self.terms.iter().map(|t| t.coeff.max_coeff()).fold(0.0, f64::max)
    }

    pub fn evaluate(&self, x: &[f64; 4]) -> Multivector<Float> {
        self.terms.iter().fold(Multivector::zero(), |acc, t| {
            acc.add(&t.coeff.to_float().scale(&t.factor_at(x)))
        })
    }

    pub fn to_float(&self) -> AnalyticField<Float> {
        AnalyticField::from_terms(self.terms.iter().map(|t| Term {
            coeff: t.coeff.to_float(),
            powers: t.powers,
            phase: t.phase.map(|c| c.to_f64()),
        }))
    }

    /// The field in coordinates `y` with `x^mu = q[mu][nu] y^nu`.
    pub fn substitute(&self, q: &[[S::Real; 4]; 4]) -> Self {
        Self::from_terms(self.terms.iter().flat_map(|t| {
            let phase = t.phase.substitute(q);
            let monomial = Poly::monomial(t.powers, <S::Real as Field>::one()).substitute(q);
            monomial
                .terms()
                .iter()
                .map(|(a, c)| Term { coeff: t.coeff.scale_real(c), powers: *a, phase: phase.clone() })
                .collect::<Vec<_>>()
        }))
    }

    /// Real-linear maps split into a part carried by `exp(iφ)` and a part
    /// carried by `exp(-iφ)`.
    fn real_linear_terms(t: &Term<S>, f: ValueMap<'_, S>) -> [Term<S>; 2] {
        let half = S::from_ratio(1, 2);
        let fc = f(&t.coeff);
        let fic = f(&t.coeff.scale(&S::i())).scale(&S::i());
        [
            Term { coeff: fc.sub(&fic).scale(&half), powers: t.powers, phase: t.phase.clone() },
            Term { coeff: fc.add(&fic).scale(&half), powers: t.powers, phase: t.phase.neg() },
        ]
    }
}

fn absorb_constant_phase<S: Scalar>(mut t: Term<S>) -> Term<S> {
    let c = t.phase.constant_term();
    if S::EXACT || c.is_zero() {
        return t;
    }
    let c = c.to_f64();
    let factor = S::from_parts(S::Real::from_f64(c.cos()), S::Real::from_f64(c.sin()));
    t.coeff = t.coeff.scale(&factor);
    t.phase = t.phase.without_constant();
    t
}

impl<S: RandomScalar> AnalyticField<S> {
    /// `n` terms with random complex coefficients, monomials of degree at
    /// most 2 and, for about half of them, a random linear phase.
    pub fn random(rng: &mut TestRng, n: usize) -> Self {
        Self::from_terms((0..n).map(|_| random_term(rng, |r| random::multivector(r))))
    }

    /// Random field whose values are supported on blades selected by `keep`,
    /// real at every point when `real` is set.
    pub fn random_supported(
        rng: &mut TestRng,
        n: usize,
        real: bool,
        keep: impl Fn(crate::Blade) -> bool + Copy,
    ) -> Self {
        let f = Self::from_terms(
            (0..n).map(|_| random_term(rng, |r| random::supported(r, false, keep))),
        );
        if real {
            // Re(F) keeps the support and is real pointwise.
            f.map_real_linear(&|v| v.add(&v.conj()).scale(&S::from_ratio(1, 2)))
        } else {
            f
        }
    }
}

fn random_term<S: RandomScalar>(
    rng: &mut TestRng,
    coeff: impl Fn(&mut TestRng) -> Multivector<S>,
) -> Term<S> {
    let c = coeff(rng);
    let mut powers = [0u32; 4];
    for _ in 0..random::index(rng, 3) {
        powers[random::index(rng, 4)] += 1;
    }
    let phase = if random::bool(rng) {
        let p: [S::Real; 4] = std::array::from_fn(|_| S::random_real(rng));
        Poly::linear(&p)
    } else {
        Poly::zero()
    };
    Term { coeff: c, powers, phase }
}

impl<S: Scalar> FieldOps<S> for AnalyticField<S> {
    fn zero_like(&self) -> Self {
        Self::zero()
    }

    fn constant_like(&self, value: &Multivector<S>) -> Self {
        Self::constant(value.clone())
    }

    fn partial(&self, mu: usize) -> Self {
        let mut out = Vec::new();
        for t in &self.terms {
            if t.powers[mu] > 0 {
                let mut a = t.powers;
                a[mu] -= 1;
                out.push(Term {
                    coeff: t.coeff.scale(&S::from_i64(t.powers[mu] as i64)),
                    powers: a,
                    phase: t.phase.clone(),
                });
            }
            for (b, r) in t.phase.derivative(mu).terms() {
                out.push(Term {
                    coeff: t.coeff.scale(&S::from_parts(<S::Real as Field>::zero(), r.clone())),
                    powers: add_powers(&t.powers, b),
                    phase: t.phase.clone(),
                });
            }
        }
        Self::from_terms(out)
    }

    fn plus(&self, other: &Self) -> Self {
        Self::from_terms(self.terms.iter().chain(&other.terms).cloned())
    }

    fn scaled(&self, c: &S) -> Self {
        Self::from_terms(self.terms.iter().map(|t| Term { coeff: t.coeff.scale(c), ..t.clone() }))
    }

    fn map_linear(&self, f: ValueMap<'_, S>) -> Self {
        Self::from_terms(self.terms.iter().map(|t| Term { coeff: f(&t.coeff), ..t.clone() }))
    }

    fn map_real_linear(&self, f: ValueMap<'_, S>) -> Self {
        Self::from_terms(self.terms.iter().flat_map(|t| Self::real_linear_terms(t, f)))
    }

    fn product_with(&self, other: &Self, f: ValuePairing<'_, S>) -> Self {
        Self::from_terms(self.terms.iter().flat_map(|a| {
            other.terms.iter().map(move |b| Term {
                coeff: f(&a.coeff, &b.coeff),
                powers: add_powers(&a.powers, &b.powers),
                phase: a.phase.add(&b.phase),
            })
        }))
    }

    fn probe_values(&self) -> Vec<Multivector<Float>> {
        sample_points().iter().map(|x| self.evaluate(x)).collect()
    }

    fn is_identically_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Parses `coeff blade exp(i[p0,p1,p2,p3])` terms joined by `+`/`-`.
/// Coefficient, blade and exponential are each optional, e.g.
/// `(1-i) e01 exp(i[1,0,0,1/2]) - e`.
pub fn parse_analytic(text: &str) -> Result<AnalyticField<Exact>> {
    let mut cur = Cursor::new(text);
    let mut terms = Vec::new();
    cur.skip_ws();
    let mut negative = if cur.eat('-') {
        true
    } else {
        cur.eat('+');
        false
    };
    loop {
        cur.skip_ws();
        let (c, b) = if cur.text[cur.pos..].starts_with("exp(") {
            (Exact::one(), crate::Blade::UNIT)
        } else {
            literal::term(&mut cur)?
        };
        cur.skip_ws();
        let phase = if cur.text[cur.pos..].starts_with("exp(") {
            cur.pos += 4;
            parse_phase(&mut cur)?
        } else {
            Poly::zero()
        };
        let c = if negative { c.negated() } else { c };
        terms.push(Term { coeff: Multivector::term(c, b), powers: [0; 4], phase });
        cur.skip_ws();
        if cur.at_end() {
            return Ok(AnalyticField::from_terms(terms));
        }
        negative = if cur.eat('-') {
            true
        } else if cur.eat('+') {
            false
        } else {
            return Err(cur.error("expected `+` or `-` between terms"));
        };
    }
}

fn parse_phase(cur: &mut Cursor<'_>) -> Result<Poly<num_rational::BigRational>> {
    cur.skip_ws();
    if !cur.eat('i') {
        return Err(cur.error("expected `i` in exp(i[...])"));
    }
    cur.skip_ws();
    if !cur.eat('[') {
        return Err(cur.error("expected `[`"));
    }
    let mut p = Vec::new();
    for k in 0..4 {
        cur.skip_ws();
        let negative = cur.eat('-');
        let v = cur.number()?;
        p.push(if negative { -v } else { v });
        cur.skip_ws();
        let sep = if k < 3 { ',' } else { ']' };
        if !cur.eat(sep) {
            return Err(cur.error(format!("expected `{sep}`")));
        }
    }
    cur.skip_ws();
    if !cur.eat(')') {
        return Err(cur.error("expected `)`"));
    }
    let p: [num_rational::BigRational; 4] = p.try_into().expect("four components");
    Ok(Poly::linear(&p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    #[test]
    fn plane_wave_derivative_brings_down_momentum() {
        let p = [rational(1, 1), rational(-2, 3), rational(0, 1), rational(1, 2)];
        let f = AnalyticField::<Exact>::plane_wave(Multivector::one(), &p);
        for mu in 0..4 {
            let expected = f.scaled(&Exact::new(rational(0, 1), p[mu].clone()));
            assert_eq!(f.partial(mu), expected);
        }
    }

    #[test]
    fn real_linear_map_matches_pointwise_evaluation() {
        let f = AnalyticField::<Float>::random(&mut rng(3, 9), 4);
        let g = f.map_real_linear(&|v| v.star());
        for x in sample_points() {
            assert!(g.evaluate(x).approx_eq(&f.evaluate(x).star(), 1e-12));
        }
    }

    #[test]
    fn substitution_matches_evaluation() {
        let f = AnalyticField::<Float>::random(&mut rng(4, 1), 5);
        let q = [[1.0, 0.5, 0.0, 0.0], [0.5, 1.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.2], [0.0, 0.0, 0.0, 1.0]];
        let g = f.substitute(&q);
        let y = [0.1, -0.4, 0.3, 0.7];
        let x: [f64; 4] = std::array::from_fn(|mu| (0..4).map(|nu| q[mu][nu] * y[nu]).sum());
        assert!(g.evaluate(&y).approx_eq(&f.evaluate(&x), 1e-12));
    }

    #[test]
    fn parses_plane_wave_terms() {
        let f = parse_analytic("2 e01 exp(i[1, 0, 0, -1/2]) - e").unwrap();
        assert_eq!(f.len(), 2);
        assert!(parse_analytic("e0 exp(i[1,2])").is_err());
        let g = parse_analytic("exp(i[0,1,0,0])").unwrap();
        assert_eq!(g.terms()[0].coeff, Multivector::one());
    }
}
