//! Conserved current, Lagrangian density and the coupled Maxwell system.

use super::DiracSystem;
use crate::error::{Error, Result};
use crate::exterior::MinkowskiMetric;
use crate::field::{d, delta, AnalyticField, FieldOps, GridField};
use crate::par::Execution;
use crate::multivector::Multivector;
use crate::scalar::Scalar;
use crate::Blade;

/// `J = Φ H Φ*` and derived quantities.
#[derive(Clone, Debug)]
pub struct Current<F> {
    /// The 1-form `J = j_μ e^μ`.
    pub form: F,
    /// `j^μ = g^{μν} j_ν` stored on the `e^μ` slots.
    pub vector: F,
    /// `Tr(Φ̄ e^μ Φ)` with `Φ̄ = H Φ*`, stored on the `e^μ` slots.
    pub trace_components: F,
    /// Scalar field `∂_μ j^μ`.
    pub divergence: F,
    /// Scalar field `δJ`.
    pub codifferential: F,
}

/// Current of a tensor-form state. Fails if `Φ H Φ*` has parts outside the
/// real grade-1 forms beyond `tol` (structural zero on the exact backend).
pub fn current<S: Scalar, F: FieldOps<S>>(sys: &DiracSystem<S>, phi: &F, tol: f64) -> Result<Current<F>> {
    let h = sys.h().clone();
    let phi_star = phi.map_real_linear(&Multivector::star);
    let form = phi.product_with(&phi_star, &|x, y| x.mul(&h).mul(y));
    let defect = form.map_real_linear(&|v| {
        let g1 = v.grade_part(1).expect("grade 1");
        v.sub(&g1).add(&g1.sub(&g1.conj()))
    });
    if !super::vanishes(&defect, tol) {
        return Err(Error::InternalConsistency("Φ H Φ* is not a real 1-form".into()));
    }
    let vector = form.map_linear(&|v| {
        Multivector::from_terms((0..4).map(|mu| {
            let g = S::from_i64(MinkowskiMetric::g(mu, mu) as i64);
            (Blade::vector(mu), v.coeff(Blade::vector(mu)).times(&g))
        }))
    });
    let bar = phi_star.left_mul(&h);
    let trace_components = (0..4).fold(phi.zero_like(), |acc, mu| {
        let e = Multivector::<S>::basis_vector(mu);
        acc.plus(&bar.product_with(phi, &|x, y| {
            Multivector::term(x.mul(&e).mul(y).trace(), Blade::vector(mu))
        }))
    });
    let divergence = divergence(&vector);
    let codifferential = delta(&form);
    Ok(Current { form, vector, trace_components, divergence, codifferential })
}

/// Scalar field `∂_μ v^μ` of a vector field stored on the `e^μ` slots.
pub fn divergence<S: Scalar, F: FieldOps<S>>(vector: &F) -> F {
    (0..4).fold(vector.zero_like(), |acc, mu| {
        let b = Blade::vector(mu);
        acc.plus(&vector.partial(mu).map_linear(&|v| Multivector::scalar(v.coeff(b).clone())))
    })
}

/// Max-norm of the central-difference divergence of an analytic vector
/// field sampled on the lattice `dims`, `h`, with the sampling warnings.
pub fn grid_divergence<S: Scalar>(
    vector: &AnalyticField<S>,
    dims: [usize; 4],
    h: [f64; 4],
    exec: Execution,
) -> (f64, Vec<String>) {
    let (grid, warnings) = GridField::sample(vector, dims, h, exec);
    (divergence(&grid).max_norm(), warnings)
}

/// Scalar fields `(Tr(F²), -½ f^{μν} f_{μν})` for `F = dA`.
pub fn trace_f_squared<S: Scalar, F: FieldOps<S>>(a: &F) -> (F, F) {
    let f = d(a);
    let direct = f.product_with(&f, &|x, y| Multivector::scalar(x.mul(y).trace()));
    let by_components = f.product_with(&f, &|x, y| {
        let mut sum = S::zero();
        for mu in 0..4 {
            for nu in 0..4 {
                if mu == nu {
                    continue;
                }
                let g = MinkowskiMetric::g(mu, mu) * MinkowskiMetric::g(nu, nu);
                let lower = f_component(x, mu, nu);
                let upper = f_component(y, mu, nu).times(&S::from_i64(g as i64));
                sum = sum.plus(&lower.times(&upper));
            }
        }
        Multivector::scalar(sum.times(&S::from_ratio(-1, 2)))
    });
    (direct, by_components)
}

/// `f_{μν}` read from a 2-form; antisymmetric in the indices.
fn f_component<S: Scalar>(f: &Multivector<S>, mu: usize, nu: usize) -> S {
    if mu == nu {
        S::zero()
    } else if mu < nu {
        f.coeff(Blade::from_indices(&[mu, nu]).expect("ascending")).clone()
    } else {
        f.coeff(Blade::from_indices(&[nu, mu]).expect("ascending")).negated()
    }
}

/// `Lagr = Tr(HCI) + Tr(F²)` where `HC = Φ̄ R` and `R` is the tensor-form
/// residual; returns `(Tr(HCI), Tr(F²), total)`.
pub fn lagrangian<S: Scalar, F: FieldOps<S>>(sys: &DiracSystem<S>, phi: &F, a: &F) -> (F, F, F) {
    let h = sys.h().clone();
    let i = sys.i().clone();
    let residual = sys.tensor_operator(phi, a);
    let bar = phi.map_real_linear(&Multivector::star).left_mul(&h);
    let matter = bar.product_with(&residual, &|x, y| Multivector::scalar(x.mul(y).mul(&i).trace()));
    let (field, _) = trace_f_squared(a);
    let total = matter.plus(&field);
    (matter, field, total)
}

/// Residuals of the coupled system for given `Φ` and `A`.
#[derive(Clone, Debug)]
pub struct MaxwellResiduals<F> {
    /// `dA - F` with `F` assembled from `f_{μν} = ∂_μ a_ν - ∂_ν a_μ`.
    pub field_strength: F,
    /// `δF - J`.
    pub codifferential_form: F,
    /// `(∂_μ f^{μν} - j^ν)` lowered onto `e^ν`.
    pub divergence_form: F,
    /// `δF + (∂_μ f^{μν})` lowered; vanishes identically.
    pub sign_relation: F,
}

pub fn maxwell_residuals<S: Scalar, F: FieldOps<S>>(
    sys: &DiracSystem<S>,
    phi: &F,
    a: &F,
    tol: f64,
) -> Result<MaxwellResiduals<F>> {
    let j = current(sys, phi, tol)?.form;
    let f = d(a);
    let assembled = (0..4).fold(a.zero_like(), |acc, mu| {
        (0..4).filter(|&nu| nu > mu).fold(acc, |acc, nu| {
            let (bm, bn) = (Blade::vector(mu), Blade::vector(nu));
            let f_mn = a
                .partial(mu)
                .map_linear(&|v| Multivector::scalar(v.coeff(bn).clone()))
                .minus(&a.partial(nu).map_linear(&|v| Multivector::scalar(v.coeff(bm).clone())));
            let e = Multivector::<S>::basis(&[mu, nu]);
            acc.plus(&f_mn.map_linear(&|v| e.scale(v.coeff(Blade::UNIT))))
        })
    });
    // (∂_μ f^{μν}) g_{νν} e^ν = Σ g^{μμ} ∂_μ f_{μν} e^ν
    let div_lowered = (0..4).fold(a.zero_like(), |acc, mu| {
        let gm = S::from_i64(MinkowskiMetric::g(mu, mu) as i64);
        acc.plus(&f.partial(mu).map_linear(&|v| {
            Multivector::from_terms(
                (0..4).map(|nu| (Blade::vector(nu), f_component(v, mu, nu).times(&gm))),
            )
        }))
    });
    let delta_f = delta(&f);
    Ok(MaxwellResiduals {
        field_strength: f.minus(&assembled),
        codifferential_form: delta_f.minus(&j),
        divergence_form: div_lowered.minus(&j),
        sign_relation: delta_f.plus(&div_lowered),
    })
}
