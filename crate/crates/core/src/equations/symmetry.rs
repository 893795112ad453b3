//! Gauge, Lorentz and global Spin transformations of configurations.

use super::{pack, unpack, DiracSystem, EquationForm};
use crate::error::Result;
use crate::field::{d, AnalyticField, FieldOps, Poly};
use crate::multivector::Multivector;
use crate::scalar::{RealField, Scalar};
use crate::spin::{LorentzMatrix, SpinElement};
use crate::Blade;

/// Unit `J` with `J² = -1` whose exponential carries the phase in `form`:
/// `I` for the Hestenes and tensor forms, `e^5` for the `e^5` reduction and
/// the imaginary unit otherwise.
fn phase_unit<S: Scalar>(sys: &DiracSystem<S>, form: EquationForm) -> Multivector<S> {
    match form {
        EquationForm::Hestenes | EquationForm::Tensor => sys.i().clone(),
        EquationForm::IlkE5 => Multivector::pseudoscalar(),
        _ => Multivector::scalar(S::i()),
    }
}

/// `state → state · exp(λJ)`, `A → A - dλ` (see [`phase_unit`] for `J`);
/// `exp(λJ) = ½e^{iλ}(e - iJ) + ½e^{-iλ}(e + iJ)`.
pub fn gauge_transform<S: Scalar>(
    sys: &DiracSystem<S>,
    form: EquationForm,
    state: &AnalyticField<S>,
    a: &AnalyticField<S>,
    lambda: &Poly<S::Real>,
) -> (AnalyticField<S>, AnalyticField<S>) {
    let j = phase_unit(sys, form);
    let one = Multivector::<S>::one();
    let half = S::from_ratio(1, 2);
    let ij = j.scale(&S::i());
    let factor = AnalyticField::with_phase(one.sub(&ij).scale(&half), lambda.clone())
        .plus(&AnalyticField::with_phase(one.add(&ij).scale(&half), lambda.neg()));
    let new_state = state.product_with(&factor, &|v, g| v.mul(g));
    let new_a = a.minus(&d(&AnalyticField::scalar_polynomial(lambda)));
    (new_state, new_a)
}

/// Potential in the coordinates `x̃` with `x = Q x̃`: `ã_ν = q^μ_ν a_μ`.
pub fn transform_potential<S: Scalar>(
    a: &AnalyticField<S>,
    q: &LorentzMatrix<S::Real>,
) -> AnalyticField<S> {
    let q_entries = entries(q);
    a.map_linear(&|v| {
        Multivector::from_terms((0..4).map(|nu| {
            let c = (0..4).fold(S::zero(), |acc, mu| {
                acc.plus(&v.coeff(Blade::vector(mu)).times(&S::from_real(q_entries[mu][nu].clone())))
            });
            (Blade::vector(nu), c)
        }))
    })
    .substitute(&q_entries)
}

fn entries<R: RealField>(q: &LorentzMatrix<R>) -> [[R; 4]; 4] {
    std::array::from_fn(|mu| std::array::from_fn(|nu| q.get(mu, nu).clone()))
}

/// Configuration seen in coordinates `x̃^ν = p^ν_μ x^μ`, `P` the Lorentz
/// matrix of `s`: bispinors become `γ(S)ψ(x(x̃))`, every other state
/// `S · state(x(x̃))`, and the potential transforms as a covector.
pub fn covariance_transform<S: Scalar>(
    sys: &DiracSystem<S>,
    form: EquationForm,
    s: &SpinElement<S>,
    state: &AnalyticField<S>,
    a: &AnalyticField<S>,
    tol: f64,
) -> Result<(AnalyticField<S>, AnalyticField<S>)> {
    let q = s.inverse_lorentz(tol)?;
    let moved = match form {
        EquationForm::Dirac => {
            let g = sys.basis().gamma(s.element());
            state.map_linear(&|v| pack(&g.apply(&unpack(v))))
        }
        _ => state.left_mul(s.element()),
    };
    Ok((moved.substitute(&entries(&q)), transform_potential(a, &q)))
}

/// `(Φ S, S* H S, S* I S)`: a new system with moved generators and the
/// right-multiplied state.
pub fn global_spin_transform<S: Scalar, F: FieldOps<S>>(
    sys: &DiracSystem<S>,
    s: &SpinElement<S>,
    phi: &F,
) -> Result<(DiracSystem<S>, F)> {
    let moved = DiracSystem::new(sys.mass().clone(), sys.basis().representation_change(s))?;
    Ok((moved, phi.right_mul(s.element())))
}
