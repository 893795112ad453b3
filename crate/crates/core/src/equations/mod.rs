//! Residual evaluators for the equivalent forms of the Dirac equation, the
//! maps between their states, and the diagnostics built on them.
//!
//! Every residual is a field of the same backend as its input; a state
//! solves its equation exactly when the residual field vanishes.

mod current;
mod plane_wave;
mod reduce;
mod symmetry;
mod translate;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use current::{current, divergence, grid_divergence, lagrangian, maxwell_residuals, trace_f_squared, Current, MaxwellResiduals};
pub use plane_wave::{boosted_momentum, plane_wave, plane_wave_amplitudes, Energy};
pub use reduce::{reduction_defect, Reduction};
pub use symmetry::{covariance_transform, gauge_transform, global_spin_transform, transform_potential};
pub use translate::{translate, translate_residual};

use crate::error::{Error, Result};
use crate::exterior::clifford_product_via_table;
use crate::field::{upsilon, FieldOps};
use crate::ideal::{dirac_matrices, IdealBasis, SecondaryGenerators};
use crate::matrix4::{Column4, Matrix4};
use crate::multivector::Multivector;
use crate::scalar::{Backend, Field, Float, Scalar};
use crate::Blade;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum EquationForm {
    /// `γ^μ(∂_μψ + i a_μ ψ) + i m ψ = 0` for a bispinor column.
    #[serde(rename = "dirac")]
    Dirac,
    /// `ℓ^μ(∂_μθ + i a_μ θ) + i m θ = 0` for `θ` in the left ideal.
    #[serde(rename = "ideal")]
    Ideal,
    /// `ℓ^μ(∂_μΨ + a_μ Ψ I) + m Ψ H I = 0` for real even `Ψ`.
    #[serde(rename = "hde")]
    Hestenes,
    /// `ΥΦ + AΦI + mΦHI = 0` for a real even form `Φ`.
    #[serde(rename = "tde")]
    Tensor,
    /// `Υρ + iAρ + imρ = 0` for a general complex form.
    #[serde(rename = "ilk")]
    Ilk,
    /// `Υη + iAη + imηH = 0`.
    #[serde(rename = "ilk-even")]
    IlkEven,
    /// `Υω + Aωe^5 + mωe^5 = 0`.
    #[serde(rename = "ilk-e5")]
    IlkE5,
}

impl EquationForm {
    pub const ALL: [EquationForm; 7] = [
        EquationForm::Dirac,
        EquationForm::Ideal,
        EquationForm::Hestenes,
        EquationForm::Tensor,
        EquationForm::Ilk,
        EquationForm::IlkEven,
        EquationForm::IlkE5,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EquationForm::Dirac => "dirac",
            EquationForm::Ideal => "ideal",
            EquationForm::Hestenes => "hde",
            EquationForm::Tensor => "tde",
            EquationForm::Ilk => "ilk",
            EquationForm::IlkEven => "ilk-even",
            EquationForm::IlkE5 => "ilk-e5",
        }
    }
}

impl fmt::Display for EquationForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EquationForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Malformed(format!("unknown equation form `{s}`")))
    }
}

/// Mass, constant generators and the matrix representation they induce.
#[derive(Clone, Debug)]
pub struct DiracSystem<S: Scalar> {
    mass: S::Real,
    basis: IdealBasis<S>,
    gammas: [Matrix4<S>; 4],
}

impl<S: Scalar> DiracSystem<S> {
    /// System whose matrices are `γ(ℓ^μ)` in the representation of `basis`.
    pub fn new(mass: S::Real, basis: IdealBasis<S>) -> Result<Self> {
        if mass < <S::Real as Field>::zero() {
            return Err(Error::domain("mass must be non-negative"));
        }
        let gammas = std::array::from_fn(|mu| basis.gamma(&Multivector::basis_vector(mu)));
        Ok(DiracSystem { mass, basis, gammas })
    }

    /// Canonical generators; the matrices are then the standard Dirac matrices.
    pub fn canonical(mass: S::Real) -> Result<Self> {
        let sys = Self::new(mass, IdealBasis::canonical())?;
        debug_assert!(sys.gammas == dirac_matrices::<S>());
        Ok(sys)
    }

    pub fn with_generators(mass: S::Real, gens: SecondaryGenerators<S>, tol: f64) -> Result<Self> {
        Self::new(mass, IdealBasis::new(gens, tol)?)
    }

    pub fn mass(&self) -> &S::Real {
        &self.mass
    }

    pub fn basis(&self) -> &IdealBasis<S> {
        &self.basis
    }

    pub fn gammas(&self) -> &[Matrix4<S>; 4] {
        &self.gammas
    }

    pub fn h(&self) -> &Multivector<S> {
        self.basis.generators().h()
    }

    pub fn i(&self) -> &Multivector<S> {
        self.basis.generators().i()
    }

    fn m(&self) -> S {
        S::from_real(self.mass.clone())
    }

    /// Residual operator of `form` applied without checking the state's
    /// type; see [`Self::residual`] for the checked version.
    pub fn operator<F: FieldOps<S>>(&self, form: EquationForm, state: &F, a: &F) -> F {
        match form {
            EquationForm::Dirac => self.dirac_operator(state, a),
            EquationForm::Ideal => self.ideal_operator(state, a),
            EquationForm::Hestenes => self.hestenes_operator(state, a),
            EquationForm::Tensor => self.tensor_operator(state, a),
            EquationForm::Ilk => self.ilk_operator(state, a),
            EquationForm::IlkEven => self.ilk_even_operator(state, a),
            EquationForm::IlkE5 => self.ilk_e5_operator(state, a),
        }
    }

    /// Residual after checking that the state and potential have the types
    /// the form requires (`tol` is ignored on the exact backend).
    pub fn residual<F: FieldOps<S>>(&self, form: EquationForm, state: &F, a: &F, tol: f64) -> Result<F> {
        check_potential(a, tol)?;
        match form {
            EquationForm::Dirac => {
                if !vanishes(&state.map_linear(&|v| v.sub(&pack(&unpack(v)))), tol) {
                    return Err(Error::Shape("bispinor state uses more than four components".into()));
                }
            }
            EquationForm::Ideal => {
                let t = self.basis.t().clone();
                if !vanishes(&state.map_linear(&|v| v.mul(&t).sub(v)), tol) {
                    return Err(Error::domain("state leaves the left ideal"));
                }
            }
            EquationForm::Hestenes | EquationForm::Tensor => {
                if !vanishes(&state.map_real_linear(&real_even_defect), tol) {
                    return Err(Error::domain("state is not real and even"));
                }
            }
            EquationForm::IlkEven => {
                if !vanishes(&state.map_linear(&Multivector::odd_part), tol) {
                    return Err(Error::domain("state is not even"));
                }
            }
            EquationForm::Ilk | EquationForm::IlkE5 => {}
        }
        Ok(self.operator(form, state, a))
    }

    /// `γ^μ(∂_μψ + i a_μ ψ) + i m ψ` on packed bispinors.
    pub fn dirac_operator<F: FieldOps<S>>(&self, psi: &F, a: &F) -> F {
        let i = S::i();
        let mut out = psi.scaled(&i.times(&self.m()));
        for mu in 0..4 {
            let inner = psi.partial(mu).plus(&component_product(a, psi, mu).scaled(&i));
            let g = &self.gammas[mu];
            out = out.plus(&inner.map_linear(&|v| pack(&g.apply(&unpack(v)))));
        }
        out
    }

    /// `ℓ^μ(∂_μθ + i a_μ θ) + i m θ`.
    pub fn ideal_operator<F: FieldOps<S>>(&self, theta: &F, a: &F) -> F {
        let i = S::i();
        let mut out = theta.scaled(&i.times(&self.m()));
        for mu in 0..4 {
            let inner = theta.partial(mu).plus(&component_product(a, theta, mu).scaled(&i));
            out = out.plus(&inner.left_mul(&Multivector::basis_vector(mu)));
        }
        out
    }

    /// `ℓ^μ(∂_μΨ + a_μ Ψ I) + m Ψ H I`.
    pub fn hestenes_operator<F: FieldOps<S>>(&self, psi: &F, a: &F) -> F {
        let hi = self.h().mul(self.i());
        let mut out = psi.right_mul(&hi).scaled(&self.m());
        for mu in 0..4 {
            let inner = psi.partial(mu).plus(&component_product(a, psi, mu).right_mul(self.i()));
            out = out.plus(&inner.left_mul(&Multivector::basis_vector(mu)));
        }
        out
    }

    /// `ΥΦ + AΦI + mΦHI` with `Υ = d - δ` and the exterior-table product.
    pub fn tensor_operator<F: FieldOps<S>>(&self, phi: &F, a: &F) -> F {
        let i = self.i().clone();
        let hi = clifford_product_via_table(self.h(), &i);
        let a_phi_i = a.product_with(phi, &|x, y| {
            clifford_product_via_table(&clifford_product_via_table(x, y), &i)
        });
        upsilon(phi)
            .plus(&a_phi_i)
            .plus(&phi.map_linear(&|v| clifford_product_via_table(v, &hi)).scaled(&self.m()))
    }

    /// `Υρ + iAρ + imρ`.
    pub fn ilk_operator<F: FieldOps<S>>(&self, rho: &F, a: &F) -> F {
        let i = S::i();
        upsilon(rho)
            .plus(&a.product_with(rho, &clifford_product_via_table).scaled(&i))
            .plus(&rho.scaled(&i.times(&self.m())))
    }

    /// `Υη + iAη + imηH`.
    pub fn ilk_even_operator<F: FieldOps<S>>(&self, eta: &F, a: &F) -> F {
        let i = S::i();
        let h = self.h().clone();
        upsilon(eta)
            .plus(&a.product_with(eta, &clifford_product_via_table).scaled(&i))
            .plus(&eta.map_linear(&|v| clifford_product_via_table(v, &h)).scaled(&i.times(&self.m())))
    }

    /// `Υω + Aωe^5 + mωe^5`.
    pub fn ilk_e5_operator<F: FieldOps<S>>(&self, omega: &F, a: &F) -> F {
        let e5 = Multivector::<S>::pseudoscalar();
        upsilon(omega)
            .plus(&a.product_with(omega, &|x, y| {
                clifford_product_via_table(&clifford_product_via_table(x, y), &e5)
            }))
            .plus(&omega.map_linear(&|v| clifford_product_via_table(v, &e5)).scaled(&self.m()))
    }

    /// Pointwise norm used for residuals of `form`: the column norm for
    /// bispinors and `sqrt|Tr(R H R* H)|` otherwise, which is invariant under
    /// right multiplication by the gauge factors of every form.
    pub fn norm_fn(&self, form: EquationForm) -> impl Fn(&Multivector<Float>) -> f64 + Sync {
        let h = self.h().to_float();
        move |r: &Multivector<Float>| match form {
            EquationForm::Dirac => r.norm(),
            _ => h_norm(r, &h),
        }
    }
}

/// `sqrt|Tr(R H R* H)|`; equals the coefficient norm for `H = l^0`.
pub fn h_norm(r: &Multivector<Float>, h: &Multivector<Float>) -> f64 {
    r.mul(h).mul(&r.star()).mul(h).trace().norm().sqrt()
}

/// `a_μ · state` where `a_μ` is the `e^μ` coefficient of the potential.
fn component_product<S: Scalar, F: FieldOps<S>>(a: &F, state: &F, mu: usize) -> F {
    let b = Blade::vector(mu);
    a.product_with(state, &|x, y| y.scale(x.coeff(b)))
}

fn real_even_defect<S: Scalar>(v: &Multivector<S>) -> Multivector<S> {
    v.odd_part().add(&v.sub(&v.conj()))
}

fn check_potential<S: Scalar, F: FieldOps<S>>(a: &F, tol: f64) -> Result<()> {
    let defect = a.map_real_linear(&|v| {
        let grade1 = v.grade_part(1).expect("grade 1");
        v.sub(&grade1).add(&grade1.sub(&grade1.conj()))
    });
    if vanishes(&defect, tol) {
        Ok(())
    } else {
        Err(Error::domain("potential must be a real 1-form"))
    }
}

/// Structural zero on the exact backend, max-norm at most `tol` otherwise.
pub fn vanishes<S: Scalar, F: FieldOps<S>>(f: &F, tol: f64) -> bool {
    if S::EXACT {
        f.is_identically_zero()
    } else {
        f.max_norm() <= tol
    }
}

/// Bispinor components stored in the first four coefficient slots; the
/// slot layout is storage only and carries no algebraic meaning.
pub fn pack<S: Scalar>(psi: &Column4<S>) -> Multivector<S> {
    Multivector::from_fn(|i| if i < 4 { psi[i].clone() } else { S::zero() })
}

pub fn unpack<S: Scalar>(v: &Multivector<S>) -> Column4<S> {
    std::array::from_fn(|i| v.coeffs()[i].clone())
}

/// Grid metadata in residual reports.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GridSpec {
    pub n: [usize; 4],
    pub h: [f64; 4],
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Outcome of one residual evaluation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidualReport {
    pub form: EquationForm,
    pub backend: Backend,
    pub max_norm: f64,
    pub tolerance: f64,
    pub verdict: Verdict,
    pub seed: Option<u64>,
    pub grid: Option<GridSpec>,
    pub notes: Vec<String>,
}

impl ResidualReport {
    pub fn new(form: EquationForm, backend: Backend, max_norm: f64, tolerance: f64) -> Self {
        ResidualReport {
            form,
            backend,
            max_norm,
            tolerance,
            verdict: if max_norm <= tolerance { Verdict::Pass } else { Verdict::Fail },
            seed: None,
            grid: None,
            notes: Vec::new(),
        }
    }

    /// Report for a residual field, using the form's pointwise norm. An
    /// exact structural zero is noted explicitly.
    pub fn from_residual<S: Scalar, F: FieldOps<S>>(
        sys: &DiracSystem<S>,
        form: EquationForm,
        residual: &F,
        tolerance: f64,
    ) -> Self {
        let norm = sys.norm_fn(form);
        let mut report = Self::new(form, S::BACKEND, residual.max_norm_by(&norm), tolerance);
        if S::EXACT && residual.is_identically_zero() {
            report.notes.push("residual is identically zero".into());
        }
        report
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Potential-free setting: the zero field on the same domain as `like`.
pub fn free<S: Scalar, F: FieldOps<S>>(like: &F) -> F {
    like.zero_like()
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::AnalyticField;
    use crate::scalar::{rational, Exact};

    #[test]
    fn rest_frame_plane_waves_solve_every_form() {
        let sys = DiracSystem::<Exact>::canonical(rational(1, 1)).unwrap();
        let p = [rational(1, 1), rational(0, 1), rational(0, 1), rational(0, 1)];
        let amps = plane_wave_amplitudes(&sys, &p, Energy::Positive).unwrap();
        assert_eq!(amps.len(), 2);
        for form in EquationForm::ALL {
            let state = plane_wave(&sys, form, &p, Energy::Positive, 0).unwrap();
            let a = AnalyticField::zero();
            let r = sys.residual(form, &state, &a, 0.0).unwrap();
            assert!(r.is_identically_zero(), "{form}");
        }
    }

    #[test]
    fn off_shell_momentum_is_rejected() {
        let sys = DiracSystem::<Exact>::canonical(rational(1, 1)).unwrap();
        let p = [rational(2, 1), rational(0, 1), rational(0, 1), rational(0, 1)];
        assert!(plane_wave_amplitudes(&sys, &p, Energy::Positive).is_err());
    }
}
