//! Free plane-wave solutions in every equation form.

use super::{pack, translate, DiracSystem, EquationForm};
use crate::error::{Error, Result};
use crate::exterior::MinkowskiMetric;
use crate::field::{AnalyticField, FieldOps};
use crate::linalg::{rref_nullspace, Mat};
use crate::matrix4::{column_norm, Column4};
use crate::multivector::Multivector;
use crate::scalar::{Field, RealField, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Energy {
    /// `u exp(-i p·x)` with `p̸ u = m u`.
    Positive,
    /// `v exp(+i p·x)` with `p̸ v = -m v`.
    Negative,
}

impl Energy {
    fn sign(self) -> i64 {
        match self {
            Energy::Positive => 1,
            Energy::Negative => -1,
        }
    }
}

/// Basis of the amplitudes `u` with `γ^μ p_μ u = ±m u`; float amplitudes
/// are normalized to unit length.
pub fn plane_wave_amplitudes<S: Scalar>(
    sys: &DiracSystem<S>,
    p: &[S::Real; 4],
    energy: Energy,
) -> Result<Vec<Column4<S>>> {
    let raised = MinkowskiMetric::raise(p);
    let p_sq = (0..4).fold(<S::Real as Field>::zero(), |acc, mu| acc.plus(&p[mu].times(&raised[mu])));
    let m_sq = sys.mass().times(sys.mass());
    let on_shell = if S::EXACT { p_sq == m_sq } else { p_sq.minus(&m_sq).magnitude() <= 1e-9 };
    if !on_shell {
        return Err(Error::domain(format!(
            "momentum is off shell: p·p = {:.6}, m^2 = {:.6}",
            p_sq.to_f64(),
            m_sq.to_f64()
        )));
    }
    let shift = S::from_real(sys.mass().clone()).times(&S::from_i64(energy.sign()));
    let mut m = Mat::<S>::zeros(4, 4);
    for r in 0..4 {
        for c in 0..4 {
            let mut v = (0..4).fold(S::zero(), |acc, mu| {
                acc.plus(&sys.gammas()[mu].m[r][c].times(&S::from_real(p[mu].clone())))
            });
            if r == c {
                v = v.minus(&shift);
            }
            m.set(r, c, v);
        }
    }
    let tol = if S::EXACT { 0.0 } else { 1e-9 };
    let vectors = rref_nullspace(&m, tol);
    Ok(vectors
        .into_iter()
        .map(|v| {
            let col: Column4<S> = std::array::from_fn(|k| v[k].clone());
            if S::EXACT {
                col
            } else {
                let n = S::Real::from_f64(column_norm(&col));
                let inv = S::from_real(n.recip().expect("nonzero amplitude"));
                std::array::from_fn(|k| col[k].times(&inv))
            }
        })
        .collect())
}

/// Plane-wave solution of the free equation in `form`, built from the
/// `which`-th amplitude of the bispinor solution space.
pub fn plane_wave<S: Scalar>(
    sys: &DiracSystem<S>,
    form: EquationForm,
    p: &[S::Real; 4],
    energy: Energy,
    which: usize,
) -> Result<AnalyticField<S>> {
    let amps = plane_wave_amplitudes(sys, p, energy)?;
    let u = amps
        .get(which)
        .ok_or_else(|| Error::domain(format!("amplitude index {which} out of range ({} available)", amps.len())))?;
    let sign = S::Real::from_i64(-energy.sign());
    let phase: [S::Real; 4] = std::array::from_fn(|mu| p[mu].times(&sign));
    let psi = AnalyticField::plane_wave(pack(u), &phase);
    let half = S::from_ratio(1, 2);
    let one = Multivector::<S>::one();
    Ok(match form {
        EquationForm::Dirac | EquationForm::Ideal | EquationForm::Hestenes | EquationForm::Tensor => {
            translate(sys, EquationForm::Dirac, form, &psi)?
        }
        EquationForm::Ilk => translate(sys, EquationForm::Dirac, EquationForm::Ideal, &psi)?,
        EquationForm::IlkEven => {
            // Φ(e - iI)/2 for a tensor-form solution Φ is even and solves the
            // reduced equation because I(e - iI) = i(e - iI).
            let phi = translate(sys, EquationForm::Dirac, EquationForm::Tensor, &psi)?;
            phi.right_mul(&one.sub(&sys.i().scale(&S::i())).scale(&half))
        }
        EquationForm::IlkE5 => {
            let rho = translate(sys, EquationForm::Dirac, EquationForm::Ideal, &psi)?;
            let e5 = Multivector::<S>::pseudoscalar();
            rho.right_mul(&one.sub(&e5.scale(&S::i())).scale(&half))
        }
    })
}

/// `p_μ = m (γ, -γβ n)` with `γ = (1+s²)/(1-s²)`, `γβ = 2s/(1-s²)` and the
/// unit vector `n = (2a, 2b, 1-a²-b²)/(1+a²+b²)`; rational inputs give an
/// exactly on-shell rational momentum. Requires `|s| < 1`.
pub fn boosted_momentum<R: RealField>(m: &R, s: &R, a: &R, b: &R) -> Result<[R; 4]> {
    let one = R::one();
    let two = R::from_i64(2);
    let s2 = s.times(s);
    let denom = one.minus(&s2);
    if denom <= R::zero() {
        return Err(Error::domain("boost parameter must satisfy |s| < 1"));
    }
    let inv = denom.recip().expect("nonzero");
    let gamma = one.plus(&s2).times(&inv);
    let gamma_beta = two.times(s).times(&inv);
    let r2 = a.times(a).plus(&b.times(b));
    let inv_n = one.plus(&r2).recip().expect("positive");
    let n = [
        two.times(a).times(&inv_n),
        two.times(b).times(&inv_n),
        one.minus(&r2).times(&inv_n),
    ];
    let k = m.times(&gamma_beta);
    Ok([
        m.times(&gamma),
        n[0].times(&k).negated(),
        n[1].times(&k).negated(),
        n[2].times(&k).negated(),
    ])
}
