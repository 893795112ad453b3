//! Maps between the state spaces of the equation forms.
//!
//! Bispinor `ψ` ↔ ideal element `θ = ψ_k t^k` ↔ real even `Ψ` with `Ψt = θ`
//! ↔ tensor form `Φ` (the same coefficients read in the `e` basis). ILK
//! states are reached from ideal ones by inclusion.

use super::{pack, unpack, DiracSystem, EquationForm};
use crate::error::{Error, Result};
use crate::field::FieldOps;
use crate::scalar::Scalar;

use EquationForm::*;

/// Converts a state of `from` into the corresponding state of `to`.
pub fn translate<S: Scalar, F: FieldOps<S>>(
    sys: &DiracSystem<S>,
    from: EquationForm,
    to: EquationForm,
    state: &F,
) -> Result<F> {
    if from == to {
        return Ok(state.clone());
    }
    let basis = sys.basis();
    let ideal = match from {
        Dirac => state.map_linear(&|v| basis.compose(&unpack(v))),
        Ideal => state.clone(),
        Hestenes | Tensor => state.right_mul(basis.t()),
        Ilk | IlkEven | IlkE5 => return Err(incompatible(from, to)),
    };
    match to {
        Dirac => Ok(ideal.map_linear(&|v| pack(&basis.decompose(v)))),
        Ideal | Ilk => Ok(ideal),
        Hestenes | Tensor => Ok(ideal.map_real_linear(&|v| basis.even_from_components(&basis.decompose(v)))),
        IlkEven | IlkE5 => Err(incompatible(from, to)),
    }
}

/// Carries a residual of `from` to the residual the translated state has
/// under `to`: bispinor residuals compose into the ideal, ideal residuals
/// `R` become `H Ω` with `Ω t = H R`, and Hestenes residuals multiply by `t`.
pub fn translate_residual<S: Scalar, F: FieldOps<S>>(
    sys: &DiracSystem<S>,
    from: EquationForm,
    to: EquationForm,
    residual: &F,
) -> Result<F> {
    if from == to || matches!((from, to), (Hestenes, Tensor) | (Tensor, Hestenes)) {
        return Ok(residual.clone());
    }
    let basis = sys.basis();
    let h = sys.h().clone();
    let ideal = match from {
        Dirac => residual.map_linear(&|v| basis.compose(&unpack(v))),
        Ideal => residual.clone(),
        Hestenes | Tensor => residual.right_mul(basis.t()),
        _ => return Err(incompatible(from, to)),
    };
    match to {
        Dirac => Ok(ideal.map_linear(&|v| pack(&basis.decompose(v)))),
        Ideal => Ok(ideal),
        Hestenes | Tensor => Ok(ideal.map_real_linear(&|r| {
            h.mul(&basis.even_from_components(&basis.decompose(&h.mul(r))))
        })),
        _ => Err(incompatible(from, to)),
    }
}

fn incompatible(from: EquationForm, to: EquationForm) -> Error {
    Error::domain(format!("no state map from {from} to {to}"))
}

