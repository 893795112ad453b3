//! Reductions of the ILK equation by right multiplication with idempotents.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{DiracSystem, EquationForm};
use crate::error::{Error, Result};
use crate::field::FieldOps;
use crate::multivector::Multivector;
use crate::scalar::Scalar;

/// Which idempotent `ρ ↦ ρ·P` is applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Reduction {
    /// `t = ¼(e + H)(e − iI)`, landing in the tensor form.
    #[serde(rename = "t-HI")]
    Full,
    /// `½(e + H)`, landing in the even ILK form.
    #[serde(rename = "t-H")]
    Even,
    /// `½(e − ie⁵)`, landing in the ILK-e5 form.
    #[serde(rename = "t-e5")]
    Chiral,
}

impl Reduction {
    pub const ALL: [Reduction; 3] = [Reduction::Full, Reduction::Even, Reduction::Chiral];

    pub fn name(self) -> &'static str {
        match self {
            Reduction::Full => "t-HI",
            Reduction::Even => "t-H",
            Reduction::Chiral => "t-e5",
        }
    }

    /// Form whose operator the reduced state is fed to.
    pub fn target(self) -> EquationForm {
        match self {
            Reduction::Full => EquationForm::Tensor,
            Reduction::Even => EquationForm::IlkEven,
            Reduction::Chiral => EquationForm::IlkE5,
        }
    }

    pub fn idempotent<S: Scalar>(self, sys: &DiracSystem<S>) -> Multivector<S> {
        let half = S::from_ratio(1, 2);
        match self {
            Reduction::Full => sys.basis().t().clone(),
            Reduction::Even => Multivector::one().add(sys.h()).scale(&half),
            Reduction::Chiral => Multivector::one().sub(&Multivector::pseudoscalar().scale(&S::i())).scale(&half),
        }
    }
}

impl fmt::Display for Reduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Reduction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Reduction::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::Malformed(format!("unknown reduction `{s}` (expected t-HI|t-H|t-e5)")))
    }
}

/// `R_target(ρP) − R_ILK(ρ)P`; identically zero when the reduction holds.
pub fn reduction_defect<S: Scalar, F: FieldOps<S>>(sys: &DiracSystem<S>, reduction: Reduction, rho: &F, a: &F) -> F {
    let p = reduction.idempotent(sys);
    let reduced = sys.operator(reduction.target(), &rho.right_mul(&p), a);
    reduced.minus(&sys.operator(EquationForm::Ilk, rho, a).right_mul(&p))
}
