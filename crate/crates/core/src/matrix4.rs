//! 4x4 complex matrices and 4-component columns.

use serde_json::Value;

use crate::literal::LiteralScalar;
use crate::scalar::{Field, Scalar};

/// Square 4x4 matrix; `m[n][k]` is row `n`, column `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix4<S> {
    pub m: [[S; 4]; 4],
}

pub type Column4<S> = [S; 4];

impl<S: Scalar> Matrix4<S> {
    pub fn from_fn(f: impl Fn(usize, usize) -> S) -> Self {
        Matrix4 {
            m: std::array::from_fn(|r| std::array::from_fn(|c| f(r, c))),
        }
    }

    pub fn zero() -> Self {
        Self::from_fn(|_, _| S::zero())
    }

    pub fn identity() -> Self {
        Self::from_fn(|r, c| if r == c { S::one() } else { S::zero() })
    }

    /// Matrix with integer entries, `i` entries given as `(re, im)` pairs.
    pub fn from_gaussian(entries: [[(i64, i64); 4]; 4]) -> Self {
        Self::from_fn(|r, c| {
            let (re, im) = entries[r][c];
            S::from_i64(re).plus(&S::i().times(&S::from_i64(im)))
        })
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.m[r][c]
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_fn(|r, c| (0..4).fold(S::zero(), |acc, k| acc.plus(&self.m[r][k].times(&other.m[k][c]))))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_fn(|r, c| self.m[r][c].plus(&other.m[r][c]))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_fn(|r, c| self.m[r][c].minus(&other.m[r][c]))
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::from_fn(|r, c| self.m[r][c].times(s))
    }

    pub fn apply(&self, v: &Column4<S>) -> Column4<S> {
        std::array::from_fn(|r| (0..4).fold(S::zero(), |acc, k| acc.plus(&self.m[r][k].times(&v[k]))))
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol || (S::EXACT && self == other)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..4 {
            for c in 0..4 {
                worst = worst.max(self.m[r][c].minus(&other.m[r][c]).magnitude());
            }
        }
        worst
    }
}

impl<S: LiteralScalar> Matrix4<S> {
    /// Row-major JSON array of `[re, im]` pairs.
    pub fn to_json(&self) -> Value {
        Value::Array(self.m.iter().flatten().map(LiteralScalar::to_json).collect())
    }
}

pub fn column_to_json<S: LiteralScalar>(v: &Column4<S>) -> Value {
    Value::Array(v.iter().map(LiteralScalar::to_json).collect())
}

pub fn column_max_abs<S: Scalar>(v: &Column4<S>) -> f64 {
    v.iter().map(Field::magnitude).fold(0.0, f64::max)
}

pub fn column_norm<S: Scalar>(v: &Column4<S>) -> f64 {
    v.iter().map(|c| c.magnitude().powi(2)).sum::<f64>().sqrt()
}
