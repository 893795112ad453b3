//! Form-valued fields on Minkowski space and the operators `d`, `δ`, `Υ`, `Δ`.
//!
//! Operators are written once against [`FieldOps`] and run on both the
//! symbolic [`AnalyticField`] and the periodic [`GridField`].

mod analytic;
mod grid;
pub mod poly;

pub use analytic::{parse_analytic, sample_points, AnalyticField, Term};
pub use grid::{GridField, GridHeader};
pub use poly::Poly;

use crate::exterior::{clifford_product_via_table, hodge_star, MinkowskiMetric};
use crate::multivector::Multivector;
use crate::scalar::{Float, Scalar};

/// Pointwise map on values.
pub type ValueMap<'a, S> = &'a (dyn Fn(&Multivector<S>) -> Multivector<S> + Sync);
/// Pointwise bilinear combination of two values.
pub type ValuePairing<'a, S> = &'a (dyn Fn(&Multivector<S>, &Multivector<S>) -> Multivector<S> + Sync);

/// Operations shared by every field backend.
pub trait FieldOps<S: Scalar>: Clone + Send + Sync {
    fn zero_like(&self) -> Self;
    /// Constant field with the same domain.
    fn constant_like(&self, value: &Multivector<S>) -> Self;
    /// `∂/∂x^mu`.
    fn partial(&self, mu: usize) -> Self;
    fn plus(&self, other: &Self) -> Self;
    fn scaled(&self, c: &S) -> Self;
    /// Pointwise complex-linear map.
    fn map_linear(&self, f: ValueMap<'_, S>) -> Self;
    /// Pointwise real-linear map (conjugations allowed).
    fn map_real_linear(&self, f: ValueMap<'_, S>) -> Self;
    /// Pointwise complex-bilinear combination.
    fn product_with(&self, other: &Self, f: ValuePairing<'_, S>) -> Self;
    /// Values at the backend's probe points (sample points or lattice sites).
    fn probe_values(&self) -> Vec<Multivector<Float>>;
    /// Structural zero: no surviving terms or all stored values exactly zero.
    fn is_identically_zero(&self) -> bool;

    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.scaled(&S::from_i64(-1)))
    }

    /// Largest pointwise norm over the probe points.
    fn max_norm_by(&self, norm: &(dyn Fn(&Multivector<Float>) -> f64 + Sync)) -> f64 {
        self.probe_values().iter().map(norm).fold(0.0, f64::max)
    }

    /// Largest pointwise Euclidean coefficient norm.
    fn max_norm(&self) -> f64 {
        self.max_norm_by(&|v| v.norm())
    }

    /// Left Clifford product by a constant.
    fn left_mul(&self, c: &Multivector<S>) -> Self {
        self.map_linear(&|v| c.mul(v))
    }

    /// Right Clifford product by a constant.
    fn right_mul(&self, c: &Multivector<S>) -> Self {
        self.map_linear(&|v| v.mul(c))
    }
}

fn sum_over_axes<S: Scalar, F: FieldOps<S>>(f: &F, term: impl Fn(usize) -> F) -> F {
    (0..4).fold(f.zero_like(), |acc, mu| acc.plus(&term(mu)))
}

/// `⋆` applied pointwise.
pub fn star<S: Scalar, F: FieldOps<S>>(f: &F) -> F {
    f.map_linear(&hodge_star)
}

/// `dV = e^mu ∧ ∂_mu V`.
pub fn d<S: Scalar, F: FieldOps<S>>(f: &F) -> F {
    sum_over_axes(f, |mu| {
        let e = Multivector::<S>::basis_vector(mu);
        f.partial(mu).map_linear(&|v| e.wedge(v))
    })
}

/// `δU = ⋆d⋆U`.
pub fn delta<S: Scalar, F: FieldOps<S>>(f: &F) -> F {
    star(&d(&star(f)))
}

/// `Υ = d - δ`.
pub fn upsilon<S: Scalar, F: FieldOps<S>>(f: &F) -> F {
    d(f).minus(&delta(f))
}

/// `ΥU = e^mu ∂_mu U`, with the Clifford product taken from the exterior table.
pub fn upsilon_clifford<S: Scalar, F: FieldOps<S>>(f: &F) -> F {
    sum_over_axes(f, |mu| {
        let e = Multivector::<S>::basis_vector(mu);
        f.partial(mu).map_linear(&|v| clifford_product_via_table(&e, v))
    })
}

/// `Δ = Υ²`.
pub fn laplace<S: Scalar, F: FieldOps<S>>(f: &F) -> F {
    upsilon_clifford(&upsilon_clifford(f))
}

/// `Δ = (d - δ)²`.
pub fn laplace_split_square<S: Scalar, F: FieldOps<S>>(f: &F) -> F {
    upsilon(&upsilon(f))
}

/// `Δ = -(dδ + δd)`.
pub fn laplace_hodge<S: Scalar, F: FieldOps<S>>(f: &F) -> F {
    d(&delta(f)).plus(&delta(&d(f))).scaled(&S::from_i64(-1))
}

/// `Δ = g^{mu nu} ∂_mu ∂_nu`.
pub fn laplace_wave<S: Scalar, F: FieldOps<S>>(f: &F) -> F {
    sum_over_axes(f, |mu| {
        f.partial(mu)
            .partial(mu)
            .scaled(&S::from_i64(MinkowskiMetric::g(mu, mu) as i64))
    })
}

/// Largest pointwise difference between grid `Υ` of the sampled field and
/// the analytic `Υ` sampled on the same lattice.
pub fn grid_upsilon_error<S: Scalar>(
    field: &AnalyticField<S>,
    dims: [usize; 4],
    h: [f64; 4],
    exec: crate::par::Execution,
) -> (f64, Vec<String>) {
    let (grid, warnings) = GridField::sample(field, dims, h, exec);
    (upsilon(&grid).max_error_against(&upsilon(field)), warnings)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{rng, stream_id};
    use crate::scalar::Exact;

    fn random_field(seed: u64) -> AnalyticField<Exact> {
        AnalyticField::random(&mut rng(seed, stream_id("field-ops")), 3)
    }

    #[test]
    fn d_of_coordinate_is_basis_covector() {
        let x1 = AnalyticField::<Exact>::monomial(Multivector::one(), [0, 1, 0, 0]);
        let expected = AnalyticField::constant(Multivector::basis_vector(1));
        assert!(d(&x1).minus(&expected).is_identically_zero());
    }

    #[test]
    fn operator_identities_hold_exactly() {
        for seed in 0..5 {
            let f = random_field(seed);
            assert!(d(&d(&f)).is_identically_zero());
            assert!(delta(&delta(&f)).is_identically_zero());
            assert!(upsilon(&f).minus(&upsilon_clifford(&f)).is_identically_zero());
            let l = laplace(&f);
            for other in [laplace_split_square(&f), laplace_hodge(&f), laplace_wave(&f)] {
                assert!(l.minus(&other).is_identically_zero());
            }
        }
    }
}
