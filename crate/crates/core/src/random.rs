//! Seeded generators for test inputs.
//!
//! Every stream is a ChaCha8 generator derived from a base seed and a stream
//! label, so independent checks never share state and results do not depend
//! on scheduling.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::blade::Blade;
use crate::multivector::Multivector;
use crate::scalar::{rational, Exact, Float, Scalar};

pub type TestRng = ChaCha8Rng;

/// Generator for `(seed, stream)`; distinct streams are independent.
pub fn rng(seed: u64, stream: u64) -> TestRng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Stable 64-bit label for a named stream (FNV-1a).
pub fn stream_id(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    })
}

/// Small rational with numerator in `-range..=range` and denominator `1..=4`.
pub fn small_rational(rng: &mut TestRng, range: i64) -> num_rational::BigRational {
    rational(rng.random_range(-range..=range), rng.random_range(1..=4))
}

/// Coefficient generator shared by both backends.
pub trait RandomScalar: Scalar {
    /// Real value, roughly uniform on `[-1, 1]`.
    fn random_real(rng: &mut TestRng) -> Self::Real;

    fn random_complex(rng: &mut TestRng) -> Self {
        Self::from_parts(Self::random_real(rng), Self::random_real(rng))
    }
}

impl RandomScalar for Exact {
    fn random_real(rng: &mut TestRng) -> num_rational::BigRational {
        rational(rng.random_range(-4..=4), rng.random_range(1..=4))
    }
}

impl RandomScalar for Float {
    fn random_real(rng: &mut TestRng) -> f64 {
        rng.random_range(-1.0..=1.0)
    }
}

pub fn multivector<S: RandomScalar>(rng: &mut TestRng) -> Multivector<S> {
    Multivector::from_fn(|_| S::random_complex(rng))
}

pub fn real_multivector<S: RandomScalar>(rng: &mut TestRng) -> Multivector<S> {
    Multivector::from_fn(|_| S::from_real(S::random_real(rng)))
}

/// Random element supported on blades selected by `keep`.
pub fn supported<S: RandomScalar>(rng: &mut TestRng, real: bool, keep: impl Fn(Blade) -> bool) -> Multivector<S> {
    Multivector::from_fn(|i| {
        let b = Blade::new(i as u8).expect("mask");
        let value = if real {
            S::from_real(S::random_real(rng))
        } else {
            S::random_complex(rng)
        };
        if keep(b) {
            value
        } else {
            S::zero()
        }
    })
}

pub fn even_real<S: RandomScalar>(rng: &mut TestRng) -> Multivector<S> {
    supported(rng, true, |b| b.grade() % 2 == 0)
}

pub fn homogeneous<S: RandomScalar>(rng: &mut TestRng, k: usize, real: bool) -> Multivector<S> {
    supported(rng, real, |b| b.grade() == k)
}

pub fn bivector_float(rng: &mut TestRng) -> Multivector<Float> {
    homogeneous(rng, 2, true)
}

/// Four complex components.
pub fn bispinor<S: RandomScalar>(rng: &mut TestRng) -> [S; 4] {
    std::array::from_fn(|_| S::random_complex(rng))
}

/// Exact Gaussian-rational complex number with small parts.
pub fn small_exact(rng: &mut TestRng) -> Exact {
    Complex::new(small_rational(rng, 3), small_rational(rng, 3))
}

/// Uniform float in `[lo, hi]`.
pub fn uniform(rng: &mut TestRng, lo: f64, hi: f64) -> f64 {
    rng.random_range(lo..=hi)
}

pub fn index(rng: &mut TestRng, n: usize) -> usize {
    rng.random_range(0..n)
}

/// Nonzero small exact integer-ratio parameter in `(-1, 1)`.
pub fn open_unit_rational(rng: &mut TestRng) -> num_rational::BigRational {
    loop {
        let d: i64 = rng.random_range(2..=6);
        let n: i64 = rng.random_range(-(d - 1)..=d - 1);
        if n != 0 {
            return rational(n, d);
        }
    }
}

pub fn bool(rng: &mut TestRng) -> bool {
    rng.random_bool(0.5)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: Multivector<Exact> = multivector(&mut rng(7, 1));
        let b: Multivector<Exact> = multivector(&mut rng(7, 1));
        let c: Multivector<Exact> = multivector(&mut rng(7, 2));
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
