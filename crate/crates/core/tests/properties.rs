//! Property tests for algebraic invariants.

use num_complex::Complex;
use proptest::prelude::*;

use stada::blade::Blade;
use stada::exterior::{clifford_product_via_table, hodge_star, hodge_star_direct};
use stada::ideal::IdealBasis;
use stada::literal::{format, parse_exact, BasisSymbol};
use stada::oracle;
use stada::random::rng;
use stada::scalar::rational;
use stada::spin::SpinElement;
use stada::{Exact, Float, Multivector};

fn coeff() -> impl Strategy<Value = Exact> {
    (-6i64..=6, -6i64..=6, 1i64..=4).prop_map(|(re, im, den)| Complex::new(rational(re, den), rational(im, den)))
}

/// Sparse exact multivectors: each coefficient is zero about half the time.
fn mv() -> impl Strategy<Value = Multivector<Exact>> {
    prop::collection::vec(prop::option::of(coeff()), 16).prop_map(|cs| {
        Multivector::from_fn(|i| cs[i].clone().unwrap_or_else(|| Complex::new(rational(0, 1), rational(0, 1))))
    })
}

fn blade() -> impl Strategy<Value = Blade> {
    (0u8..16).prop_map(|m| Blade::new(m).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_is_associative(a in mv(), b in mv(), c in mv()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn product_distributes(a in mv(), b in mv(), c in mv()) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(b.add(&c).mul(&a), b.mul(&a).add(&c.mul(&a)));
    }

    #[test]
    fn wedge_is_associative(a in mv(), b in mv(), c in mv()) {
        prop_assert_eq!(a.wedge(&b).wedge(&c), a.wedge(&b.wedge(&c)));
    }

    #[test]
    fn three_products_agree(a in mv(), b in mv()) {
        let sign_rule = a.mul(&b);
        prop_assert_eq!(&clifford_product_via_table(&a, &b), &sign_rule);
        prop_assert_eq!(&oracle::product(&a, &b), &sign_rule);
    }

    #[test]
    fn blade_products_match_the_reordering_oracle(a in blade(), b in blade()) {
        prop_assert_eq!(stada::blade::product(a, b), oracle::blade_product(a, b));
    }

    #[test]
    fn float_tracks_exact(a in mv(), b in mv()) {
        let exact = a.mul(&b).to_float();
        let float = a.to_float().mul(&b.to_float());
        prop_assert!(exact.max_abs_diff(&float) <= 1e-12 * (1.0 + exact.max_coeff()));
    }

    #[test]
    fn reversion_and_star_reverse_products(a in mv(), b in mv()) {
        prop_assert_eq!(a.mul(&b).reverse(), b.reverse().mul(&a.reverse()));
        prop_assert_eq!(a.mul(&b).star(), b.star().mul(&a.star()));
        prop_assert_eq!(a.star().star(), a);
    }

    #[test]
    fn trace_is_cyclic(a in mv(), b in mv(), c in mv()) {
        prop_assert_eq!(a.mul(&b).mul(&c).trace(), c.mul(&a).mul(&b).trace());
    }

    #[test]
    fn hodge_star_routes_agree_and_square_to_a_sign(a in mv()) {
        prop_assert_eq!(hodge_star(&a), hodge_star_direct(&a));
        for k in 0..=4 {
            let part = a.grade_part(k).unwrap();
            let expected = if k % 2 == 1 { part.clone() } else { part.neg() };
            prop_assert_eq!(hodge_star(&hodge_star(&part)), expected);
        }
    }

    #[test]
    fn grades_reassemble(a in mv()) {
        let sum = (0..=4).fold(Multivector::zero(), |acc, k| acc.add(&a.grade_part(k).unwrap()));
        prop_assert_eq!(sum, a.clone());
        prop_assert_eq!(a.even_part().add(&a.odd_part()), a);
    }

    #[test]
    fn literals_round_trip(a in mv(), letter in prop::bool::ANY) {
        let symbol = if letter { BasisSymbol::L } else { BasisSymbol::E };
        prop_assert_eq!(parse_exact(&format(&a, symbol)).unwrap(), a);
    }

    #[test]
    fn expressions_evaluate_like_the_library(a in mv(), b in mv()) {
        let (ta, tb) = (format(&a, BasisSymbol::E), format(&b, BasisSymbol::E));
        let product = stada::expr::evaluate(&format!("({ta}) * ({tb})")).unwrap();
        prop_assert_eq!(product, a.mul(&b));
        let wedge = stada::expr::evaluate(&format!("rev(({ta}) ^ star({tb}))")).unwrap();
        prop_assert_eq!(wedge, a.wedge(&hodge_star(&b)).reverse());
    }

    #[test]
    fn gamma_is_a_homomorphism(a in mv(), b in mv()) {
        let basis = IdealBasis::<Exact>::canonical();
        prop_assert_eq!(basis.gamma(&a.mul(&b)), basis.gamma(&a).mul(&basis.gamma(&b)));
    }

    #[test]
    fn inverses_are_two_sided(a in mv()) {
        if let Some(inv) = a.inverse(0.0) {
            prop_assert_eq!(a.mul(&inv), Multivector::one());
            prop_assert_eq!(inv.mul(&a), Multivector::one());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn exact_spin_elements_give_proper_lorentz_maps(seed in any::<u64>()) {
        let s = SpinElement::<Exact>::random(&mut rng(seed, 0), 3);
        let p = s.lorentz(0.0).unwrap();
        prop_assert_eq!(p.metric_defect(), 0.0);
        prop_assert!(p.is_proper_orthochronous(0.0));
        prop_assert_eq!(s.neg().lorentz(0.0).unwrap(), p.clone());
        let t = SpinElement::<Exact>::random(&mut rng(seed, 1), 2);
        prop_assert_eq!(s.compose(&t).lorentz(0.0).unwrap(), p.compose(&t.lorentz(0.0).unwrap()));
    }

    #[test]
    fn float_spin_elements_are_near_isometries(seed in any::<u64>()) {
        let s = SpinElement::<Float>::random(&mut rng(seed, 0));
        let p = s.lorentz(1e-9).unwrap();
        prop_assert!(p.metric_defect() < 1e-9);
        prop_assert!((p.determinant() - 1.0).abs() < 1e-9);
        prop_assert!(*p.get(0, 0) >= 1.0 - 1e-12);
    }
}
