use stada::equations::{
    boosted_momentum, covariance_transform, current, gauge_transform, global_spin_transform, lagrangian,
    maxwell_residuals, plane_wave, trace_f_squared, translate, translate_residual, DiracSystem, Energy,
    EquationForm::{self, *},
};
use stada::field::{AnalyticField, FieldOps, Poly};
use stada::ideal::SecondaryGenerators;
use stada::random::{self, rng, stream_id, TestRng};
use stada::scalar::{rational, Exact, Float};
use stada::spin::SpinElement;
use stada::{Blade, Multivector};

fn exact_system(r: &mut TestRng, canonical: bool) -> DiracSystem<Exact> {
    let m = rational(random::index(r, 4) as i64 + 1, 2);
    if canonical {
        DiracSystem::canonical(m).unwrap()
    } else {
        DiracSystem::with_generators(m, SecondaryGenerators::<Exact>::random(r), 0.0).unwrap()
    }
}

fn random_potential<S: random::RandomScalar>(r: &mut TestRng) -> AnalyticField<S> {
    AnalyticField::random_supported(r, 2, true, |b| b.grade() == 1)
}

fn random_bispinor_field<S: random::RandomScalar>(r: &mut TestRng) -> AnalyticField<S> {
    AnalyticField::random_supported(r, 3, false, |b| b.index() < 4)
}

#[test]
fn residuals_commute_with_translation() {
    for seed in 0..6 {
        let mut r = rng(seed, stream_id("translate-residuals"));
        let sys = exact_system(&mut r, seed % 2 == 0);
        let a = random_potential::<Exact>(&mut r);
        let psi = random_bispinor_field::<Exact>(&mut r);
        let r_dirac = sys.residual(Dirac, &psi, &a, 0.0).unwrap();
        assert!(!r_dirac.is_identically_zero());
        let theta = translate(&sys, Dirac, Ideal, &psi).unwrap();
        let r_ideal = sys.residual(Ideal, &theta, &a, 0.0).unwrap();
        assert_eq!(translate_residual(&sys, Dirac, Ideal, &r_dirac).unwrap(), r_ideal);
        let big_psi = translate(&sys, Ideal, Hestenes, &theta).unwrap();
        let r_h = sys.residual(Hestenes, &big_psi, &a, 0.0).unwrap();
        assert_eq!(translate_residual(&sys, Ideal, Hestenes, &r_ideal).unwrap(), r_h);
        assert_eq!(r_h.right_mul(sys.basis().t()), r_ideal);
        let r_t = sys.residual(Tensor, &big_psi, &a, 0.0).unwrap();
        assert_eq!(r_t, r_h);
        let back = translate(&sys, Tensor, Dirac, &big_psi).unwrap();
        assert_eq!(back, psi);
    }
}

#[test]
fn ilk_reductions_hold_on_random_states() {
    for seed in 0..4 {
        let mut r = rng(seed, stream_id("ilk-reductions"));
        let sys = exact_system(&mut r, seed % 2 == 1);
        let a = random_potential::<Exact>(&mut r);
        let rho = AnalyticField::<Exact>::random(&mut r, 3);
        let r_ilk = sys.operator(Ilk, &rho, &a);
        let one = Multivector::<Exact>::one();
        let half = Exact::new(rational(1, 2), rational(0, 1));
        let i = Exact::new(rational(0, 1), rational(1, 1));
        let t_h = one.add(sys.h()).scale(&half);
        let t_e5 = one.sub(&Multivector::pseudoscalar().scale(&i)).scale(&half);
        for (form, idem) in [(Tensor, sys.basis().t().clone()), (IlkEven, t_h), (IlkE5, t_e5)] {
            let reduced = sys.operator(form, &rho.right_mul(&idem), &a);
            assert_eq!(reduced, r_ilk.right_mul(&idem), "{form}");
        }
    }
}

#[test]
fn boosted_plane_waves_solve_every_form_exactly() {
    let mut r = rng(5, stream_id("boosts"));
    let sys = DiracSystem::<Exact>::canonical(rational(1, 1)).unwrap();
    for _ in 0..3 {
        let p = boosted_momentum(
            &rational(1, 1),
            &random::open_unit_rational(&mut r),
            &random::small_rational(&mut r, 3),
            &random::small_rational(&mut r, 3),
        )
        .unwrap();
        for energy in [Energy::Positive, Energy::Negative] {
            for form in EquationForm::ALL {
                let state = plane_wave(&sys, form, &p, energy, 1).unwrap();
                let res = sys.residual(form, &state, &AnalyticField::zero(), 0.0).unwrap();
                assert!(res.is_identically_zero(), "{form} {energy:?}");
            }
        }
    }
}

#[test]
fn gauge_transform_preserves_residual_norms() {
    let sys = DiracSystem::<Float>::canonical(1.0).unwrap();
    let mut r = rng(2, stream_id("gauge"));
    let lambdas = [
        Poly::variable(1).scale(&0.3),
        Poly::variable(0).mul(&Poly::variable(2)).scale(&0.2).add(&Poly::variable(3).pow(2).scale(&-0.1)),
        Poly::constant(std::f64::consts::FRAC_PI_2),
    ];
    let p = [1.0, 0.0, 0.0, 0.0];
    for form in EquationForm::ALL {
        let solution = plane_wave(&sys, form, &p, Energy::Positive, 0).unwrap();
        let random_state = match form {
            Dirac => random_bispinor_field::<Float>(&mut r),
            Ideal => translate(&sys, Dirac, Ideal, &random_bispinor_field::<Float>(&mut r)).unwrap(),
            Hestenes | Tensor => translate(&sys, Dirac, form, &random_bispinor_field::<Float>(&mut r)).unwrap(),
            _ => AnalyticField::random(&mut r, 3),
        };
        let a = random_potential::<Float>(&mut r);
        let norm = sys.norm_fn(form);
        for lambda in &lambdas {
            for (state, pot) in [(solution.clone(), AnalyticField::zero()), (random_state.clone(), a.clone())] {
                let before = sys.operator(form, &state, &pot);
                let (s2, a2) = gauge_transform(&sys, form, &state, &pot, lambda);
                let after = sys.operator(form, &s2, &a2);
                for (x, y) in before.probe_values().iter().zip(after.probe_values()) {
                    assert!((norm(x) - norm(&y)).abs() <= 1e-10, "{form}");
                }
            }
        }
    }
}

#[test]
fn constant_quarter_turn_multiplies_by_i_generator() {
    let sys = DiracSystem::<Float>::canonical(1.0).unwrap();
    let phi = plane_wave(&sys, Tensor, &[1.0, 0.0, 0.0, 0.0], Energy::Positive, 0).unwrap();
    let zero = AnalyticField::zero();
    let (moved, a) = gauge_transform(&sys, Tensor, &phi, &zero, &Poly::constant(std::f64::consts::FRAC_PI_2));
    assert!(moved.minus(&phi.right_mul(sys.i())).max_norm() < 1e-14);
    assert!(a.is_identically_zero());
}

#[test]
fn covariance_carries_solutions_to_solutions() {
    let mut r = rng(9, stream_id("covariance"));
    let sys = DiracSystem::<Exact>::canonical(rational(1, 1)).unwrap();
    let p = [rational(1, 1), rational(0, 1), rational(0, 1), rational(0, 1)];
    for _ in 0..3 {
        let s = SpinElement::<Exact>::random(&mut r, 2);
        let a = random_potential::<Exact>(&mut r);
        for form in [Dirac, Hestenes, Tensor, Ideal] {
            let state = plane_wave(&sys, form, &p, Energy::Positive, 0).unwrap();
            let (moved, _) = covariance_transform(&sys, form, &s, &state, &AnalyticField::zero(), 0.0).unwrap();
            assert!(sys.residual(form, &moved, &AnalyticField::zero(), 0.0).unwrap().is_identically_zero());
            // Non-solutions: the transformed residual is the transformed original residual.
            let psi = translate(&sys, Dirac, form, &random_bispinor_field::<Exact>(&mut r)).unwrap();
            let before = sys.operator(form, &psi, &a);
            let (moved, a2) = covariance_transform(&sys, form, &s, &psi, &a, 0.0).unwrap();
            let after = sys.operator(form, &moved, &a2);
            let (expected, _) = covariance_transform(&sys, form, &s, &before, &AnalyticField::zero(), 0.0).unwrap();
            assert_eq!(after, expected, "{form}");
        }
        // Boosting a rest-frame wave gives a wave with the boosted momentum.
        let psi = plane_wave(&sys, Dirac, &p, Energy::Positive, 0).unwrap();
        let (moved, _) = covariance_transform(&sys, Dirac, &s, &psi, &AnalyticField::zero(), 0.0).unwrap();
        let phase = &moved.terms()[0].phase;
        let mut k = [rational(0, 1), rational(0, 1), rational(0, 1), rational(0, 1)];
        for (a, c) in phase.terms() {
            k[a.iter().position(|&e| e == 1).unwrap()] = -c.clone();
        }
        let sq = k[0].clone() * &k[0] - &k[1] * &k[1] - &k[2] * &k[2] - &k[3] * &k[3];
        assert_eq!(sq, rational(1, 1));
    }
}

#[test]
fn global_spin_transform_keeps_solutions() {
    let mut r = rng(4, stream_id("global-spin"));
    let sys = DiracSystem::<Exact>::canonical(rational(1, 1)).unwrap();
    let p = [rational(1, 1), rational(0, 1), rational(0, 1), rational(0, 1)];
    let phi = plane_wave(&sys, Tensor, &p, Energy::Positive, 0).unwrap();
    let a = random_potential::<Exact>(&mut r);
    let s = SpinElement::<Exact>::random(&mut r, 3);
    let (moved_sys, moved) = global_spin_transform(&sys, &s, &phi).unwrap();
    assert!(moved_sys.residual(Tensor, &moved, &AnalyticField::zero(), 0.0).unwrap().is_identically_zero());
    let before = sys.operator(Tensor, &phi, &a);
    let after = moved_sys.operator(Tensor, &moved, &a);
    assert_eq!(after, before.right_mul(s.element()));
}

#[test]
fn current_is_a_conserved_real_vector() {
    let mut r = rng(3, stream_id("current"));
    let sys = DiracSystem::<Exact>::canonical(rational(1, 1)).unwrap();
    for _ in 0..3 {
        let phi = AnalyticField::<Exact>::random_supported(&mut r, 3, true, |b| b.grade() % 2 == 0);
        let j = current(&sys, &phi, 0.0).unwrap();
        assert_eq!(j.trace_components, j.vector);
    }
    let p = boosted_momentum(&rational(1, 1), &rational(1, 3), &rational(1, 2), &rational(0, 1)).unwrap();
    let waves = plane_wave(&sys, Tensor, &p, Energy::Positive, 0)
        .unwrap()
        .plus(&plane_wave(&sys, Tensor, &[rational(1, 1), rational(0, 1), rational(0, 1), rational(0, 1)], Energy::Positive, 1).unwrap());
    let j = current(&sys, &waves, 0.0).unwrap();
    assert!(j.divergence.is_identically_zero());
    assert!(j.codifferential.is_identically_zero());
    let fsys = DiracSystem::<Float>::canonical(1.0).unwrap();
    let wave = plane_wave(&fsys, Tensor, &[1.0, 0.0, 0.0, 0.0], Energy::Positive, 0).unwrap();
    let j = current(&fsys, &wave, 1e-12).unwrap();
    for v in j.vector.probe_values() {
        assert!(v.coeff(Blade::vector(0)).re > 0.0);
    }
}

#[test]
fn lagrangian_and_maxwell_consistency() {
    let mut r = rng(8, stream_id("maxwell"));
    let sys = DiracSystem::<Exact>::canonical(rational(1, 1)).unwrap();
    let p = [rational(1, 1), rational(0, 1), rational(0, 1), rational(0, 1)];
    let phi = plane_wave(&sys, Tensor, &p, Energy::Positive, 0).unwrap();
    let (matter, _, _) = lagrangian(&sys, &phi, &AnalyticField::zero());
    assert!(matter.is_identically_zero());
    for _ in 0..3 {
        let a = random_potential::<Exact>(&mut r);
        let (direct, components) = trace_f_squared(&a);
        assert_eq!(direct, components);
        let m = maxwell_residuals(&sys, &phi, &a, 0.0).unwrap();
        assert!(m.field_strength.is_identically_zero());
        assert!(m.sign_relation.is_identically_zero());
    }
    let constant = AnalyticField::<Exact>::constant(Multivector::basis_vector(2));
    assert!(trace_f_squared(&constant).0.is_identically_zero());
}
