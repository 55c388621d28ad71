use std::f64::consts::{PI, TAU};

use proptest::prelude::*;

use tsspic::groupoid::{
    alpha_flow, modular_period_numeric, ramp, verify_alpha_group_law, verify_groupoid_axioms,
    verify_isotropy, verify_modular_lift, verify_symplectic_compatibility, DehnTwist,
    GroupoidError, GroupoidModel, LiftVector, ModelKind, Perturbation, VerifyOptions,
};

fn opts(samples: usize, tol: f64) -> VerifyOptions {
    VerifyOptions {
        samples,
        tol,
        ..VerifyOptions::default()
    }
}

/// Closed form of the flow `dr/dp = r^2 - 1` started at `r`.
fn alpha_oracle(r: f64, p: f64) -> f64 {
    let k = (r - 1.0) / (r + 1.0) * (2.0 * p).exp();
    (1.0 + k) / (1.0 - k)
}

#[test]
fn reports_are_deterministic_in_the_seed() {
    let m = GroupoidModel::<f64>::cylinder_two();
    let o = VerifyOptions { seed: 42, ..opts(300, 1e-9) };
    let a = verify_groupoid_axioms(&m, &o);
    let b = verify_groupoid_axioms(&m, &o);
    assert_eq!(a, b);
}

#[test]
fn single_precision_passes_at_a_looser_tolerance() {
    for kind in [ModelKind::AffinePlane, ModelKind::CylinderOne] {
        let m = GroupoidModel::<f32>::new(kind);
        let r = verify_groupoid_axioms(&m, &opts(300, 1e-2));
        assert!(r.passed(), "{r:#?}");
    }
}

#[test]
fn every_model_passes_the_full_battery() {
    for kind in ModelKind::all() {
        let m = GroupoidModel::<f64>::new(kind);
        let o = opts(500, 1e-9);
        let r = verify_groupoid_axioms(&m, &o)
            .merge(verify_symplectic_compatibility(&m, &o))
            .merge(verify_modular_lift(&m, LiftVector::Hp, &o));
        assert!(r.passed(), "{r:#?}");
        assert_eq!(r.conventions.get("sigma"), Some(&-1));
    }
    assert!(verify_isotropy::<f64>(&opts(500, 1e-9)).passed());
    assert!(verify_alpha_group_law::<f64>(&opts(500, 1e-12)).passed());
}

#[test]
fn perturbations_break_different_checks() {
    let o = opts(500, 1e-9);
    let m = GroupoidModel::<f64>::perturbed(ModelKind::AffinePlane, Perturbation::WrongFlowFactor);
    let r = verify_groupoid_axioms(&m, &o);
    assert!(!r.check("associativity").unwrap().pass);

    let m = GroupoidModel::<f64>::perturbed(ModelKind::CylinderOne, Perturbation::DropQPrime);
    let r = verify_groupoid_axioms(&m, &o);
    assert!(!r.passed());
}

#[test]
fn period_oracle_for_other_profiles() {
    // f(r) = sin r vanishes at 0 and pi with |f'| = 1
    for r0 in [0.0, PI] {
        let t = modular_period_numeric(f64::sin, r0, 1e-6).unwrap();
        assert!((t - TAU).abs() < 1e-8, "{t}");
    }
    let t = modular_period_numeric(|r: f64| 3.0 * (r - 2.0), 2.0, 1e-6).unwrap();
    assert!((t - TAU / 3.0).abs() < 1e-8);
    assert!(matches!(
        modular_period_numeric(|r: f64| r * r - 1.0, 0.5, 1e-6),
        Err(GroupoidError::NotAZero { .. })
    ));
    assert!(matches!(
        modular_period_numeric(|r: f64| r * r, 0.0, 1e-6),
        Err(GroupoidError::DegenerateZero { .. })
    ));
}

#[test]
fn twist_powers_wind_around() {
    let t = DehnTwist::<f64>::standard();
    let (_, th) = t.power(3).apply_lift(2.0, 0.5);
    assert!((th - (0.5 + 3.0 * TAU)).abs() < 1e-12);
    assert!((ramp(1.5f64) - PI).abs() < 1e-15);
}

proptest! {
    #[test]
    fn alpha_matches_its_closed_form(r in -0.99f64..0.99, p in -3.0f64..3.0) {
        let got = alpha_flow(r, p).unwrap();
        prop_assert!((got - alpha_oracle(r, p)).abs() < 1e-12);
        prop_assert!(got > -1.0 && got < 1.0);
    }

    #[test]
    fn alpha_outside_stays_outside(r in 1.01f64..1.99, p in -3.0f64..0.0) {
        let got = alpha_flow(r, p).unwrap();
        prop_assert!((got - alpha_oracle(r, p)).abs() < 1e-9 * got.abs().max(1.0));
        prop_assert!(got > 1.0);
    }

    #[test]
    fn units_are_neutral(r in -0.9f64..0.9, theta in 0.0f64..TAU) {
        let m = GroupoidModel::<f64>::cylinder_one();
        let b = [r, theta];
        let e = m.unit(&b);
        prop_assert_eq!(m.source(&e), b);
        prop_assert!(m.base_distance(&m.target(&e).unwrap(), &b) < 1e-15);
    }
}
