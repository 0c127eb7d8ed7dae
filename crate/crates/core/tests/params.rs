use proptest::prelude::*;
use quartic_census::params::{
    base_param, branch_signature, indefinite_signature, jacobian_det, param_form, round_trip, Branch, ParamPoint,
};
use quartic_census::verify::{run_suite, VerifyConfig};
use quartic_census::QuadForm;

#[test]
fn suite_passes() {
    let r = run_suite("params", &VerifyConfig { samples: Some(100), ..Default::default() }).unwrap();
    assert!(r.passed, "{:?}", r.counterexamples);
    assert_eq!(r.checks, 2 * 7 * 100);
}

#[test]
fn wrong_branch_is_rejected() {
    let f = QuadForm::new(1.0, 0.0, 1.0);
    assert!(param_form(&f, &ParamPoint::new(1.0, 1.0, 0.0, Branch::Indef1)).is_err());
    assert!(param_form(&f, &ParamPoint::new(1.0, -3.0, 0.0, Branch::PosDef)).is_err());
}

fn indef_branch() -> impl Strategy<Value = Branch> {
    prop_oneof![Just(Branch::Indef1), Just(Branch::Indef2), Just(Branch::Indef3), Just(Branch::Indef4)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn model_round_trip(l in -4.0f64..4.0, u in 0.3f64..5.0, t in -0.5f64..0.5, b in indef_branch()) {
        let k = match b {
            Branch::Indef3 | Branch::Indef4 => -l * l / 4.0 - u,
            _ => -l * l / 4.0 + u,
        };
        let p = ParamPoint::new(l, k, t, b);
        prop_assume!(p.in_region() && (2.0 * l * l - k).abs() > 0.1);
        let f = QuadForm::new(1.0, 1.0, -1.0);
        let (l2, k2) = round_trip(&f, &p).unwrap();
        prop_assert!((l2 - l).abs() < 1e-9 * l.abs().max(1.0));
        prop_assert!((k2 - k).abs() < 1e-9 * k.abs().max(1.0));
        prop_assert!((jacobian_det(&p, 1e-5) + 1.0 / 18.0).abs() < 1e-6);
        let abc = base_param(&p);
        prop_assert_eq!(Some(indefinite_signature(&abc)), branch_signature(b));
    }
}
