use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use quartic_census::quadarith::{
    fundamental_t, in_orthogonal, orthogonal_bruteforce, orthogonal_group, orthogonal_group_any,
    pell_bruteforce, pell_generator, pell_least, quad_equivalent, quad_kind, r_f, reduce_quad,
    unit_power, GroupStructure, QuadKind,
};
use quartic_census::verify::{run_suite, VerifyConfig};
use quartic_census::{Mat2Z, QuadZ};

fn q(a: i64, b: i64, c: i64) -> QuadZ {
    QuadZ::from_i64(a, b, c)
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(big(n))
}

#[test]
fn pell_examples() {
    for (d, u, v, s) in [(5, 1, 1, -4), (8, 2, 1, -4), (12, 4, 1, 4), (13, 3, 1, -4), (3, 4, 2, 4)] {
        let p = pell_least(&big(d)).unwrap();
        assert_eq!((p.u, p.v, p.sign), (big(u), big(v), s), "D = {d}");
    }
    assert!((fundamental_t(&big(5)).unwrap() - 0.481211825).abs() < 1e-8);
    assert!((fundamental_t(&big(8)).unwrap() - 0.881373587).abs() < 1e-8);
    assert!((fundamental_t(&big(12)).unwrap() - 1.316957897).abs() < 1e-8);
    assert!(pell_least(&big(16)).is_err());
}

#[test]
fn pell_matches_search_to_two_thousand() {
    let r = run_suite("pell", &VerifyConfig { dmax: Some(2000), ..Default::default() }).unwrap();
    assert!(r.passed, "{:?}", r.counterexamples);
}

#[test]
fn pell_large_period() {
    // D = 1621 has a long period; the solver and the norm must agree
    let d = big(1621);
    let p = pell_least(&d).unwrap();
    assert_eq!(&p.u * &p.u - &d * &p.v * &p.v, big(p.sign as i64));
    assert!(p.v > big(20_000));
    assert_eq!(pell_bruteforce(1621, 20_000), None);
}

#[test]
fn unit_power_examples() {
    let half = BigRational::new(big(1), big(2));
    let e1 = unit_power(&big(5), 1).unwrap();
    assert_eq!((e1.a.clone(), e1.b.clone()), (half.clone(), half.clone()));
    let e8 = unit_power(&big(5), 8).unwrap();
    assert_eq!((e8.a.clone(), e8.b.clone()), (rat(47) * &half, rat(21) * &half));
    let e2 = unit_power(&big(8), 2).unwrap();
    assert_eq!((e2.a.clone(), e2.b.clone()), (rat(3), rat(1)));
    // norm is -1 for D = 5, and eps * eps^-1 = 1
    assert_eq!(e1.norm(), rat(-1));
    let inv = unit_power(&big(5), -1).unwrap();
    let one = e1.mul(&inv);
    assert_eq!((one.a, one.b), (rat(1), BigRational::zero()));
}

#[test]
fn orthogonal_matches_search() {
    let r = run_suite("orthogonal", &VerifyConfig::default()).unwrap();
    assert!(r.passed, "{:?}", r.counterexamples);
}

#[test]
fn r_f_table() {
    assert_eq!(r_f(&q(1, 1, 1)).unwrap(), 6);
    assert_eq!(r_f(&q(1, 0, 1)).unwrap(), 2);
    assert_eq!(r_f(&q(1, 1, 0)).unwrap(), 2);
    assert_eq!(r_f(&q(1, 2, 0)).unwrap(), 2);
    assert_eq!(r_f(&q(1, 1, -1)).unwrap(), 2);
}

#[test]
fn pell_generator_is_automorph() {
    for f in [q(1, 1, -1), q(1, 2, -1), q(2, 5, -5), q(1, 7, -6), q(3, 1, -1)] {
        let t = pell_generator(&f).unwrap();
        let p = pell_least(&f.disc()).unwrap();
        assert!(in_orthogonal(&f, &t), "{f}");
        let det = t.det();
        assert_eq!(det, big(p.sign as i64 / 4), "{f}");
    }
}

#[test]
fn groups_closed_under_inverse_and_negation() {
    for f in [q(1, 0, 1), q(1, 1, 1), q(2, 1, 3), q(1, 1, 0), q(1, 2, 0), q(3, 4, 0)] {
        let g = orthogonal_group_any(&f).unwrap();
        assert_eq!(g.structure, GroupStructure::Finite);
        for t in &g.finite_elements {
            assert!(in_orthogonal(&f, t));
            assert!(g.finite_elements.contains(&t.neg()));
            assert!(g.finite_elements.contains(&t.inverse().unwrap()));
        }
    }
    let g = orthogonal_group(&q(1, 1, -1)).unwrap();
    assert_eq!(g.structure, GroupStructure::InfiniteCyclicModTorsion);
}

#[test]
fn finite_groups_match_search() {
    for f in [q(1, 0, 1), q(1, 1, 1), q(1, 1, 0), q(1, 2, 0), q(2, 0, 3), q(3, 1, 3)] {
        let mut ours: Vec<_> = orthogonal_group(&f).unwrap().finite_elements.iter().map(Mat2Z::entries).collect();
        let mut bf: Vec<_> = orthogonal_bruteforce(&f, 12).iter().map(Mat2Z::entries).collect();
        ours.sort();
        bf.sort();
        assert_eq!(ours, bf, "{f}");
    }
}

#[test]
fn negative_pell_theorem() {
    let r = run_suite("negpell", &VerifyConfig { dmax: Some(500), ..Default::default() }).unwrap();
    assert!(r.passed, "{:?}", r.counterexamples);
}

fn unimodular() -> impl Strategy<Value = Mat2Z> {
    prop::collection::vec(0usize..4, 1..8).prop_map(|steps| {
        let gens = [
            Mat2Z::from_i64([1, 1, 0, 1]),
            Mat2Z::from_i64([1, 0, 1, 1]),
            Mat2Z::from_i64([0, 1, 1, 0]),
            Mat2Z::from_i64([1, -1, 0, 1]),
        ];
        steps.iter().fold(Mat2Z::identity(), |m, &i| m.mul(&gens[i]))
    })
}

fn primitive_quad() -> impl Strategy<Value = QuadZ> {
    (-9i64..=9, -9i64..=9, -9i64..=9)
        .prop_map(|(a, b, c)| q(a, b, c))
        .prop_filter("primitive, nondegenerate", |f| f.is_primitive() && !f.disc().is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn reduction_is_a_class_invariant(f in primitive_quad(), t in unimodular()) {
        let r = reduce_quad(&f).unwrap();
        prop_assert_eq!(f.twisted_act(&r.transform).unwrap(), r.form.scale(&big(r.sign as i64)));
        let g = f.twisted_act(&t).unwrap();
        prop_assert_eq!(reduce_quad(&g).unwrap().form, r.form);
    }

    #[test]
    fn equivalence_is_found_for_constructed_pairs(f in primitive_quad(), t in unimodular()) {
        let g = f.twisted_act(&t).unwrap();
        let s = quad_equivalent(&f, &g).unwrap();
        prop_assert!(s.is_some());
        let s = s.unwrap();
        prop_assert!(s.det().abs().is_one());
        prop_assert!(f.twisted_act(&s).unwrap().sign_relative_to(&g).is_some());
    }

    #[test]
    fn conjugated_groups_are_automorphs(f in primitive_quad()) {
        let g = orthogonal_group_any(&f).unwrap();
        for t in &g.finite_elements {
            prop_assert!(in_orthogonal(&f, t));
        }
        if let Some(t) = &g.infinite_generator {
            prop_assert!(in_orthogonal(&f, t));
            prop_assert_eq!(quad_kind(&f).unwrap(), QuadKind::Indefinite);
        }
    }
}
