use num_rational::Ratio;
use proptest::prelude::*;
use quartic_census::forms::is_stabilized_by;
use quartic_census::quadlattice::{
    chart_change, chart_valid, complete_integral, det3, explicit_lk_int, l1_l2, lattice_basis,
    lattice_det, predicted_det,
};
use quartic_census::resolvent::{disc_from_lk, height, lk_invariants};
use quartic_census::{Chart, QuadForm, QuarticForm};

type R = Ratio<i128>;

fn quad() -> impl Strategy<Value = QuadForm<i128>> {
    (-12i128..=12, -12i128..=12, -12i128..=12)
        .prop_map(|(a, b, c)| QuadForm::new(a, b, c))
        .prop_filter("primitive, nondegenerate", |f| {
            f.is_primitive() && f.disc() != 0
        })
}

fn lattice_point(f: &QuadForm<i128>, w: Chart, k: [i128; 3]) -> QuarticForm<i128> {
    let b = lattice_basis(f, w).unwrap();
    let abc = [0, 1, 2].map(|j| k[0] * b[0][j] + k[1] * b[1][j] + k[2] * b[2][j]);
    complete_integral(f, w, &abc).unwrap().expect("basis vector in lattice")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn lattice_points_are_stabilized_and_satisfy_identities(
        f in quad(), w in prop_oneof![Just(Chart::One), Just(Chart::Two)],
        k in [-4i128..=4, -4i128..=4, -4i128..=4],
    ) {
        prop_assume!(chart_valid(&f, w));
        let big = lattice_point(&f, w, k);
        prop_assert!(is_stabilized_by(&big, &f));
        let inv = big.invariants();
        prop_assume!(inv.disc != 0);
        let (l, kk) = lk_invariants(&f, &big).unwrap();
        prop_assert_eq!(explicit_lk_int(&f, &big).unwrap(), (l, kk));
        prop_assert_eq!(3 * inv.i, l * l + kk);
        prop_assert_eq!(inv.j, l * kk);
        prop_assert_eq!(disc_from_lk(&l, &kk), Ratio::from_integer(inv.disc));
        prop_assert_eq!((l * l + 4 * kk) % 9, 0);
        prop_assert_eq!((2 * l * l - kk) % 9, 0);
        let d = f.disc();
        prop_assert_eq!((4 * (2 * l * l - kk)) % (9 * d), 0);
        let h = height(&l, &kk);
        let hbs = Ratio::new(big.bs_height_times4(), 4);
        prop_assert!(R::from_integer(h * h * h) / R::from_integer(1000) <= hbs);
        prop_assert!(hbs <= R::from_integer(h * h * h));
        if f.a != 0 {
            let abc = [big.a4, big.a3, big.a2];
            let (l1, l2) = l1_l2(&f, &abc);
            let a4 = f.a.pow(4);
            prop_assert_eq!(9 * (l1 * l1 - d * l2 * l2), 4 * a4 * (l * l + 4 * kk));
            let lhs = R::new(4 * (2 * l * l - kk), 9);
            let (a, b, c) = (R::from_integer(abc[0]), R::from_integer(abc[1]), R::from_integer(abc[2]));
            let al = R::from_integer(f.a);
            let rhs = R::from_integer(d)
                * (al * (b * b - R::from_integer(4) * a * c)
                    + R::from_integer(2) * a * (R::from_integer(f.b) * b - R::from_integer(4 * f.c) * a))
                / (al * al * al);
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn lattice_determinant_formula(f in quad(), w in prop_oneof![Just(Chart::One), Just(Chart::Two)]) {
        prop_assume!(chart_valid(&f, w));
        prop_assert_eq!(Ratio::from_integer(lattice_det(&f, w).unwrap()), predicted_det(&f, w).unwrap());
    }

    #[test]
    fn chart_change_determinant(f in quad()) {
        prop_assume!(f.a != 0);
        let fr = f.map(|x| R::from_integer(*x));
        let m = chart_change(&fr).unwrap();
        let expect = R::new(f.b * (f.b * f.b + 4 * f.a * f.c), 8 * f.a.pow(3));
        prop_assert_eq!(det3(&m), expect);
    }

    #[test]
    fn gamma_zero_identity(a in -9i128..=9, b in 1i128..=9, k in [-4i128..=4, -4i128..=4, -4i128..=4]) {
        let f = QuadForm::new(a, b, 0);
        prop_assume!(f.is_primitive());
        let big = lattice_point(&f, Chart::Two, k);
        prop_assume!(big.disc() != 0);
        let (l, kk) = lk_invariants(&f, &big).unwrap();
        let (aa, bb, cc) = (R::from_integer(big.a4), R::from_integer(big.a2), R::from_integer(big.a0));
        let (al, be) = (R::from_integer(a), R::from_integer(b));
        let b2 = be * be;
        let rhs = R::from_integer(8) * cc / b2
            * (R::from_integer(8) * b2 * aa - R::from_integer(8) * al * al * bb
                + R::from_integer(40) * al.pow(4) * cc / b2);
        prop_assert_eq!(R::new(4 * (l * l + 4 * kk), 9), rhs);
    }
}
