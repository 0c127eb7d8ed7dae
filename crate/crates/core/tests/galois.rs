use num_bigint::BigInt;
use proptest::prelude::*;
use quartic_census::counting::enumerate_s;
use quartic_census::factor::is_irreducible_quartic;
use quartic_census::galois::{
    classify, classify_all_pairs, frobenius_oracle, pattern_mod_p, reducibility_type,
    GaloisClass, ProbableClass, ReducibilityType,
};
use quartic_census::resolvent::lk_invariants;
use quartic_census::scalar::is_square;
use quartic_census::verify::{random_stabilized, run_suite, VerifyConfig};
use quartic_census::{Mat2Z, QuadZ, QuarticZ};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn quartic(c: [i64; 5]) -> QuarticZ {
    QuarticZ::from_i64(c)
}

#[test]
fn named_examples() {
    assert_eq!(classify(&quartic([1, 0, 0, 0, 1])).unwrap(), GaloisClass::V4);
    assert_eq!(classify(&quartic([1, 1, 1, 1, 1])).unwrap(), GaloisClass::C4);
    assert_eq!(classify(&quartic([1, 0, 0, 0, -2])).unwrap(), GaloisClass::D4);
    assert_eq!(classify(&quartic([1, 0, 0, 0, -1])).unwrap(), GaloisClass::NotIrreducible);
    // x^4 + x + 1 type forms have full S4
    assert_eq!(classify(&quartic([1, 0, 0, 1, 1])).unwrap(), GaloisClass::NotSmall);
}

#[test]
fn frobenius_patterns() {
    // x^4 + 1 splits into quadratics or linears mod every odd prime
    let f = quartic([1, 0, 0, 0, 1]);
    for p in [3, 5, 7, 11, 13, 17] {
        let pat = pattern_mod_p(&f, p).unwrap();
        assert!(pat == "1111" || pat == "22", "p = {p}: {pat}");
    }
    assert_eq!(pattern_mod_p(&quartic([1, 1, 1, 1, 1]), 2).unwrap(), "4");
    let o = frobenius_oracle(&quartic([1, 0, 0, 0, -2]), 25).unwrap();
    assert_eq!(o.probable, ProbableClass::D4);
    assert_eq!(o.primes.len(), 25);
}

#[test]
fn classify_agrees_with_frobenius_oracle() {
    let r = run_suite("galois", &VerifyConfig { samples: Some(500), ..Default::default() }).unwrap();
    assert!(r.passed, "{:?}", r.counterexamples);
    assert!(r.checks >= 500);
}

#[test]
fn type1_reducibles_have_square_p() {
    let mut seen = [0usize; 2];
    for f in [QuadZ::from_i64(1, 0, 1), QuadZ::from_i64(1, 1, 0), QuadZ::from_i64(1, 1, -1), QuadZ::from_i64(1, 1, 1)] {
        for big in enumerate_s(&f, 300).unwrap() {
            if is_irreducible_quartic(&big) {
                continue;
            }
            let t = reducibility_type(&f, &big).unwrap();
            seen[t.index() as usize - 1] += 1;
            if let ReducibilityType::Type1 { .. } = t {
                let (l, k) = lk_invariants(&f, &big).unwrap();
                assert!(is_square(&(&l * &l + BigInt::from(4) * &k)), "{big} over {f}");
            }
        }
    }
    assert!(seen[0] > 0 && seen[1] > 0, "{seen:?}");
}

fn unimodular() -> impl Strategy<Value = Mat2Z> {
    prop::collection::vec(0usize..3, 1..6).prop_map(|steps| {
        let gens = [
            Mat2Z::from_i64([1, 1, 0, 1]),
            Mat2Z::from_i64([0, 1, 1, 0]),
            Mat2Z::from_i64([1, 0, -1, 1]),
        ];
        steps.iter().fold(Mat2Z::identity(), |m, &i| m.mul(&gens[i]))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn class_is_gl2_invariant(seed in any::<u64>(), t in unimodular()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (_, big) = random_stabilized(&mut rng, 1).unwrap().remove(0);
        let moved = big.twisted_act(&t).unwrap();
        prop_assert_eq!(classify(&big).unwrap(), classify(&moved).unwrap());
    }

    #[test]
    fn v4_iff_square_discriminant(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (_, big) = random_stabilized(&mut rng, 1).unwrap().remove(0);
        let c = classify(&big).unwrap();
        prop_assert_eq!(c == GaloisClass::V4, is_square(&big.disc()));
    }

    #[test]
    fn stabilizer_pairs_agree(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (_, big) = random_stabilized(&mut rng, 1).unwrap().remove(0);
        let all = classify_all_pairs(&big).unwrap();
        prop_assert!(!all.is_empty());
        prop_assert!(all.iter().all(|c| *c == all[0]), "{:?}", all);
    }
}
