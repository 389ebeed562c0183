//! Expansion at infinity: compatibility with ring operations and the filtration.

mod common;

use common::class_strategy;
use motivic::series::{expand, filtration_degree, in_piece, tails_equal};
use motivic::{class_of, Degree, GroupSpec, MotivicClass};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

const ORDER: i64 = -12;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn expansion_is_additive(a in class_strategy(), b in class_strategy()) {
        let sum = expand(&(&a + &b), ORDER);
        let (ta, tb) = (expand(&a, ORDER), expand(&b, ORDER));
        for k in ORDER..=12 {
            prop_assert_eq!(sum.coeff(k), ta.coeff(k) + tb.coeff(k), "exponent {}", k);
        }
    }

    #[test]
    fn expansion_is_multiplicative(a in class_strategy(), b in class_strategy()) {
        let prod = expand(&a, ORDER).mul(&expand(&b, ORDER));
        let direct = expand(&(&a * &b), prod.order);
        prop_assert_eq!(prod, direct);
    }

    #[test]
    fn leading_term_sits_at_the_degree(a in class_strategy()) {
        let t = expand(&a, ORDER - 8);
        match a.degree() {
            Degree::NegInfinity => prop_assert!(t.is_zero()),
            Degree::Finite(k) => {
                prop_assert_eq!(t.leading_exp, k);
                prop_assert!(!t.coeff(k).is_zero());
            }
        }
    }

    #[test]
    fn filtration_is_monotone(a in class_strategy(), b in class_strategy(), m in -6i64..6) {
        if in_piece(&a, m) && in_piece(&b, m) {
            prop_assert!(in_piece(&(&a + &b), m));
        }
        if in_piece(&a, m) {
            prop_assert!(in_piece(&a, m - 1));
            prop_assert!(in_piece(&(&a * &b), m - filtration_degree(&b).finite().unwrap_or(0)) || b.is_zero());
        }
    }
}

#[test]
fn inverse_identity_in_the_completion() {
    for n in 2..=16u32 {
        let bso = class_of(GroupSpec::BSO(n)).unwrap();
        let so = class_of(GroupSpec::SO(n)).unwrap();
        let prod = expand(&bso, -200).mul(&expand(&so, -200));
        assert_eq!(prod.leading_exp, 0, "n = {n}");
        assert_eq!(prod.coeffs, vec![BigInt::from(1)], "n = {n}");
    }
}

#[test]
fn classifying_stack_expansions_have_nonnegative_coefficients() {
    for n in 1..=12u32 {
        let t = expand(&class_of(GroupSpec::BO(n)).unwrap(), -60);
        assert!(
            t.coeffs.iter().all(|c| c >= &BigInt::from(0)),
            "BO({n}): {t}"
        );
    }
}

#[test]
fn distinct_classes_differ_in_some_tail() {
    let a = class_of(GroupSpec::BSO(4)).unwrap();
    let b = class_of(GroupSpec::BO(4)).unwrap();
    assert!(!tails_equal(&a, &b, -30));
    assert!(tails_equal(&a, &a.clone(), -30));
    assert!(tails_equal(
        &MotivicClass::lefschetz_power(-40),
        &MotivicClass::zero(),
        -30
    ));
}
