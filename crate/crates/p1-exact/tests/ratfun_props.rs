use num_rational::BigRational;
use p1_exact::{Poly, RationalFnS};
use proptest::prelude::*;

fn small_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(-6i64..7, 1..5).prop_map(|v| Poly::from_i64(&v))
}

fn small_ratfun() -> impl Strategy<Value = RationalFnS> {
    (small_poly(), small_poly())
        .prop_filter("nonzero denominator", |(_, d)| !d.is_zero())
        .prop_map(|(n, d)| RationalFnS::new(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn add_commutes(a in small_ratfun(), b in small_ratfun()) {
        prop_assert_eq!(&a + &b, &b + &a);
    }

    #[test]
    fn add_associates(a in small_ratfun(), b in small_ratfun(), c in small_ratfun()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    }

    #[test]
    fn mul_commutes_and_distributes(a in small_ratfun(), b in small_ratfun(), c in small_ratfun()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn sub_then_add_roundtrips(a in small_ratfun(), b in small_ratfun()) {
        prop_assert_eq!(&(&a - &b) + &b, a);
    }

    #[test]
    fn canonical_form_invariants(a in small_ratfun(), scale in 1i64..20) {
        // scaling numerator and denominator together changes nothing
        let s = BigRational::from_integer(scale.into());
        let rescaled = RationalFnS::new(a.num().scale(&s), a.den().scale(&s));
        prop_assert_eq!(&rescaled, &a);
        // canonical: monic denominator, no common factor
        prop_assert_eq!(a.den().leading().unwrap(), &BigRational::from_integer(1.into()));
        let g = a.num().gcd(a.den());
        prop_assert!(g == Poly::one() || a.num().is_zero());
    }
}
