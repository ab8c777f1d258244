#![allow(clippy::eq_op)]

mod common;

use common::{int_poly, nonzero, square_point, value};
use motivic::{Error, Exponent, MotivicValue, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(1000)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn addition_is_an_abelian_group(a in value(), b in value(), c in value()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a + &MotivicValue::zero(), a.clone());
        prop_assert!((&a + &(-&a)).is_zero());
        prop_assert_eq!(&(&a - &b) + &b, a);
    }

    #[test]
    fn multiplication_is_commutative_monoid(a in value(), b in value(), c in value()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &MotivicValue::one(), a.clone());
        prop_assert!((&a * &MotivicValue::zero()).is_zero());
    }

    #[test]
    fn distributivity(a in value(), b in value(), c in value()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn inverses(a in nonzero(), b in value()) {
        prop_assert!((&a / &a).is_one());
        prop_assert_eq!(&(&b / &a) * &a, b);
        prop_assert_eq!(a.pow(-2).unwrap(), &(&MotivicValue::one() / &a) / &a);
    }

    #[test]
    fn division_by_zero_reports(a in value()) {
        prop_assert_eq!(a.checked_div(&MotivicValue::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn infinity_absorbs(a in nonzero()) {
        let inf = MotivicValue::infinity();
        prop_assert!((&a + &inf).is_infinite());
        prop_assert!(a.checked_mul(&inf).unwrap().is_infinite());
        prop_assert!(a.checked_div(&inf).unwrap().is_zero());
        prop_assert!(MotivicValue::zero().checked_mul(&inf).is_err());
    }

    #[test]
    fn canonical_form_is_unique(a in value(), c in int_poly(), k in prop::sample::select(vec![-3i64, -1, 2, 5]), s in 1usize..4) {
        let (num, den, root) = (a.numerator().unwrap(), a.denominator().unwrap(), a.root_index().unwrap());
        let k = BigInt::from(k);
        let scaled = MotivicValue::from_parts(
            (num * &c).scale(&k).inflate(s),
            (den * &c).scale(&k).inflate(s),
            root * s as u32,
        ).unwrap();
        prop_assert_eq!(&scaled, &a);
        prop_assert_eq!(scaled.numerator(), a.numerator());
        prop_assert_eq!(scaled.denominator(), a.denominator());
        prop_assert_eq!(scaled.root_index(), a.root_index());
        prop_assert_eq!(scaled.to_string(), a.to_string());
    }

    #[test]
    fn canonical_form_invariants(a in value()) {
        let (num, den, root) = (a.numerator().unwrap(), a.denominator().unwrap(), a.root_index().unwrap());
        prop_assert!(den.leading().unwrap().is_positive());
        if num.is_zero() {
            prop_assert!(den.is_one() && root == 1);
        } else {
            prop_assert_eq!(num.gcd_primitive(den).degree(), Some(0));
            prop_assert!(num.content().gcd(&den.content()).is_one());
            let step = num.terms().chain(den.terms()).fold(root as usize, |g, (i, _)| g.gcd(&i));
            prop_assert_eq!(step, 1);
        }
    }

    #[test]
    fn printed_form_reparses(a in value()) {
        let text = a.to_string();
        let back: MotivicValue = text.parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn dualize_is_an_involution(a in value()) {
        prop_assert_eq!(a.dualize().unwrap().dualize().unwrap(), a);
    }

    #[test]
    fn dualize_is_a_ring_map(a in value(), b in value(), e in -6i64..6) {
        let (da, db) = (a.dualize().unwrap(), b.dualize().unwrap());
        prop_assert_eq!((&a + &b).dualize().unwrap(), &da + &db);
        prop_assert_eq!((&a * &b).dualize().unwrap(), &da * &db);
        let e = Exponent::new(e, 2);
        prop_assert_eq!(MotivicValue::lpow(e).dualize().unwrap(), MotivicValue::lpow(-e));
    }

    #[test]
    fn specialization_is_a_homomorphism(
        a in value(),
        b in value(),
        q in square_point(),
    ) {
        let q = Rational::new(q.0.into(), q.1.into());
        let (Ok(sa), Ok(sb)) = (a.specialize(&q), b.specialize(&q)) else {
            return Err(TestCaseError::reject("pole at q"));
        };
        prop_assert_eq!((&a + &b).specialize(&q).unwrap(), &sa + &sb);
        prop_assert_eq!((&a - &b).specialize(&q).unwrap(), &sa - &sb);
        prop_assert_eq!((&a * &b).specialize(&q).unwrap(), &sa * &sb);
        if !sb.is_zero() {
            prop_assert_eq!((&a / &b).specialize(&q).unwrap(), &sa / &sb);
        }
        let one = Rational::one();
        prop_assert_eq!(MotivicValue::one().specialize(&q).unwrap(), one);
    }

    #[test]
    fn float_evaluation_tracks_exact(a in value(), q in prop::sample::select(vec![4i64, 9, 16])) {
        let exact = match a.specialize(&Rational::from_integer(q.into())) {
            Ok(x) => x,
            Err(_) => return Err(TestCaseError::reject("pole at q")),
        };
        let approx: f64 = a.approximate(q as f64).unwrap();
        let exact = num_traits::ToPrimitive::to_f64(&exact).unwrap();
        prop_assert!((approx - exact).abs() <= 1e-9 * exact.abs().max(1.0));
    }
}
