use motivic::series::reindexed_start;
use motivic::{Affine, ExpPoly, ExpTerm, Exponent, MotivicValue, Rational};
use num_bigint::BigInt;
use proptest::prelude::*;

fn coeff() -> impl Strategy<Value = MotivicValue> {
    prop::collection::vec((-4i64..=4, -3i64..=3), 1..3).prop_map(|ts| {
        let ts: Vec<_> = ts.into_iter().map(|(c, e)| (BigInt::from(c), Exponent::from_integer(e))).collect();
        MotivicValue::from_terms(&ts)
    })
}

fn family(slopes: std::ops::RangeInclusive<i64>) -> impl Strategy<Value = ExpPoly> {
    prop::collection::vec((coeff(), slopes.prop_filter("nonzero slope", |a| *a != 0), -3i64..=3), 1..4)
        .prop_map(|ts| {
            let terms = ts
                .into_iter()
                .map(|(c, a, b)| ExpTerm::new(c, Exponent::from_integer(a), Exponent::from_integer(b)).unwrap())
                .collect();
            ExpPoly::from_terms("n", terms)
        })
}

fn direct_sum(f: &ExpPoly, range: std::ops::Range<i64>) -> MotivicValue {
    range.map(|n| f.eval(n)).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn finite_sum_matches_direct(f in family(-3..=3), m in 0i64..8) {
        let s = f.sum_finite("m").unwrap();
        prop_assert_eq!(s.eval(m), direct_sum(&f, 0..m));
    }

    #[test]
    fn infinite_sum_telescopes(f in family(-3..=-1), start in -2i64..4) {
        let whole = f.sum_infinite(start);
        let later = f.sum_infinite(start + 1);
        prop_assert_eq!(&whole - &later, f.eval(start));
    }

    #[test]
    fn divergence_is_detected(f in family(-3..=-1), c in coeff(), a in 0i64..3) {
        let bad = ExpPoly::monomial("n", c.clone(), Exponent::from_integer(a), Exponent::from_integer(0)).unwrap();
        let g = f.add(&bad).unwrap();
        prop_assert_eq!(g.converges(), c.is_zero());
        prop_assert_eq!(g.sum_infinite(0).is_infinite(), !c.is_zero());
    }

    #[test]
    fn residue_classes_partition_the_sum(f in family(-3..=-1), modulus in 1u64..5, start in 0i64..5) {
        let mut pieces = MotivicValue::zero();
        for s in 0..modulus {
            let g = f.reindex(modulus, s, "i").unwrap();
            pieces = &pieces + &g.sum_infinite(reindexed_start(start, modulus, s));
        }
        prop_assert_eq!(pieces, f.sum_infinite(start));
    }

    #[test]
    fn product_is_pointwise(f in family(-2..=2), g in family(-2..=2), n in -3i64..5) {
        prop_assert_eq!(f.mul(&g).unwrap().eval(n), &f.eval(n) * &g.eval(n));
        prop_assert_eq!(f.add(&g).unwrap().eval(n), &f.eval(n) + &g.eval(n));
    }

    #[test]
    fn closed_form_within_tail_bound(f in family(-3..=-1), start in 0i64..3) {
        let q = Rational::from_integer(3.into());
        let exact = match f.sum_infinite(start).specialize(&q) {
            Ok(v) => v,
            Err(_) => return Err(TestCaseError::reject("pole")),
        };
        let partial = f.numeric_partial_sum(start, 30, &q).unwrap();
        let bound = f.tail_bound(start, 30, &q).unwrap();
        let gap = exact - partial;
        prop_assert!(gap.clone() <= bound && -gap <= bound);
    }
}

#[test]
fn geometric_family_semantics() {
    let g = ExpPoly::geometric("n", Affine::new(Exponent::new(-1, 2), Exponent::from_integer(1)));
    assert_eq!(g.eval(2), MotivicValue::one());
    let sum = g.sum_infinite(0);
    assert_eq!(sum, "L/(1-L^(-1/2))".parse::<MotivicValue>().unwrap());
}

#[test]
fn index_mismatch_rejected() {
    let a = ExpPoly::geometric("n", Affine::constant(Exponent::from_integer(1)));
    let b = ExpPoly::geometric("m", Affine::constant(Exponent::from_integer(1)));
    assert!(a.add(&b).is_err());
    assert!(a.mul(&b).is_err());
}
