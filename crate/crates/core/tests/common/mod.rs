#![allow(dead_code)]

use motivic::stringy::SncStratum;
use motivic::{Exponent, IntPoly, MotivicValue};
use num_bigint::BigInt;
use proptest::prelude::*;

/// Sums of a few monomials `c·L^e` with half-integer exponents.
pub fn laurent() -> impl Strategy<Value = MotivicValue> {
    prop::collection::vec((-5i64..=5, -6i64..=6, prop::sample::select(vec![1i64, 1, 1, 2])), 0..4).prop_map(
        |terms| {
            let terms: Vec<_> = terms
                .into_iter()
                .map(|(c, n, d)| (BigInt::from(c), Exponent::new(n, d)))
                .collect();
            MotivicValue::from_terms(&terms)
        },
    )
}

pub fn value() -> impl Strategy<Value = MotivicValue> {
    (laurent(), laurent().prop_filter("nonzero", |b| !b.is_zero())).prop_map(|(a, b)| &a / &b)
}

pub fn nonzero() -> impl Strategy<Value = MotivicValue> {
    value().prop_filter("nonzero", |v| !v.is_zero())
}

pub fn int_poly() -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-4i64..=4, 1..4)
        .prop_map(|cs| IntPoly::from_coeffs(cs.into_iter().map(BigInt::from).collect()))
        .prop_filter("nonzero", |p| !p.is_zero())
}

/// Squares, so half-integer exponents specialize to rationals.
pub fn square_point() -> impl Strategy<Value = (i64, i64)> {
    prop::sample::select(vec![(4i64, 1i64), (9, 1), (16, 1), (25, 4), (49, 9), (1, 4)])
}

pub fn effective_class() -> impl Strategy<Value = MotivicValue> {
    prop::collection::vec((-3i64..=3, 0i64..=3), 0..3).prop_map(|ts| {
        let ts: Vec<_> = ts.into_iter().map(|(c, e)| (BigInt::from(c), Exponent::from_integer(e))).collect();
        MotivicValue::from_terms(&ts)
    })
}

pub fn snc_coeff() -> impl Strategy<Value = Exponent> {
    (-6i64..=4, prop::sample::select(vec![1i64, 1, 2, 3])).prop_map(|(n, d)| Exponent::new(n, d))
}

pub fn snc_stratum() -> impl Strategy<Value = SncStratum> {
    (-3i64..=3, effective_class(), prop::collection::vec(snc_coeff(), 0..3), prop::bool::weighted(0.8)).prop_map(
        |(a, class, coeffs, meets)| SncStratum {
            shift: Exponent::from_integer(a),
            class,
            coeffs,
            meets_center_smooth: meets,
        },
    )
}

/// The divergence criterion, restated: a stratum with nonzero class that
/// meets the center in the smooth locus and has some `c_j ≥ 1`.
pub fn violates(strata: &[SncStratum]) -> bool {
    strata.iter().any(|s| {
        s.meets_center_smooth && !s.class.is_zero() && s.coeffs.iter().any(|c| *c >= Exponent::from_integer(1))
    })
}
