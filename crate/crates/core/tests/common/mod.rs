#![allow(dead_code)]

use narch_core::{LaurentSeries, Rational, SigThreshold};
use proptest::prelude::*;

pub fn q(text: &str) -> Rational {
    text.parse().unwrap()
}

pub fn s(text: &str) -> LaurentSeries {
    text.parse().unwrap()
}

pub fn thr(text: &str) -> SigThreshold {
    SigThreshold::new(q(text)).unwrap()
}

/// Small rationals, occasionally with numerators large enough to leave the
/// inline representation.
pub fn rational() -> impl Strategy<Value = Rational> {
    prop_oneof![
        8 => (-20i64..=20, 1i64..=6).prop_map(|(n, d)| Rational::new(n, d)),
        1 => (any::<i64>(), 1i64..=i64::MAX).prop_map(|(n, d)| Rational::new(n, d)),
        1 => (any::<i64>(), any::<i64>()).prop_map(|(a, b)| {
            Rational::from(a) * Rational::from(b) + Rational::new(1, 3)
        }),
    ]
}

pub fn positive_rational() -> impl Strategy<Value = Rational> {
    (1i64..=12, 1i64..=6).prop_map(|(n, d)| Rational::new(n, d))
}

pub fn threshold() -> impl Strategy<Value = SigThreshold> {
    positive_rational().prop_map(|r| SigThreshold::new(r).unwrap())
}

pub fn series() -> impl Strategy<Value = LaurentSeries> {
    prop::collection::vec((-4i64..=4, rational()), 0..5).prop_map(LaurentSeries::normalize)
}

/// Series whose coefficients share few distinct values, so that equal
/// leading parts (and hence deep comparisons) are common.
pub fn clustered_series() -> impl Strategy<Value = LaurentSeries> {
    prop::collection::vec((-2i64..=2, -2i64..=2), 0..4).prop_map(|raw| {
        LaurentSeries::normalize(raw.into_iter().map(|(e, c)| (e, Rational::from(c))))
    })
}

pub fn assert_normalized(a: &LaurentSeries) {
    let terms = a.terms();
    assert!(
        terms.windows(2).all(|w| w[0].0 < w[1].0),
        "exponents ascend: {a:?}"
    );
    assert!(
        terms.iter().all(|(_, c)| *c != Rational::from(0)),
        "no zeros: {a:?}"
    );
}
