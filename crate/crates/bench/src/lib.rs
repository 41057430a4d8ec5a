//! Deterministic inputs for the kernel benchmarks.

use narch_core::sig_order::SigPrimeCertificate;
use narch_core::{LaurentSeries, Rational};

/// `len` terms at consecutive exponents from `first`, coefficients varying
/// with `salt`.
pub fn dense_series(first: i64, len: usize, salt: i64) -> LaurentSeries {
    LaurentSeries::normalize((0..len as i64).map(|k| {
        let num = (k * 7 + salt) % 19 - 9;
        (
            first + k,
            Rational::new(if num == 0 { 1 } else { num }, 1 + (k + salt) % 5),
        )
    }))
}

/// Two series that agree on every term but the last, so comparison walks
/// the full support.
pub fn near_equal_pair(len: usize) -> (LaurentSeries, LaurentSeries) {
    let a = dense_series(-(len as i64) / 2, len, 3);
    let tweak = LaurentSeries::monomial(Rational::new(1, 1_000_000), len as i64);
    let b = &a + &tweak;
    (a, b)
}

/// An accepted certificate whose base crosses the upper bound's level late.
pub fn late_certificate() -> SigPrimeCertificate {
    SigPrimeCertificate::new(
        dense_series(0, 6, 1),
        &LaurentSeries::monomial(Rational::from(5), -2) + &dense_series(-1, 4, 2),
        &LaurentSeries::monomial(Rational::from(3), -1) + &dense_series(0, 3, 4),
    )
}
