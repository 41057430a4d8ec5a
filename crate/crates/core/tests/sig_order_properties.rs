mod common;

use common::*;
use narch_core::sig_order::{
    claim1_holds, claim2_holds, decide_affine_sig_prime, first_escape, laurent_nonarch_witness,
    reciprocal_power_certificate, reciprocal_power_chain, sig_less_laurent, sig_less_real,
    verify_nonarch_prefix, AffineChain, ChainViolation, SigPrimeCertificate,
};
use narch_core::{LaurentSeries, Rational, SigThreshold};
use proptest::prelude::*;

/// `c + i·d` built directly from coefficients.
fn chain_element(c: &LaurentSeries, d: &LaurentSeries, i: u64) -> LaurentSeries {
    let scale = Rational::from(i);
    LaurentSeries::normalize(
        c.terms()
            .iter()
            .cloned()
            .chain(d.terms().iter().map(|(e, k)| (*e, k * &scale))),
    )
}

/// First index in `0..=limit` where either certificate condition fails.
fn brute_force(
    cert: &SigPrimeCertificate,
    r: &SigThreshold,
    limit: u64,
) -> Option<(u64, ChainViolation)> {
    let AffineChain { base: c, step: d } = &cert.chain;
    (0..=limit).find_map(|i| {
        let x = chain_element(c, d, i);
        let next = chain_element(c, d, i + 1);
        if !sig_less_laurent(&x, &next, r) {
            Some((i, ChainViolation::NotIncreasing))
        } else if !sig_less_laurent(&x, &cert.upper, r) {
            Some((i, ChainViolation::NotBelowUpper))
        } else {
            None
        }
    })
}

/// Certificates biased toward acceptance: the step usually leads with a
/// coefficient of at least `r` at or below the base's order, and the upper
/// bound usually sits at a lower order with positive leading coefficient.
fn certificate() -> impl Strategy<Value = (SigPrimeCertificate, SigThreshold)> {
    (
        threshold(),
        prop::collection::vec((-3i64..=3, -6i64..=6, 1i64..=3), 0..4),
        prop::collection::vec((-3i64..=3, -6i64..=6, 1i64..=3), 0..3),
        prop::collection::vec((-4i64..=3, -6i64..=6, 1i64..=3), 0..3),
        any::<bool>(),
        any::<bool>(),
        0i64..=4,
    )
        .prop_map(|(r, c, d, b, lift_step, lift_upper, extra)| {
            let mk = |raw: Vec<(i64, i64, i64)>| {
                LaurentSeries::normalize(raw.into_iter().map(|(e, n, k)| (e, Rational::new(n, k))))
            };
            let c = mk(c);
            let mut d = mk(d);
            let mut b = mk(b);
            let floor = c.order().finite().unwrap_or(3);
            if lift_step {
                let lead = floor - (extra % 2);
                let coeff = r.value() + &Rational::from(extra);
                d = &LaurentSeries::monomial(coeff, lead) + &d.scalar_mul(&Rational::new(1, 5));
                d = LaurentSeries::normalize(d.terms().iter().filter(|(e, _)| *e >= lead).cloned());
            }
            if lift_upper {
                let j0 = c.order().min(d.order()).finite().unwrap_or(0);
                b = &LaurentSeries::monomial(Rational::from(1 + extra), j0 - 1) + &b;
                b = LaurentSeries::normalize(
                    b.terms().iter().filter(|(e, _)| *e >= j0 - 1).cloned(),
                );
            }
            (SigPrimeCertificate::new(c, b, d), r)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1024))]

    #[test]
    fn significance_refines_order(a in series(), b in series(), r in threshold()) {
        if sig_less_laurent(&a, &b, &r) {
            prop_assert!(a < b);
        }
    }

    #[test]
    fn significance_monotone_in_threshold(a in series(), b in series(), r in threshold(), k in 1i64..=5) {
        let smaller = SigThreshold::new(r.value() * &Rational::new(1, k)).unwrap();
        if sig_less_laurent(&a, &b, &r) {
            prop_assert!(sig_less_laurent(&a, &b, &smaller));
        }
    }

    #[test]
    fn significance_is_irreflexive(a in series(), r in threshold()) {
        prop_assert!(!sig_less_laurent(&a, &a, &r));
    }

    #[test]
    fn significance_agrees_on_embedded_reals(x in rational(), y in rational(), r in threshold()) {
        // Zero has infinite order, so it sits outside the same-order case.
        prop_assume!(x != Rational::from(0) && y != Rational::from(0));
        let (ex, ey) = (LaurentSeries::embed(x.clone()), LaurentSeries::embed(y.clone()));
        prop_assert_eq!(sig_less_laurent(&ex, &ey, &r), sig_less_real(&x, &y, &r));
    }

    #[test]
    fn witness_verifies(r in threshold(), n in 1usize..200) {
        let w = laurent_nonarch_witness(&r, n);
        prop_assert!(verify_nonarch_prefix(&w.chain, &w.y, &r));
    }

    #[test]
    fn decision_agrees_with_brute_force((cert, r) in certificate()) {
        let decision = decide_affine_sig_prime(&cert, &r).unwrap();
        let limit = decision.stabilization_index + 100;
        prop_assert_eq!(decision.violation, brute_force(&cert, &r, limit));
        if let Some((i, _)) = decision.violation {
            prop_assert!(i <= decision.stabilization_index);
        }
    }

    #[test]
    fn accepted_certificates_satisfy_claims((cert, r) in certificate()) {
        if decide_affine_sig_prime(&cert, &r).unwrap().holds() {
            prop_assert!(claim1_holds(&cert, &r).unwrap());
            prop_assert!(claim2_holds(&cert, &r).unwrap());
        }
    }

    #[test]
    fn negative_upper_is_never_certified((cert, r) in certificate()) {
        let mut cert = cert;
        if cert.upper.signum() != std::cmp::Ordering::Less {
            cert.upper = -&cert.upper - LaurentSeries::one();
        }
        prop_assert!(!decide_affine_sig_prime(&cert, &r).unwrap().holds());
    }

    #[test]
    fn reciprocal_chain_escapes(r in threshold(), k in 0i64..12, lc in rational(), tail in series()) {
        prop_assume!(lc != Rational::from(0));
        let y = &LaurentSeries::monomial(lc, -k)
            + &LaurentSeries::normalize(tail.terms().iter().filter(|(e, _)| *e > -k).cloned());
        let chain = reciprocal_power_chain(k as usize + 2);
        let i = first_escape(&r, &chain, &y);
        prop_assert!(matches!(i, Some(i) if i as i64 <= k + 1));
    }
}

#[test]
fn generator_produces_enough_accepted_certificates() {
    use proptest::strategy::ValueTree;
    use proptest::test_runner::TestRunner;

    let mut runner = TestRunner::deterministic();
    let strategy = certificate();
    let accepted = (0..1000)
        .filter(|_| {
            let (cert, r) = strategy.new_tree(&mut runner).unwrap().current();
            decide_affine_sig_prime(&cert, &r).unwrap().holds()
        })
        .count();
    assert!(accepted > 150, "only {accepted} accepted");
}

#[test]
fn reciprocal_certificates_hold() {
    for r in ["1", "1/2", "3"] {
        let r = thr(r);
        for i in 0..8 {
            let cert = reciprocal_power_certificate(i, &r);
            assert!(decide_affine_sig_prime(&cert, &r).unwrap().holds());
            assert!(claim1_holds(&cert, &r).unwrap());
            assert!(claim2_holds(&cert, &r).unwrap());
        }
    }
}

#[test]
fn spec_examples_match_brute_force() {
    let one = thr("1");
    let cases = [
        SigPrimeCertificate::new(s("1 eps^1"), s("1"), s("1 eps^1")),
        SigPrimeCertificate::new(s("1"), s("2"), s("1 eps^1")),
        SigPrimeCertificate::new(s("0"), s("1 eps^-1"), s("1")),
    ];
    let expected = [None, Some((0, ChainViolation::NotIncreasing)), None];
    for (cert, want) in cases.iter().zip(expected) {
        let d = decide_affine_sig_prime(cert, &one).unwrap();
        assert_eq!(d.violation, want);
        assert_eq!(brute_force(cert, &one, d.stabilization_index + 100), want);
    }
}

#[test]
fn zero_is_significantly_separated_from_every_nonzero_value() {
    // o(0) = ∞ puts 0 in a different order class than any embedded nonzero
    // rational, so the threshold plays no role there.
    let big = thr("5");
    assert!(sig_less_laurent(&s("-1"), &s("0"), &big));
    assert!(!sig_less_real(&q("-1"), &q("0"), &big));
    assert!(sig_less_laurent(&s("0"), &s("1/1000"), &big));
    assert!(!sig_less_real(&q("0"), &q("1/1000"), &big));
}
