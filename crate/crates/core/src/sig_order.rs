//! Significantly-ordered structures.
//!
//! A significant order `≪` is any "significantly less than" predicate. Two
//! instances are provided, both parameterized by a positive threshold `r`:
//!
//! * on rationals, `x ≪_r y` iff `x ≤ y − r`;
//! * on Laurent series, `A ≪_r B` iff one of
//!   - `o(A) > o(B)` and `LC(B) > 0`,
//!   - `o(A) < o(B)` and `LC(A) < 0`,
//!   - `o(A) = o(B)` and `LC(A) ≤ LC(B) − r`.
//!
//! On top of these the module builds the constructive non-Archimedean
//! witness for Laurent series and a complete decision procedure for the
//! derived order `≪′` restricted to affine certificate chains `x_i = c + i·d`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::laurent::{LaurentSeries, Order};
use crate::rational::Rational;

/// A strictly positive significance threshold `r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SigThreshold(Rational);

impl SigThreshold {
    pub fn new(r: Rational) -> Result<Self> {
        if r.is_positive() {
            Ok(SigThreshold(r))
        } else {
            Err(Error::NonPositiveThreshold(r.to_string()))
        }
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }
}

impl TryFrom<Rational> for SigThreshold {
    type Error = Error;

    fn try_from(r: Rational) -> Result<Self> {
        SigThreshold::new(r)
    }
}

impl Serialize for SigThreshold {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SigThreshold {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let r = Rational::deserialize(deserializer)?;
        SigThreshold::new(r).map_err(serde::de::Error::custom)
    }
}

/// A "significantly less than" relation over `T`.
pub trait SignificantOrder<T: ?Sized> {
    fn sig_less(&self, lhs: &T, rhs: &T) -> bool;
}

impl SignificantOrder<Rational> for SigThreshold {
    fn sig_less(&self, lhs: &Rational, rhs: &Rational) -> bool {
        sig_less_real(lhs, rhs, self)
    }
}

impl SignificantOrder<LaurentSeries> for SigThreshold {
    fn sig_less(&self, lhs: &LaurentSeries, rhs: &LaurentSeries) -> bool {
        sig_less_laurent(lhs, rhs, self)
    }
}

/// `x ≪_r y` on rationals: `x ≤ y − r`.
pub fn sig_less_real(x: &Rational, y: &Rational, r: &SigThreshold) -> bool {
    *x <= y - r.value()
}

/// `A ≪_r B` on Laurent series, decided from orders and leading coefficients.
pub fn sig_less_laurent(a: &LaurentSeries, b: &LaurentSeries, r: &SigThreshold) -> bool {
    let (oa, ob) = (a.order(), b.order());
    match oa.cmp(&ob) {
        std::cmp::Ordering::Greater => b.leading_coeff().is_positive(),
        std::cmp::Ordering::Less => a.leading_coeff().is_negative(),
        std::cmp::Ordering::Equal => a.leading_coeff() <= b.leading_coeff() - r.value(),
    }
}

/// True when every consecutive pair of `seq` is significantly ordered.
/// An empty or single-element sequence is trivially a chain.
pub fn is_significant_chain<T, O: SignificantOrder<T>>(order: &O, seq: &[T]) -> bool {
    seq.windows(2).all(|w| order.sig_less(&w[0], &w[1]))
}

/// Index of the first chain element that significantly exceeds `y`.
pub fn first_escape<T, O: SignificantOrder<T>>(order: &O, chain: &[T], y: &T) -> Option<usize> {
    chain.iter().position(|x| order.sig_less(y, x))
}

pub fn verify_chain_prefix(seq: &[LaurentSeries], r: &SigThreshold) -> bool {
    is_significant_chain(r, seq)
}

/// Smallest natural `n` with `n·r > y`.
pub fn archimedean_multiple(r: &SigThreshold, y: &Rational) -> BigInt {
    if y.is_negative() {
        return BigInt::zero();
    }
    (y / r.value()).floor() + 1
}

/// For the tightest real chain `x_i = start + i·r`, the smallest `i` with
/// `y ≪_r x_i`. Every real `y` is eventually exceeded.
pub fn real_escape_index(start: &Rational, r: &SigThreshold, y: &Rational) -> BigInt {
    let needed = (y + r.value() - start) / r.value();
    needed.ceil().max(BigInt::zero())
}

/// A finite prefix `x_0 ≪ x_1 ≪ …` together with an element `y` that is never
/// significantly exceeded by the chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonArchWitness {
    pub chain: Vec<LaurentSeries>,
    pub y: LaurentSeries,
}

/// The witness `x_i = (i+1)·r·ε¹`, `y = 1ε⁰`, truncated to `n` chain elements.
pub fn laurent_nonarch_witness(r: &SigThreshold, n: usize) -> NonArchWitness {
    let chain = (0..n)
        .map(|i| LaurentSeries::monomial(Rational::from(i as u64 + 1) * r.value(), 1))
        .collect();
    NonArchWitness {
        chain,
        y: LaurentSeries::one(),
    }
}

/// Checks a witness prefix: the chain is significant, every element is
/// significantly below `y`, and `y` is significantly below none of them.
pub fn verify_nonarch_prefix(chain: &[LaurentSeries], y: &LaurentSeries, r: &SigThreshold) -> bool {
    verify_chain_prefix(chain, r)
        && chain.iter().all(|x| sig_less_laurent(x, y, r))
        && first_escape(r, chain, y).is_none()
}

/// The infinite sequence `x_i = base + i·step`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineChain {
    pub base: LaurentSeries,
    pub step: LaurentSeries,
}

impl AffineChain {
    pub fn new(base: LaurentSeries, step: LaurentSeries) -> Self {
        AffineChain { base, step }
    }

    pub fn term(&self, i: u64) -> LaurentSeries {
        &self.base + &self.step.scalar_mul(&Rational::from(i))
    }
}

/// A claim `lower ≪′ upper`, certified by an affine chain starting at `lower`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigPrimeCertificate {
    pub lower: LaurentSeries,
    pub upper: LaurentSeries,
    pub chain: AffineChain,
}

impl SigPrimeCertificate {
    pub fn new(lower: LaurentSeries, upper: LaurentSeries, step: LaurentSeries) -> Self {
        let chain = AffineChain::new(lower.clone(), step);
        SigPrimeCertificate {
            lower,
            upper,
            chain,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChainViolation {
    /// `x_i ≪ x_{i+1}` fails.
    NotIncreasing,
    /// `x_i ≪ upper` fails.
    NotBelowUpper,
}

impl ChainViolation {
    pub fn as_str(self) -> &'static str {
        match self {
            ChainViolation::NotIncreasing => "not-increasing",
            ChainViolation::NotBelowUpper => "not-below-upper",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineDecision {
    /// Smallest failing index and which condition fails there.
    pub violation: Option<(u64, ChainViolation)>,
    /// From this index on, both conditions have constant truth values.
    pub stabilization_index: u64,
}

impl AffineDecision {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

/// Evaluates both certificate conditions at a single index.
pub fn check_affine_index(
    chain: &AffineChain,
    upper: &LaurentSeries,
    r: &SigThreshold,
    i: u64,
) -> Option<ChainViolation> {
    let x = chain.term(i);
    let next = &x + &chain.step;
    if !sig_less_laurent(&x, &next, r) {
        Some(ChainViolation::NotIncreasing)
    } else if !sig_less_laurent(&x, upper, r) {
        Some(ChainViolation::NotBelowUpper)
    } else {
        None
    }
}

/// Where the generic `x_i ≪ upper` test fails, for indices off the singular set.
enum UpperFailures {
    Never,
    Always,
    /// Fails exactly for `i ≥ from`.
    From(u64),
    /// Fails exactly for `i ≤ to`.
    UpTo(u64),
}

fn to_index(value: BigInt) -> Result<u64> {
    value.to_u64().ok_or(Error::IndexOverflow)
}

/// Failure set of the affine test `α + i·β < 0` (strict) or `≤ 0` over
/// `i ≥ 0`.
fn affine_failures(alpha: &Rational, beta: &Rational, strict: bool) -> Result<UpperFailures> {
    let holds_at = |v: &Rational| {
        if strict {
            v.is_negative()
        } else {
            !v.is_positive()
        }
    };
    if beta.is_zero() {
        return Ok(if holds_at(alpha) {
            UpperFailures::Never
        } else {
            UpperFailures::Always
        });
    }
    if beta.is_positive() {
        // Fails once i reaches -α/β (strict) or passes it.
        let t = -(alpha / beta);
        let from = if strict { t.ceil() } else { t.floor() + 1 };
        Ok(UpperFailures::From(to_index(from.max(BigInt::zero()))?))
    } else {
        // Fails while i stays at or below α/|β| (strict) or below it.
        let t = alpha / &beta.abs();
        let to = if strict { t.floor() } else { t.ceil() - 1 };
        if to < BigInt::zero() {
            Ok(UpperFailures::Never)
        } else {
            Ok(UpperFailures::UpTo(to_index(to)?))
        }
    }
}

/// Smallest `i ≥ from` not in `skip`.
fn first_outside(skip: &BTreeSet<u64>, from: u64) -> u64 {
    let mut i = from;
    while skip.contains(&i) {
        i += 1;
    }
    i
}

/// Decides `lower ≪′_r upper` for an affine certificate: whether
/// `x_i ≪_r x_{i+1}` and `x_i ≪_r upper` hold for every `i ≥ 0`, where
/// `x_i = c + i·d`.
///
/// Every coefficient of `x_i` is affine in `i`, so it vanishes at no more than
/// one index. Off that finite singular set the order of `x_i` is the constant
/// `j0 = min(o(c), o(d))` and its leading coefficient is `c_j0 + i·d_j0`;
/// the first condition then reduces to `d_j0 ≥ r` and the second to an
/// affine inequality in `i`. Singular indices are evaluated directly.
pub fn decide_affine_sig_prime(
    cert: &SigPrimeCertificate,
    r: &SigThreshold,
) -> Result<AffineDecision> {
    if cert.chain.base != cert.lower {
        return Err(Error::CertificateBaseMismatch {
            base: cert.chain.base.to_string(),
            lower: cert.lower.to_string(),
        });
    }
    let chain = &cert.chain;
    let (c, d, upper) = (&chain.base, &chain.step, &cert.upper);
    let check = |i: u64| check_affine_index(chain, upper, r, i);

    if d.is_zero() {
        return Ok(AffineDecision {
            violation: check(0).map(|kind| (0, kind)),
            stabilization_index: 0,
        });
    }

    let mut singular = BTreeSet::new();
    for (j, dj) in d.terms() {
        let root = -(&c.coefficient(*j) / dj);
        if root.is_integer() && !root.is_negative() {
            let k = to_index(root.floor())?;
            singular.insert(k);
            if k > 0 {
                singular.insert(k - 1);
            }
        }
    }

    let j0 = match c.order().min(d.order()) {
        Order::Finite(j) => j,
        Order::Infinity => unreachable!("step is nonzero"),
    };
    let (c0, d0) = (c.coefficient(j0), d.coefficient(j0));
    let increasing = d0 >= *r.value();

    let upper_failures = match Order::Finite(j0).cmp(&upper.order()) {
        std::cmp::Ordering::Greater => {
            if upper.leading_coeff().is_positive() {
                UpperFailures::Never
            } else {
                UpperFailures::Always
            }
        }
        std::cmp::Ordering::Less => affine_failures(&c0, &d0, true)?,
        std::cmp::Ordering::Equal => {
            let alpha = &c0 - &(upper.leading_coeff() - r.value());
            affine_failures(&alpha, &d0, false)?
        }
    };

    let mut generic_first: Option<u64> = None;
    let mut consider = |i: Option<u64>| {
        if let Some(i) = i {
            generic_first = Some(generic_first.map_or(i, |g| g.min(i)));
        }
    };
    if !increasing {
        consider(Some(first_outside(&singular, 0)));
    }
    let mut stabilization_index = singular.last().map_or(0, |k| k + 1);
    match upper_failures {
        UpperFailures::Never => {}
        UpperFailures::Always => consider(Some(first_outside(&singular, 0))),
        UpperFailures::From(from) => {
            consider(Some(first_outside(&singular, from)));
            stabilization_index = stabilization_index.max(from);
        }
        UpperFailures::UpTo(to) => {
            let i = first_outside(&singular, 0);
            consider((i <= to).then_some(i));
            stabilization_index = stabilization_index.max(to + 1);
        }
    }

    let singular_first = singular.iter().copied().find(|&i| check(i).is_some());
    let first = match (generic_first, singular_first) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    };
    let violation = first.map(|i| {
        let kind = check(i).expect("symbolic analysis predicted a violation at this index");
        (i, kind)
    });
    Ok(AffineDecision {
        violation,
        stabilization_index,
    })
}

fn accepted(cert: &SigPrimeCertificate, r: &SigThreshold) -> Result<()> {
    let decision = decide_affine_sig_prime(cert, r)?;
    match decision.violation {
        None => Ok(()),
        Some((index, kind)) => Err(Error::CertificateRejected {
            index,
            kind: kind.as_str(),
        }),
    }
}

/// For an accepted certificate `a ≪′ b`: `b ≥ 0`.
pub fn claim1_holds(cert: &SigPrimeCertificate, r: &SigThreshold) -> Result<bool> {
    accepted(cert, r)?;
    Ok(cert.upper.signum() != std::cmp::Ordering::Less)
}

/// For an accepted certificate `a ≪′ b` with `a ≥ 0`: `o(a) > o(b)`.
pub fn claim2_holds(cert: &SigPrimeCertificate, r: &SigThreshold) -> Result<bool> {
    accepted(cert, r)?;
    if cert.lower.signum() == std::cmp::Ordering::Less {
        return Ok(true);
    }
    Ok(cert.lower.order() > cert.upper.order())
}

/// `x_i = 1ε^{−i}` for `i < len`: each element is infinitely larger than the
/// previous one.
pub fn reciprocal_power_chain(len: usize) -> Vec<LaurentSeries> {
    (0..len)
        .map(|i| LaurentSeries::monomial(Rational::from(1), -(i as i64)))
        .collect()
}

/// Certificate for `1ε^{−i} ≪′ 1ε^{−(i+1)}` via the chain `(1 + k·r)ε^{−i}`.
pub fn reciprocal_power_certificate(i: usize, r: &SigThreshold) -> SigPrimeCertificate {
    let exp = -(i as i64);
    SigPrimeCertificate::new(
        LaurentSeries::monomial(Rational::from(1), exp),
        LaurentSeries::monomial(Rational::from(1), exp - 1),
        LaurentSeries::monomial(r.value().clone(), exp),
    )
}
