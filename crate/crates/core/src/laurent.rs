//! Finite-support formal Laurent series `Σ a_j ε^j` over exact rationals.
//!
//! Series are ordered lexicographically: the first exponent (smallest `j`)
//! at which two series differ decides, by comparing the coefficients there.
//! Positive powers of `ε` are therefore infinitesimal and negative powers
//! infinite relative to the embedded rationals `r ↦ rε⁰`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ParseError;
use crate::rational::Rational;

/// Order (valuation) of a series: the smallest exponent carrying a nonzero
/// coefficient, or `Infinity` for the zero series.
///
/// `Infinity` compares greater than every finite order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Order {
    Finite(i64),
    Infinity,
}

impl Order {
    pub fn finite(self) -> Option<i64> {
        match self {
            Order::Finite(j) => Some(j),
            Order::Infinity => None,
        }
    }
}

impl Add for Order {
    type Output = Order;

    fn add(self, rhs: Order) -> Order {
        match (self, rhs) {
            (Order::Finite(a), Order::Finite(b)) => Order::Finite(a + b),
            _ => Order::Infinity,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(j) => write!(f, "{j}"),
            Order::Infinity => f.write_str("inf"),
        }
    }
}

/// A formal Laurent series with finitely many nonzero rational coefficients.
///
/// Terms are stored as `(exponent, coefficient)` pairs with strictly
/// ascending exponents and no zero coefficients; the empty list is zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentSeries {
    terms: Vec<(i64, Rational)>,
}

impl LaurentSeries {
    pub fn zero() -> Self {
        LaurentSeries { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(Rational::one(), 0)
    }

    /// Normalizes raw `(exponent, coefficient)` pairs: duplicate exponents are
    /// summed, zero coefficients dropped, and terms sorted.
    pub fn normalize<I>(raw: I) -> Self
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        let mut raw: Vec<(i64, Rational)> = raw.into_iter().collect();
        raw.sort_by_key(|(e, _)| *e);
        let mut terms: Vec<(i64, Rational)> = Vec::with_capacity(raw.len());
        for (e, c) in raw {
            match terms.last_mut() {
                Some((last, acc)) if *last == e => *acc += &c,
                _ => terms.push((e, c)),
            }
        }
        terms.retain(|(_, c)| !c.is_zero());
        LaurentSeries { terms }
    }

    /// `coefficient · ε^exponent`.
    pub fn monomial(coefficient: Rational, exponent: i64) -> Self {
        if coefficient.is_zero() {
            return Self::zero();
        }
        LaurentSeries {
            terms: vec![(exponent, coefficient)],
        }
    }

    /// The embedding `r ↦ rε⁰`.
    pub fn embed(r: Rational) -> Self {
        Self::monomial(r, 0)
    }

    pub fn terms(&self) -> &[(i64, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `ε^exponent` (zero when absent).
    pub fn coefficient(&self, exponent: i64) -> Rational {
        match self.terms.binary_search_by_key(&exponent, |(e, _)| *e) {
            Ok(idx) => self.terms[idx].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn order(&self) -> Order {
        match self.terms.first() {
            Some((e, _)) => Order::Finite(*e),
            None => Order::Infinity,
        }
    }

    /// Coefficient at [`order`](Self::order); zero for the zero series.
    pub fn leading_coeff(&self) -> Rational {
        self.terms
            .first()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Sign relative to zero, which is the sign of the leading coefficient.
    pub fn signum(&self) -> Ordering {
        self.terms
            .first()
            .map_or(Ordering::Equal, |(_, c)| c.signum())
    }

    pub fn scalar_mul(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        LaurentSeries {
            terms: self.terms.iter().map(|(e, c)| (*e, c * q)).collect(),
        }
    }

    /// In-place `self += rhs`.
    pub fn add_assign_ref(&mut self, rhs: &LaurentSeries) {
        if rhs.is_zero() {
            return;
        }
        // Common case in accumulators: a single-term update at an existing
        // exponent.
        if let [(e, c)] = rhs.terms.as_slice() {
            if let Ok(idx) = self.terms.binary_search_by_key(e, |(x, _)| *x) {
                self.terms[idx].1 += c;
                if self.terms[idx].1.is_zero() {
                    self.terms.remove(idx);
                }
                return;
            }
        }
        *self = &*self + rhs;
    }

    fn merge_with(&self, rhs: &LaurentSeries, negate_rhs: bool) -> LaurentSeries {
        let mut terms = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        let pick_rhs = |c: &Rational| if negate_rhs { -c } else { c.clone() };
        while i < self.terms.len() && j < rhs.terms.len() {
            let (ea, ca) = &self.terms[i];
            let (eb, cb) = &rhs.terms[j];
            match ea.cmp(eb) {
                Ordering::Less => {
                    terms.push((*ea, ca.clone()));
                    i += 1;
                }
                Ordering::Greater => {
                    terms.push((*eb, pick_rhs(cb)));
                    j += 1;
                }
                Ordering::Equal => {
                    let sum = if negate_rhs { ca - cb } else { ca + cb };
                    if !sum.is_zero() {
                        terms.push((*ea, sum));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend(self.terms[i..].iter().cloned());
        terms.extend(rhs.terms[j..].iter().map(|(e, c)| (*e, pick_rhs(c))));
        LaurentSeries { terms }
    }

    /// Parses the text grammar
    /// `series := "0" | term (("+"|"-") term)*`,
    /// `term := rational ["eps^" integer]`.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let bytes = text.as_bytes();
        let skip_ws = |mut pos: usize| {
            while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
                pos += 1;
            }
            pos
        };

        let mut raw = Vec::new();
        let mut pos = skip_ws(0);
        let mut negate = false;
        loop {
            let (coeff, after) = Rational::scan(text, pos)?;
            pos = skip_ws(after);
            let mut exponent = 0i64;
            if text[pos..].starts_with("eps") {
                pos += 3;
                if bytes.get(pos) != Some(&b'^') {
                    return Err(ParseError::new(pos, "`^` after `eps`"));
                }
                pos += 1;
                let exp_start = pos;
                if bytes.get(pos) == Some(&b'-') {
                    pos += 1;
                }
                let digits_start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if pos == digits_start {
                    return Err(ParseError::new(pos, "exponent digits"));
                }
                exponent = text[exp_start..pos]
                    .parse()
                    .map_err(|_| ParseError::new(exp_start, "exponent within i64 range"))?;
                pos = skip_ws(pos);
            }
            raw.push((exponent, if negate { -coeff } else { coeff }));
            match bytes.get(pos) {
                None => break,
                Some(b'+') => negate = false,
                Some(b'-') => negate = true,
                Some(_) => return Err(ParseError::new(pos, "`+`, `-` or end of input")),
            }
            pos = skip_ws(pos + 1);
        }
        Ok(Self::normalize(raw))
    }
}

impl From<Rational> for LaurentSeries {
    fn from(r: Rational) -> Self {
        LaurentSeries::embed(r)
    }
}

impl Ord for LaurentSeries {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.terms, &other.terms);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                // First differing exponent carries a coefficient only on one
                // side; the other side's coefficient there is zero.
                (Some((_, ca)), None) => return ca.signum(),
                (None, Some((_, cb))) => return cb.signum().reverse(),
                (Some((ea, ca)), Some((eb, cb))) => match ea.cmp(eb) {
                    Ordering::Less => return ca.signum(),
                    Ordering::Greater => return cb.signum().reverse(),
                    Ordering::Equal => match ca.cmp(cb) {
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                        unequal => return unequal,
                    },
                },
            }
        }
    }
}

impl PartialOrd for LaurentSeries {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a LaurentSeries> for &'a LaurentSeries {
    type Output = LaurentSeries;

    fn add(self, rhs: &LaurentSeries) -> LaurentSeries {
        self.merge_with(rhs, false)
    }
}

impl<'a> Sub<&'a LaurentSeries> for &'a LaurentSeries {
    type Output = LaurentSeries;

    fn sub(self, rhs: &LaurentSeries) -> LaurentSeries {
        self.merge_with(rhs, true)
    }
}

impl<'a> Mul<&'a LaurentSeries> for &'a LaurentSeries {
    type Output = LaurentSeries;

    /// Cauchy product.
    ///
    /// # Panics
    ///
    /// Panics if an exponent sum overflows `i64`.
    fn mul(self, rhs: &LaurentSeries) -> LaurentSeries {
        if self.is_zero() || rhs.is_zero() {
            return LaurentSeries::zero();
        }
        let mut raw = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e = ea.checked_add(*eb).expect("exponent overflow in product");
                raw.push((e, ca * cb));
            }
        }
        LaurentSeries::normalize(raw)
    }
}

impl Neg for &LaurentSeries {
    type Output = LaurentSeries;

    fn neg(self) -> LaurentSeries {
        LaurentSeries {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentSeries {
    type Output = LaurentSeries;

    fn neg(self) -> LaurentSeries {
        -&self
    }
}

macro_rules! forward_owned_binop {
    ($($trait:ident $method:ident),*) => {$(
        impl $trait<LaurentSeries> for LaurentSeries {
            type Output = LaurentSeries;
            fn $method(self, rhs: LaurentSeries) -> LaurentSeries {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a LaurentSeries> for LaurentSeries {
            type Output = LaurentSeries;
            fn $method(self, rhs: &LaurentSeries) -> LaurentSeries {
                (&self).$method(rhs)
            }
        }
        impl<'a> $trait<LaurentSeries> for &'a LaurentSeries {
            type Output = LaurentSeries;
            fn $method(self, rhs: LaurentSeries) -> LaurentSeries {
                self.$method(&rhs)
            }
        }
    )*};
}

forward_owned_binop!(Add add, Sub sub, Mul mul);

/// Canonical text form, e.g. `5 eps^-1 + 2 eps^3` or `3/2 eps^0 - 1/4 eps^2`.
impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.terms.iter().enumerate() {
            if idx == 0 {
                write!(f, "{c} eps^{e}")?;
            } else if c.is_negative() {
                write!(f, " - {} eps^{e}", c.abs())?;
            } else {
                write!(f, " + {c} eps^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentSeries({self})")
    }
}

impl FromStr for LaurentSeries {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LaurentSeries::parse(s)
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesJson {
    terms: Vec<(i64, Rational)>,
}

/// JSON form: `{"terms": [[exponent, "num/den"], ...]}`, ascending by exponent.
impl Serialize for LaurentSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Borrowed<'a> {
            terms: &'a [(i64, Rational)],
        }
        Borrowed { terms: &self.terms }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentSeries {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = SeriesJson::deserialize(deserializer)?;
        Ok(LaurentSeries::normalize(raw.terms))
    }
}
