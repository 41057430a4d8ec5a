//! Finite checks of real-valued measurement of significantly-ordered
//! structures.
//!
//! A function `f` with threshold `r` accurately measures `(X, ≪)` when for
//! all `x1, x2`: `x1 ≪ x2` iff `f(x1) ≤ f(x2) − r`. No such `f` exists for a
//! non-Archimedean structure; at finite scale this shows up as the top of a
//! chain prefix being forced arbitrarily high as the prefix grows.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::sig_order::{sig_less_real, NonArchWitness, SigThreshold, SignificantOrder};

/// An explicit finite significantly-ordered structure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawStructure", into = "RawStructure")]
pub struct FiniteSigStructure {
    elements: Vec<String>,
    relation: BTreeSet<(String, String)>,
}

#[derive(Serialize, Deserialize)]
struct RawStructure {
    elements: Vec<String>,
    relation: Vec<(String, String)>,
}

impl TryFrom<RawStructure> for FiniteSigStructure {
    type Error = Error;

    fn try_from(raw: RawStructure) -> Result<Self> {
        FiniteSigStructure::new(raw.elements, raw.relation)
    }
}

impl From<FiniteSigStructure> for RawStructure {
    fn from(s: FiniteSigStructure) -> Self {
        RawStructure {
            elements: s.elements,
            relation: s.relation.into_iter().collect(),
        }
    }
}

impl FiniteSigStructure {
    pub fn new<I>(elements: Vec<String>, relation: I) -> Result<Self>
    where
        I: IntoIterator<Item = (String, String)>,
    {
        let mut seen = HashSet::new();
        for e in &elements {
            if !seen.insert(e.as_str()) {
                return Err(Error::DuplicateElement(e.clone()));
            }
        }
        let mut pairs = BTreeSet::new();
        for (a, b) in relation {
            for label in [&a, &b] {
                if !seen.contains(label.as_str()) {
                    return Err(Error::UnknownElement(label.clone()));
                }
            }
            pairs.insert((a, b));
        }
        Ok(FiniteSigStructure {
            elements,
            relation: pairs,
        })
    }

    /// The structure on `items` induced by a significant order.
    pub fn induced<T, O>(items: &[(String, T)], order: &O) -> Result<Self>
    where
        O: SignificantOrder<T>,
    {
        let elements = items.iter().map(|(l, _)| l.clone()).collect();
        let mut relation = Vec::new();
        for (la, a) in items {
            for (lb, b) in items {
                if order.sig_less(a, b) {
                    relation.push((la.clone(), lb.clone()));
                }
            }
        }
        FiniteSigStructure::new(elements, relation)
    }

    /// The structure induced on a non-Archimedean witness prefix, with labels
    /// `x0, x1, …` for the chain and `y` for the top element.
    pub fn from_witness(witness: &NonArchWitness, r: &SigThreshold) -> Result<Self> {
        let mut items: Vec<(String, _)> = witness
            .chain
            .iter()
            .enumerate()
            .map(|(i, x)| (format!("x{i}"), x.clone()))
            .collect();
        items.push(("y".to_owned(), witness.y.clone()));
        FiniteSigStructure::induced(&items, r)
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn relates(&self, a: &str, b: &str) -> bool {
        // BTreeSet<(String, String)> cannot be probed with borrowed tuples.
        self.relation.contains(&(a.to_owned(), b.to_owned()))
    }

    pub fn relation(&self) -> impl Iterator<Item = (&str, &str)> {
        self.relation.iter().map(|(a, b)| (a.as_str(), b.as_str()))
    }
}

/// A candidate measurement `f` with its threshold `r`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasurementAssignment {
    pub values: BTreeMap<String, Rational>,
    pub threshold: SigThreshold,
}

impl MeasurementAssignment {
    pub fn new(values: BTreeMap<String, Rational>, threshold: SigThreshold) -> Self {
        MeasurementAssignment { values, threshold }
    }

    /// `f(x_i) = i·r` on the chain labels `x0..x{n-1}` and `f(y) = n·r`: the
    /// tightest accurate measurement of a witness prefix with `n` chain
    /// elements.
    pub fn staircase(n: usize, r: &SigThreshold) -> Self {
        let mut values: BTreeMap<String, Rational> = (0..n)
            .map(|i| (format!("x{i}"), Rational::from(i as u64) * r.value()))
            .collect();
        values.insert("y".to_owned(), Rational::from(n as u64) * r.value());
        MeasurementAssignment::new(values, r.clone())
    }

    fn value(&self, label: &str) -> Result<&Rational> {
        self.values
            .get(label)
            .ok_or_else(|| Error::MissingValue(label.to_owned()))
    }
}

/// Checks the accurate-measurement biconditional over all ordered pairs of
/// elements, including pairs outside the relation.
pub fn is_accurate_measurement(s: &FiniteSigStructure, m: &MeasurementAssignment) -> Result<bool> {
    let values = s
        .elements
        .iter()
        .map(|e| m.value(e))
        .collect::<Result<Vec<_>>>()?;
    for (a, fa) in s.elements.iter().zip(&values) {
        for (b, fb) in s.elements.iter().zip(&values) {
            if s.relates(a, b) != sig_less_real(fa, fb, &m.threshold) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Minimum of `f(y) − f(x_0)` over accurate measurements of the chain prefix
/// `x_0 ≪ … ≪ x_n` with top `y`, by forward propagation of the lower bounds
/// `f(x_{i+1}) ≥ f(x_i) + r` and `f(y) ≥ f(x_n) + r`.
pub fn min_feasible_top(n: u64, r: &SigThreshold) -> Rational {
    let mut bound = Rational::zero();
    for _ in 0..n {
        bound += r.value();
    }
    bound += r.value();
    bound
}

/// Smallest `i` with `seq[i+1] − seq[i] < tol`, if the window has one.
///
/// The sequence must be non-decreasing and `tol` positive.
pub fn diminishing_returns_index(seq: &[Rational], tol: &Rational) -> Result<Option<usize>> {
    if !tol.is_positive() {
        return Err(Error::NonPositiveTolerance(tol.to_string()));
    }
    if let Some(i) = seq.windows(2).position(|w| w[1] < w[0]) {
        return Err(Error::DecreasingSequence(i + 1));
    }
    Ok(seq.windows(2).position(|w| &w[1] - &w[0] < *tol))
}
