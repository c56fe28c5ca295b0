use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Probability;

/// A validated vector of outcome probabilities, optionally labelled.
///
/// The probabilities need not sum to one: an incomplete distribution carries
/// its missing mass implicitly and is never renormalized. The same type
/// stands in for a finite system of events, with labels naming the events.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Distribution<T = f64> {
    probs: Vec<T>,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    #[serde(skip)]
    total: T,
}

impl<T: Probability> Distribution<T> {
    /// Validates `probs` and `labels`.
    ///
    /// Checks, in order: non-empty, every entry finite, in `[0, 1]`, sum at
    /// most `1 + T::sum_tolerance()`, and label count equal to `probs.len()`.
    pub fn new(probs: Vec<T>, labels: Option<Vec<String>>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::EmptyInput);
        }
        for (index, &p) in probs.iter().enumerate() {
            let value = p.to_f64().unwrap_or(f64::NAN);
            if !p.is_finite() {
                return Err(Error::NonFinite { index });
            }
            if p < T::zero() {
                return Err(Error::NegativeProbability { index, value });
            }
            if p > T::one() {
                return Err(Error::ProbabilityAboveOne { index, value });
            }
        }
        let total: T = probs.iter().copied().sum();
        if total > T::one() + T::sum_tolerance() {
            return Err(Error::SumExceedsOne {
                sum: total.to_f64().unwrap_or(f64::NAN),
            });
        }
        if let Some(labels) = &labels {
            if labels.len() != probs.len() {
                return Err(Error::LabelLengthMismatch {
                    probs: probs.len(),
                    labels: labels.len(),
                });
            }
        }
        Ok(Distribution {
            probs,
            labels,
            total,
        })
    }

    pub fn probs(&self) -> &[T] {
        &self.probs
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Number of outcomes N, impossible ones included.
    pub fn len(&self) -> usize {
        self.probs.len()
    }

    /// Always false; kept for the `len`/`is_empty` pair.
    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// Sum of the probabilities.
    pub fn total(&self) -> T {
        self.total
    }

    /// True when the total is within `sum_tolerance` of one.
    pub fn is_complete(&self) -> bool {
        (self.total - T::one()).abs() <= T::sum_tolerance()
    }

    /// Returns a copy with one extra impossible outcome appended.
    pub fn with_impossible_outcome(&self, label: Option<&str>) -> Result<Self> {
        let mut probs = self.probs.clone();
        probs.push(T::zero());
        let labels = match (&self.labels, label) {
            (Some(ls), Some(l)) => {
                let mut ls = ls.clone();
                ls.push(l.to_owned());
                Some(ls)
            }
            (Some(ls), None) => {
                let mut ls = ls.clone();
                ls.push(String::new());
                Some(ls)
            }
            (None, _) => None,
        };
        Distribution::new(probs, labels)
    }

    pub fn into_probs(self) -> Vec<T> {
        self.probs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_invalid_vectors() {
        assert_eq!(
            Distribution::<f64>::new(vec![], None),
            Err(Error::EmptyInput)
        );
        assert!(matches!(
            Distribution::new(vec![0.7, 0.4], None),
            Err(Error::SumExceedsOne { .. })
        ));
        assert!(matches!(
            Distribution::new(vec![0.5, -0.1], None),
            Err(Error::NegativeProbability { index: 1, .. })
        ));
        assert!(matches!(
            Distribution::new(vec![1.5], None),
            Err(Error::ProbabilityAboveOne { index: 0, .. })
        ));
        assert_eq!(
            Distribution::new(vec![0.2, f64::NAN], None),
            Err(Error::NonFinite { index: 1 })
        );
        assert_eq!(
            Distribution::new(vec![f64::INFINITY], None),
            Err(Error::NonFinite { index: 0 })
        );
        assert_eq!(
            Distribution::new(vec![0.5, 0.5], Some(vec!["a".into()])),
            Err(Error::LabelLengthMismatch {
                probs: 2,
                labels: 1
            })
        );
    }

    #[test]
    fn sum_tolerance_is_inclusive() {
        assert!(Distribution::new(vec![0.5, 0.5 + 5e-10], None).is_ok());
        assert!(Distribution::new(vec![0.5, 0.5 + 2e-9], None).is_err());
    }

    #[test]
    fn incomplete_is_kept_as_is() {
        let d = Distribution::new(vec![0.25, 0.25], None).unwrap();
        assert_eq!(d.total(), 0.5);
        assert!(!d.is_complete());
        assert_eq!(d.probs(), &[0.25, 0.25]);
    }

    #[test]
    fn appending_impossible_outcome_extends_labels() {
        let d = Distribution::new(vec![0.5, 0.5], Some(vec!["H".into(), "T".into()])).unwrap();
        let e = d.with_impossible_outcome(Some("edge")).unwrap();
        assert_eq!(e.len(), 3);
        assert_eq!(e.labels().unwrap()[2], "edge");
        assert_eq!(e.total(), 1.0);
    }
}
