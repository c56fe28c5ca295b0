//! Constructors for common distributions and binomial parameter sweeps.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::indicators::{analyze, Distribution, IndicatorReport};
use crate::scalar::Probability;

/// One binomial parameter pair with its indicators.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepPoint<T = f64> {
    pub n: u32,
    pub p: T,
    pub report: IndicatorReport<T>,
}

pub fn from_probabilities<T: Probability>(
    values: Vec<T>,
    labels: Option<Vec<String>>,
) -> Result<Distribution<T>> {
    Distribution::new(values, labels)
}

/// Relative frequencies of observation tallies.
pub fn from_counts<T: Probability>(counts: &[u64]) -> Result<Distribution<T>> {
    if counts.is_empty() {
        return Err(Error::EmptyInput);
    }
    let total: u64 = counts.iter().sum();
    if total == 0 {
        return Err(Error::AllZeroCounts);
    }
    let total = T::from_u64(total).expect("count fits in float");
    let probs = counts
        .iter()
        .map(|&c| T::from_u64(c).expect("count fits in float") / total)
        .collect();
    Distribution::new(probs, None)
}

pub fn uniform<T: Probability>(n: usize) -> Result<Distribution<T>> {
    if n == 0 {
        return Err(Error::ZeroSize);
    }
    Distribution::new(vec![T::from_count(n).recip(); n], None)
}

/// One sure outcome at `sure_index`, the other `n − 1` impossible.
pub fn degenerate<T: Probability>(n: usize, sure_index: usize) -> Result<Distribution<T>> {
    if n == 0 {
        return Err(Error::ZeroSize);
    }
    if sure_index >= n {
        return Err(Error::IndexOutOfRange {
            index: sure_index,
            n,
        });
    }
    let mut probs = vec![T::zero(); n];
    probs[sure_index] = T::one();
    Distribution::new(probs, None)
}

/// Probability mass function of B(n, p) over k = 0..=n.
///
/// Accumulated in log domain: `ln C(n,k)` by the recurrence
/// `ln C(n,k) = ln C(n,k−1) + ln((n−k+1)/k)`, so nothing overflows.
/// The endpoints p = 0 and p = 1 are exact point masses.
pub fn binomial<T: Probability>(n: u32, p: T) -> Result<Distribution<T>> {
    if n == 0 {
        return Err(Error::ZeroSize);
    }
    if !(p >= T::zero() && p <= T::one()) {
        return Err(Error::ParameterOutOfRange {
            name: "p",
            value: p.to_f64().unwrap_or(f64::NAN),
        });
    }
    let outcomes = n as usize + 1;
    if p == T::zero() {
        return degenerate(outcomes, 0);
    }
    if p == T::one() {
        return degenerate(outcomes, n as usize);
    }
    let ln_p = p.ln();
    let ln_q = (-p).ln_1p();
    let nf = T::from_u32(n).expect("n fits in float");
    let mut ln_choose = T::zero();
    let mut probs = Vec::with_capacity(outcomes);
    for k in 0..=n {
        if k > 0 {
            let kf = T::from_u32(k).expect("k fits in float");
            ln_choose = ln_choose + ((nf - kf + T::one()) / kf).ln();
        }
        let kf = T::from_u32(k).expect("k fits in float");
        probs.push((ln_choose + kf * ln_p + (nf - kf) * ln_q).exp());
    }
    Distribution::new(probs, None)
}

/// Indicators of B(n, p) for every `n` in `ns` and every `p` on the uniform
/// grid `{0, 1/(p_steps−1), …, 1}`; `n` varies slowest.
pub fn sweep_binomial<T: Probability>(ns: &[u32], p_steps: usize) -> Result<Vec<SweepPoint<T>>> {
    if p_steps < 2 {
        return Err(Error::ParameterOutOfRange {
            name: "p_steps",
            value: p_steps as f64,
        });
    }
    let last = T::from_count(p_steps - 1);
    let mut points = Vec::with_capacity(ns.len() * p_steps);
    for &n in ns {
        for i in 0..p_steps {
            // exact endpoints regardless of rounding in i/last
            let p = if i + 1 == p_steps {
                T::one()
            } else {
                T::from_count(i) / last
            };
            let report = analyze(&binomial(n, p)?)?;
            points.push(SweepPoint { n, p, report });
        }
    }
    Ok(points)
}
