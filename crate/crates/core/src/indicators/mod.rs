//! Variability and uncertainty indicators of a single distribution.
//!
//! Every function is a pure function of a validated [`Distribution`]. The
//! variability side works on the probability values as a data set of N
//! numbers (mean, variance, coefficient of variation, equivalent numbers D
//! and G); the uncertainty side is the entropy and the average number F.
//!
//! Entropies are in bits. Whenever a total probability appears in a formula
//! it is the actual sum of the vector, so incomplete distributions are
//! handled as given and D or F may exceed N.

mod distribution;

pub use distribution::Distribution;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Probability;

/// All scalar indicators of one distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IndicatorReport<T = f64> {
    pub n_outcomes: usize,
    pub p_total: T,
    pub p_mean: T,
    pub variance: T,
    pub ref_variance: T,
    pub cv: T,
    pub cv_rel: T,
    pub entropy_bits: T,
    pub entropy_rel: T,
    pub avg_number_f: T,
    pub equiv_number_d: T,
    pub equiv_number_g: T,
    pub duality_residual: T,
}

/// Outcome of checking `D·G = N/p²` and its logarithmic form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Duality<T = f64> {
    pub product: T,
    /// `|D·G − N/p²| / (N/p²)`.
    pub residual: T,
    /// `|ln D + ln G − (ln N − 2 ln p)| / max(1, |ln N − 2 ln p|)`.
    pub log_residual: T,
}

fn require_mass<T: Probability>(dist: &Distribution<T>) -> Result<T> {
    let total = dist.total();
    if total > T::zero() {
        Ok(total)
    } else {
        Err(Error::AllImpossible)
    }
}

fn sum_of_squares<T: Probability>(dist: &Distribution<T>) -> T {
    dist.probs().iter().map(|&p| p * p).sum()
}

pub fn total_probability<T: Probability>(dist: &Distribution<T>) -> T {
    dist.total()
}

/// Mean of the N probability values, `p_total / N`.
pub fn mean_probability<T: Probability>(dist: &Distribution<T>) -> T {
    dist.total() / T::from_count(dist.len())
}

/// Population variance of the probability values (normalized by N).
///
/// Evaluated in centred form, which is exact for equal entries and never
/// negative; the raw-moment form `Σp²/N − p̄²` is mathematically identical.
pub fn variance<T: Probability>(dist: &Distribution<T>) -> T {
    let mean = mean_probability(dist);
    let n = T::from_count(dist.len());
    let ss: T = dist
        .probs()
        .iter()
        .map(|&p| {
            let d = p - mean;
            d * d
        })
        .sum();
    (ss / n).max(T::zero())
}

/// Largest variance attainable by N probabilities with the same total:
/// `p_total²·(N−1)/N²`, reached when one outcome carries all the mass.
pub fn reference_variance<T: Probability>(dist: &Distribution<T>) -> T {
    let n = T::from_count(dist.len());
    let total = dist.total();
    total * total * (n - T::one()) / (n * n)
}

/// Standard deviation of the probabilities over their mean.
pub fn coefficient_of_variation<T: Probability>(dist: &Distribution<T>) -> Result<T> {
    require_mass(dist)?;
    Ok(variance(dist).sqrt() / mean_probability(dist))
}

/// CV scaled by its maximum `√(N−1)`; zero for a single outcome.
pub fn relative_cv<T: Probability>(dist: &Distribution<T>) -> Result<T> {
    let cv = coefficient_of_variation(dist)?;
    if dist.len() == 1 {
        return Ok(T::zero());
    }
    Ok(cv / (T::from_count(dist.len()) - T::one()).sqrt())
}

/// `−Σ p·log₂p` with `0·log 0 = 0`. Not divided by the total.
pub fn shannon_entropy<T: Probability>(dist: &Distribution<T>) -> T {
    let h: T = dist
        .probs()
        .iter()
        .filter(|&&p| p > T::zero())
        .map(|&p| -p * p.log2())
        .sum();
    h.max(T::zero())
}

/// Entropy of an incomplete system: Shannon entropy over the total
/// probability. Equal to [`shannon_entropy`] when the total is one.
pub fn renyi1_entropy<T: Probability>(dist: &Distribution<T>) -> Result<T> {
    let total = require_mass(dist)?;
    Ok(shannon_entropy(dist) / total)
}

/// [`renyi1_entropy`] over `log₂N`; zero for a single outcome.
pub fn relative_entropy_h<T: Probability>(dist: &Distribution<T>) -> Result<T> {
    let h = renyi1_entropy(dist)?;
    if dist.len() == 1 {
        return Ok(T::zero());
    }
    Ok(h / T::from_count(dist.len()).log2())
}

/// Average number of equally probable events, `2^H`.
pub fn average_number_f<T: Probability>(dist: &Distribution<T>) -> Result<T> {
    Ok(renyi1_entropy(dist)?.exp2())
}

/// Size of a one-sure-rest-impossible distribution with the same
/// variability: `CV² + 1`.
pub fn equivalent_number_g<T: Probability>(dist: &Distribution<T>) -> Result<T> {
    let cv = coefficient_of_variation(dist)?;
    Ok(cv * cv + T::one())
}

/// Size of a uniform distribution with the same sum of squares: `1/Σp²`.
pub fn equivalent_number_d<T: Probability>(dist: &Distribution<T>) -> Result<T> {
    let ss = sum_of_squares(dist);
    if ss > T::zero() {
        Ok(ss.recip())
    } else {
        Err(Error::AllImpossible)
    }
}

pub fn duality_check<T: Probability>(dist: &Distribution<T>) -> Result<Duality<T>> {
    let total = require_mass(dist)?;
    let d = equivalent_number_d(dist)?;
    let g = equivalent_number_g(dist)?;
    let n = T::from_count(dist.len());
    let product = d * g;
    let expected = n / (total * total);
    let residual = (product - expected).abs() / expected;

    let lhs = d.ln() + g.ln();
    let rhs = n.ln() - T::lit(2.0) * total.ln();
    let log_residual = (lhs - rhs).abs() / rhs.abs().max(T::one());
    Ok(Duality {
        product,
        residual,
        log_residual,
    })
}

/// Evaluates every indicator.
pub fn analyze<T: Probability>(dist: &Distribution<T>) -> Result<IndicatorReport<T>> {
    let cv = coefficient_of_variation(dist)?;
    Ok(IndicatorReport {
        n_outcomes: dist.len(),
        p_total: total_probability(dist),
        p_mean: mean_probability(dist),
        variance: variance(dist),
        ref_variance: reference_variance(dist),
        cv,
        cv_rel: relative_cv(dist)?,
        entropy_bits: renyi1_entropy(dist)?,
        entropy_rel: relative_entropy_h(dist)?,
        avg_number_f: average_number_f(dist)?,
        equiv_number_d: equivalent_number_d(dist)?,
        equiv_number_g: equivalent_number_g(dist)?,
        duality_residual: duality_check(dist)?.residual,
    })
}
