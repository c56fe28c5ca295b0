//! Independent validators for the indicator identities and bounds.
//!
//! Each check recomputes its reference by a route that does not go through
//! the function under test and reports the result as an [`OracleResult`].
//!
//! Random probability vectors are drawn uniformly from the simplex by
//! normalizing `N` standard exponential draws (Dirichlet(1, …, 1)). The
//! generator is ChaCha8 seeded with `seed_from_u64`, and exponentials come
//! from the ziggurat sampler of `rand_distr::Exp1`, so a `(seed, trials)`
//! pair reproduces the same stream on every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::indicators::{self, Distribution};

/// Residual bound shared by every identity check.
pub const IDENTITY_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleResult {
    pub target: String,
    pub value_found: f64,
    pub reference_value: f64,
    pub residual: f64,
    pub trials: u64,
    pub seed: u64,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

/// The generator used by every sampling oracle.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Fills `out` with a uniform sample from the simplex scaled to `total`.
pub fn sample_simplex<R: Rng + ?Sized>(rng: &mut R, total: f64, out: &mut [f64]) {
    let mut sum = 0.0;
    for x in out.iter_mut() {
        *x = rng.sample::<f64, _>(Exp1);
        sum += *x;
    }
    let scale = total / sum;
    for x in out.iter_mut() {
        *x *= scale;
    }
}

/// Monte-Carlo search for the largest variance of `n` probabilities with
/// sum `p_total`, compared against the cap `p_total²(n−1)/n²`.
///
/// `value_found` is the largest variance seen, `residual` the gap to the
/// cap. Fails if any single sample exceeds the cap by more than
/// [`IDENTITY_TOLERANCE`].
pub fn mc_max_variance(n: usize, p_total: f64, trials: u64, seed: u64) -> Result<OracleResult> {
    if n < 2 {
        return Err(Error::ParameterOutOfRange {
            name: "n",
            value: n as f64,
        });
    }
    if !(p_total > 0.0 && p_total <= 1.0) {
        return Err(Error::ParameterOutOfRange {
            name: "p_total",
            value: p_total,
        });
    }
    if trials == 0 {
        return Err(Error::ParameterOutOfRange {
            name: "trials",
            value: 0.0,
        });
    }
    let nf = n as f64;
    let cap = p_total * p_total * (nf - 1.0) / (nf * nf);

    let mut rng = rng(seed);
    let mut buf = vec![0.0; n];
    let mut best = 0.0f64;
    let mut violations = 0u64;
    for _ in 0..trials {
        sample_simplex(&mut rng, p_total, &mut buf);
        let dist = Distribution::new(buf.clone(), None)?;
        let v = indicators::variance(&dist);
        if v > cap + IDENTITY_TOLERANCE {
            violations += 1;
        }
        best = best.max(v);
    }
    let reference = indicators::reference_variance(&Distribution::new(
        {
            let mut corner = vec![0.0; n];
            corner[0] = p_total;
            corner
        },
        None,
    )?);
    let ref_agrees = (reference - cap).abs() <= IDENTITY_TOLERANCE * cap.max(f64::MIN_POSITIVE);
    let passed = violations == 0 && ref_agrees;
    let mut detail = format!("n={n} p_total={p_total}");
    if violations > 0 {
        detail.push_str(&format!("; {violations} samples above cap"));
    }
    if !ref_agrees {
        detail.push_str(&format!("; reference_variance gives {reference}"));
    }
    Ok(OracleResult {
        target: "max-variance".into(),
        value_found: best,
        reference_value: cap,
        residual: cap - best,
        trials,
        seed,
        passed,
        detail,
    })
}

/// Checks `1/N ≤ Σp² ≤ 1` on a complete distribution, with equality at the
/// lower bound exactly for uniform vectors and at the upper bound exactly
/// when one outcome is sure.
pub fn verify_sum_squares_bounds(dist: &Distribution) -> Result<OracleResult> {
    if !dist.is_complete() {
        return Err(Error::IncompleteDistribution {
            total: dist.total(),
        });
    }
    let probs = dist.probs();
    let n = probs.len() as f64;
    let ss: f64 = probs.iter().map(|p| p * p).sum();
    let lower = 1.0 / n;
    let tol = IDENTITY_TOLERANCE;
    let violation = (lower - ss).max(ss - 1.0).max(0.0);

    let at_lower = (ss - lower).abs() <= tol;
    let at_upper = (ss - 1.0).abs() <= tol;
    let first = probs[0];
    let is_uniform = probs.iter().all(|&p| (p - first).abs() <= 1e-9);
    let has_sure = probs.iter().any(|&p| (p - 1.0).abs() <= 1e-9);

    let mut passed = violation <= tol;
    let mut detail = if at_lower && at_upper {
        "single outcome: both bounds attained".to_string()
    } else if at_lower {
        "lower bound attained (uniform)".to_string()
    } else if at_upper {
        "upper bound attained (one sure outcome)".to_string()
    } else {
        "strictly between bounds".to_string()
    };
    if at_lower != is_uniform {
        passed = false;
        detail.push_str("; lower-bound equality does not match uniformity");
    }
    if at_upper != has_sure {
        passed = false;
        detail.push_str("; upper-bound equality does not match a sure outcome");
    }
    detail.push_str(&format!("; bounds [{lower}, 1]"));
    Ok(OracleResult {
        target: "bounds".into(),
        value_found: ss,
        reference_value: lower,
        residual: violation,
        trials: 1,
        seed: 0,
        passed,
        detail,
    })
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }
}

/// Recomputes the report of `dist` along redundant formula paths and
/// returns the largest relative disagreement.
///
/// Paths compared:
/// - `G` from `σ/p̄` against the closed form `N·Σp²/p²`;
/// - `D` as `1/Σp²` against `N/(p²·G)`;
/// - `F` as `2^H₂` against `e^{H_e}` with natural-log entropy;
/// - entropy, mean and raw-moment variance recomputed from scratch;
/// - the duality residual stored in the report.
///
/// The CV comparison is done on the `CV² + 1` scale: near `CV = 0` the
/// closed form is a square root of rounding noise.
pub fn cross_check_report(dist: &Distribution) -> Result<OracleResult> {
    let report = indicators::analyze(dist)?;
    let probs = dist.probs();
    let n = probs.len() as f64;
    let total: f64 = probs.iter().sum();
    let ss: f64 = probs.iter().map(|p| p * p).sum();
    let mean = total / n;

    let g_closed = n * ss / (total * total);
    let g_from_cv = report.cv * report.cv + 1.0;
    let d_direct = 1.0 / ss;
    let d_identity = n / (total * total * report.equiv_number_g);

    let nats: f64 = probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.ln())
        .sum::<f64>()
        / total;
    let bits = nats / std::f64::consts::LN_2;
    let f_natural = nats.exp();

    let raw_variance = ss / n - mean * mean;
    let variance_residual = (raw_variance - report.variance).abs() / (mean * mean);

    let checks = [
        ("g", rel(g_from_cv, g_closed)),
        ("g_report", rel(report.equiv_number_g, g_closed)),
        ("d", rel(report.equiv_number_d, d_direct)),
        ("d_identity", rel(d_identity, report.equiv_number_d)),
        ("f_base", rel(report.avg_number_f, f_natural)),
        (
            "entropy",
            (report.entropy_bits - bits).abs() / bits.max(1.0),
        ),
        ("p_mean", rel(report.p_mean, mean)),
        ("variance", variance_residual),
        ("duality", report.duality_residual),
    ];
    let (worst, residual) =
        checks
            .iter()
            .copied()
            .fold(("", 0.0f64), |acc, c| if c.1 > acc.1 { c } else { acc });
    Ok(OracleResult {
        target: "cross".into(),
        value_found: residual,
        reference_value: 0.0,
        residual,
        trials: checks.len() as u64,
        seed: 0,
        passed: residual <= IDENTITY_TOLERANCE,
        detail: if worst.is_empty() {
            "all paths agree exactly".into()
        } else {
            format!("largest residual on {worst}")
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::{degenerate, uniform};

    #[test]
    fn max_variance_three_outcomes() {
        let r = mc_max_variance(3, 1.0, 100_000, 42).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(r.value_found <= 2.0 / 9.0 + 1e-12);
        assert!(r.value_found <= 0.2223);
        assert!(r.residual >= -1e-12 && r.residual < 0.01, "{r:?}");
        assert_eq!((r.trials, r.seed), (100_000, 42));
    }

    #[test]
    fn max_variance_two_outcomes_tight() {
        let r = mc_max_variance(2, 1.0, 100_000, 7).unwrap();
        assert_eq!(r.reference_value, 0.25);
        assert!(r.passed && r.residual < 1e-3, "{r:?}");
        // the corner (1, 0) sits exactly on the cap
        let corner = Distribution::new(vec![1.0, 0.0], None).unwrap();
        assert_eq!(indicators::variance(&corner), 0.25);
    }

    #[test]
    fn max_variance_at_incomplete_total() {
        let r = mc_max_variance(8, 0.9725, 100_000, 1).unwrap();
        assert!(r.passed);
        assert!(r.value_found <= 0.9725 * 0.9725 * 7.0 / 64.0 + 1e-12);
    }

    #[test]
    fn max_variance_is_reproducible() {
        let a = mc_max_variance(5, 0.5, 2_000, 99).unwrap();
        let b = mc_max_variance(5, 0.5, 2_000, 99).unwrap();
        assert_eq!(a.value_found.to_bits(), b.value_found.to_bits());
        let c = mc_max_variance(5, 0.5, 2_000, 100).unwrap();
        assert_ne!(a.value_found.to_bits(), c.value_found.to_bits());
    }

    #[test]
    fn max_variance_rejects_bad_parameters() {
        assert!(matches!(
            mc_max_variance(1, 1.0, 10, 0),
            Err(Error::ParameterOutOfRange { .. })
        ));
        assert!(matches!(
            mc_max_variance(3, 0.0, 10, 0),
            Err(Error::ParameterOutOfRange { .. })
        ));
        assert!(matches!(
            mc_max_variance(3, 1.2, 10, 0),
            Err(Error::ParameterOutOfRange { .. })
        ));
        assert!(matches!(
            mc_max_variance(3, 1.0, 0, 0),
            Err(Error::ParameterOutOfRange { .. })
        ));
    }

    #[test]
    fn sum_squares_bounds() {
        let r = verify_sum_squares_bounds(&uniform(4).unwrap()).unwrap();
        assert!(r.passed);
        assert_eq!(r.value_found, 0.25);
        assert!(r.detail.starts_with("lower bound attained"));

        let r = verify_sum_squares_bounds(&degenerate(4, 0).unwrap()).unwrap();
        assert!(r.passed);
        assert_eq!(r.value_found, 1.0);
        assert!(r.detail.starts_with("upper bound attained"));

        let r =
            verify_sum_squares_bounds(&Distribution::new(vec![0.7, 0.3], None).unwrap()).unwrap();
        assert!(r.passed);
        assert!((r.value_found - 0.58).abs() < 1e-15);
        assert!(r.detail.starts_with("strictly between"));

        let inc = Distribution::new(vec![0.4, 0.4], None).unwrap();
        assert!(matches!(
            verify_sum_squares_bounds(&inc),
            Err(Error::IncompleteDistribution { .. })
        ));
    }

    #[test]
    fn cross_check_examples() {
        let a64 = Distribution::new(
            vec![
                0.0042, 0.0098, 0.1151, 0.6081, 0.2110, 0.0234, 0.0049, 0.0033,
            ],
            None,
        )
        .unwrap();
        let r = cross_check_report(&a64).unwrap();
        assert!(r.passed && r.residual <= 1e-12, "{r:?}");

        let r = cross_check_report(&uniform(50).unwrap()).unwrap();
        assert!(r.passed, "{r:?}");

        let mut g = rng(2024);
        let mut buf = vec![0.0; 11];
        sample_simplex(&mut g, 1.0, &mut buf);
        let r = cross_check_report(&Distribution::new(buf, None).unwrap()).unwrap();
        assert!(r.passed, "{r:?}");

        assert_eq!(
            cross_check_report(&Distribution::new(vec![0.0], None).unwrap()),
            Err(Error::AllImpossible)
        );
    }
}
