//! Variability and uncertainty indicators for discrete probability
//! distributions, including incomplete ones.
//!
//! The indicators of a distribution `P = (p_1, …, p_N)` with total `p`:
//!
//! | indicator | formula | [`IndicatorReport`] field |
//! |---|---|---|
//! | mean | `p/N` | `p_mean` |
//! | variance | `Σ(p_i − p̄)²/N` | `variance` |
//! | reference variance | `p²(N−1)/N²` | `ref_variance` |
//! | coefficient of variation | `σ/p̄` | `cv` |
//! | entropy (bits) | `−Σ p_i log₂ p_i / p` | `entropy_bits` |
//! | average number | `2^H` | `avg_number_f` |
//! | equivalent number (uniform) | `1/Σp_i²` | `equiv_number_d` |
//! | equivalent number (one sure) | `CV² + 1` | `equiv_number_g` |
//!
//! with the duality `D·G = N/p²`.
//!
//! The math in [`indicators`] and [`distributions`] is generic over the
//! float type ([`Probability`]); the aliases below fix it to `f64` or `f32`.
//! [`oracle`] and [`waveclimate`] work in `f64`.

pub mod distributions;
pub mod error;
pub mod indicators;
pub mod oracle;
pub mod scalar;
pub mod waveclimate;

pub use error::{Error, Result};
pub use indicators::{analyze, Distribution, Duality, IndicatorReport};
pub use scalar::Probability;

pub type Distribution64 = Distribution<f64>;
pub type Distribution32 = Distribution<f32>;
pub type IndicatorReport64 = IndicatorReport<f64>;
pub type IndicatorReport32 = IndicatorReport<f32>;
pub type SweepPoint64 = distributions::SweepPoint<f64>;
pub type SweepPoint32 = distributions::SweepPoint<f32>;
