//! Sampling-frequency planning for estimating generalized velocities
//! (k-th derivatives) of band-limited signals from ADC readings.
//!
//! The pipeline: solve the input RC-cascade filter for its suppression
//! cutoff `f_s`, take the alias-safe base rate `F_p = 2·f_s`, then pick
//! the integer oversampling factor `N` minimizing the price-quality
//! functional `J(N) = 1 - cos(π/N) + 2NF_p/F_s`. The optimal ADC rate is
//! `F_o = 2·N_o·F_p` and a divider `K_d = 2·N_o` decimates back down to
//! the delivery rate. A companion simulator measures the actual
//! finite-difference estimation error against the closed-form term.

pub mod error;
pub mod filter;
pub mod harmonic;
pub mod planner;
pub mod price_quality;
pub mod sim;

pub use error::{Error, Result};
pub use filter::{RcCascade, ResponseDomain};
pub use harmonic::{Harmonic, HarmonicSum};
pub use planner::{CombinedPlan, PlanRequest, SamplingPlan};
pub use price_quality::{FunctionalPoint, PricingParams};
pub use sim::{SimConfig, SimReport};
