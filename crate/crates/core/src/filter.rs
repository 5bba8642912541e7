//! Input anti-aliasing filter model: a cascade of `links` identical,
//! buffered first-order RC sections with common time constant `T`.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

/// Which response the suppression level refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ResponseDomain {
    /// Squared magnitude |H|².
    Power,
    /// Magnitude |H|.
    Amplitude,
}

/// n-link RC low-pass: power response `(1 / (1 + (2πfT)²))^links`.
///
/// Sections are modeled as isolated (buffered) identical first-order
/// links; loading between unbuffered ladder stages is out of scope.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RcCascade {
    links: u32,
    time_constant_s: f64,
}

/// Bisection bracket half-width (ratio to the half-power frequency) and
/// iteration cap for [`RcCascade::solve_cutoff`]. Failure to bracket is an
/// error, never a silent clamp.
const BRACKET_SPAN: f64 = 1e6;
const MAX_BISECTION_ITERS: usize = 200;
const CUTOFF_REL_TOL: f64 = 1e-9;

impl RcCascade {
    pub fn new(links: u32, time_constant_s: f64) -> Result<Self> {
        if links < 1 {
            return Err(Error::InvalidInput(
                "an RC cascade needs at least one link".into(),
            ));
        }
        if !(time_constant_s > 0.0) || !time_constant_s.is_finite() {
            return Err(Error::InvalidInput(format!(
                "filter time constant must be positive and finite, got {time_constant_s} s"
            )));
        }
        Ok(RcCascade {
            links,
            time_constant_s,
        })
    }

    /// Builds the cascade whose half-power bandwidth is `f_half_hz`.
    pub fn from_half_power(links: u32, f_half_hz: f64) -> Result<Self> {
        let t = solve_time_constant(links, f_half_hz)?;
        RcCascade::new(links, t)
    }

    pub fn links(&self) -> u32 {
        self.links
    }

    pub fn time_constant_s(&self) -> f64 {
        self.time_constant_s
    }

    /// Power response at `f_hz`; equals 1 at DC and strictly decreases.
    pub fn power_response(&self, f_hz: f64) -> Result<f64> {
        if !(f_hz >= 0.0) || !f_hz.is_finite() {
            return Err(Error::InvalidInput(format!(
                "frequency must be finite and non-negative, got {f_hz} Hz"
            )));
        }
        Ok(self.power_at(f_hz))
    }

    /// Magnitude response, the square root of the power response.
    pub fn amplitude_response(&self, f_hz: f64) -> Result<f64> {
        Ok(self.power_response(f_hz)?.sqrt())
    }

    fn power_at(&self, f_hz: f64) -> f64 {
        let x = TAU * f_hz * self.time_constant_s;
        (1.0 / (1.0 + x * x)).powi(self.links as i32)
    }

    /// Half-power bandwidth F₀.₅ in closed form.
    pub fn half_power_hz(&self) -> f64 {
        ((2f64).powf(1.0 / self.links as f64) - 1.0).sqrt() / (TAU * self.time_constant_s)
    }

    /// Suppression cutoff: the frequency at which the response (in the
    /// requested domain) falls to `level`, found by bisection on
    /// `[f_half/1e6, f_half·1e6]` to a relative tolerance of 1e-9.
    ///
    /// For `level < 1/2` in the power domain the result lies strictly
    /// above the half-power frequency.
    pub fn solve_cutoff(&self, level: f64, domain: ResponseDomain) -> Result<f64> {
        if !(level > 0.0 && level < 1.0) {
            return Err(Error::InvalidInput(format!(
                "suppression level must lie strictly inside (0, 1), got {level}"
            )));
        }
        let response = |f: f64| match domain {
            ResponseDomain::Power => self.power_at(f),
            ResponseDomain::Amplitude => self.power_at(f).sqrt(),
        };
        let f_half = self.half_power_hz();
        let mut lo = f_half / BRACKET_SPAN;
        let mut hi = f_half * BRACKET_SPAN;
        if response(lo) <= level {
            return Err(Error::Solver(format!(
                "level {level} is not bracketed: response({lo} Hz) is already at or below it"
            )));
        }
        if response(hi) >= level {
            return Err(Error::Solver(format!(
                "level {level} is not bracketed: response({hi} Hz) is still at or above it"
            )));
        }
        for _ in 0..MAX_BISECTION_ITERS {
            let mid = 0.5 * (lo + hi);
            if response(mid) > level {
                lo = mid;
            } else {
                hi = mid;
            }
            if (hi - lo) / mid < CUTOFF_REL_TOL {
                return Ok(0.5 * (lo + hi));
            }
        }
        Err(Error::Solver(format!(
            "cutoff bisection did not reach relative tolerance {CUTOFF_REL_TOL} \
             within {MAX_BISECTION_ITERS} iterations"
        )))
    }
}

/// Time constant of an n-link cascade whose half-power bandwidth is
/// `f_half_hz`: `T = sqrt(2^(1/links) - 1) / (2π·f_half)`.
pub fn solve_time_constant(links: u32, f_half_hz: f64) -> Result<f64> {
    if links < 1 {
        return Err(Error::InvalidInput(
            "an RC cascade needs at least one link".into(),
        ));
    }
    if !(f_half_hz > 0.0) || !f_half_hz.is_finite() {
        return Err(Error::InvalidInput(format!(
            "half-power frequency must be positive and finite, got {f_half_hz} Hz"
        )));
    }
    Ok(((2f64).powf(1.0 / links as f64) - 1.0).sqrt() / (TAU * f_half_hz))
}
