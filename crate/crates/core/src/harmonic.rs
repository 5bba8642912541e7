//! Band-limited harmonic signal synthesis, exact derivatives, forward
//! differences, and the mean-square functional they are measured with.

use crate::error::{Error, Result};
use std::f64::consts::{FRAC_PI_2, TAU};

/// Default grid density for [`mean_square`] quadrature.
pub const DEFAULT_QUADRATURE_SAMPLES: usize = 4096;

/// One cosine component `A·cos(2πF·t + θ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Harmonic {
    pub amplitude: f64,
    pub frequency_hz: f64,
    pub phase_rad: f64,
}

impl Harmonic {
    /// Validating constructor: amplitude and frequency must be finite and
    /// non-negative, the phase finite.
    pub fn new(amplitude: f64, frequency_hz: f64, phase_rad: f64) -> Result<Self> {
        if !amplitude.is_finite() || amplitude < 0.0 {
            return Err(Error::InvalidInput(format!(
                "harmonic amplitude must be finite and non-negative, got {amplitude}"
            )));
        }
        if !frequency_hz.is_finite() || frequency_hz < 0.0 {
            return Err(Error::InvalidInput(format!(
                "harmonic frequency must be finite and non-negative, got {frequency_hz} Hz"
            )));
        }
        if !phase_rad.is_finite() {
            return Err(Error::InvalidInput(format!(
                "harmonic phase must be finite, got {phase_rad}"
            )));
        }
        Ok(Harmonic {
            amplitude,
            frequency_hz,
            phase_rad,
        })
    }

    /// Angular frequency ω = 2πF in rad/s.
    pub fn angular_frequency(&self) -> f64 {
        TAU * self.frequency_hz
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.amplitude * (self.angular_frequency() * t + self.phase_rad).cos()
    }

    /// Exact `order`-th time derivative, still a single harmonic:
    /// amplitude scales by ω^order and the phase advances by order·π/2.
    pub fn differentiated(&self, order: u32) -> Harmonic {
        if order == 0 {
            return *self;
        }
        let omega = self.angular_frequency();
        Harmonic {
            amplitude: self.amplitude * omega.powi(order as i32),
            frequency_hz: self.frequency_hz,
            phase_rad: self.phase_rad + order as f64 * FRAC_PI_2,
        }
    }
}

/// A finite sum of harmonics. Band limitation holds by construction: every
/// component above `cutoff_hz()` has zero amplitude because it is absent.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicSum {
    terms: Vec<Harmonic>,
}

impl HarmonicSum {
    /// The term list must be non-empty.
    pub fn new(terms: Vec<Harmonic>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidInput(
                "a harmonic sum needs at least one term".into(),
            ));
        }
        Ok(HarmonicSum { terms })
    }

    pub fn terms(&self) -> &[Harmonic] {
        &self.terms
    }

    /// Highest component frequency (the band cutoff F_v).
    pub fn cutoff_hz(&self) -> f64 {
        self.terms
            .iter()
            .map(|h| h.frequency_hz)
            .fold(0.0, f64::max)
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.terms.iter().map(|h| h.eval(t)).sum()
    }

    /// Exact `order`-th derivative, term by term.
    pub fn derivative(&self, order: u32) -> HarmonicSum {
        HarmonicSum {
            terms: self.terms.iter().map(|h| h.differentiated(order)).collect(),
        }
    }
}

/// Forward difference of order `k` with step `dt`, anchored at `t`:
/// `Δ^k f(t) = Σ_{j=0..k} (-1)^(k-j)·C(k,j)·f(t + j·dt)`.
///
/// `k = 0` is rejected (callers evaluate the function directly), as is any
/// non-positive step.
pub fn forward_difference<F>(f: F, k: u32, dt: f64, t: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if k == 0 {
        return Err(Error::InvalidInput(
            "forward difference order must be at least 1".into(),
        ));
    }
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::InvalidInput(format!(
            "forward difference step must be positive and finite, got {dt}"
        )));
    }
    if !t.is_finite() {
        return Err(Error::InvalidInput(format!(
            "anchor time must be finite, got {t}"
        )));
    }
    let mut acc = 0.0;
    let mut coeff = 1.0; // C(k, j), built multiplicatively
    for j in 0..=k {
        if j > 0 {
            coeff = coeff * (k - j + 1) as f64 / j as f64;
        }
        let sign = if (k - j) % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign * coeff * f(t + j as f64 * dt);
    }
    Ok(acc)
}

/// Finite-difference estimate of the k-th generalized velocity:
/// `v^(k)(t, Δt) = Δ^k f(t, Δt) / Δt^k`.
pub fn velocity_estimate<F>(f: F, k: u32, dt: f64, t: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let diff = forward_difference(f, k, dt, t)?;
    Ok(diff / dt.powi(k as i32))
}

/// Mean-square value `(1/T)·∫ f² dt` over `[t0, t0 + window_s]`, computed
/// with uniform trapezoid quadrature on `samples` grid points.
///
/// For harmonic sums evaluated over whole periods the trapezoid rule is
/// exact up to rounding, so the infinite-horizon average is recovered
/// without windowing artifacts. Non-finite samples are reported as an
/// error rather than silently polluting the average.
pub fn mean_square<F>(f: F, t0: f64, window_s: f64, samples: usize) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(window_s > 0.0) || !window_s.is_finite() {
        return Err(Error::InvalidInput(format!(
            "averaging window must be positive and finite, got {window_s} s"
        )));
    }
    if samples < 2 {
        return Err(Error::InvalidInput(format!(
            "quadrature needs at least 2 samples, got {samples}"
        )));
    }
    if !t0.is_finite() {
        return Err(Error::InvalidInput(format!(
            "window start must be finite, got {t0}"
        )));
    }
    let h = window_s / (samples - 1) as f64;
    let mut acc = 0.0;
    for i in 0..samples {
        let t = t0 + i as f64 * h;
        let v = f(t);
        if !v.is_finite() {
            return Err(Error::NonFinite(format!(
                "integrand returned {v} at t = {t}"
            )));
        }
        let weight = if i == 0 || i == samples - 1 { 0.5 } else { 1.0 };
        acc += weight * v * v;
    }
    Ok(acc * h / window_s)
}
