//! Desk-scale verification: measure the finite-difference velocity
//! estimation error empirically and compare it with the closed-form
//! quality term, plus aliasing (frequency folding) and decimation helpers.

use crate::error::{Error, Result};
use crate::harmonic::{mean_square, velocity_estimate, Harmonic, HarmonicSum};
use crate::price_quality::quality_error;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};

/// Configuration of one error measurement.
///
/// The probe is a unit-amplitude, zero-phase harmonic at `probe_freq_hz`;
/// its finite-difference velocity estimate, taken on the grid
/// `Δt = 1/(2·F_p·N)`, is compared against the exact derivative evaluated
/// at `t + alpha·k·Δt`. With `probe_freq_hz = f_p_hz` the phase step per
/// sample is `x = ω·Δt = π/N`, the operating point of the quality term.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    /// Derivative order k ≥ 1.
    pub order_k: u32,
    /// Oversampling factor N ≥ 1.
    pub n: u32,
    /// Base rate F_p.
    pub f_p_hz: f64,
    /// Frequency of the probe harmonic.
    pub probe_freq_hz: f64,
    /// Comparison-point offset in `[0, 1]`: the estimate anchored at `t`
    /// is compared with the exact derivative at `t + alpha·k·Δt`.
    /// `alpha·k = 1` reproduces the mean-value reading; 1/2 centers the
    /// comparison inside the difference stencil.
    pub alpha: f64,
    /// Averaging window length in whole probe periods.
    pub periods: u32,
    /// Quadrature grid density (points across the window).
    pub grid: u32,
}

impl SimConfig {
    /// Defaults: probe at `f_p_hz`, centered comparison (alpha = 1/2),
    /// 8-period window, 4096-point grid.
    pub fn new(order_k: u32, n: u32, f_p_hz: f64) -> Self {
        SimConfig {
            order_k,
            n,
            f_p_hz,
            probe_freq_hz: f_p_hz,
            alpha: 0.5,
            periods: 8,
            grid: 4096,
        }
    }

    /// Sampling step `Δt = 1/(2·F_p·N)`.
    pub fn dt_s(&self) -> f64 {
        1.0 / (2.0 * self.f_p_hz * self.n as f64)
    }

    /// Phase advanced by the probe per sampling step, `x = ω·Δt`.
    pub fn phase_step(&self) -> f64 {
        TAU * self.probe_freq_hz * self.dt_s()
    }

    pub fn validate(&self) -> Result<()> {
        if self.order_k < 1 {
            return Err(Error::InvalidInput(
                "simulation derivative order must be at least 1".into(),
            ));
        }
        if self.n < 1 {
            return Err(Error::InvalidInput(
                "oversampling factor N must be at least 1".into(),
            ));
        }
        if !(self.f_p_hz > 0.0) || !self.f_p_hz.is_finite() {
            return Err(Error::InvalidInput(format!(
                "base rate F_p must be positive and finite, got {} Hz",
                self.f_p_hz
            )));
        }
        if !(self.probe_freq_hz > 0.0) || !self.probe_freq_hz.is_finite() {
            return Err(Error::InvalidInput(format!(
                "probe frequency must be positive and finite, got {} Hz",
                self.probe_freq_hz
            )));
        }
        if !(0.0..=1.0).contains(&self.alpha) {
            return Err(Error::InvalidInput(format!(
                "comparison offset alpha must lie in [0, 1], got {}",
                self.alpha
            )));
        }
        if self.periods < 1 {
            return Err(Error::InvalidInput(
                "averaging window must cover at least one probe period".into(),
            ));
        }
        if self.grid < 64 {
            return Err(Error::InvalidInput(format!(
                "quadrature grid must have at least 64 points, got {}",
                self.grid
            )));
        }
        if self.probe_freq_hz * self.dt_s() >= 0.5 {
            return Err(Error::InvalidInput(format!(
                "probe at {} Hz aliases on the Δt = {} s grid; \
                 it must stay below half the grid rate {} Hz",
                self.probe_freq_hz,
                self.dt_s(),
                0.5 / self.dt_s()
            )));
        }
        Ok(())
    }
}

/// Empirical vs. closed-form error at one operating point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimReport {
    /// Measured RMS(residual) / RMS(exact derivative).
    pub r_empirical: f64,
    /// Closed-form quality term `1 - cos(π/N)`.
    pub r_model: f64,
    /// Phase step `ω·Δt` of the probe.
    pub x: f64,
    /// `r_empirical - r_model`.
    pub gap: f64,
}

/// One grid point of the residual trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualSample {
    pub t: f64,
    pub v_est: f64,
    pub exact: f64,
    pub residual: f64,
}

fn probe_pair(cfg: &SimConfig) -> Result<(HarmonicSum, HarmonicSum)> {
    let probe = HarmonicSum::new(vec![Harmonic::new(1.0, cfg.probe_freq_hz, 0.0)?])?;
    let exact = probe.derivative(cfg.order_k);
    Ok((probe, exact))
}

/// Measures the relative RMS error of the finite-difference velocity
/// estimate for the standard probe harmonic.
pub fn empirical_error(cfg: &SimConfig) -> Result<SimReport> {
    let (probe, exact) = probe_pair(cfg)?;
    empirical_error_with(cfg, |t| probe.eval(t), |t| exact.eval(t))
}

/// Same measurement for an arbitrary signal and its exact k-th
/// derivative. The probe frequency still sets the averaging window
/// (`periods` of it), so non-periodic signals get a finite, documented
/// window rather than a hidden one.
pub fn empirical_error_with<F, G>(cfg: &SimConfig, signal: F, exact_kth: G) -> Result<SimReport>
where
    F: Fn(f64) -> f64,
    G: Fn(f64) -> f64,
{
    cfg.validate()?;
    let dt = cfg.dt_s();
    let shift = cfg.alpha * cfg.order_k as f64 * dt;
    let window = cfg.periods as f64 / cfg.probe_freq_hz;
    let samples = cfg.grid as usize;
    let residual = |t: f64| {
        let v = velocity_estimate(&signal, cfg.order_k, dt, t).expect("validated by SimConfig");
        v - exact_kth(t + shift)
    };
    let num = mean_square(residual, 0.0, window, samples)?;
    let den = mean_square(&exact_kth, 0.0, window, samples)?;
    if den <= 0.0 {
        return Err(Error::InvalidInput(
            "exact derivative has zero mean square over the window; \
             the relative error is undefined"
                .into(),
        ));
    }
    let r_empirical = (num / den).sqrt();
    let r_model = quality_error(cfg.n)?;
    Ok(SimReport {
        r_empirical,
        r_model,
        x: cfg.phase_step(),
        gap: r_empirical - r_model,
    })
}

/// Per-grid-point residual trace for the standard probe, on the same
/// uniform grid the error measurement integrates over.
pub fn residual_trace(cfg: &SimConfig) -> Result<Vec<ResidualSample>> {
    cfg.validate()?;
    let (probe, exact) = probe_pair(cfg)?;
    let dt = cfg.dt_s();
    let shift = cfg.alpha * cfg.order_k as f64 * dt;
    let window = cfg.periods as f64 / cfg.probe_freq_hz;
    let h = window / (cfg.grid - 1) as f64;
    let mut out = Vec::with_capacity(cfg.grid as usize);
    for i in 0..cfg.grid {
        let t = i as f64 * h;
        let v_est =
            velocity_estimate(|u| probe.eval(u), cfg.order_k, dt, t).expect("validated config");
        let exact_v = exact.eval(t + shift);
        out.push(ResidualSample {
            t,
            v_est,
            exact: exact_v,
            residual: v_est - exact_v,
        });
    }
    Ok(out)
}

/// Closed-form relative RMS error for k = 1 at phase step `x` and
/// comparison offset `alpha`, derived by elementary trigonometry from the
/// same definitions the simulator integrates numerically:
/// `sqrt(((cos x - 1) + x·sin(αx))² + (x·cos(αx) - sin x)²) / x`.
///
/// At `alpha = 1/2` this collapses to `1 - sin(x/2)/(x/2)`.
pub fn closed_form_error_k1(x: f64, alpha: f64) -> Result<f64> {
    if !(x > 0.0 && x < PI) {
        return Err(Error::InvalidInput(format!(
            "phase step x must lie in (0, π), got {x}"
        )));
    }
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::InvalidInput(format!(
            "comparison offset alpha must lie in [0, 1], got {alpha}"
        )));
    }
    let a = (x.cos() - 1.0) + x * (alpha * x).sin();
    let b = x * (alpha * x).cos() - x.sin();
    Ok((a * a + b * b).sqrt() / x)
}

/// Frequency to which `f_hz` folds when sampled at `f_sample_hz`:
/// `|f - f_sample·round(f/f_sample)| ∈ [0, f_sample/2]`. In-band
/// frequencies (`f ≤ f_sample/2`) map to themselves.
pub fn alias_frequency(f_hz: f64, f_sample_hz: f64) -> Result<f64> {
    if !(f_hz >= 0.0) || !f_hz.is_finite() {
        return Err(Error::InvalidInput(format!(
            "frequency must be finite and non-negative, got {f_hz} Hz"
        )));
    }
    if !(f_sample_hz > 0.0) || !f_sample_hz.is_finite() {
        return Err(Error::InvalidInput(format!(
            "sampling rate must be positive and finite, got {f_sample_hz} Hz"
        )));
    }
    Ok((f_hz - f_sample_hz * (f_hz / f_sample_hz).round()).abs())
}

/// Keeps every `k_d`-th sample starting at index 0, dividing the sample
/// rate by `k_d`. Input must be uniformly spaced in time.
pub fn decimate(samples: &[(f64, f64)], k_d: u32) -> Result<Vec<(f64, f64)>> {
    if k_d < 1 {
        return Err(Error::InvalidInput(
            "decimation divider must be at least 1".into(),
        ));
    }
    if samples.len() >= 2 {
        let step = samples[1].0 - samples[0].0;
        if !(step > 0.0) {
            return Err(Error::InvalidInput(
                "samples must be ordered with strictly increasing time".into(),
            ));
        }
        for w in samples.windows(2) {
            let d = w[1].0 - w[0].0;
            if (d - step).abs() > 1e-9 * step {
                return Err(Error::InvalidInput(format!(
                    "samples are not uniformly spaced: step {d} s differs from {step} s"
                )));
            }
        }
    }
    Ok(samples.iter().step_by(k_d as usize).copied().collect())
}
