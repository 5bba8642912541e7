//! The price-quality functional over the oversampling factor N:
//! quality term `r(N) = 1 - cos(π/N)`, price term `J₂(N) = 2NF_p/F_s`,
//! and their sum `J(N)`, minimized by the planner.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Inputs that fix the functional: derivative order `k`, the alias-safe
/// base rate `F_p`, and the ADC's maximum sampling rate `F_s`.
///
/// Construction requires `F_s ≥ 2·F_p`, otherwise not even the baseline
/// factor N = 1 fits into the converter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PricingParams {
    order_k: u32,
    f_p_hz: f64,
    f_adc_hz: f64,
}

/// One evaluated point of the functional at integer N.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FunctionalPoint {
    /// Oversampling factor N.
    pub n: u32,
    /// Quality (relative error) term r(N).
    pub r: f64,
    /// Price term J₂(N).
    pub j2: f64,
    /// Combined functional J(N) = r + J₂.
    pub j: f64,
    /// Sampling step Δt = 1/(2·F_p·N).
    pub dt_s: f64,
}

impl PricingParams {
    pub fn new(order_k: u32, f_p_hz: f64, f_adc_hz: f64) -> Result<Self> {
        if !(f_p_hz > 0.0) || !f_p_hz.is_finite() {
            return Err(Error::InvalidInput(format!(
                "base rate F_p must be positive and finite, got {f_p_hz} Hz"
            )));
        }
        if !f_adc_hz.is_finite() {
            return Err(Error::InvalidInput(format!(
                "ADC rate F_s must be finite, got {f_adc_hz} Hz"
            )));
        }
        if f_adc_hz < 2.0 * f_p_hz {
            return Err(Error::Infeasible(format!(
                "ADC rate F_s = {f_adc_hz} Hz is below 2*F_p = {} Hz; \
                 no oversampling factor N >= 1 is feasible",
                2.0 * f_p_hz
            )));
        }
        Ok(PricingParams {
            order_k,
            f_p_hz,
            f_adc_hz,
        })
    }

    pub fn order_k(&self) -> u32 {
        self.order_k
    }

    pub fn f_p_hz(&self) -> f64 {
        self.f_p_hz
    }

    pub fn f_adc_hz(&self) -> f64 {
        self.f_adc_hz
    }

    /// Maximum allowable oversampling factor `N_m = F_s / (2·F_p)` as a
    /// real number; the integer search space is `[1, floor(N_m)]`.
    pub fn n_max(&self) -> f64 {
        self.f_adc_hz / (2.0 * self.f_p_hz)
    }

    /// `floor(N_m)`, corrected so that `2·N·F_p ≤ F_s` holds exactly even
    /// when the division rounds up across an integer boundary.
    pub fn n_max_floor(&self) -> u32 {
        let mut n = self.n_max().floor();
        if 2.0 * n * self.f_p_hz > self.f_adc_hz {
            n -= 1.0;
        }
        n as u32
    }

    /// Price term `J₂(N) = 2·N·F_p/F_s ∈ (0, 1]` on the feasible range.
    pub fn price(&self, n: u32) -> Result<f64> {
        self.check_range(n)?;
        Ok(2.0 * n as f64 * self.f_p_hz / self.f_adc_hz)
    }

    /// Evaluates the combined functional at N.
    pub fn total(&self, n: u32) -> Result<FunctionalPoint> {
        let r = quality_error(n)?;
        let j2 = self.price(n)?;
        Ok(FunctionalPoint {
            n,
            r,
            j2,
            j: r + j2,
            dt_s: 1.0 / (2.0 * self.f_p_hz * n as f64),
        })
    }

    /// Evaluates every integer N in `[n_lo, n_hi]`, ascending.
    pub fn sweep(&self, n_lo: u32, n_hi: u32) -> Result<Vec<FunctionalPoint>> {
        if n_lo < 1 || n_lo > n_hi {
            return Err(Error::InvalidInput(format!(
                "sweep range [{n_lo}, {n_hi}] is empty or starts below 1"
            )));
        }
        self.check_range(n_hi)?;
        (n_lo..=n_hi).map(|n| self.total(n)).collect()
    }

    fn check_range(&self, n: u32) -> Result<()> {
        let hi = self.n_max_floor();
        if n < 1 || n > hi {
            return Err(Error::InvalidInput(format!(
                "oversampling factor N = {n} is outside the feasible range [1, {hi}] \
                 (N_m = F_s/2F_p = {})",
                self.n_max()
            )));
        }
        Ok(())
    }
}

/// Quality (relative error) term `r(N) = 1 - cos(π/N)`; 2 at N = 1 and
/// strictly decreasing toward 0.
pub fn quality_error(n: u32) -> Result<f64> {
    if n < 1 {
        return Err(Error::InvalidInput(
            "oversampling factor N must be at least 1".into(),
        ));
    }
    Ok(1.0 - (PI / n as f64).cos())
}

/// Minimum sampling rate for estimating the k-th derivative of a signal
/// band-limited to `f_v_hz`: `F₂ = 2·(k+1)·F_v`. At k = 0 this is the
/// classical rate `F₁ = 2·F_v`.
pub fn min_rate(order_k: u32, f_v_hz: f64) -> f64 {
    2.0 * (order_k + 1) as f64 * f_v_hz
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(f_p: f64, f_adc: f64) -> PricingParams {
        PricingParams::new(1, f_p, f_adc).unwrap()
    }

    #[test]
    fn n_max_reference_inputs() {
        let p = params(9120.0, 500_000.0);
        assert!((p.n_max() - 27.412_280_701_754_387).abs() < 1e-12);
        assert_eq!(p.n_max_floor(), 27);
    }

    #[test]
    fn n_max_boundary() {
        let p = params(1000.0, 2000.0);
        assert_eq!(p.n_max(), 1.0);
        assert_eq!(p.n_max_floor(), 1);
    }

    #[test]
    fn n_max_exact_division() {
        let p = params(1000.0, 10_000.0);
        assert_eq!(p.n_max(), 5.0);
        assert_eq!(p.n_max_floor(), 5);
    }

    #[test]
    fn infeasible_params_rejected() {
        let err = PricingParams::new(1, 1000.0, 1999.0).unwrap_err();
        assert!(matches!(err, Error::Infeasible(_)));
        assert!(PricingParams::new(1, 0.0, 1000.0).is_err());
        assert!(PricingParams::new(1, -5.0, 1000.0).is_err());
    }

    #[test]
    fn quality_error_anchors() {
        assert_eq!(quality_error(1).unwrap(), 2.0);
        assert!((quality_error(2).unwrap() - 1.0).abs() < 1e-15);
        assert!((quality_error(5).unwrap() - 0.190_983_005_625_052_55).abs() < 1e-15);
        assert!((quality_error(10).unwrap() - 0.048_943_483_704_846_47).abs() < 1e-15);
        assert!(quality_error(0).is_err());
    }

    #[test]
    fn price_anchors() {
        let p = params(9120.0, 500_000.0);
        assert!((p.price(5).unwrap() - 0.1824).abs() < 1e-15);
        assert!((p.price(1).unwrap() - 0.03648).abs() < 1e-15);
    }

    #[test]
    fn price_is_one_at_exact_maximum() {
        let p = params(1000.0, 10_000.0);
        assert_eq!(p.price(5).unwrap(), 1.0);
    }

    #[test]
    fn price_rejects_out_of_range() {
        let p = params(9120.0, 500_000.0);
        assert!(p.price(0).is_err());
        assert!(p.price(28).is_err());
    }

    #[test]
    fn total_reference_points() {
        let p = params(9120.0, 500_000.0);
        let j5 = p.total(5).unwrap();
        assert!((j5.j - 0.373_383_005_625_052_56).abs() < 1e-14);
        let j6 = p.total(6).unwrap();
        assert!((j6.j - 0.352_854_596_215_561_26).abs() < 1e-14);
        // decomposition is bit-exact by construction
        assert_eq!(j5.j, j5.r + j5.j2);
        // dt tiles the clock
        assert!((j5.dt_s * 2.0 * 9120.0 * 5.0 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn total_at_boundary() {
        let p = params(1000.0, 2000.0);
        let pt = p.total(1).unwrap();
        assert_eq!(pt.r, 2.0);
        assert_eq!(pt.j2, 1.0);
        assert_eq!(pt.j, 3.0);
    }

    #[test]
    fn sweep_single_point() {
        let p = params(9120.0, 500_000.0);
        let s = p.sweep(1, 1).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].n, 1);
    }

    #[test]
    fn sweep_full_reference_range() {
        let p = params(9120.0, 500_000.0);
        let s = p.sweep(1, 27).unwrap();
        assert_eq!(s.len(), 27);
        let best = s
            .iter()
            .min_by(|a, b| a.j.partial_cmp(&b.j).unwrap())
            .unwrap();
        assert_eq!(best.n, 6);
    }

    #[test]
    fn sweep_rejects_invalid_ranges() {
        let p = params(9120.0, 500_000.0);
        assert!(p.sweep(0, 5).is_err());
        assert!(p.sweep(5, 3).is_err());
        assert!(p.sweep(1, 28).is_err());
    }

    #[test]
    fn min_rate_anchors() {
        assert_eq!(min_rate(1, 2000.0), 8000.0);
        assert_eq!(min_rate(0, 2000.0), 4000.0);
        assert_eq!(min_rate(3, 1.0), 8.0);
    }
}
