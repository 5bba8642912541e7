//! End-to-end sampling plans: filter suppression cutoff → alias-safe base
//! rate F_p → price-quality optimal oversampling factor N_o → optimal ADC
//! rate F_o and decimation divider K_d.

use crate::error::{Error, Result};
use crate::filter::{RcCascade, ResponseDomain};
use crate::price_quality::{min_rate, FunctionalPoint, PricingParams};
use serde::{Deserialize, Serialize};

/// Everything needed to build a plan for one derivative order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanRequest {
    /// Signal band cutoff F_v.
    pub f_v_hz: f64,
    /// Derivative order k (0 = the coordinate itself).
    pub order_k: u32,
    /// Input anti-aliasing filter.
    pub filter: RcCascade,
    /// Residual response level that defines the suppression cutoff f_s.
    pub suppression_level: f64,
    pub suppression_domain: ResponseDomain,
    /// Maximum ADC sampling rate F_s.
    pub f_adc_hz: f64,
    /// Multiplier on the alias-safe base rate: F_p = margin · 2·f_s.
    /// 1 places F_p exactly at 2·f_s; larger values add strictness.
    pub fp_margin: f64,
}

impl PlanRequest {
    /// Request with the default suppression level (0.1 in the power
    /// domain) and no base-rate margin.
    pub fn new(f_v_hz: f64, order_k: u32, filter: RcCascade, f_adc_hz: f64) -> Self {
        PlanRequest {
            f_v_hz,
            order_k,
            filter,
            suppression_level: 0.1,
            suppression_domain: ResponseDomain::Power,
            f_adc_hz,
            fp_margin: 1.0,
        }
    }
}

/// A complete planning result. `f_o_hz = 2·n_opt·f_p_hz = k_d·f_p_hz`
/// holds exactly, and `j_at_opt` is the minimum of `sweep`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplingPlan {
    pub order_k: u32,
    /// Filter suppression cutoff f_s.
    pub f_s_hz: f64,
    /// Alias-safe base rate F_p = fp_margin · 2·f_s.
    pub f_p_hz: f64,
    /// Optimal oversampling factor N_o.
    pub n_opt: u32,
    /// Optimal ADC sampling rate F_o = 2·N_o·F_p.
    pub f_o_hz: f64,
    /// Decimation divider K_d = F_o/F_p = 2·N_o.
    pub k_d: u32,
    /// Minimum-rate baseline F₂ = 2·(k+1)·F_v.
    pub f2_min_hz: f64,
    /// Quality term r(N_o).
    pub r_at_opt: f64,
    /// Functional value J(N_o).
    pub j_at_opt: f64,
    /// Full functional sweep over [1, floor(N_m)], for provenance.
    pub sweep: Vec<FunctionalPoint>,
}

/// Result of merging plans for several derivative orders.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CombinedPlan {
    pub f_o_hz: f64,
    pub k_d: u32,
}

/// The integer `n` in `[1, floor(N_m)]` minimizing `J(n)`; ties break
/// toward the smaller (cheaper) factor.
pub fn optimize_n(params: &PricingParams) -> Result<u32> {
    let hi = params.n_max_floor();
    let mut best_n = 0;
    let mut best_j = f64::INFINITY;
    for n in 1..=hi {
        let j = params.total(n)?.j;
        if j < best_j {
            best_j = j;
            best_n = n;
        }
    }
    if best_n == 0 {
        return Err(Error::Infeasible(format!(
            "no feasible oversampling factor: N_m = {} is below 1",
            params.n_max()
        )));
    }
    Ok(best_n)
}

/// Runs the full pipeline for one derivative order.
pub fn build_plan(request: &PlanRequest) -> Result<SamplingPlan> {
    if !(request.f_v_hz > 0.0) || !request.f_v_hz.is_finite() {
        return Err(Error::InvalidInput(format!(
            "signal cutoff F_v must be positive and finite, got {} Hz",
            request.f_v_hz
        )));
    }
    if !(request.fp_margin >= 1.0) || !request.fp_margin.is_finite() {
        return Err(Error::InvalidInput(format!(
            "base-rate margin must be finite and at least 1, got {}",
            request.fp_margin
        )));
    }
    let f_s = request
        .filter
        .solve_cutoff(request.suppression_level, request.suppression_domain)?;
    // f_v = f_s is a legal boundary (half-power cutoff at the band edge);
    // the slack absorbs the cutoff solver's own relative tolerance
    if request.f_v_hz > f_s * (1.0 + 1e-9) {
        return Err(Error::Infeasible(format!(
            "signal cutoff F_v = {} Hz exceeds the filter suppression cutoff f_s = {f_s} Hz; \
             out-of-band content would alias into the signal band",
            request.f_v_hz
        )));
    }
    let f_p = request.fp_margin * 2.0 * f_s;
    let params = PricingParams::new(request.order_k, f_p, request.f_adc_hz)?;
    let n_opt = optimize_n(&params)?;
    let sweep = params.sweep(1, params.n_max_floor())?;
    let at_opt = sweep[(n_opt - 1) as usize];
    let k_d = 2 * n_opt;
    Ok(SamplingPlan {
        order_k: request.order_k,
        f_s_hz: f_s,
        f_p_hz: f_p,
        n_opt,
        f_o_hz: k_d as f64 * f_p,
        k_d,
        f2_min_hz: min_rate(request.order_k, request.f_v_hz),
        r_at_opt: at_opt.r,
        j_at_opt: at_opt.j,
        sweep,
    })
}

/// Merges plans that share a clock source: the delivered rate is the
/// largest F_o and the divider the smallest K_d.
pub fn combine_plans(plans: &[SamplingPlan]) -> Result<CombinedPlan> {
    let first = plans.first().ok_or_else(|| {
        Error::InvalidInput("cannot combine an empty set of plans".into())
    })?;
    if plans.iter().any(|p| p.f_s_hz != first.f_s_hz) {
        return Err(Error::InvalidInput(
            "plans disagree on the filter cutoff f_s; combining requires a shared clock source"
                .into(),
        ));
    }
    let f_o_hz = plans.iter().map(|p| p.f_o_hz).fold(f64::NEG_INFINITY, f64::max);
    let k_d = plans.iter().map(|p| p.k_d).min().expect("non-empty");
    Ok(CombinedPlan { f_o_hz, k_d })
}
