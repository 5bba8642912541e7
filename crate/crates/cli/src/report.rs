//! Output documents: the JSON plan envelope, CSV tables, human-readable
//! panels, and the annotation notes for the built-in reference example.

use crate::units::fmt_sig;
use sampleplan::filter::ResponseDomain;
use sampleplan::planner::{CombinedPlan, PlanRequest, SamplingPlan};
use sampleplan::price_quality::{quality_error, FunctionalPoint};
use sampleplan::sim::{ResidualSample, SimConfig, SimReport};
use serde::{Deserialize, Serialize};

/// Significant digits used in every CSV cell.
const CSV_SIG_DIGITS: i32 = 12;

/// Top-level JSON document emitted by `plan`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PlanDocument {
    pub inputs: PlanInputs,
    pub plan: SamplingPlan,
    pub notes: Vec<String>,
}

/// Echo of the resolved planning inputs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PlanInputs {
    pub f_v_hz: f64,
    pub order_k: u32,
    pub links: u32,
    pub time_constant_s: f64,
    pub suppression_level: f64,
    pub suppression_domain: ResponseDomain,
    pub f_adc_hz: f64,
    pub fp_margin: f64,
}

impl PlanInputs {
    pub fn from_request(req: &PlanRequest) -> Self {
        PlanInputs {
            f_v_hz: req.f_v_hz,
            order_k: req.order_k,
            links: req.filter.links(),
            time_constant_s: req.filter.time_constant_s(),
            suppression_level: req.suppression_level,
            suppression_domain: req.suppression_domain,
            f_adc_hz: req.f_adc_hz,
            fp_margin: req.fp_margin,
        }
    }
}

/// Top-level JSON document emitted by `sweep`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepDocument {
    pub inputs: SweepInputs,
    pub sweep: Vec<FunctionalPoint>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepInputs {
    pub order_k: u32,
    pub f_p_hz: f64,
    pub f_adc_hz: f64,
    pub n_lo: u32,
    pub n_hi: u32,
}

/// Top-level JSON document emitted by `filter`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FilterDocument {
    pub links: u32,
    pub time_constant_s: f64,
    pub half_power_hz: f64,
    pub suppression_level: f64,
    pub suppression_domain: ResponseDomain,
    pub cutoff_hz: f64,
}

pub fn to_json<T: Serialize>(value: &T) -> serde_json::Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

/// CSV with the mandatory header `N,r,J2,J,dt_s` and LF line endings.
pub fn sweep_csv(points: &[FunctionalPoint]) -> String {
    let mut out = String::from("N,r,J2,J,dt_s\n");
    for p in points {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            p.n,
            fmt_sig(p.r, CSV_SIG_DIGITS),
            fmt_sig(p.j2, CSV_SIG_DIGITS),
            fmt_sig(p.j, CSV_SIG_DIGITS),
            fmt_sig(p.dt_s, CSV_SIG_DIGITS),
        ));
    }
    out
}

/// CSV response table `f_hz,power,amplitude`.
pub fn filter_table_csv(rows: &[(f64, f64, f64)]) -> String {
    let mut out = String::from("f_hz,power,amplitude\n");
    for &(f, p, a) in rows {
        out.push_str(&format!(
            "{},{},{}\n",
            fmt_sig(f, CSV_SIG_DIGITS),
            fmt_sig(p, CSV_SIG_DIGITS),
            fmt_sig(a, CSV_SIG_DIGITS),
        ));
    }
    out
}

/// One-row CSV form of a simulation report.
pub fn sim_csv(report: &SimReport) -> String {
    format!(
        "r_empirical,r_model,x,gap\n{},{},{},{}\n",
        fmt_sig(report.r_empirical, CSV_SIG_DIGITS),
        fmt_sig(report.r_model, CSV_SIG_DIGITS),
        fmt_sig(report.x, CSV_SIG_DIGITS),
        fmt_sig(report.gap, CSV_SIG_DIGITS),
    )
}

/// Residual trace CSV `t,v_est,exact,residual`.
pub fn residual_csv(trace: &[ResidualSample]) -> String {
    let mut out = String::from("t,v_est,exact,residual\n");
    for s in trace {
        out.push_str(&format!(
            "{},{},{},{}\n",
            fmt_sig(s.t, CSV_SIG_DIGITS),
            fmt_sig(s.v_est, CSV_SIG_DIGITS),
            fmt_sig(s.exact, CSV_SIG_DIGITS),
            fmt_sig(s.residual, CSV_SIG_DIGITS),
        ));
    }
    out
}

/// One-row CSV form of a combined plan.
pub fn combined_csv(c: &CombinedPlan) -> String {
    format!(
        "f_o_hz,k_d\n{},{}\n",
        fmt_sig(c.f_o_hz, CSV_SIG_DIGITS),
        c.k_d
    )
}

// Reference values reported for the built-in worked example
// (2 kHz band, two-link RC, suppression level 0.1 power, 500 kHz ADC).
const REF_F_S_HZ: f64 = 4560.0;
const REF_N_OPT: u32 = 5;
const REF_F_O_HZ: f64 = 45_600.0;
const REF_ERROR_PERCENT: f64 = 4.8;
const REF_COORD_F_O_HZ: f64 = 36_550.0;
const REF_COORD_K_D: u32 = 8;

/// Annotations comparing a computed plan against the published reference
/// values for the worked example, with explicit deltas.
pub fn reference_notes(plan: &SamplingPlan) -> Vec<String> {
    let mut notes = Vec::new();
    notes.push(format!(
        "reference reports f_s = {REF_F_S_HZ} Hz; computed suppression cutoff is {:.2} Hz \
         (delta {:+.2} Hz)",
        plan.f_s_hz,
        plan.f_s_hz - REF_F_S_HZ
    ));
    if let Some(at_ref) = plan.sweep.iter().find(|p| p.n == REF_N_OPT) {
        notes.push(format!(
            "reference reports the optimum at N=5 with J(5) = {:.6}; the functional minimum \
             is N = {} with J = {:.6} (delta J = {:+.6})",
            at_ref.j,
            plan.n_opt,
            plan.j_at_opt,
            at_ref.j - plan.j_at_opt
        ));
    }
    notes.push(format!(
        "reference computes F_o as N*F_p = {REF_F_O_HZ} Hz; this tool uses F_o = 2*N_o*F_p = \
         {:.2} Hz, consistent with dt = 1/(2*F_p*N)",
        plan.f_o_hz
    ));
    let r5 = quality_error(5).unwrap_or(f64::NAN);
    let r10 = quality_error(10).unwrap_or(f64::NAN);
    notes.push(format!(
        "reference reports a {REF_ERROR_PERCENT}% standard error; the quality term gives \
         r(5) = {r5:.6} ({:.1}%), and {REF_ERROR_PERCENT}% matches r(10) = {r10:.6} instead",
        100.0 * r5
    ));
    notes.push(format!(
        "reference coordinate-rate plan ({} Hz, decimation {REF_COORD_K_D}) is recorded for \
         comparison only; it does not follow from the stated formulas",
        REF_COORD_F_O_HZ
    ));
    notes
}

pub fn plan_human(doc: &PlanDocument) -> String {
    let p = &doc.plan;
    let i = &doc.inputs;
    let mut out = String::new();
    out.push_str(&format!("sampling plan (derivative order k = {})\n", p.order_k));
    out.push_str(&format!(
        "  signal cutoff F_v  {} Hz\n",
        fmt_sig(i.f_v_hz, 10)
    ));
    out.push_str(&format!(
        "  filter             {}-link RC, T = {} s\n",
        i.links, i.time_constant_s
    ));
    out.push_str(&format!(
        "  suppression        level {} ({}) -> f_s = {} Hz\n",
        i.suppression_level,
        domain_name(i.suppression_domain),
        fmt_sig(p.f_s_hz, 10)
    ));
    out.push_str(&format!(
        "  base rate F_p      {} Hz (margin {})\n",
        fmt_sig(p.f_p_hz, 10),
        i.fp_margin
    ));
    out.push_str(&format!("  ADC budget F_s     {} Hz\n", fmt_sig(i.f_adc_hz, 10)));
    out.push_str(&format!("  optimal factor N_o {}\n", p.n_opt));
    out.push_str(&format!("  optimal rate F_o   {} Hz\n", fmt_sig(p.f_o_hz, 10)));
    out.push_str(&format!("  decimation K_d     {}\n", p.k_d));
    out.push_str(&format!("  minimum rate F_2   {} Hz\n", fmt_sig(p.f2_min_hz, 10)));
    out.push_str(&format!(
        "  at the optimum     r = {}, J = {}\n",
        fmt_sig(p.r_at_opt, 8),
        fmt_sig(p.j_at_opt, 8)
    ));
    out.push_str("\n  neighborhood of the optimum:\n");
    for pt in &p.sweep {
        if pt.n + 1 >= p.n_opt && pt.n <= p.n_opt + 1 {
            let marker = if pt.n == p.n_opt { " <- minimum" } else { "" };
            out.push_str(&format!(
                "    N = {:<4} r = {:<14} J2 = {:<14} J = {}{}\n",
                pt.n,
                fmt_sig(pt.r, 8),
                fmt_sig(pt.j2, 8),
                fmt_sig(pt.j, 8),
                marker
            ));
        }
    }
    push_notes(&mut out, &doc.notes);
    out
}

pub fn sweep_human(doc: &SweepDocument) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "price-quality sweep (F_p = {} Hz, ADC = {} Hz)\n\n",
        fmt_sig(doc.inputs.f_p_hz, 10),
        fmt_sig(doc.inputs.f_adc_hz, 10)
    ));
    out.push_str(&format!(
        "  {:<5} {:<15} {:<15} {:<15} {}\n",
        "N", "r", "J2", "J", "dt_s"
    ));
    for p in &doc.sweep {
        out.push_str(&format!(
            "  {:<5} {:<15} {:<15} {:<15} {}\n",
            p.n,
            fmt_sig(p.r, 9),
            fmt_sig(p.j2, 9),
            fmt_sig(p.j, 9),
            fmt_sig(p.dt_s, 9)
        ));
    }
    out
}

pub fn filter_human(doc: &FilterDocument) -> String {
    format!(
        "rc low-pass filter\n  links           {}\n  time constant   {} s\n  \
         half-power      {} Hz\n  cutoff          level {} ({}) -> {} Hz\n",
        doc.links,
        doc.time_constant_s,
        fmt_sig(doc.half_power_hz, 10),
        doc.suppression_level,
        domain_name(doc.suppression_domain),
        fmt_sig(doc.cutoff_hz, 10)
    )
}

pub fn sim_human(cfg: &SimConfig, report: &SimReport) -> String {
    format!(
        "finite-difference error measurement (k = {}, N = {})\n  probe          {} Hz\n  \
         alpha          {}\n  dt             {} s\n  phase step x   {} rad\n  \
         r empirical    {}\n  r model        {}\n  gap            {}\n",
        cfg.order_k,
        cfg.n,
        fmt_sig(cfg.probe_freq_hz, 10),
        cfg.alpha,
        fmt_sig(cfg.dt_s(), 10),
        fmt_sig(report.x, 10),
        fmt_sig(report.r_empirical, 8),
        fmt_sig(report.r_model, 8),
        fmt_sig(report.gap, 8)
    )
}

pub fn combined_human(c: &CombinedPlan) -> String {
    format!(
        "combined plan\n  delivery rate F_o  {} Hz\n  decimation K_d     {}\n",
        fmt_sig(c.f_o_hz, 10),
        c.k_d
    )
}

fn domain_name(d: ResponseDomain) -> &'static str {
    match d {
        ResponseDomain::Power => "power",
        ResponseDomain::Amplitude => "amplitude",
    }
}

fn push_notes(out: &mut String, notes: &[String]) {
    if notes.is_empty() {
        return;
    }
    out.push_str("\n  notes:\n");
    for n in notes {
        out.push_str(&format!("    - {n}\n"));
    }
}
