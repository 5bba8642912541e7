//! `sampleplan` — plan ADC sampling frequencies for estimating signal
//! derivatives, sweep the price-quality functional, characterize the
//! input filter, and measure finite-difference error empirically.

mod report;
mod units;

use clap::{Args, Parser, Subcommand, ValueEnum};
use report::{
    combined_csv, combined_human, filter_human, filter_table_csv, plan_human, reference_notes,
    residual_csv, sim_csv, sim_human, sweep_csv, sweep_human, to_json, FilterDocument,
    PlanDocument, PlanInputs, SweepDocument, SweepInputs,
};
use sampleplan::filter::{RcCascade, ResponseDomain};
use sampleplan::planner::{build_plan, combine_plans, PlanRequest};
use sampleplan::price_quality::PricingParams;
use sampleplan::sim::{empirical_error, residual_trace, SimConfig};
use sampleplan::Error;
use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "sampleplan",
    version,
    about = "ADC sampling-frequency planning for derivative estimation",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a full sampling plan: filter cutoff, base rate, optimal
    /// oversampling factor, ADC rate and decimation divider
    Plan(PlanArgs),
    /// Evaluate the price-quality functional over a range of N
    Sweep(SweepArgs),
    /// Solve the RC filter for its half-power point and suppression cutoff
    Filter(FilterArgs),
    /// Measure the finite-difference estimation error empirically
    Simulate(SimulateArgs),
    /// Merge plan documents: largest rate, smallest divider
    Combine(CombineArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Human,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DomainArg {
    Power,
    Amplitude,
}

impl From<DomainArg> for ResponseDomain {
    fn from(d: DomainArg) -> Self {
        match d {
            DomainArg::Power => ResponseDomain::Power,
            DomainArg::Amplitude => ResponseDomain::Amplitude,
        }
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Human)]
    format: FormatArg,
    /// Write the document to a file instead of standard output
    #[arg(long = "out")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PlanArgs {
    /// Signal band cutoff F_v (accepts hz/khz/mhz suffixes)
    #[arg(long = "fv", value_parser = units::parse_freq, required_unless_present = "paper_example")]
    fv: Option<f64>,
    /// Derivative order k (0 = the coordinate itself)
    #[arg(long, default_value_t = 1)]
    order: u32,
    /// Number of RC filter links
    #[arg(long, default_value_t = 2)]
    links: u32,
    /// Filter time constant in seconds (default: derived from the
    /// half-power frequency)
    #[arg(long = "tc", conflicts_with = "half_power")]
    tc: Option<f64>,
    /// Filter half-power frequency (default: --fv)
    #[arg(long = "half-power", value_parser = units::parse_freq)]
    half_power: Option<f64>,
    /// Suppression level defining the cutoff f_s
    #[arg(long, default_value_t = 0.1)]
    level: f64,
    /// Domain the suppression level refers to
    #[arg(long = "level-domain", value_enum, default_value_t = DomainArg::Power)]
    level_domain: DomainArg,
    /// Maximum ADC sampling rate F_s
    #[arg(long = "adc", value_parser = units::parse_freq, required_unless_present = "paper_example")]
    adc: Option<f64>,
    /// Multiplier on the alias-safe base rate: F_p = margin * 2 * f_s
    #[arg(long = "fp-margin", default_value_t = 1.0)]
    fp_margin: f64,
    /// Load the published worked-example inputs (2 kHz band, two-link RC,
    /// level 0.1 power, 500 kHz ADC) and annotate the output with the
    /// reference values reported for it
    #[arg(
        long = "paper-example",
        conflicts_with_all = ["fv", "order", "links", "tc", "half_power", "level", "level_domain", "adc", "fp_margin"]
    )]
    paper_example: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SweepArgs {
    /// Base rate F_p
    #[arg(long = "fp", value_parser = units::parse_freq)]
    fp: f64,
    /// Maximum ADC sampling rate F_s
    #[arg(long = "adc", value_parser = units::parse_freq)]
    adc: f64,
    /// Derivative order k (recorded in the output)
    #[arg(long, default_value_t = 1)]
    order: u32,
    /// Inclusive range of oversampling factors, e.g. 1..27
    /// (default: the full feasible range)
    #[arg(long = "n", value_parser = units::parse_range)]
    n: Option<(u32, u32)>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("time_constant").required(true).args(["tc", "half_power"]))]
struct FilterArgs {
    /// Number of RC filter links
    #[arg(long, default_value_t = 2)]
    links: u32,
    /// Filter time constant in seconds
    #[arg(long = "tc")]
    tc: Option<f64>,
    /// Half-power frequency to derive the time constant from
    #[arg(long = "half-power", value_parser = units::parse_freq)]
    half_power: Option<f64>,
    /// Suppression level defining the cutoff f_s
    #[arg(long, default_value_t = 0.1)]
    level: f64,
    /// Domain the suppression level refers to
    #[arg(long = "level-domain", value_enum, default_value_t = DomainArg::Power)]
    level_domain: DomainArg,
    /// Response table start (csv format; default: half-power / 100)
    #[arg(long = "table-from", value_parser = units::parse_freq)]
    table_from: Option<f64>,
    /// Response table end (csv format; default: half-power * 100)
    #[arg(long = "table-to", value_parser = units::parse_freq)]
    table_to: Option<f64>,
    /// Number of log-spaced response table rows
    #[arg(long = "table-points", default_value_t = 61)]
    table_points: u32,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct SimulateArgs {
    /// Derivative order k >= 1
    #[arg(long, default_value_t = 1)]
    order: u32,
    /// Oversampling factor N
    #[arg(long = "n")]
    n: u32,
    /// Base rate F_p
    #[arg(long = "fp", value_parser = units::parse_freq)]
    fp: f64,
    /// Probe frequency (default: F_p, the quality-term operating point)
    #[arg(long = "probe", value_parser = units::parse_freq)]
    probe: Option<f64>,
    /// Comparison offset: the estimate at t is compared with the exact
    /// derivative at t + alpha*k*dt
    #[arg(long, default_value_t = 0.5)]
    alpha: f64,
    /// Averaging window in whole probe periods
    #[arg(long, default_value_t = 8)]
    periods: u32,
    /// Quadrature grid density
    #[arg(long, default_value_t = 4096)]
    grid: u32,
    /// Also write a per-sample residual CSV (t,v_est,exact,residual)
    #[arg(long = "residuals")]
    residuals: Option<PathBuf>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct CombineArgs {
    /// Plan documents produced by `plan --format json`
    #[arg(required = true)]
    plans: Vec<PathBuf>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug)]
enum CliError {
    Core(Error),
    Usage(String),
    Io(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Io(m) => write!(f, "{m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(format!("JSON serialization failed: {e}"))
    }
}

impl CliError {
    /// 2 for usage-level problems the caller can fix in argv, 1 for
    /// infeasible problems and operational failures.
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Core(Error::InvalidInput(_)) => 2,
            _ => 1,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Plan(args) => run_plan(args),
        Command::Sweep(args) => run_sweep(args),
        Command::Filter(args) => run_filter(args),
        Command::Simulate(args) => run_simulate(args),
        Command::Combine(args) => run_combine(args),
    }
}

fn run_plan(args: PlanArgs) -> Result<(), CliError> {
    let (request, annotate) = if args.paper_example {
        let filter = RcCascade::from_half_power(2, 2000.0)?;
        let request = PlanRequest {
            f_v_hz: 2000.0,
            order_k: 1,
            filter,
            suppression_level: 0.1,
            suppression_domain: ResponseDomain::Power,
            f_adc_hz: 500_000.0,
            fp_margin: 1.0,
        };
        (request, true)
    } else {
        let f_v_hz = args.fv.expect("enforced by clap");
        let filter = match args.tc {
            Some(tc) => RcCascade::new(args.links, tc)?,
            None => RcCascade::from_half_power(args.links, args.half_power.unwrap_or(f_v_hz))?,
        };
        let request = PlanRequest {
            f_v_hz,
            order_k: args.order,
            filter,
            suppression_level: args.level,
            suppression_domain: args.level_domain.into(),
            f_adc_hz: args.adc.expect("enforced by clap"),
            fp_margin: args.fp_margin,
        };
        (request, false)
    };
    let plan = build_plan(&request)?;
    let notes = if annotate {
        reference_notes(&plan)
    } else {
        Vec::new()
    };
    let doc = PlanDocument {
        inputs: PlanInputs::from_request(&request),
        plan,
        notes,
    };
    let text = match args.output.format {
        FormatArg::Json => to_json(&doc)?,
        FormatArg::Csv => sweep_csv(&doc.plan.sweep),
        FormatArg::Human => plan_human(&doc),
    };
    emit(&args.output, &text)
}

fn run_sweep(args: SweepArgs) -> Result<(), CliError> {
    let params = PricingParams::new(args.order, args.fp, args.adc)?;
    let (n_lo, n_hi) = args.n.unwrap_or((1, params.n_max_floor()));
    let points = params.sweep(n_lo, n_hi)?;
    let doc = SweepDocument {
        inputs: SweepInputs {
            order_k: args.order,
            f_p_hz: args.fp,
            f_adc_hz: args.adc,
            n_lo,
            n_hi,
        },
        sweep: points,
    };
    let text = match args.output.format {
        FormatArg::Json => to_json(&doc)?,
        FormatArg::Csv => sweep_csv(&doc.sweep),
        FormatArg::Human => sweep_human(&doc),
    };
    emit(&args.output, &text)
}

fn run_filter(args: FilterArgs) -> Result<(), CliError> {
    let filter = match args.tc {
        Some(tc) => RcCascade::new(args.links, tc)?,
        None => RcCascade::from_half_power(args.links, args.half_power.expect("enforced by clap"))?,
    };
    let cutoff = filter.solve_cutoff(args.level, args.level_domain.into())?;
    let doc = FilterDocument {
        links: filter.links(),
        time_constant_s: filter.time_constant_s(),
        half_power_hz: filter.half_power_hz(),
        suppression_level: args.level,
        suppression_domain: args.level_domain.into(),
        cutoff_hz: cutoff,
    };
    let text = match args.output.format {
        FormatArg::Json => to_json(&doc)?,
        FormatArg::Csv => {
            let rows = response_table(&filter, &args)?;
            filter_table_csv(&rows)
        }
        FormatArg::Human => filter_human(&doc),
    };
    emit(&args.output, &text)
}

fn response_table(filter: &RcCascade, args: &FilterArgs) -> Result<Vec<(f64, f64, f64)>, CliError> {
    if args.table_points < 2 {
        return Err(CliError::Usage(
            "a response table needs at least 2 points".into(),
        ));
    }
    let f_half = filter.half_power_hz();
    let from = args.table_from.unwrap_or(f_half / 100.0);
    let to = args.table_to.unwrap_or(f_half * 100.0);
    if !(from > 0.0) || to <= from {
        return Err(CliError::Usage(format!(
            "response table range [{from}, {to}] Hz must be positive and increasing"
        )));
    }
    let points = args.table_points;
    let log_step = (to / from).ln() / (points - 1) as f64;
    let mut rows = Vec::with_capacity(points as usize);
    for i in 0..points {
        let f = from * (i as f64 * log_step).exp();
        let power = filter.power_response(f)?;
        rows.push((f, power, power.sqrt()));
    }
    Ok(rows)
}

fn run_simulate(args: SimulateArgs) -> Result<(), CliError> {
    let cfg = SimConfig {
        order_k: args.order,
        n: args.n,
        f_p_hz: args.fp,
        probe_freq_hz: args.probe.unwrap_or(args.fp),
        alpha: args.alpha,
        periods: args.periods,
        grid: args.grid,
    };
    let report = empirical_error(&cfg)?;
    if let Some(path) = &args.residuals {
        let trace = residual_trace(&cfg)?;
        write_file(path, &residual_csv(&trace))?;
    }
    let text = match args.output.format {
        FormatArg::Json => to_json(&report)?,
        FormatArg::Csv => sim_csv(&report),
        FormatArg::Human => sim_human(&cfg, &report),
    };
    emit(&args.output, &text)
}

fn run_combine(args: CombineArgs) -> Result<(), CliError> {
    let mut plans = Vec::with_capacity(args.plans.len());
    for path in &args.plans {
        let raw = fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
        let doc: PlanDocument = serde_json::from_str(&raw)
            .map_err(|e| CliError::Io(format!("{} is not a plan document: {e}", path.display())))?;
        plans.push(doc.plan);
    }
    let combined = combine_plans(&plans)?;
    let text = match args.output.format {
        FormatArg::Json => to_json(&combined)?,
        FormatArg::Csv => combined_csv(&combined),
        FormatArg::Human => combined_human(&combined),
    };
    emit(&args.output, &text)
}

fn emit(output: &OutputArgs, text: &str) -> Result<(), CliError> {
    match &output.out {
        Some(path) => write_file(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write_file(path: &PathBuf, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}
