//! Command dispatch for the `prony` binary.
//!
//! [`run`] is a pure function of the configuration and the input text; the
//! binary only handles argument parsing, file access and exit codes.

pub mod error;
pub mod io;

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::ValueEnum;
use prony_core::{
    band_samples, design_freq, design_time, identify, solve_numerator_solution_error,
    Complex64, DesignMode, FrequencySpec, RationalFilter, SampledSignal, TimeDesignProblem,
    ZeroDesignProblem,
};
use serde_json::{json, Map, Value};

pub use error::{CliError, EXIT_DESIGN_FAILURE, EXIT_INVALID_INPUT};
use io::{clean, complex_array, complex_value, format_f64, number, pole_array};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    DesignTime,
    DesignFreq,
    DesignZeros,
    Identify,
    Eval,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Self::DesignTime => "design-time",
            Self::DesignFreq => "design-freq",
            Self::DesignZeros => "design-zeros",
            Self::Identify => "identify",
            Self::Eval => "eval",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Interp,
    Ls,
}

impl ModeArg {
    fn name(self) -> &'static str {
        match self {
            Self::Interp => "interp",
            Self::Ls => "ls",
        }
    }
}

impl From<ModeArg> for DesignMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Interp => DesignMode::Interpolate,
            ModeArg::Ls => DesignMode::LeastSquares,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub input_path: PathBuf,
    pub output_path: Option<PathBuf>,
    pub num_order: usize,
    pub den_order: usize,
    /// `None` picks interpolation when the sample count is exactly `M+N+1`.
    pub mode: Option<ModeArg>,
    /// Linear-phase delay in samples for band shorthand; default `(M+N)/2`.
    pub group_delay: Option<f64>,
    pub grid: usize,
    pub format: Format,
    /// Sample period for `identify`.
    pub period: f64,
    /// Fixed denominator for `design-zeros`.
    pub denominator: Option<Vec<f64>>,
    /// Allow frequency specs without conjugate symmetry.
    pub complex: bool,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            input_path: PathBuf::new(),
            output_path: None,
            num_order: 0,
            den_order: 0,
            mode: None,
            group_delay: None,
            grid: 512,
            format: Format::Json,
            period: 1.0,
            denominator: None,
            complex: false,
        }
    }
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub output: Vec<u8>,
    pub exit_code: i32,
    /// Warnings and errors for the diagnostic stream.
    pub diagnostics: Vec<String>,
}

pub fn run(config: &RunConfig, input: &str) -> Outcome {
    let mut diagnostics = Vec::new();
    match dispatch(config, input, &mut diagnostics) {
        Ok(output) => Outcome {
            output,
            exit_code: 0,
            diagnostics,
        },
        Err(err) => {
            diagnostics.push(format!("error: {err}"));
            Outcome {
                output: error_document(config, &err),
                exit_code: err.exit_code(),
                diagnostics,
            }
        }
    }
}

/// Error report for failures that happen before [`run`] (unreadable files).
pub fn error_document(config: &RunConfig, err: &CliError) -> Vec<u8> {
    let mut detail = Map::new();
    detail.insert("kind".into(), json!(err.kind()));
    detail.insert("message".into(), json!(err.to_string()));
    if let CliError::Input { line, field, .. } = err {
        detail.insert("line".into(), json!(line));
        detail.insert("field".into(), json!(field));
    }
    match config.format {
        Format::Json => io::to_json_bytes(&json!({
            "schema": SCHEMA_VERSION,
            "command": config.command.name(),
            "error": Value::Object(detail),
        })),
        Format::Csv => {
            let message = err.to_string().replace('"', "\"\"");
            format!("error,kind,message\n1,{},\"{message}\"\n", err.kind()).into_bytes()
        }
    }
}

fn dispatch(config: &RunConfig, input: &str, diag: &mut Vec<String>) -> Result<Vec<u8>, CliError> {
    match config.command {
        Command::DesignTime => design_time_cmd(config, input, diag),
        Command::DesignFreq => design_freq_cmd(config, input, diag),
        Command::DesignZeros => design_zeros_cmd(config, input, diag),
        Command::Identify => identify_cmd(config, input),
        Command::Eval => eval_cmd(config, input),
    }
}

fn pick_mode(config: &RunConfig, samples: usize) -> DesignMode {
    match config.mode {
        Some(m) => m.into(),
        None if samples == config.num_order + config.den_order + 1 => DesignMode::Interpolate,
        None => DesignMode::LeastSquares,
    }
}

fn mode_name(mode: DesignMode) -> &'static str {
    match mode {
        DesignMode::Interpolate => ModeArg::Interp.name(),
        DesignMode::LeastSquares => ModeArg::Ls.name(),
    }
}

fn warn_if_rank_deficient(rank: usize, den_order: usize, diag: &mut Vec<String>) {
    if den_order > 0 && rank < den_order {
        diag.push(format!(
            "warning: H2 has rank {rank} < {den_order}; returned the minimum-norm denominator"
        ));
    }
}

fn warn_if_unstable(stable: bool, moduli: &[f64], diag: &mut Vec<String>) {
    if !stable {
        let worst = moduli.iter().copied().fold(0.0, f64::max);
        diag.push(format!(
            "warning: designed filter is unstable (largest pole modulus {worst:.6})"
        ));
    }
}

fn filter_json(filter: &RationalFilter) -> Value {
    json!({ "b": complex_array(filter.b()), "a": complex_array(filter.a()) })
}

fn design_csv(filter: &RationalFilter, poles: &[Complex64]) -> Vec<u8> {
    let mut out = String::from("kind,index,re,im\n");
    let rows = [("b", filter.b()), ("a", filter.a()), ("pole", poles)];
    for (kind, values) in rows {
        for (i, &z) in values.iter().enumerate() {
            let z = clean(z);
            let _ = writeln!(out, "{kind},{i},{},{}", format_f64(z.re), format_f64(z.im));
        }
    }
    out.into_bytes()
}

fn design_document(
    config: &RunConfig,
    filter: &RationalFilter,
    report: Map<String, Value>,
    poles: &[Complex64],
) -> Vec<u8> {
    match config.format {
        Format::Json => io::to_json_bytes(&json!({
            "schema": SCHEMA_VERSION,
            "command": config.command.name(),
            "filter": filter_json(filter),
            "report": Value::Object(report),
        })),
        Format::Csv => design_csv(filter, poles),
    }
}

fn design_time_cmd(config: &RunConfig, input: &str, diag: &mut Vec<String>) -> Result<Vec<u8>, CliError> {
    let samples = io::parse_samples_csv(input)?;
    let mode = pick_mode(config, samples.len());
    let problem = TimeDesignProblem::new(samples, config.num_order, config.den_order)?;
    let (filter, report) = design_time(&problem, mode)?;
    warn_if_rank_deficient(report.rank, config.den_order, diag);
    warn_if_unstable(report.stable, &report.pole_moduli, diag);

    let mut r = Map::new();
    r.insert("mode".into(), json!(mode_name(mode)));
    r.insert("equation_error_norm".into(), number(report.equation_error_norm()));
    r.insert("poles".into(), pole_array(&report.poles));
    r.insert("stable".into(), json!(report.stable));
    r.insert("condition_estimate".into(), number(report.condition_estimate));
    r.insert("rank".into(), json!(report.rank));
    Ok(design_document(config, &filter, r, &report.poles))
}

fn design_freq_cmd(config: &RunConfig, input: &str, diag: &mut Vec<String>) -> Result<Vec<u8>, CliError> {
    let samples = if io::looks_like_json(input) {
        let spec = io::parse_band_spec(input)?;
        let delay = config
            .group_delay
            .unwrap_or((config.num_order + config.den_order) as f64 / 2.0);
        band_samples(spec.length, &spec.bands(), delay)?
    } else {
        io::parse_samples_csv(input)?
    };
    let mode = pick_mode(config, samples.len());
    let spec = FrequencySpec::new(samples, config.num_order, config.den_order, !config.complex)?;
    let (filter, report) = design_freq(&spec, mode)?;
    warn_if_rank_deficient(report.rank, config.den_order, diag);
    warn_if_unstable(report.stable, &report.pole_moduli, diag);
    let undefined = report.response_error.iter().filter(|e| e.is_none()).count();
    if undefined > 0 {
        diag.push(format!(
            "warning: response error undefined at {undefined} sample(s) where the denominator vanishes"
        ));
    }

    let mut r = Map::new();
    r.insert("mode".into(), json!(mode_name(mode)));
    r.insert("samples".into(), json!(spec.samples().len()));
    r.insert("equation_error_norm".into(), number(report.equation_error_norm()));
    r.insert("solution_error_norm".into(), number(report.response_error_norm()));
    r.insert("poles".into(), pole_array(&report.poles));
    r.insert("stable".into(), json!(report.stable));
    r.insert("condition_estimate".into(), number(report.condition_estimate));
    r.insert("rank".into(), json!(report.rank));
    Ok(design_document(config, &filter, r, &report.poles))
}

fn design_zeros_cmd(config: &RunConfig, input: &str, diag: &mut Vec<String>) -> Result<Vec<u8>, CliError> {
    let samples = io::parse_samples_csv(input)?;
    let a: Vec<Complex64> = match &config.denominator {
        Some(a) => a.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        None => {
            let mode = pick_mode(config, samples.len());
            let problem = TimeDesignProblem::new(samples.clone(), config.num_order, config.den_order)?;
            design_time(&problem, mode)?.0.a().to_vec()
        }
    };
    let problem = ZeroDesignProblem::new(a.clone(), samples.clone(), config.num_order)?;
    let design = solve_numerator_solution_error(&problem)?;
    if design.rank_deficient() {
        diag.push(format!(
            "warning: numerator system has rank {} < {}; returned the minimum-norm numerator",
            design.rank,
            design.b.len()
        ));
    }
    let filter = RationalFilter::new(design.b.clone(), a)?;
    let poles = filter.poles();
    let moduli: Vec<f64> = poles.iter().map(|p| p.norm()).collect();
    let stable = moduli.iter().all(|&m| m < 1.0);
    warn_if_unstable(stable, &moduli, diag);

    // equation error of the same filter against the samples, for comparison
    let h0 = prony_core::time::convolution_matrix(&samples, filter.a().len());
    let ah = h0.mul_vec(filter.a()).map_err(CliError::Design)?;
    let eq: Vec<Complex64> = ah
        .iter()
        .enumerate()
        .map(|(i, v)| filter.b().get(i).copied().unwrap_or_default() - v)
        .collect();

    let mut r = Map::new();
    r.insert("samples".into(), json!(samples.len()));
    r.insert("equation_error_norm".into(), number(prony_core::linalg::norm2(&eq)));
    r.insert("solution_error_norm".into(), number(design.solution_error_norm));
    r.insert("poles".into(), pole_array(&poles));
    r.insert("stable".into(), json!(stable));
    r.insert("condition_estimate".into(), number(design.condition_estimate));
    r.insert("rank".into(), json!(design.rank));
    Ok(design_document(config, &filter, r, &poles))
}

fn identify_cmd(config: &RunConfig, input: &str) -> Result<Vec<u8>, CliError> {
    let samples = io::parse_samples_csv(input)?;
    let signal = SampledSignal::new(samples, config.period)?;
    let id = identify(&signal, config.den_order)?;
    let t = id.model.period();
    match config.format {
        Format::Json => {
            let modes: Vec<Value> = id
                .model
                .modes()
                .iter()
                .map(|m| {
                    json!({
                        "K": complex_value(m.amplitude),
                        "alpha": complex_value(m.exponent),
                        "lambda": complex_value(m.root(t)),
                    })
                })
                .collect();
            Ok(io::to_json_bytes(&json!({
                "schema": SCHEMA_VERSION,
                "command": config.command.name(),
                "period": number(t),
                "modes": modes,
                "denominator": complex_array(&id.denominator),
                "report": {
                    "residual_norm": number(id.residual_norm),
                    "condition_estimate": number(id.condition_estimate),
                },
            })))
        }
        Format::Csv => {
            let mut out = String::from("k,K_re,K_im,alpha_re,alpha_im,lambda_re,lambda_im\n");
            for (k, m) in id.model.modes().iter().enumerate() {
                let (kk, al, la) = (clean(m.amplitude), clean(m.exponent), clean(m.root(t)));
                let _ = writeln!(
                    out,
                    "{k},{},{},{},{},{},{}",
                    format_f64(kk.re),
                    format_f64(kk.im),
                    format_f64(al.re),
                    format_f64(al.im),
                    format_f64(la.re),
                    format_f64(la.im)
                );
            }
            Ok(out.into_bytes())
        }
    }
}

fn eval_cmd(config: &RunConfig, input: &str) -> Result<Vec<u8>, CliError> {
    if config.grid < 2 {
        return Err(CliError::Usage(format!(
            "--grid must be at least 2, got {}",
            config.grid
        )));
    }
    let (b, a) = io::parse_filter_json(input)?;
    let filter = RationalFilter::new(b, a)?;
    let omegas: Vec<f64> = (0..config.grid)
        .map(|k| 2.0 * PI * k as f64 / config.grid as f64)
        .collect();
    let response = filter.frequency_response(&omegas)?;
    match config.format {
        Format::Json => {
            let points: Vec<Value> = omegas
                .iter()
                .zip(&response)
                .map(|(&w, &h)| {
                    let h = clean(h);
                    json!({
                        "omega": number(w),
                        "re": number(h.re),
                        "im": number(h.im),
                        "magnitude": number(h.norm()),
                        "phase": number(h.arg()),
                    })
                })
                .collect();
            Ok(io::to_json_bytes(&json!({
                "schema": SCHEMA_VERSION,
                "command": config.command.name(),
                "response": points,
            })))
        }
        Format::Csv => {
            let mut out = String::from("k,omega,re,im,magnitude,phase\n");
            for (k, (&w, &h)) in omegas.iter().zip(&response).enumerate() {
                let h = clean(h);
                let _ = writeln!(
                    out,
                    "{k},{},{},{},{},{}",
                    format_f64(w),
                    format_f64(h.re),
                    format_f64(h.im),
                    format_f64(h.norm()),
                    format_f64(h.arg())
                );
            }
            Ok(out.into_bytes())
        }
    }
}
