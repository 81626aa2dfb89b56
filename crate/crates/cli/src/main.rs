use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use prony_cli::{error_document, io::parse_real_list, run, CliError, Command, Format, ModeArg, RunConfig};

/// Prony / Padé IIR filter design and exponential parameter identification.
#[derive(Debug, Parser)]
#[command(name = "prony", version)]
struct Args {
    /// What to do with the input.
    #[arg(value_enum)]
    command: Command,

    /// Sample CSV (`n,value` or `k,re,im`), band-spec JSON for design-freq,
    /// or filter JSON for eval.
    input: PathBuf,

    /// Numerator degree M.
    #[arg(long = "order-num", default_value_t = 0)]
    order_num: usize,

    /// Denominator degree N (model order for identify).
    #[arg(long = "order-den", default_value_t = 0)]
    order_den: usize,

    /// Solve mode; defaults to interp when the sample count is exactly M+N+1.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,

    /// Linear-phase delay in samples for band specs [default: (M+N)/2].
    #[arg(long = "group-delay", allow_negative_numbers = true)]
    group_delay: Option<f64>,

    /// Number of frequency points for eval, on [0, 2π).
    #[arg(long, default_value_t = 512)]
    grid: usize,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the result here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,

    /// Sample period T for identify.
    #[arg(long, default_value_t = 1.0)]
    period: f64,

    /// Fixed denominator for design-zeros, comma separated, leading 1.
    #[arg(long, allow_hyphen_values = true)]
    den: Option<String>,

    /// Accept frequency samples without conjugate symmetry (complex design).
    #[arg(long)]
    complex: bool,
}

fn emit(config: &RunConfig, bytes: &[u8]) -> std::io::Result<()> {
    match &config.output_path {
        Some(path) => std::fs::write(path, bytes),
        None => std::io::stdout().write_all(bytes),
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let mut config = RunConfig::new(args.command);
    config.input_path = args.input;
    config.output_path = args.output;
    config.num_order = args.order_num;
    config.den_order = args.order_den;
    config.mode = args.mode;
    config.group_delay = args.group_delay;
    config.grid = args.grid;
    config.format = args.format;
    config.period = args.period;
    config.complex = args.complex;

    let prepared = args
        .den
        .as_deref()
        .map(parse_real_list)
        .transpose()
        .map_err(|m| CliError::Usage(format!("--den: {m}")))
        .and_then(|den| {
            config.denominator = den;
            std::fs::read_to_string(&config.input_path).map_err(|e| {
                CliError::Usage(format!("cannot read {}: {e}", config.input_path.display()))
            })
        });

    let (bytes, code, diagnostics) = match prepared {
        Ok(input) => {
            let outcome = run(&config, &input);
            (outcome.output, outcome.exit_code, outcome.diagnostics)
        }
        Err(err) => (
            error_document(&config, &err),
            err.exit_code(),
            vec![format!("error: {err}")],
        ),
    };
    for line in &diagnostics {
        eprintln!("{line}");
    }
    if let Err(e) = emit(&config, &bytes) {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(prony_cli::EXIT_INVALID_INPUT as u8);
    }
    ExitCode::from(code as u8)
}
