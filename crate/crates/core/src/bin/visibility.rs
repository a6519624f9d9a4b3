use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use clock_visibility::sweep::{
    figure_preset, run_sweeps, write_csv, write_json, Bindings, Model, OutputFormat, Param,
    SweepRecord, SweepSpec,
};
use clock_visibility::validate::{self, Profile};
use clock_visibility::Error;

/// Interference visibility of a clock in a Mach–Zehnder interferometer.
#[derive(Parser)]
#[command(name = "visibility", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a single parameter point.
    Point(PointArgs),
    /// Run a sweep described by a JSON config file.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Overrides the config's output path; stdout if neither is set.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_parser = parse_format)]
        format: Option<OutputFormat>,
    },
    /// Regenerate the dataset of a named figure preset.
    Figure {
        preset: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_parser = parse_format, default_value = "csv")]
        format: OutputFormat,
    },
    /// Run the self-check suite and print a JSON report.
    Validate {
        #[arg(long)]
        strict: bool,
    },
}

#[derive(Args)]
struct PointArgs {
    #[arg(long)]
    model: String,
    #[arg(long, allow_hyphen_values = true)]
    delta_e: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    omega: Option<f64>,
    #[arg(long, alias = "lambda1", allow_hyphen_values = true)]
    lambda: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    lambda2: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    delta_tau: Option<f64>,
    #[arg(long)]
    temperature: Option<f64>,
    #[arg(long)]
    tau1: Option<f64>,
    #[arg(long)]
    tau2: Option<f64>,
    #[arg(long)]
    p1: Option<f64>,
    #[arg(long)]
    p2: Option<f64>,
    #[arg(long, value_parser = parse_format, default_value = "csv")]
    format: OutputFormat,
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Usage(String),
    Validation,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn emit(records: &[SweepRecord], format: OutputFormat, out: Option<&Path>) -> Result<(), Failure> {
    let sink: Box<dyn Write> = match out {
        Some(path) => Box::new(BufWriter::new(File::create(path).map_err(|e| {
            Failure::Usage(format!("cannot write {}: {e}", path.display()))
        })?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    match format {
        OutputFormat::Csv => write_csv(sink, records)?,
        OutputFormat::Json => write_json(sink, records)?,
    }
    Ok(())
}

fn point(args: PointArgs) -> Result<(), Failure> {
    let model: Model = args.model.parse()?;
    let mut b = Bindings::default();
    let given = [
        (Param::DeltaE, args.delta_e),
        (Param::Omega, args.omega),
        (Param::Lambda1, args.lambda),
        (Param::Lambda2, args.lambda2),
        (Param::DeltaTau, args.delta_tau),
        (Param::Temperature, args.temperature),
        (Param::Tau1, args.tau1),
        (Param::Tau2, args.tau2),
        (Param::P1, args.p1),
        (Param::P2, args.p2),
    ];
    for (p, v) in given {
        if let Some(v) = v {
            b.bind(p, v)?;
        }
    }
    let record = SweepRecord::evaluate(model, b)?;
    emit(&[record], args.format, None)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Point(args) => point(args),
        Command::Sweep {
            config,
            out,
            format,
        } => {
            let mut spec = SweepSpec::from_path(&config)?;
            if let Some(out) = out {
                spec.output_path = Some(out);
            }
            if let Some(format) = format {
                spec.format = format;
            }
            let records = run_sweeps(std::slice::from_ref(&spec))?;
            emit(&records, spec.format, spec.output_path.as_deref())
        }
        Command::Figure {
            preset,
            out,
            format,
        } => {
            let preset = figure_preset(&preset)?;
            let records = run_sweeps(&preset.panels)?;
            emit(&records, format, Some(&out))
        }
        Command::Validate { strict } => {
            let profile = if strict {
                Profile::Strict
            } else {
                Profile::Default
            };
            let report = validate::run(profile);
            let mut stdout = io::stdout().lock();
            serde_json::to_writer_pretty(&mut stdout, &report)
                .map_err(|e| Failure::Usage(e.to_string()))?;
            writeln!(stdout)?;
            for c in report.checks.iter().filter(|c| !c.passed) {
                eprintln!(
                    "FAIL {}: measured {} ({}) {}",
                    c.name, c.measured, c.criterion, c.detail
                );
            }
            if report.passed {
                Ok(())
            } else {
                Err(Failure::Validation)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
