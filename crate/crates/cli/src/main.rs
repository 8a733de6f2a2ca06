use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sscurv_harness::builtins::{builtin, NAMES};
use sscurv_harness::format::{emit_geometry, parse_geometry, parse_jet, parse_vector, InputError};
use sscurv_harness::fuzz::{default_pool, fuzz, FuzzConfig};
use sscurv_harness::report::{build_report, OutputFormat, Report, ReportRequest};
use sscurv_harness::suite::Suite;
use sscurv_core::frame::{GeometrySpec, ScalarJet};
use sscurv_core::soliton::{SolitonKind, SolitonProblem};
use sscurv_core::{ProbeId, Rat};

#[derive(Parser)]
#[command(name = "sscurv", version, about = "Exact curvature probes for semi-symmetric non-metric connections")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Geometry JSON file.
    path: Option<PathBuf>,
    /// Use a built-in geometry instead of a file (example1, h2xr, flat).
    #[arg(long, conflicts_with = "path")]
    builtin: Option<String>,
    /// Override the distinguished field, e.g. `0,0,1` or `0,0,0`.
    #[arg(long, allow_hyphen_values = true)]
    xi: Option<String>,
}

#[derive(Args)]
struct Output {
    #[arg(long, default_value = "text")]
    format: OutputFormat,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check antisymmetry, Jacobi and the metric.
    Validate {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// Connection, curvature, torsion and non-metricity tables.
    Compute {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
    },
    /// Run identity probes.
    Probe {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
        #[arg(long, default_value = "all")]
        suite: Suite,
        /// Comma-separated probe ids; overrides --suite.
        #[arg(long, value_delimiter = ',')]
        ids: Vec<String>,
        /// Treat known mismatches as failures.
        #[arg(long)]
        strict: bool,
    },
    /// Soliton residual, classification and conclusion checks for a jet.
    Soliton {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        out: Output,
        #[arg(long = "type")]
        kind: SolitonKind,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        m: Option<i64>,
        /// Jet file `{"d": [...], "dd": [[...]]}`; defaults to the geometry
        /// file's jet, then to the zero jet.
        #[arg(long)]
        jet: Option<PathBuf>,
        #[arg(long)]
        strict: bool,
    },
    /// Random structure constants through the full probe suite.
    Fuzz {
        #[command(flatten)]
        out: Output,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        /// Keep only geometries where ξ is parallel.
        #[arg(long)]
        parallel: bool,
        /// Coefficient pool, e.g. `-1,0,1`.
        #[arg(long, allow_hyphen_values = true)]
        pool: Option<String>,
        #[arg(long)]
        strict: bool,
    },
    /// Print a built-in geometry as a JSON geometry file.
    Builtin {
        name: Option<String>,
        #[arg(long)]
        list: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn load(input: &Input) -> Result<(GeometrySpec, Option<ScalarJet>, Vec<String>), InputError> {
    let (mut spec, jet, notes) = match (&input.builtin, &input.path) {
        (Some(name), _) => (builtin(name)?, None, Vec::new()),
        (None, Some(path)) => {
            let p = parse_geometry(path)?;
            (p.spec, p.jet, p.notes)
        }
        (None, None) => {
            return Err(InputError::Schema(
                "no geometry given: pass a file path or --builtin NAME".into(),
            ))
        }
    };
    if let Some(xi) = &input.xi {
        spec = spec.with_xi(parse_vector(xi)?)?;
    }
    Ok((spec, jet, notes))
}

fn write_out(text: &str, path: Option<&PathBuf>) -> Result<(), InputError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| InputError::Io {
            path: p.clone(),
            source,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            // A closed pipe is not worth reporting.
            let _ = stdout.write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn finish(report: &Report, out: &Output, strict: bool) -> Result<u8, InputError> {
    write_out(&report.render(out.format), out.output.as_ref())?;
    if !report.validation.valid {
        let reasons: Vec<String> = report
            .validation
            .checks
            .iter()
            .filter(|c| c.required && !c.passed)
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect();
        return Err(InputError::Validation(reasons.join("; ")));
    }
    Ok(report.exit_code(strict) as u8)
}

fn run(cli: Cli) -> Result<u8, InputError> {
    match cli.command {
        Command::Validate { input, out } => {
            let (spec, jet, notes) = load(&input)?;
            let report = build_report(&spec, jet.as_ref(), &notes, &ReportRequest::default())?;
            finish(&report, &out, false)
        }
        Command::Compute { input, out } => {
            let (spec, jet, notes) = load(&input)?;
            let req = ReportRequest {
                tables: true,
                ..Default::default()
            };
            finish(&build_report(&spec, jet.as_ref(), &notes, &req)?, &out, false)
        }
        Command::Probe {
            input,
            out,
            suite,
            ids,
            strict,
        } => {
            let (spec, jet, notes) = load(&input)?;
            let probes = if ids.is_empty() {
                suite.ids()
            } else {
                ids.iter()
                    .map(|s| s.parse::<ProbeId>())
                    .collect::<Result<Vec<_>, _>>()?
            };
            let req = ReportRequest {
                probes,
                ..Default::default()
            };
            finish(&build_report(&spec, jet.as_ref(), &notes, &req)?, &out, strict)
        }
        Command::Soliton {
            input,
            out,
            kind,
            lambda,
            m,
            jet,
            strict,
        } => {
            let (spec, file_jet, notes) = load(&input)?;
            let lambda: Rat = lambda.parse()?;
            let jet = match (jet, file_jet) {
                (Some(path), _) => parse_jet(&path, &spec.frame)?,
                (None, Some(j)) => j,
                (None, None) => ScalarJet::zero(spec.dim()),
            };
            let problem = SolitonProblem::new(kind, lambda, m, jet.clone())?;
            let req = ReportRequest {
                soliton: Some(problem),
                ..Default::default()
            };
            finish(&build_report(&spec, Some(&jet), &notes, &req)?, &out, strict)
        }
        Command::Fuzz {
            out,
            seed,
            count,
            parallel,
            pool,
            strict,
        } => {
            let pool = match pool {
                Some(p) => parse_vector(&p)?,
                None => default_pool(),
            };
            let cfg = FuzzConfig {
                count,
                seed,
                pool,
                require_parallel_xi: parallel,
            };
            let report = fuzz(&cfg)?;
            let text = match out.format {
                OutputFormat::Json => report.to_json(),
                OutputFormat::Text => report.to_text(),
            };
            write_out(&text, out.output.as_ref())?;
            Ok(report.exit_code(strict) as u8)
        }
        Command::Builtin { name, list, output } => {
            if list || name.is_none() {
                write_out(&format!("{}\n", NAMES.join("\n")), output.as_ref())?;
                return Ok(0);
            }
            let spec = builtin(name.as_deref().unwrap_or_default())?;
            write_out(&emit_geometry(&spec, None), output.as_ref())?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
