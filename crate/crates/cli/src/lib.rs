//! Argument handling and dispatch for the `wigner-ghz` binary.
//!
//! Exit codes: 0 when the report verdict is PASS, 1 when it is FAIL, 2 for
//! usage and parse errors.

use std::path::PathBuf;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use wigner_ghz::parity::{analyze, parse_constraints, ConstraintSystem};
use wigner_ghz::protocols::{
    run_cdr, run_cdr_all, run_lmz, GhzSign, ScenarioConfig, DEFAULT_TOLERANCE,
};
use wigner_ghz::report::{
    analysis_text, cdr_summary_text, scenario_text, verify_text, ReportDocument,
};
use wigner_ghz::verify::verify_all;
use wigner_ghz::Error;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "wigner-ghz",
    version,
    about = "Sequential observer scenarios on a GHZ state"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a scenario and certify its constraints.
    Run {
        #[command(subcommand)]
        scenario: Scenario,
    },
    /// Decide whether a set of +-1 product constraints has a solution.
    CheckAssignments(CheckArgs),
    /// Run every acceptance check and print a summary table.
    Verify(VerifyArgs),
}

#[derive(Subcommand, Debug)]
enum Scenario {
    /// One experiment: Alice and Bob each premeasure three qubits.
    Lmz {
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Four experiments in which Bob first reverses Alice's interaction.
    Cdr {
        /// 1, 2, 3, 4 or all.
        #[arg(long, value_parser = ["1", "2", "3", "4", "all"])]
        experiment: String,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args, Debug)]
struct RunArgs {
    #[arg(long, default_value_t = 0)]
    shots: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tolerance: f64,
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Include wall-clock timing; reports are no longer byte-identical.
    #[arg(long)]
    timing: bool,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false, id = "source")]
struct CheckSource {
    /// Constraint file, one `B1*A2*A3 = -1` per line.
    #[arg(long)]
    constraints: Option<PathBuf>,
    #[arg(long, value_enum)]
    builtin: Option<Builtin>,
}

#[derive(Args, Debug)]
struct CheckArgs {
    #[command(flatten)]
    source: CheckSource,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, required = true)]
    all: bool,
    /// Test fixture: prepare the GHZ state with the wrong relative sign.
    #[arg(long, value_enum, default_value_t = SignArg::Plus, hide = true)]
    ghz_sign: SignArg,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Builtin {
    Ghz,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SignArg {
    Plus,
    Minus,
}

/// What the process should print and return.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(message: String) -> Self {
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: message,
        }
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Usage(_) | Error::Parse { .. } | Error::Argument(_) => EXIT_USAGE,
        _ => EXIT_FAIL,
    }
}

struct Rendered {
    doc: ReportDocument,
    text: String,
}

fn scenario_config(run: &RunArgs, experiment: Option<u8>) -> ScenarioConfig {
    let base = match experiment {
        Some(m) => ScenarioConfig::cdr(m),
        None => ScenarioConfig::lmz(),
    };
    ScenarioConfig {
        tolerance: run.tolerance,
        ..base.with_shots(run.shots, run.seed)
    }
}

fn execute(command: &Command, echo: &str) -> wigner_ghz::Result<Rendered> {
    match command {
        Command::Run {
            scenario: Scenario::Lmz { run, .. },
        } => {
            let cfg = scenario_config(run, None);
            let report = run_lmz(&cfg)?;
            Ok(Rendered {
                doc: ReportDocument::new(echo, &cfg, &report, report.passed())?,
                text: scenario_text(&report),
            })
        }
        Command::Run {
            scenario: Scenario::Cdr {
                experiment, run, ..
            },
        } => {
            if experiment == "all" {
                let cfg = scenario_config(run, Some(1));
                let summary = run_cdr_all(&cfg)?;
                let config = json!({
                    "experiments": "all",
                    "shots": cfg.shots,
                    "master_seed": cfg.master_seed,
                    "tolerance": cfg.tolerance,
                });
                Ok(Rendered {
                    doc: ReportDocument::new(echo, &config, &summary, summary.passed)?,
                    text: cdr_summary_text(&summary),
                })
            } else {
                let m: u8 = experiment
                    .parse()
                    .map_err(|_| Error::Usage(format!("bad experiment {experiment}")))?;
                let cfg = scenario_config(run, Some(m));
                let report = run_cdr(&cfg)?;
                Ok(Rendered {
                    doc: ReportDocument::new(echo, &cfg, &report, report.passed())?,
                    text: scenario_text(&report),
                })
            }
        }
        Command::CheckAssignments(args) => {
            let (system, source) = match (&args.source.constraints, args.source.builtin) {
                (Some(path), _) => {
                    let text = std::fs::read_to_string(path).map_err(|e| {
                        Error::Usage(format!("cannot read {}: {e}", path.display()))
                    })?;
                    (parse_constraints(&text)?, path.display().to_string())
                }
                (None, _) => (ConstraintSystem::ghz(), "builtin ghz".to_string()),
            };
            let analysis = analyze(&system)?;
            Ok(Rendered {
                doc: ReportDocument::new(echo, &json!({ "source": source }), &analysis, true)?,
                text: analysis_text(&analysis),
            })
        }
        Command::Verify(args) => {
            let sign = match args.ghz_sign {
                SignArg::Plus => GhzSign::Plus,
                SignArg::Minus => GhzSign::Minus,
            };
            let report = verify_all(sign)?;
            Ok(Rendered {
                doc: ReportDocument::new(
                    echo,
                    &json!({ "all": true, "ghz_sign": sign }),
                    &report,
                    report.passed,
                )?,
                text: verify_text(&report),
            })
        }
    }
}

fn output_args(command: &Command) -> &OutputArgs {
    match command {
        Command::Run {
            scenario: Scenario::Lmz { output, .. } | Scenario::Cdr { output, .. },
        } => output,
        Command::CheckAssignments(a) => &a.output,
        Command::Verify(a) => &a.output,
    }
}

/// Parses `args` (without the program name) and runs the command. Nothing is
/// printed; `--out` is written here.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(
        std::iter::once("wigner-ghz".to_string()).chain(args.iter().cloned()),
    ) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: EXIT_PASS,
                    stdout: rendered,
                    stderr: String::new(),
                },
                _ => Outcome::usage(rendered),
            };
        }
    };
    let output = output_args(&cli.command);
    let echo = args.join(" ");
    let start = Instant::now();
    let rendered = match execute(&cli.command, &echo) {
        Ok(r) => r,
        Err(e) => {
            return Outcome {
                code: exit_code(&e),
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            }
        }
    };
    let mut doc = rendered.doc;
    if output.timing {
        doc = doc.with_timing(start.elapsed().as_secs_f64());
    }
    let code = match doc.verdict {
        wigner_ghz::report::Verdict::Pass => EXIT_PASS,
        wigner_ghz::report::Verdict::Fail => EXIT_FAIL,
    };
    let body = match output.format {
        Format::Json => match doc.to_canonical_json() {
            Ok(s) => s,
            Err(e) => {
                return Outcome {
                    code: EXIT_FAIL,
                    stdout: String::new(),
                    stderr: format!("error: {e}\n"),
                }
            }
        },
        Format::Text => {
            let mut text = rendered.text;
            if let Some(t) = &doc.timing {
                text.push_str(&format!("elapsed {:.3} s\n", t.elapsed_seconds));
            }
            text.push_str(&format!("verdict {}\n", doc.verdict.as_str()));
            text
        }
    };
    match &output.out {
        Some(path) => match std::fs::write(path, &body) {
            Ok(()) => Outcome {
                code,
                ..Outcome::default()
            },
            Err(e) => Outcome::usage(format!("error: cannot write {}: {e}\n", path.display())),
        },
        None => Outcome {
            code,
            stdout: body,
            stderr: String::new(),
        },
    }
}
