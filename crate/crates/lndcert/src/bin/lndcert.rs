//! Command-line front end: run check files, expand and run the built-in
//! examples, compute the triangular-model generators, and print exponential
//! images.
//!
//! Exit codes: 0 all checks pass, 1 any failure, 2 inconclusive results
//! only, 3 usage or parse error.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use lndcert::dsl;
use lndcert::ideals::GbConfig;
use lndcert::maubach::maubach_generators;
use lndcert::registry;
use lndcert::report::{CheckStatus, Report};
use lndcert::runner::{run, RunOptions};

#[derive(Parser)]
#[command(
    name = "lndcert",
    version,
    about = "Exact certificates for invariant rings of additive-group actions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunFlags {
    /// Write the JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Ceiling for the minimal-power search in localized membership.
    #[arg(long, default_value_t = 8)]
    nmax: u32,
    /// Step ceiling for basis computations.
    #[arg(long, default_value_t = 20_000_000)]
    gb_steps: u64,
}

impl RunFlags {
    fn options(&self) -> RunOptions {
        RunOptions {
            n_max: self.nmax,
            gb: GbConfig {
                max_steps: self.gb_steps,
            },
            nilpotency_bound: 16,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Parse and run a check file.
    Check {
        file: PathBuf,
        #[command(flatten)]
        flags: RunFlags,
    },
    /// Run a built-in example (df5, roberts, f6, new7, maubach).
    Example {
        name: String,
        /// Integer parameter, repeatable: --param m=2 --param b=1.
        #[arg(long = "param", value_name = "KEY=VALUE")]
        params: Vec<String>,
        /// Write the expanded check file instead of running it.
        #[arg(long)]
        emit_file: bool,
        #[command(flatten)]
        flags: RunFlags,
    },
    /// Compute the triangular-model kernel generators for one b.
    Maubach {
        #[arg(long)]
        b: u32,
        /// Write the JSON result here as well as to stdout.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Print the exponential image of a polynomial under a derivation.
    Theta {
        /// Comma-separated variable names, e.g. "x, s, t, u, v".
        #[arg(long)]
        ring: String,
        /// Derivation body, e.g. "{ s -> x^3, t -> s }".
        #[arg(long)]
        derivation: String,
        /// The polynomial to map.
        #[arg(long)]
        of: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(3)
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, String> {
    match cli.command {
        Command::Check { file, flags } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| format!("cannot read {}: {e}", file.display()))?;
            let cf = dsl::parse(&text).map_err(|e| format!("{}: {e}", file.display()))?;
            let report = run(&cf, &text, &flags.options());
            finish(report, &flags)
        }
        Command::Example {
            name,
            params,
            emit_file,
            flags,
        } => {
            let params = parse_params(&params)?;
            let text = registry::builtin_text(&name, &params)?;
            if emit_file {
                let filename = corpus_filename(&name, &params);
                std::fs::write(&filename, &text)
                    .map_err(|e| format!("cannot write {filename}: {e}"))?;
                println!("wrote {filename}");
                return Ok(ExitCode::SUCCESS);
            }
            let cf = dsl::parse(&text).map_err(|e| format!("internal: {e}"))?;
            let report = run(&cf, &text, &flags.options());
            finish(report, &flags)
        }
        Command::Maubach { b, report } => {
            if b < 1 {
                return Err("b must be at least 1".into());
            }
            let result = maubach_generators(b).map_err(|e| e.to_string())?;
            let json = serde_json::to_string_pretty(&result).expect("serializes");
            println!("{json}");
            if let Some(path) = report {
                std::fs::write(&path, &json)
                    .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            }
            let ok = result.checks.theta_w_matches_closed_form
                && result.checks.generators_match_printed_formulas
                && result.checks.residue_identity
                && result.checks.h_doubleprime_in_kernel
                && result.checks.n_at_most_2b
                && result.checks.n_maximal;
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Theta {
            ring,
            derivation,
            of,
        } => {
            let vars: Vec<String> = ring
                .split(',')
                .map(|v| v.trim().to_string())
                .filter(|v| !v.is_empty())
                .collect();
            if vars.is_empty() {
                return Err("ring needs at least one variable".into());
            }
            let text = format!(
                "ring R vars {}\nderivation D on R {}\n",
                vars.join(", "),
                derivation.trim()
            );
            let cf = dsl::parse(&text).map_err(|e| e.to_string())?;
            let d = &cf.derivations["D"];
            let poly = dsl::parse_poly(d.ring(), &of).map_err(|e| e.to_string())?;
            let theta = d.theta(&poly).map_err(|e| e.to_string())?;
            println!("{theta}");
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn parse_params(items: &[String]) -> Result<BTreeMap<String, u32>, String> {
    let mut out = BTreeMap::new();
    for item in items {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| format!("parameter `{item}` is not KEY=VALUE"))?;
        let value: u32 = v
            .trim()
            .parse()
            .map_err(|_| format!("parameter `{item}` needs an integer value"))?;
        out.insert(k.trim().to_string(), value);
    }
    Ok(out)
}

fn corpus_filename(name: &str, params: &BTreeMap<String, u32>) -> String {
    let mut tail = String::new();
    for (k, v) in params {
        tail.push_str(&format!("_{k}{v}"));
    }
    format!("{name}{tail}.lnd")
}

fn finish(report: Report, flags: &RunFlags) -> Result<ExitCode, String> {
    for check in &report.checks {
        let tag = match check.status {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Inconclusive => "inconclusive",
        };
        println!("[{tag}] {}", check.directive);
    }
    println!(
        "{} checks: {} passed, {} failed, {} inconclusive",
        report.summary.total,
        report.summary.passed,
        report.summary.failed,
        report.summary.inconclusive
    );
    if let Some(path) = &flags.report {
        std::fs::write(path, report.to_json())
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    Ok(ExitCode::from(report.exit_code() as u8))
}
