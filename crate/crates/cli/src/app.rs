//! Top-level driver: argument parsing, field dispatch, execution and rendering.

use std::path::Path;

use clap::Parser;
use ppz_core::{Field, PrimeField, Rationals};
use rayon::prelude::*;

use crate::commands::{prepare, Command, ExecError, FieldSpec, Job};
use crate::report::{overall, render_json, render_text, RunHeader, Status};
use crate::scenario::{parse_scenario, ScenarioLine};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "ppz", version, about = "pp-formulas, tower rings, ray tubes and Ziegler spectra over finite fields and Q")]
pub struct Cli {
    /// Ground field: a prime p or `rational` (default 2; overrides a scenario's `field`).
    #[arg(long, global = true, value_name = "p|rational")]
    pub field: Option<FieldSpec>,
    /// Seed for all randomized sampling (default 0; overrides a scenario's `seed`).
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Run independent scenario commands in parallel; output keeps declaration order.
    #[arg(long, global = true)]
    pub parallel: bool,
    /// Emit JSON instead of tab-separated tables.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

/// Exit code and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(msg: String) -> Self {
        Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: msg }
    }
}

/// A command to execute plus where it came from, for error positions.
struct Entry<'a> {
    text: String,
    command: Command,
    origin: Option<(&'a Path, &'a ScenarioLine)>,
}

fn quote(arg: &str) -> String {
    if !arg.is_empty() && !arg.contains(|c: char| c.is_whitespace() || c == '"' || c == '\'' || c == '#') {
        arg.to_string()
    } else {
        format!("\"{}\"", arg.replace('\\', "\\\\").replace('"', "\\\""))
    }
}

/// The command words of `args`, without the program name and the global flags.
fn command_text(args: &[String]) -> String {
    let mut out = Vec::new();
    let mut rest = args.iter().skip(1);
    while let Some(a) = rest.next() {
        match a.as_str() {
            "--parallel" | "--json" => {}
            "--field" | "--seed" => {
                rest.next();
            }
            _ if a.starts_with("--field=") || a.starts_with("--seed=") => {}
            _ => out.push(quote(a)),
        }
    }
    out.join(" ")
}

/// Runs the tool on `args` (including the program name) and returns what it would print.
pub fn run_cli<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() { Outcome::usage(text) } else { Outcome { code: EXIT_PASS, stdout: text, stderr: String::new() } };
        }
    };
    match &cli.command {
        Command::Run { file } => {
            let source = match std::fs::read_to_string(file) {
                Ok(s) => s,
                Err(e) => return Outcome::usage(format!("error: cannot read {}: {e}\n", file.display())),
            };
            let scenario = match parse_scenario(&source) {
                Ok(s) => s,
                Err(e) => return Outcome::usage(format!("{}:{}:{}: {}\n", file.display(), e.line, e.col, e.msg)),
            };
            let field = cli.field.or(scenario.field).unwrap_or(FieldSpec::Prime(2));
            let seed = cli.seed.or(scenario.seed).unwrap_or(0);
            let entries = scenario
                .commands
                .iter()
                .map(|l| Entry { text: l.text.clone(), command: l.command.clone(), origin: Some((file.as_path(), l)) })
                .collect();
            dispatch(field, seed, &cli, entries)
        }
        command => {
            let text = command_text(&args);
            let entries = vec![Entry { text, command: command.clone(), origin: None }];
            dispatch(cli.field.unwrap_or(FieldSpec::Prime(2)), cli.seed.unwrap_or(0), &cli, entries)
        }
    }
}

fn dispatch(field: FieldSpec, seed: u64, cli: &Cli, entries: Vec<Entry<'_>>) -> Outcome {
    match field {
        FieldSpec::Prime(p) => match PrimeField::new(p) {
            Ok(f) => execute(f, seed, cli, entries),
            Err(e) => Outcome::usage(format!("error: {e}\n")),
        },
        FieldSpec::Rational => execute(Rationals, seed, cli, entries),
    }
}

fn locate(entry: &Entry<'_>, err: &ExecError) -> String {
    match entry.origin {
        Some((file, line)) => {
            let e = line.locate(err);
            format!("{}:{}:{}: {}\n", file.display(), e.line, e.col, e.msg)
        }
        None => format!("error: {err}\n"),
    }
}

fn execute<F: Field>(f: F, seed: u64, cli: &Cli, entries: Vec<Entry<'_>>) -> Outcome {
    let mut jobs: Vec<Job<F>> = Vec::with_capacity(entries.len());
    for entry in &entries {
        match prepare(f, &entry.command, &entry.text) {
            Ok(job) => jobs.push(job),
            Err(e) => return Outcome::usage(locate(entry, &e)),
        }
    }
    let per_job: Vec<Vec<_>> = if cli.parallel {
        jobs.par_iter().map(|j| j.run(f, seed)).collect()
    } else {
        jobs.iter().map(|j| j.run(f, seed)).collect()
    };
    let reports: Vec<_> = per_job.into_iter().flatten().collect();
    let header = RunHeader::new(f.name(), seed);
    let stdout = if cli.json { render_json(&header, &reports) } else { render_text(&header, &reports) };
    let code = if overall(&reports) == Status::Pass { EXIT_PASS } else { EXIT_FAIL };
    Outcome { code, stdout, stderr: String::new() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quoting() {
        assert_eq!(quote("x1*a"), "x1*a");
        assert_eq!(quote("x1*a = 0"), "\"x1*a = 0\"");
        assert_eq!(quote(""), "\"\"");
    }

    #[test]
    fn command_text_drops_global_flags() {
        let args: Vec<String> = ["ppz", "--field", "3", "suite", "mesh", "--json", "--seed=4"].iter().map(|s| s.to_string()).collect();
        assert_eq!(command_text(&args), "suite mesh");
    }

    #[test]
    fn help_exits_zero_and_bad_flags_exit_two() {
        assert_eq!(run_cli(["ppz", "--help"]).code, EXIT_PASS);
        assert_eq!(run_cli(["ppz", "classify", "--bogus"]).code, EXIT_USAGE);
        assert_eq!(run_cli(["ppz", "--field", "4", "suite", "ziegler"]).code, EXIT_USAGE);
    }
}
