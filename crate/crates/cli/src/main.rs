mod commands;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use parmod_core::Engine;

#[derive(Parser, Debug)]
#[command(name = "parmod", version, about = "Parametric modular answer set programs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List the subprograms of a program file.
    Parse(Common),
    /// Print the program the control file selects.
    Instantiate(Common),
    /// Print all answer sets.
    Solve(Common),
    /// Check whether the modular reading is coherent.
    CheckCoherence(Common),
    /// Compare modular answer sets with those of the union program.
    Compare(Common),
    /// Decide whether the atoms given with --model form an answer set.
    CheckModel(Common),
}

#[derive(clap::Args, Debug, Clone)]
pub struct Common {
    /// Program file.
    pub program: PathBuf,
    /// Control file; without one only `base` is used.
    #[arg(long)]
    pub control: Option<PathBuf>,
    /// Constant override, as in `-c n=100`. Shadows `const` lines.
    #[arg(short = 'c', value_name = "NAME=INT", value_parser = parse_override)]
    pub consts: Vec<(String, i64)>,
    #[arg(long, value_enum, default_value_t = Mode::Union)]
    pub mode: Mode,
    #[arg(long, value_parser = parse_engine, default_value = "reduct")]
    pub engine: Engine,
    #[arg(long, value_enum, default_value_t = Output::Text)]
    pub output: Output,
    /// Largest atom set the brute engine enumerates.
    #[arg(long, default_value_t = parmod_core::engine::DEFAULT_CAP)]
    pub cap: usize,
    /// Atoms of the candidate interpretation, separated by spaces.
    #[arg(long)]
    pub model: Option<String>,
}

impl Common {
    pub fn overrides(&self) -> BTreeMap<String, i64> {
        self.consts.iter().cloned().collect()
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Union,
    Modular,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Output {
    Text,
    Machine,
}

fn parse_override(s: &str) -> Result<(String, i64), String> {
    let (name, value) = s.split_once('=').ok_or("expected NAME=INT")?;
    let value = value
        .trim()
        .parse()
        .map_err(|_| format!("`{value}` is not an integer"))?;
    Ok((name.trim().to_string(), value))
}

fn parse_engine(s: &str) -> Result<Engine, String> {
    s.parse()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli.command) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            if !outcome.stderr.is_empty() {
                eprint!("{}", outcome.stderr);
            }
            ExitCode::from(outcome.code)
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            let capacity = err
                .downcast_ref::<parmod_core::Error>()
                .is_some_and(parmod_core::Error::is_capacity);
            ExitCode::from(if capacity { 3 } else { 2 })
        }
    }
}
