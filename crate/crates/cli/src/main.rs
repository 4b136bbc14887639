use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use regtype::engine::{analyze, input_state, Config, Report};
use regtype::syntax::{parse_program, parse_rules, parse_typings};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Goal-dependent type analysis of a Prolog program.
#[derive(Debug, Parser)]
#[command(name = "regtype", version)]
struct Args {
    /// Type rule file.
    #[arg(long)]
    rules: PathBuf,
    /// Types of query variables, e.g. `X:list(atom or float), Y:nat`.
    #[arg(long, default_value = "")]
    input: String,
    /// Extra depth added to a point's first state before widening.
    #[arg(long, default_value_t = 1)]
    k0: usize,
    /// Disable memoisation of emptiness checks.
    #[arg(long)]
    no_tabling: bool,
    /// Use types without `or`/`and` and one typing per point.
    #[arg(long)]
    simplified: bool,
    /// Print emptiness-check statistics after the annotated program.
    #[arg(long)]
    stats: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Program file with exactly one query.
    program: PathBuf,
}

/// Exit status 2 for unreadable input text, 1 for everything else.
enum Failure {
    Input(String),
    Analysis(String),
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Analysis(format!("{}: {e}", path.display())))
}

fn in_file<T>(path: &Path, r: regtype::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn run(args: &Args) -> Result<String, Failure> {
    let rules = in_file(&args.rules, parse_rules(&read(&args.rules)?))?;
    let prog = in_file(&args.program, parse_program(&read(&args.program)?))?;
    let typings = parse_typings(&args.input).map_err(|e| Failure::Input(format!("--input: {e}")))?;
    let analysis_err = |e: regtype::Error| Failure::Analysis(e.to_string());
    let input = input_state(&prog, &typings, &rules).map_err(analysis_err)?;
    let config = Config { k0: args.k0, tabling: !args.no_tabling, simplified: args.simplified };
    let analysis = analyze(&prog, &rules, &input, config).map_err(analysis_err)?;
    let report = Report::new(&prog, &analysis, &input);
    Ok(match args.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(&prog, args.stats),
    })
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(&args) {
        Ok(out) => {
            // A closed pipe is not an error for the analysis.
            let _ = writeln!(std::io::stdout(), "{}", out.trim_end());
            ExitCode::SUCCESS
        }
        Err(Failure::Analysis(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
