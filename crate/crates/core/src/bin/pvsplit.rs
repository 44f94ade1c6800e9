use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use pvsplit::report::{self, GenSpec, Options};
use pvsplit::{Exec, Program};

#[derive(Parser)]
#[command(name = "pvsplit", version, about = "Split PV programs into independent groups of processes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the state space of one program and its decomposition.
    Analyze(AnalyzeArgs),
    /// Time the analysis of generated benchmark programs.
    Bench(BenchArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Program file.
    #[arg(required_unless_present = "gen", conflicts_with = "gen")]
    path: Option<PathBuf>,
    /// Generated program: sigma:<n1>,..,<nk>, sigma-prime:<n1>,..,<nk> or philosophers:<n>.
    #[arg(long = "gen", value_name = "FAMILY:ARGS")]
    gen: Option<String>,
    /// Print the maximal cubes of the state space (and of each factor).
    #[arg(long)]
    model: bool,
    /// Print the decomposition (on by default).
    #[arg(long, overrides_with = "no_decompose")]
    decompose: bool,
    /// Skip the decomposition.
    #[arg(long)]
    no_decompose: bool,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Cross-check against the brute-force grid oracle (at most 5 processes).
    #[arg(long)]
    oracle_check: bool,
    /// Append per-phase wall-clock timings to the text output.
    #[arg(long)]
    timings: bool,
    /// Run every phase on the calling thread.
    #[arg(long)]
    sequential: bool,
}

#[derive(Args)]
struct BenchArgs {
    /// Generators to run; defaults to the standard table.
    specs: Vec<String>,
    /// Run every phase on the calling thread.
    #[arg(long)]
    sequential: bool,
}

fn exec(sequential: bool) -> Exec {
    if sequential {
        Exec::Sequential
    } else {
        Exec::default()
    }
}

fn load(args: &AnalyzeArgs) -> Result<Program, String> {
    if let Some(spec) = &args.gen {
        let spec: GenSpec = spec.parse().map_err(|e| format!("{e}"))?;
        return spec.program().map_err(|e| format!("{spec}: {e}"));
    }
    let path = args.path.as_ref().expect("clap requires a path without --gen");
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Program::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn analyze(args: AnalyzeArgs) -> ExitCode {
    let program = match load(&args) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let options = Options {
        model: args.model,
        decompose: args.decompose || !args.no_decompose,
        json: args.json,
        oracle_check: args.oracle_check,
        timings: args.timings,
        exec: exec(args.sequential),
    };
    match report::analyze(&program, &options) {
        Ok(r) => {
            if options.json {
                print!("{}", report::render_json(&r));
            } else {
                print!("{}", report::render_text(&r, &options));
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn bench(args: BenchArgs) -> ExitCode {
    let specs: Vec<GenSpec> = if args.specs.is_empty() {
        report::default_bench_specs()
    } else {
        match args.specs.iter().map(|s| s.parse()).collect::<Result<_, _>>() {
            Ok(v) => v,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
        }
    };
    let exec = exec(args.sequential);
    let mut rows = Vec::new();
    for spec in &specs {
        match report::bench_row(spec, exec) {
            Ok(row) => rows.push(row),
            Err(e) => {
                eprintln!("error: {spec}: {e}");
                return ExitCode::from(1);
            }
        }
    }
    print!("{}", report::render_bench_table(&rows));
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Analyze(args) => analyze(args),
        Command::Bench(args) => bench(args),
    }
}
