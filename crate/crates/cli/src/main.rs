use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fieldcheck::verify::SuiteParams;
use fieldcheck_cli::{explain, mismatches, render, run, Format, RunConfig, Scenario};

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

/// Exact checks of field-algebra axioms on truncated windows.
#[derive(Parser)]
#[command(name = "fieldcheck", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario and compare every verdict with its expected value.
    Run(RunArgs),
    /// Print the statement a check asserts.
    Explain {
        /// Check name, with or without arguments.
        name: String,
    },
}

#[derive(clap::Args)]
struct RunArgs {
    #[arg(long, value_enum, default_value = "all")]
    scenario: Scenario,
    /// Fock degree cap D.
    #[arg(long, default_value_t = SuiteParams::default().degree)]
    degree: usize,
    /// Mode window W.
    #[arg(long, default_value_t = SuiteParams::default().window as u32)]
    window: u32,
    /// Largest (z - w)^N tried in associativity and locality.
    #[arg(long, default_value_t = SuiteParams::default().n_max as u32)]
    assoc_n_max: u32,
    /// Test-state depth.
    #[arg(long, default_value_t = SuiteParams::default().depth)]
    depth: usize,
    /// Seed for the uniqueness perturbations.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the report to this file instead of stdout.
    #[arg(long, conflicts_with = "out_dir")]
    out: Option<PathBuf>,
    /// Write the report to `<scenario>.json` or `<scenario>.txt` here.
    #[arg(long, env = "FIELDCHECK_OUT_DIR")]
    out_dir: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match cli.command {
        Command::Explain { name } => match explain(&name) {
            Ok(text) => {
                println!("{name}\n\n{text}");
                ExitCode::SUCCESS
            }
            Err(suggestions) => {
                eprintln!("unknown check `{name}`; did you mean: {}?", suggestions.join(", "));
                ExitCode::from(EXIT_USAGE)
            }
        },
        Command::Run(args) => run_command(args),
    }
}

fn run_command(args: RunArgs) -> ExitCode {
    let config = RunConfig {
        scenario: args.scenario,
        params: SuiteParams {
            degree: args.degree,
            window: args.window as i64,
            n_max: args.assoc_n_max as i64,
            depth: args.depth,
        },
        seed: args.seed,
    };
    let reports = run(&config);
    let text = render(&reports, args.format);

    let target = args.out.or_else(|| {
        args.out_dir.map(|dir| {
            let ext = match args.format {
                Format::Json => "json",
                Format::Text => "txt",
            };
            dir.join(format!("{}.{ext}", args.scenario.name()))
        })
    });
    match target {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, &text) {
                eprintln!("cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_IO);
            }
        }
        None => print!("{text}"),
    }

    let missed = mismatches(&reports);
    for m in &missed {
        let algebra = m.algebra.as_deref().unwrap_or("-");
        eprintln!(
            "{}: {} on {algebra}: expected {}, got {}",
            m.suite, m.check, m.expected, m.actual
        );
    }
    if missed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_MISMATCH)
    }
}
