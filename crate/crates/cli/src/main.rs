use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use probquant::axioms::{CheckConfig, Suite};
use probquant::Strategy;
use probquant_cli::bench::{self, BenchConfig};
use probquant_cli::failure::Failure;

#[derive(Parser)]
#[command(name = "probquant", version, about = "Evaluate fuzzy quantified sentences")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a problem file.
    Evaluate {
        file: PathBuf,
        /// auto, exact, dp or limit; overrides the file's strategy
        #[arg(long)]
        strategy: Option<Strategy>,
        #[arg(long)]
        json: bool,
        /// Worker threads for the exact evaluator
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Cross-validate exact against DP and limit evaluators; writes CSV with
    /// columns m, evaluator, mean_elapsed, max_abs_diff.
    Bench {
        /// Universe sizes, `A:B` inclusive or a single size
        #[arg(long, default_value = "1:10", value_parser = bench::parse_range)]
        m_range: (usize, usize),
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the CSV here instead of standard output
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the axiom and property checks.
    Check {
        /// all, Z or P
        #[arg(long, default_value = "all")]
        suite: Suite,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random probes per check
        #[arg(long, default_value_t = 50)]
        probes: usize,
    },
    /// Quantify over a sampled signal.
    Temporal {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Quantify over a population given by samples or a seeded sampler.
    Population {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    let out = match cli.command {
        Command::Evaluate {
            file,
            strategy,
            json,
            threads,
        } => probquant_cli::cmd_evaluate(&file, strategy, json, threads.max(1))?,
        Command::Bench {
            m_range: (m_min, m_max),
            trials,
            seed,
            output,
        } => {
            let rows = bench::run(&BenchConfig {
                m_min,
                m_max,
                trials,
                seed,
            })?;
            match output {
                Some(path) => bench::write_csv(&rows, std::fs::File::create(path)?)?,
                None => bench::write_csv(&rows, std::io::stdout().lock())?,
            }
            return Ok(ExitCode::SUCCESS);
        }
        Command::Check {
            suite,
            json,
            seed,
            probes,
        } => {
            let config = CheckConfig {
                seed,
                probes,
                ..CheckConfig::default()
            };
            let (text, passed) = probquant_cli::cmd_check(suite, &config, json)?;
            print!("{text}");
            return Ok(if passed { ExitCode::SUCCESS } else { ExitCode::FAILURE });
        }
        Command::Temporal { file, json } => probquant_cli::cmd_temporal(&file, json)?,
        Command::Population { file, json } => probquant_cli::cmd_population(&file, json)?,
    };
    let mut stdout = std::io::stdout().lock();
    stdout.write_all(out.as_bytes())?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code)
        }
    }
}
