use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use chainsched::algorithms::Algorithm;
use chainsched::experiments::{format_summary, gap_study, run_experiment, write_csv, ExperimentSpec};
use chainsched::oracle::{optimal_makespan, DEFAULT_BUDGET};
use chainsched::schedule::{check_schedule, lower_bound, metrics, read_schedule, write_schedule};
use chainsched::workload::{
    generate, read_system, write_system, ChainClass, GeneratorConfig, TaskSystem,
};
use chainsched::Error;

#[derive(Parser)]
#[command(name = "chainsched", version, about = "Schedule chains of multiprocessor unit-time tasks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random instance.
    Generate {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        chains: usize,
        #[arg(long)]
        processors: u32,
        #[arg(long, value_parser = parse_class)]
        class: ChainClass,
        #[arg(long)]
        len_min: usize,
        #[arg(long)]
        len_max: usize,
        #[arg(long)]
        req_min: u32,
        #[arg(long)]
        req_max: u32,
        #[arg(long)]
        phase_variation: Option<f64>,
        #[arg(long)]
        splitable: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check an instance file.
    Validate { file: PathBuf },
    /// Print the makespan lower bound of an instance.
    Lb { file: PathBuf },
    /// Check a schedule against its instance.
    ValidateSchedule {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        schedule: PathBuf,
    },
    /// Run one heuristic.
    Schedule {
        #[arg(long)]
        system: PathBuf,
        #[arg(long, value_parser = parse_algorithm)]
        algo: Algorithm,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Append the metrics block.
        #[arg(long)]
        metrics: bool,
    },
    /// Compute the optimal makespan by exhaustive search.
    Oracle {
        #[arg(long)]
        system: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Run a seeded comparison sweep and write a CSV table.
    Compare {
        #[arg(long)]
        spec: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        with_oracle: bool,
        /// Fill the wall_time_ms column (makes the output run-dependent).
        #[arg(long)]
        timing: bool,
    },
}

fn parse_class(s: &str) -> Result<ChainClass, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_algorithm(s: &str) -> Result<Algorithm, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn load_system(path: &Path) -> Result<TaskSystem> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    read_system(&bytes).with_context(|| format!("loading {}", path.display()))
}

fn emit(output: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match output {
        Some(path) => fs::write(path, bytes).with_context(|| format!("writing {}", path.display())),
        None => Ok(std::io::stdout().write_all(bytes)?),
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Generate {
            seed,
            chains,
            processors,
            class,
            len_min,
            len_max,
            req_min,
            req_max,
            phase_variation,
            splitable,
            output,
        } => {
            let config = GeneratorConfig {
                seed,
                num_chains: chains,
                processors,
                chain_class: class,
                min_len: len_min,
                max_len: len_max,
                min_req: req_min,
                max_req: req_max,
                phase_variation,
                splitable,
            };
            let system = generate(&config)?;
            emit(output.as_deref(), &write_system(&system))?;
        }
        Command::Validate { file } => {
            let bytes = fs::read(&file).with_context(|| format!("reading {}", file.display()))?;
            match read_system(&bytes) {
                Ok(_) => println!("ok"),
                Err(Error::InvalidSystem(violations)) => {
                    for v in violations {
                        println!("violation: {v}");
                    }
                    return Ok(ExitCode::FAILURE);
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::Lb { file } => {
            let system = load_system(&file)?;
            println!("{}", lower_bound(&system));
        }
        Command::ValidateSchedule { system, schedule } => {
            let system = load_system(&system)?;
            let bytes = fs::read(&schedule).with_context(|| format!("reading {}", schedule.display()))?;
            let schedule = read_schedule(&bytes)?;
            let violations = check_schedule(&system, &schedule);
            if violations.is_empty() {
                println!("ok");
            } else {
                for v in violations {
                    println!("violation: {v}");
                }
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Schedule {
            system,
            algo,
            output,
            metrics: with_metrics,
        } => {
            let system = load_system(&system)?;
            let schedule = algo.run(&system)?;
            let m = metrics(&system, &schedule)?;
            let bytes = write_schedule(&schedule, with_metrics.then_some(&m));
            emit(output.as_deref(), &bytes)?;
        }
        Command::Oracle { system, budget } => {
            let system = load_system(&system)?;
            match optimal_makespan(&system, budget) {
                Ok(opt) => println!("{opt}"),
                Err(Error::BudgetExceeded { budget }) => {
                    eprintln!("budget exceeded: no optimum within {budget} search nodes");
                    return Ok(ExitCode::from(2));
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::Compare {
            spec,
            output,
            with_oracle,
            timing,
        } => {
            let text = fs::read(&spec).with_context(|| format!("reading {}", spec.display()))?;
            let spec: ExperimentSpec = serde_json::from_slice(&text)
                .map_err(Error::from)
                .with_context(|| format!("loading {}", spec.display()))?;
            let result = if with_oracle {
                gap_study(&spec, spec.oracle_budget.unwrap_or(DEFAULT_BUDGET))?
            } else {
                run_experiment(&spec)?
            };
            let csv = write_csv(&result, with_oracle, timing)?;
            match output {
                Some(path) => {
                    emit(Some(&path), &csv)?;
                    print!("{}", format_summary(&result));
                }
                None => emit(None, &csv)?,
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
