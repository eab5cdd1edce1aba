use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rbccr_cli::config::DataFormat;
use rbccr_cli::resample::ResampleArgs;
use rbccr_cli::CliError;
use rbccr_core::resample::{DEFAULT_ENERGY, DEFAULT_GAMMA, DEFAULT_K_NEIGHBORS};
use rbccr_core::sampling::DEFAULT_CANDIDATES;
use rbccr_core::{LabelColumn, Method, SamplingRegion};

#[derive(Parser)]
#[command(name = "rbccr", version, about = "Radial-based combined cleaning and resampling")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Resample one dataset and write the combined training set as CSV.
    Resample {
        #[arg(long)]
        input: PathBuf,
        /// Defaults to keel for `.dat` files, csv otherwise.
        #[arg(long, value_parser = parse_format)]
        format: Option<DataFormat>,
        /// Class column of CSV input, by name or zero-based index.
        #[arg(long, default_value = "class")]
        label_column: String,
        #[arg(long, default_value = "rb-ccr", value_parser = parse_method)]
        method: Method,
        #[arg(long, default_value_t = DEFAULT_ENERGY)]
        energy: f64,
        #[arg(long, default_value_t = DEFAULT_GAMMA)]
        gamma: f64,
        #[arg(long, default_value = "LEH", value_parser = parse_region)]
        region: SamplingRegion,
        #[arg(long, default_value_t = DEFAULT_CANDIDATES)]
        candidates: usize,
        /// SMOTE neighbourhood size.
        #[arg(long, default_value_t = DEFAULT_K_NEIGHBORS)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; standard output when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Resample in input units instead of standardized space.
        #[arg(long)]
        force_unscaled: bool,
    },
    /// Run the cross-validated benchmark described by a config file.
    Benchmark {
        config: PathBuf,
        /// Worker threads; defaults to the number of cores.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Summarize a records table: means, winner counts, average ranks.
    Report {
        records: PathBuf,
        /// Write summary.csv and pairwise.csv here instead of printing.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn parse_format(s: &str) -> Result<DataFormat, String> {
    s.parse().map_err(|e: CliError| e.to_string())
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: rbccr_core::Error| e.to_string())
}

fn parse_region(s: &str) -> Result<SamplingRegion, String> {
    s.parse().map_err(|e: rbccr_core::Error| e.to_string())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Resample {
            input,
            format,
            label_column,
            method,
            energy,
            gamma,
            region,
            candidates,
            k,
            seed,
            output,
            force_unscaled,
        } => {
            let label_column = match label_column.parse::<usize>() {
                Ok(i) => LabelColumn::Index(i),
                Err(_) => LabelColumn::Name(label_column),
            };
            rbccr_cli::resample::cmd_resample(&ResampleArgs {
                input,
                format,
                label_column,
                method,
                energy,
                gamma,
                region,
                candidates,
                k,
                seed,
                output,
                force_unscaled,
            })
        }
        Command::Benchmark { config, jobs } => {
            let out = rbccr_cli::benchmark::cmd_benchmark(&config, jobs)?;
            for f in &out.failed_datasets {
                eprintln!("skipped {f}");
            }
            eprintln!("records written to {}", out.records.display());
            Ok(())
        }
        Command::Report { records, output } => rbccr_cli::report::cmd_report(&records, output.as_deref()),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
