use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qmean::estimators::Readout;
use qmean::harness::{emit_csv, emit_failures, fit_scaling, read_csv, run_demo, run_sweep, SweepConfig};

#[derive(Parser)]
#[command(name = "qmean", version, about = "Quantum mean estimation and counting on a simulated statevector")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an estimator × integrand × accuracy × seed sweep and write CSV.
    Sweep {
        config: PathBuf,
        /// Output CSV (overrides `output` in the config).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        seed_base: Option<u64>,
        /// Read probabilities exactly instead of sampling.
        #[arg(long)]
        exact: bool,
    },
    /// Fit the query/accuracy power law of one method in a sweep CSV.
    Fit {
        csv: PathBuf,
        #[arg(long)]
        method: String,
    },
    /// Run every method on the built-in integrands at ε = 2⁻⁶.
    Demo {
        #[arg(long, default_value_t = 0)]
        seed_base: u64,
        #[arg(long)]
        exact: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Sweep {
            config,
            out,
            seed_base,
            exact,
        } => sweep(config, out, seed_base, exact),
        Command::Fit { csv, method } => {
            let fit = read_csv(&csv).and_then(|recs| fit_scaling(&recs, &method));
            match fit {
                Ok(f) => {
                    println!("method     {method}");
                    println!("points     {}", f.points.len());
                    println!("slope      {:.4}", f.slope);
                    println!("intercept  {:.4}", f.intercept);
                    println!("r2         {:.4}", f.r_squared);
                    ExitCode::SUCCESS
                }
                Err(e) => {
                    eprintln!("qmean: {e}");
                    ExitCode::from(1)
                }
            }
        }
        Command::Demo { seed_base, exact } => match run_demo(seed_base, exact) {
            Ok((outcome, table)) => {
                print!("{table}");
                if outcome.failures.is_empty() {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(2)
                }
            }
            Err(e) => {
                eprintln!("qmean: {e}");
                ExitCode::from(1)
            }
        },
    }
}

fn sweep(config: PathBuf, out: Option<PathBuf>, seed_base: Option<u64>, exact: bool) -> ExitCode {
    let mut cfg = match SweepConfig::load(&config) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("qmean: {e}");
            return ExitCode::from(1);
        }
    };
    if let Some(base) = seed_base {
        cfg.seed_base = base;
    }
    if exact {
        cfg.settings.readout = Readout::Exact;
    }
    let Some(path) = out.or_else(|| cfg.output.clone()) else {
        eprintln!("qmean: no output path (use --out or set `output` in [sweep])");
        return ExitCode::from(1);
    };

    let outcome = match run_sweep(&cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("qmean: {e}");
            return ExitCode::from(1);
        }
    };
    if let Err(e) = emit_csv(&outcome.records, &path) {
        eprintln!("qmean: {e}");
        return ExitCode::from(1);
    }
    let mut log = path.clone().into_os_string();
    log.push(".errors.log");
    let log = PathBuf::from(log);
    if outcome.failures.is_empty() {
        let _ = std::fs::remove_file(&log);
        eprintln!("{} records -> {}", outcome.records.len(), path.display());
        ExitCode::SUCCESS
    } else {
        if let Err(e) = emit_failures(&outcome.failures, &log) {
            eprintln!("qmean: {e}");
        }
        eprintln!(
            "{} records -> {}, {} failed cells -> {}",
            outcome.records.len(),
            path.display(),
            outcome.failures.len(),
            log.display()
        );
        ExitCode::from(2)
    }
}
