use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use oplax_cli::commands;
use oplax_cli::evolve::{self, EvolveSpec};
use oplax_cli::suite::Fault;
use oplax_cli::{load_algebra, VerificationReport};

#[derive(Parser)]
#[command(
    name = "oplax",
    version,
    about = "Operadic Lax representations of the harmonic oscillator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the classical 3x3 Lax pair on a phase-space grid.
    VerifyClassical {
        #[arg(long, default_value_t = 1.0, value_parser = positive)]
        omega: f64,
        /// Points per axis over q, p in [-5, 5].
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u32).range(1..=1000))]
        grid: u32,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Integrate the deformed multiplication and write a CSV time series.
    Evolve {
        /// Builtin name (so3, heisenberg, sl2) or path to an algebra JSON file.
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value_t = 1.0, value_parser = positive)]
        omega: f64,
        #[arg(long, default_value_t = 2.0, value_parser = positive)]
        p0: f64,
        #[arg(long, value_parser = positive)]
        t_end: f64,
        #[arg(long, default_value_t = 1e-4, value_parser = positive)]
        dt: f64,
        /// Record every n-th RK4 step (the final time is always recorded).
        #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
        record_every: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Re-evaluate the exact columns of an evolve CSV.
    CheckCsv {
        csv: PathBuf,
        #[arg(long, default_value_t = 1.0, value_parser = positive)]
        omega: f64,
        #[arg(long, default_value_t = 1e-12, value_parser = positive)]
        tol: f64,
    },
    /// Print the nine constants fitted to an algebra.
    SolveParams {
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value_t = 2.0, value_parser = positive)]
        p0: f64,
    },
    /// Decide whether an algebra is dynamically rigid.
    Classify {
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value_t = 1.0, value_parser = positive)]
        omega: f64,
        #[arg(long, default_value_t = 2.0, value_parser = positive)]
        p0: f64,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Run every verification check.
    VerifyAll {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, hide = true)]
        inject_fault: Option<FaultArg>,
    },
    /// Write the builtin algebras as JSON files.
    ExportBuiltins {
        #[arg(long)]
        dir: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FaultArg {
    CorruptBuiltin,
}

fn positive(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if x.is_finite() && x > 0.0 {
        Ok(x)
    } else {
        Err(format!("expected a positive number, got {s}"))
    }
}

fn emit(report: &VerificationReport, path: Option<&PathBuf>) -> Result<ExitCode> {
    for line in report.summary_lines() {
        eprintln!("{line}");
    }
    match path {
        Some(p) => std::fs::write(p, report.to_json() + "\n")
            .with_context(|| format!("writing {}", p.display()))?,
        None => println!("{}", report.to_json()),
    }
    Ok(if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::VerifyClassical {
            omega,
            grid,
            report,
        } => emit(
            &commands::verify_classical(omega, grid as usize)?,
            report.as_ref(),
        ),
        Command::Evolve {
            algebra,
            omega,
            p0,
            t_end,
            dt,
            record_every,
            out,
        } => {
            let algebra = load_algebra(&algebra)?;
            let spec = EvolveSpec {
                omega,
                p0,
                t_end,
                dt,
                record_every: usize::try_from(record_every).unwrap_or(usize::MAX),
            };
            let max_err = commands::evolve_to_csv(&algebra, &spec, &out)?;
            eprintln!("wrote {} (max_err {max_err:.3e})", out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckCsv { csv, omega, tol } => {
            let file =
                std::fs::File::open(&csv).with_context(|| format!("opening {}", csv.display()))?;
            let worst = evolve::recheck(&evolve::read_csv(file)?, omega)?;
            println!("{worst:.3e}");
            Ok(if worst < tol {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::SolveParams { algebra, p0 } => {
            let out = commands::solve_params_json(&load_algebra(&algebra)?, p0)?;
            println!("{}", serde_json::to_string_pretty(&out)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Classify {
            algebra,
            omega,
            p0,
            report,
        } => emit(
            &commands::classify(&load_algebra(&algebra)?, omega, p0)?,
            report.as_ref(),
        ),
        Command::VerifyAll {
            seed,
            report,
            inject_fault,
        } => {
            let fault = inject_fault.map(|FaultArg::CorruptBuiltin| Fault::CorruptBuiltin);
            emit(&commands::verify_all(seed, fault), report.as_ref())
        }
        Command::ExportBuiltins { dir } => {
            for path in commands::export_builtins(&dir)? {
                eprintln!("wrote {}", path.display());
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
