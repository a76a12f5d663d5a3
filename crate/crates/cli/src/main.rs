use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gencx_cli::{run, Config, Format, ScenarioId};

#[derive(Parser)]
#[command(name = "gencx", version, about = "Run generalized complex geometry verification scenarios")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario and write its report.
    Run {
        #[arg(long, value_enum)]
        scenario: ScenarioId,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Sample count (scenario default when omitted).
        #[arg(long)]
        samples: Option<usize>,
        /// Tolerance applied to every check.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, default_value_t = 0.3)]
        rmin: f64,
        #[arg(long, default_value_t = 2.5)]
        rmax: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        report: Format,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Report zero elapsed time, for byte-identical output.
        #[arg(long)]
        no_timing: bool,
    },
    /// List scenarios with their anchors.
    List,
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::List => {
            let mut out = std::io::stdout().lock();
            for id in ScenarioId::ALL {
                let _ = writeln!(out, "{}", id.name());
                for a in id.anchors() {
                    let _ = writeln!(out, "    {a}");
                }
            }
            ExitCode::SUCCESS
        }
        Command::Run { scenario, seed, samples, tol, rmin, rmax, report, out, no_timing } => {
            if !(0.0 < rmin && rmin < rmax) {
                eprintln!("error: need 0 < rmin < rmax");
                return ExitCode::from(2);
            }
            let cfg = Config { scenario, seed, samples, tol, rmin, rmax, no_timing };
            let rep = match run(&cfg) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let text = match rep.emit(report) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            match out {
                Some(p) => {
                    if let Err(e) = std::fs::write(&p, text) {
                        eprintln!("error: writing {}: {e}", p.display());
                        return ExitCode::from(2);
                    }
                }
                None => {
                    let _ = std::io::stdout().lock().write_all(text.as_bytes());
                }
            }
            for c in rep.checks.iter().filter(|c| !c.pass) {
                eprintln!("FAIL {}: residual {:.3e} >= tol {:.1e}", c.name, c.residual, c.tol);
            }
            if rep.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
