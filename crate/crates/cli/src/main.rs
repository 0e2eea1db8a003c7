//! `qsym`: batch front end for finite quantum symmetry computations.

mod commands;
mod config;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{CesaroArg, QincCommand};
use config::{Output, RunConfig};

#[derive(Debug, Parser)]
#[command(name = "qsym", version, about = "Quantum symmetries of finite quantum spaces")]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the quantum family axioms for a family file.
    VerifyFamily { family: PathBuf },
    /// Hopf image of a map out of a finite quantum group.
    HopfImage {
        fqg: PathBuf,
        hom: PathBuf,
        /// Write the quotient quantum group here.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Quantum subgroup generated by a list of subgroup maps.
    GenSubgroup {
        fqg: PathBuf,
        #[arg(required = true)]
        homs: Vec<PathBuf>,
    },
    /// Inner faithfulness through the Cesàro limit of a state.
    InnerFaithful {
        fqg: PathBuf,
        hom: PathBuf,
        state: PathBuf,
        #[arg(long, value_enum, default_value_t = CesaroArg::Spectral)]
        cesaro: CesaroArg,
    },
    /// Quantum increasing sequences.
    #[command(subcommand)]
    Qinc(QincCommand),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(3) } else { ExitCode::SUCCESS };
        }
    };
    let cfg = &cli.config;
    let outcome = match &cli.command {
        Command::VerifyFamily { family } => commands::verify_family(family, cfg),
        Command::HopfImage { fqg, hom, export } => commands::hopf_image_cmd(fqg, hom, export.as_deref(), cfg),
        Command::GenSubgroup { fqg, homs } => commands::gen_subgroup(fqg, homs, cfg),
        Command::InnerFaithful { fqg, hom, state, cesaro } => commands::inner_faithful_cmd(fqg, hom, state, *cesaro, cfg),
        Command::Qinc(q) => commands::qinc(q, cfg),
    };
    match outcome {
        Ok(report) => {
            let text = match cfg.output {
                Output::Json => serde_json::to_string_pretty(&report).expect("report serializes") + "\n",
                Output::Text => report.to_text(),
            };
            // a closed pipe downstream is not our failure
            let _ = std::io::stdout().write_all(text.as_bytes());
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("qsym: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
