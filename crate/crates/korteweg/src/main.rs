use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use korteweg::commands::run;
use korteweg::config::RunConfig;

/// Runs one experiment described by a TOML configuration.
#[derive(Debug, Parser)]
#[command(name = "korteweg", version)]
struct Args {
    /// Run configuration (TOML).
    #[arg(long)]
    config: PathBuf,
    /// Output directory; overrides `output.dir`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Dotted `key=value` override, e.g. `material.u2=0`. Repeatable.
    #[arg(long = "override", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    /// Suppress the summary on standard output.
    #[arg(long)]
    quiet: bool,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let cfg = match RunConfig::from_path(&args.config, &args.overrides) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let out = args.out.unwrap_or_else(|| cfg.output.dir.clone());
    match run(&cfg, &out) {
        Ok(summary) => {
            if !args.quiet {
                for line in summary.lines() {
                    println!("{line}");
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
