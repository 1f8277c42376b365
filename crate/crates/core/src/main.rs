use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use minkowski_wqed::config::{load_config, Format};
use minkowski_wqed::run::execute;
use minkowski_wqed::Error;

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
    Both,
}

/// Spectra, sweeps and disorder ensembles of nested atom arrays coupled to a
/// one-dimensional waveguide.
#[derive(Debug, Parser)]
#[command(name = "mwqed", version)]
struct Cli {
    /// TOML run config, or a JSON manifest from a previous run.
    #[arg(long)]
    config: PathBuf,
    /// Output directory [default: config `output.dir`, then $MWQED_OUT_DIR, then ./out]
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Worker threads; defaults to the number of cores.
    #[arg(long)]
    threads: Option<usize>,
    /// Dotted-path config override, e.g. `sweep.points=200` or `seeds.0.spacing=0.3pi`.
    #[arg(long = "override", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
}

fn exit_code(e: &Error) -> u8 {
    if e.is_numerical() {
        2
    } else {
        1
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let mut cfg = match load_config(&cli.config, &cli.overrides) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    if let Some(f) = cli.format {
        cfg.output.format = match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
            FormatArg::Both => Format::Both,
        };
    }
    let out = cli
        .out
        .or_else(|| cfg.output.dir.clone())
        .or_else(|| std::env::var_os("MWQED_OUT_DIR").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("out"));

    match execute(&cfg, &out) {
        Ok(report) => {
            for f in &report.files {
                println!("{}", f.display());
            }
            if let Some(d) = report.diagnostic {
                eprintln!("error: {d}");
                return ExitCode::from(2);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
