use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use zhu_core::commands::{parse_config, run, Command, CommandError, Options};

/// Exact computations with vertex operator algebras, Zhu algebras and
/// their modules. Reports are written as JSON.
#[derive(Parser, Debug)]
#[command(name = "zhu", version)]
struct Cli {
    /// describe | zhu | c2 | endo | extend | selftest
    command: String,
    /// Configuration file (flat key=value lines).
    #[arg(long)]
    config: Option<PathBuf>,
    /// Zhu algebra level.
    #[arg(long, default_value_t = 0)]
    n: usize,
    /// Weight truncation, overriding the configuration.
    #[arg(long)]
    truncate: Option<usize>,
    /// Highest filtration degree to quote.
    #[arg(long)]
    max_degree: Option<usize>,
    /// Module spec: fock:λ,.. | companion:POLY | top:D:m1;m2 | verma:h | weyl:d
    #[arg(long)]
    module: Option<String>,
    /// Extension polynomial, e.g. t^2-2.
    #[arg(long)]
    ext: Option<String>,
    /// Probe seed in hex.
    #[arg(long, value_parser = parse_hex)]
    seed: Option<u64>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_hex(s: &str) -> Result<u64, String> {
    let digits = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")).unwrap_or(s);
    u64::from_str_radix(digits, 16).map_err(|e| format!("{s:?} is not a hex seed: {e}"))
}

fn execute(cli: &Cli) -> Result<i32, CommandError> {
    let command: Command = cli.command.parse()?;
    let config = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CommandError::Usage(format!("cannot read {}: {e}", path.display())))?;
            Some(parse_config(&text)?)
        }
        None => None,
    };
    let mut opts = Options {
        level: cli.n,
        truncate: cli.truncate,
        max_degree: cli.max_degree,
        module: cli.module.clone(),
        ext: cli.ext.clone(),
        ..Options::default()
    };
    if let Some(seed) = cli.seed {
        opts.seed = seed;
    }
    let outcome = run(command, config.as_ref(), &opts)?;
    let text = outcome.render();
    match &cli.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CommandError::Usage(format!("cannot write {}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(outcome.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("zhu: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
