use std::panic;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use hgk::commands::{self, CheckKind, Command, ComputeArgs, Settings, SheafKind, What};
use hgk::report::{exit, RunReport};

#[derive(Parser)]
#[command(name = "hgk", version, about = "Checks and computations for finite simplicial sets and hypergroupoids")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    #[command(subcommand)]
    command: Sub,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Subcommand)]
enum Sub {
    /// Parse a document and check its structural invariants
    Validate { file: PathBuf },
    /// Run a structural check
    Check {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Highest level examined by the Kan check
        #[arg(long)]
        upto: Option<usize>,
    },
    /// Run a computation
    Compute {
        file: Option<PathBuf>,
        #[arg(long, value_enum)]
        what: WhatArg,
        #[arg(long)]
        n: Option<usize>,
        /// Coefficient group, e.g. Z, Z/2, Z^2+Z/3
        #[arg(long)]
        coeff: Option<String>,
        /// Write the resulting document here
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        truncation: Option<usize>,
        /// Source simplicial set for hom-count
        #[arg(long)]
        source: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = SheafArg::Constant)]
        sheaf: SheafArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Kan,
    Hypergroupoid,
    Cartesian,
    TrivialRelative,
    RelativeHypergroupoid,
}

#[derive(Clone, Copy, ValueEnum)]
enum WhatArg {
    Nerve,
    Pi,
    Homology,
    Em,
    Cech,
    Cosk,
    HomCount,
    Normalize,
    Denormalize,
}

#[derive(Clone, Copy, ValueEnum)]
enum SheafArg {
    Constant,
    Functions,
}

impl From<Sub> for Command {
    fn from(s: Sub) -> Self {
        match s {
            Sub::Validate { file } => Command::Validate { file },
            Sub::Check { file, kind, n, upto } => Command::Check {
                file,
                n,
                upto,
                kind: match kind {
                    KindArg::Kan => CheckKind::Kan,
                    KindArg::Hypergroupoid => CheckKind::Hypergroupoid,
                    KindArg::Cartesian => CheckKind::Cartesian,
                    KindArg::TrivialRelative => CheckKind::TrivialRelative,
                    KindArg::RelativeHypergroupoid => CheckKind::RelativeHypergroupoid,
                },
            },
            Sub::Compute { file, what, n, coeff, out, truncation, source, sheaf } => Command::Compute(ComputeArgs {
                file,
                n,
                coeff,
                out,
                truncation,
                source,
                what: match what {
                    WhatArg::Nerve => What::Nerve,
                    WhatArg::Pi => What::Pi,
                    WhatArg::Homology => What::Homology,
                    WhatArg::Em => What::Em,
                    WhatArg::Cech => What::Cech,
                    WhatArg::Cosk => What::Cosk,
                    WhatArg::HomCount => What::HomCount,
                    WhatArg::Normalize => What::Normalize,
                    WhatArg::Denormalize => What::Denormalize,
                },
                sheaf: match sheaf {
                    SheafArg::Constant => SheafKind::Constant,
                    SheafArg::Functions => SheafKind::Functions,
                },
            }),
        }
    }
}

fn panic_message(payload: &(dyn std::any::Any + Send)) -> String {
    payload
        .downcast_ref::<&str>()
        .map(|s| s.to_string())
        .or_else(|| payload.downcast_ref::<String>().cloned())
        .unwrap_or_else(|| "internal error".to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo: Vec<String> = std::env::args().skip(1).collect();
    let start = Instant::now();
    let mut report = match Settings::from_env() {
        Err(e) => RunReport::error(echo, exit::USAGE, e),
        Ok(settings) => {
            let command = Command::from(cli.command);
            panic::set_hook(Box::new(|_| {}));
            let run = panic::catch_unwind(|| commands::execute(&command, echo.clone(), settings));
            let _ = panic::take_hook();
            run.unwrap_or_else(|p| RunReport::error(echo, exit::USAGE, panic_message(p.as_ref())))
        }
    };
    report.wall_time = start.elapsed();
    match cli.format {
        Format::Json => print!("{}", report.to_json()),
        Format::Human => print!("{}", report.to_human()),
    }
    ExitCode::from(report.exit_code as u8)
}
