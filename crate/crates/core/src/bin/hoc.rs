use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use higher_cohomology::workbench::{error_exit_code, run, Command, Format, RunConfig};

#[derive(Parser)]
#[command(name = "hoc", version, about = "Verification runs for higher-order cohomology of Fuchsian groups")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Dimension formulas and exact-sequence identities.
    Dims(Opts),
    /// Graded dimensions of the surface group algebra and its rewriting basis.
    Surface(Opts),
    /// The ideal tower J_q for free Fuchsian presentations.
    Fuchsian(Opts),
    /// Higher-order invariants of finite groups.
    Finite(Opts),
    /// Numerical period-cocycle identities for a modular fixture.
    Es(Opts),
    /// Every command with shipped fixtures and default grids.
    All(Opts),
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
}

#[derive(Args)]
struct Opts {
    /// Fixture name (resolved in the fixture root) or path.
    #[arg(long)]
    fixture: Option<String>,
    #[arg(long)]
    qmax: Option<u32>,
    #[arg(long)]
    g: Option<u64>,
    #[arg(long)]
    s: Option<u64>,
    #[arg(long)]
    n: Option<u64>,
    /// Cocycle order for `es`.
    #[arg(long)]
    order: Option<u32>,
    /// Quadrature tolerance for `es`.
    #[arg(long)]
    tol: Option<f64>,
    /// Directory for the JSON report and CSV tables.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the report to stdout in this format instead of the summary.
    #[arg(long, value_enum)]
    format: Option<OutFormat>,
    #[arg(long)]
    threads: Option<usize>,
    /// JSON file with defaults for the options above.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Fixture directory; overrides HOC_FIXTURE_ROOT.
    #[arg(long)]
    fixture_root: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, opts) = match cli.command {
        Cmd::Dims(o) => (Command::Dims, o),
        Cmd::Surface(o) => (Command::Surface, o),
        Cmd::Fuchsian(o) => (Command::Fuchsian, o),
        Cmd::Finite(o) => (Command::Finite, o),
        Cmd::Es(o) => (Command::Es, o),
        Cmd::All(o) => (Command::All, o),
    };
    match execute(command, opts) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("hoc {command}: {e}");
            ExitCode::from(error_exit_code(&e) as u8)
        }
    }
}

fn execute(command: Command, opts: Opts) -> higher_cohomology::Result<u8> {
    let cli = RunConfig {
        fixture: opts.fixture,
        qmax: opts.qmax,
        g: opts.g,
        s: opts.s,
        n: opts.n,
        order: opts.order,
        tol: opts.tol,
        threads: opts.threads,
        fixture_root: opts.fixture_root,
    };
    let config = match &opts.config {
        Some(path) => RunConfig::from_json(&std::fs::read_to_string(path)?)?.merged(&cli),
        None => cli,
    };
    let report = run(command, &config)?;
    if let Some(dir) = &opts.out {
        for path in report.emit(dir)? {
            eprintln!("wrote {}", path.display());
        }
    }
    match opts.format {
        Some(OutFormat::Json) => print!("{}", report.render(Format::Json)?),
        Some(OutFormat::Csv) => print!("{}", report.render(Format::Csv)?),
        None => print!("{}", report.summary()),
    }
    Ok(report.exit_code() as u8)
}
