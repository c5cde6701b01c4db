//! Runs a command through the library, then writes the JSON report and CSV
//! tables to a directory.
//!
//! `cargo run --release --example workbench -- [command] [out-dir]`

use std::path::PathBuf;

use higher_cohomology::workbench::{run, Command, RunConfig};

fn main() -> higher_cohomology::Result<()> {
    let mut args = std::env::args().skip(1);
    let command: Command = args.next().as_deref().unwrap_or("fuchsian").parse()?;
    let out = args.next().map_or_else(|| std::env::temp_dir().join("hoc-report"), PathBuf::from);
    let config = RunConfig { qmax: Some(3), ..RunConfig::default() };
    let report = run(command, &config)?;
    print!("{}", report.summary());
    for path in report.emit(&out)? {
        println!("wrote {}", path.display());
    }
    std::process::exit(report.exit_code());
}
