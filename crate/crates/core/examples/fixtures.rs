//! Loads and validates every shipped fixture. With `--seal`, rewrites each
//! file in stable form with a fresh payload checksum.

use std::fs;

use higher_cohomology::workbench::fixture::{default_fixture_root, parse_fixture, seal_fixture};
use higher_cohomology::workbench::FixturePayload;

fn main() -> higher_cohomology::Result<()> {
    let seal = std::env::args().any(|a| a == "--seal");
    let root = default_fixture_root();
    let mut paths: Vec<_> = fs::read_dir(&root)?.filter_map(|e| e.ok().map(|e| e.path())).collect();
    paths.sort();
    for path in paths.iter().filter(|p| p.extension().is_some_and(|e| e == "json")) {
        let mut text = fs::read_to_string(path)?;
        if seal {
            text = seal_fixture(&text)?;
            fs::write(path, &text)?;
        }
        let f = parse_fixture(&text, &path.display().to_string())?;
        let summary = match &f.payload {
            FixturePayload::Fuchsian(x) => {
                let s = &x.signature;
                format!("genus {}, {} cusps, free rank {}", s.genus(), s.cusps(), s.rank())
            }
            FixturePayload::Finite(x) => format!("order {}, {} checks", x.group.order(), x.checks.len()),
            FixturePayload::Modular(x) => format!(
                "{} generators, weight {} form with {} coefficients",
                x.group.generators.len(),
                x.form.weight,
                x.form.coeffs.len()
            ),
        };
        println!("{:<10} {:<9} {summary}  sha256 {}", f.name, f.kind().as_str(), &f.sha256[..16]);
    }
    Ok(())
}
