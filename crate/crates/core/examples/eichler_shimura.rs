//! Period cocycles of the level-11 newform and of the second-order form f·Λ.
//!
//! `cargo run --release --example eichler_shimura`

use higher_cohomology::es::{level11_form, verify_suite, EsConfig, GroupFixture};

fn main() -> higher_cohomology::Result<()> {
    let fixture = GroupFixture::gamma0_11().validate()?;
    let f = level11_form()?;
    println!("{}: a_1..a_5 = {:?}", f.name, f.coeffs[..5].iter().map(|c| c.re).collect::<Vec<_>>());
    for q in [1, 2] {
        let start = std::time::Instant::now();
        let report = verify_suite(&fixture, &f, q, 0, &EsConfig::default())?;
        println!("\norder {q} ({:.1?})", start.elapsed());
        for e in &report.table.entries {
            println!("  φ{:<14} = {:>+.10}   base point {:.3}{:+.3}i", e.label, e.value[0], e.base_point[0], e.base_point[1]);
        }
        for c in &report.checks {
            let mark = if c.pass { "ok  " } else { "FAIL" };
            println!("  [{mark}] {:<40} {:.3e} < {:.0e}   {}", c.name, c.residual, c.tolerance, c.detail);
        }
    }
    Ok(())
}
