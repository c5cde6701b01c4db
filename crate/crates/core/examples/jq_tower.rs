//! The ideal tower J_q = I^q + A·I_Σ of free Fuchsian presentations at n = 0.
//!
//! `cargo run --release --example jq_tower`

use higher_cohomology::dims::{dim_h1, n_g};
use higher_cohomology::jq::{build_jq, expected_parabolic_class_rank, parabolic_class_rank_in, FuchsianSignature};
use higher_cohomology::linear::quotient_dim;

fn main() -> higher_cohomology::Result<()> {
    for (g, s) in [(1, 1), (1, 2), (2, 1), (0, 3)] {
        let sig = FuchsianSignature::new(g, s)?;
        println!("(g, s) = ({g}, {s}), free rank {}, p_s = {}", sig.rank(), sig.dependent_parabolic());
        for q in 1..=3 {
            let m = build_jq(&sig, q)?;
            let par = quotient_dim(m.jq_image(), m.jq_next_image())?;
            let h1 = quotient_dim(m.jq_image(), m.i_jq_image())?;
            let rank = parabolic_class_rank_in(&m)?;
            println!(
                "  q={q}: dim J_q/J_(q+1) = {par} (N_g = {}), dim J_q/IJ_q = {h1} (formula {}), parabolic rank {rank} (expected {})",
                n_g(g as u64, q as u32),
                dim_h1(g as u64, s as u64, 0, q as u32)?,
                expected_parabolic_class_rank(g, s, q)
            );
        }
    }
    Ok(())
}
