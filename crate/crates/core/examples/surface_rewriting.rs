//! Normal forms in the truncated group algebra of a closed surface group.
//!
//! `cargo run --release --example surface_rewriting`

use higher_cohomology::dims::n_g;
use higher_cohomology::linear::rat;
use higher_cohomology::magnus::{Monomial, TruncatedSeries};
use higher_cohomology::surface::{
    admissible_basis, certify_admissible_basis, relator_ideal_graded_dim, rewrite_normal_form, surface_mul, GenusContext,
};

fn main() -> higher_cohomology::Result<()> {
    let ctx = GenusContext::new(1, 3)?;
    println!("genus 1, cap 3: x1x2 is replaced by {}", ctx.replacement());
    let x1x2 = TruncatedSeries::monomial(3, Monomial(vec![1, 2]), rat(1));
    println!("NF(x1 x2) = {}", rewrite_normal_form(&x1x2, &ctx)?.series());
    let x1 = rewrite_normal_form(&TruncatedSeries::var(3, 1), &ctx)?;
    let x2 = rewrite_normal_form(&TruncatedSeries::var(3, 2), &ctx)?;
    println!("x1 · x2 in the surface algebra = {}", surface_mul(&x1, &x2, &ctx)?.series());

    let basis: Vec<String> = admissible_basis(1, 2).iter().map(|m| format!("{:?}", m.letters())).collect();
    println!("admissible monomials of degree 2 (g=1): {}", basis.join(" "));

    for g in 1..=2usize {
        for q in 1..=4 {
            let d = relator_ideal_graded_dim(g, q)?;
            println!("g={g} q={q}: dim I^q/I^(q+1) = {d}, N_g(q) = {}", n_g(g as u64, q as u32));
        }
        println!("g={g}: admissible monomials certified as a basis up to degree 4: {}", certify_admissible_basis(g, 4)?);
    }
    Ok(())
}
