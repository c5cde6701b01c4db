//! N_g(q) computed three ways, and the dimension tables with their
//! exact-sequence checks.
//!
//! `cargo run --example dimension_table`

use higher_cohomology::dims::{
    bar_n, dim_aux, dim_h1, dim_h1_par, n_g, n_g_closed_form, n_g_closed_form_exact, n_g_enumerated,
    sequence_consistency,
};

fn main() -> higher_cohomology::Result<()> {
    println!("N_g(q): recursion / closed form in Z[√(g²−1)] / enumeration");
    for g in 0..=3u64 {
        let row: Vec<String> = (0..=6)
            .map(|q| {
                assert!(n_g_closed_form_exact(g, q).b == 0.into());
                format!("{}/{}/{}", n_g(g, q), n_g_closed_form(g, q), n_g_enumerated(g, q))
            })
            .collect();
        println!("  g={g}: {}", row.join("  "));
    }

    for (g, s, n) in [(1, 1, 0), (1, 1, 2), (2, 0, 0)] {
        println!("\n(g, s, n) = ({g}, {s}, {n})");
        println!("  q  N_g(q)  barN(q-1)  dim H_q^1  dim H_q,par^1");
        for q in 1..=4 {
            println!(
                "  {q}  {:>6}  {:>9}  {:>9}  {:>13}",
                n_g(g, q),
                bar_n(g, q - 1),
                dim_h1(g, s, n, q)?,
                dim_h1_par(g, s, n, q)?
            );
        }
        let aux = dim_aux(g, s, n, 2)?;
        println!("  classical: dim S = {} {:?}, dim H^1 = {}, Ext² (q=2) = {:?}", aux.dim_cusp_classical, aux.cusp_convention, aux.dim_h1_classical, aux.dim_ext2_s0);
        let seq = sequence_consistency(g, s, n, 4)?;
        for id in &seq.identities {
            println!("  ({:?}) q={} terms {:?} alternating sum {}", id.branch, id.q, id.terms, id.alternating_sum);
        }
    }
    Ok(())
}
