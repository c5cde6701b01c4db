//! Exact subspace arithmetic over Q and F_p: spans, sums, quotients, kernels.
//!
//! `cargo run --example exact_linear`

use higher_cohomology::linear::{nullspace, quotient_dim, rank, rat, PrimeField, Rationals, Subspace};

fn main() -> higher_cohomology::Result<()> {
    let rows = vec![
        vec![rat(1), rat(2), rat(3), rat(4)],
        vec![rat(2), rat(4), rat(6), rat(8)],
        vec![rat(0), rat(1), rat(-1), rat(2)],
    ];
    let u = Subspace::span(Rationals, &rows, 4)?;
    let w = Subspace::span(Rationals, &rows[..1], 4)?;
    println!("dim U = {}, dim W = {}, dim U/W = {}", u.dim(), w.dim(), quotient_dim(&u, &w)?);
    println!("RREF basis of U:");
    for b in u.basis() {
        println!("  {}", b.iter().map(ToString::to_string).collect::<Vec<_>>().join("  "));
    }
    let k = nullspace(Rationals, u.basis(), 4)?;
    println!("kernel of U has dimension {}", k.dim());

    // Rank depends on the characteristic: 3·e_1 vanishes over F_3.
    let m = vec![vec![3i64, 0], vec![0, 1]];
    let over_q = rank(Rationals, &m.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect::<Vec<_>>(), 2)?;
    let f3 = PrimeField::new(3)?;
    let over_f3 = rank(f3, &m.iter().map(|r| r.iter().map(|&x| x.rem_euclid(3) as u32).collect()).collect::<Vec<_>>(), 2)?;
    println!("rank of diag(3, 1): {over_q} over Q, {over_f3} over F_3");
    Ok(())
}
