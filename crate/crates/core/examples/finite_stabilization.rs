//! Higher-order invariants H_q^0 of finite groups: stable in invertible
//! characteristic, growing in the modular case.
//!
//! `cargo run --release --example finite_stabilization`

use higher_cohomology::finite::{augmentation_powers, perfect_check, stabilization_report, FiniteGroup, ModuleRep};
use higher_cohomology::linear::{PrimeField, Rationals};

fn main() -> higher_cohomology::Result<()> {
    let s3 = FiniteGroup::symmetric(3)?;
    let z2 = FiniteGroup::cyclic(2)?;
    let z3 = FiniteGroup::cyclic(3)?;
    for gp in [&s3, &z3] {
        let r = stabilization_report(gp, &ModuleRep::regular(gp, Rationals)?, 4)?;
        println!("{} over {} regular: dims {:?} {} (routes agree: {})", r.group, r.field, r.dims, r.verdict, r.routes_agree);
    }
    let f2 = PrimeField::new(2)?;
    let r = stabilization_report(&z2, &ModuleRep::regular(&z2, f2)?, 3)?;
    println!("{} over {} regular: dims {:?} {}", r.group, r.field, r.dims, r.verdict);

    // Σ = ⟨3-cycle⟩ in S_3 adds σ − 1 to every J_q.
    let c = s3.generators()[1];
    let with_sigma = s3.clone().with_sigma(vec![s3.identity(), c, s3.mul(c, c)])?;
    let r = stabilization_report(&with_sigma, &ModuleRep::regular(&with_sigma, Rationals)?, 3)?;
    println!("S_3 with Σ = A_3 over Q regular: dims {:?}", r.dims);

    let a5 = FiniteGroup::alternating5()?;
    let dims: Vec<usize> = augmentation_powers(&a5, Rationals, 2)?.iter().map(|s| s.dim()).collect();
    println!("A_5: dim I, dim I² over Q = {dims:?}; perfect: {}", perfect_check(&a5)?);
    let z5: Vec<usize> = augmentation_powers(&FiniteGroup::cyclic(5)?, PrimeField::new(5)?, 5)?.iter().map(|s| s.dim()).collect();
    println!("Z/5 over F_5: dim I^q = {z5:?}; perfect: {}", perfect_check(&FiniteGroup::cyclic(5)?)?);
    Ok(())
}
