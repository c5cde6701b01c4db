//! Magnus expansion of free-group words and the ideal images it feeds.
//!
//! `cargo run --example magnus`

use higher_cohomology::magnus::{expand_word, power_ideal_image, Word};

fn main() -> higher_cohomology::Result<()> {
    let cap = 3;
    for signed in [vec![1], vec![-1], vec![1, 2, -1, -2]] {
        let w = Word::from_signed(&signed)?;
        println!("{w:<16} ↦ {}", expand_word(&w, cap, 2)?);
    }
    // A commutator starts in degree 2: its expansion minus 1 lies in I².
    let c = Word::commutator(&Word::generator(1), &Word::generator(2));
    let s = expand_word(&c, cap, 2)?;
    println!("valuation of [x1, x2] − 1: {:?}", (&s - &higher_cohomology::magnus::TruncatedSeries::one(cap)).valuation());
    for q in 1..=cap {
        println!("dim of I^{q} image at cap {cap} on 2 letters: {}", power_ideal_image(q, cap, 2)?.dim());
    }
    Ok(())
}
