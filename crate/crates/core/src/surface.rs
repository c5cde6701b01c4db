//! The truncated group algebra of a closed surface group of genus `g`.
//!
//! The defining relation `[γ_1,γ_2]⋯[γ_{2g−1},γ_{2g}] = 1` is equivalent to
//! `γ_1γ_2 = b γ_2γ_1` with `b = [γ_{2g},γ_{2g−1}]⋯[γ_4,γ_3]`, which in Magnus
//! coordinates becomes the rewrite rule
//!
//! ```text
//! x_1x_2  ↦  b·x_2x_1 + (b − 1)(1 + x_1 + x_2)
//! ```
//!
//! Repeated application leaves only *admissible* monomials, those with no
//! adjacent `x_1x_2`. An independent route computes the same graded dimensions
//! as a quotient of the free algebra by the two-sided relator ideal.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linear::{Rational, Rationals, Subspace};
use crate::magnus::{
    check_feasible, expand_word, power_ideal_image, two_sided_ideal_image, Monomial, MonomialSpace, TruncatedSeries,
    Word,
};

/// Rewrite budget for a single normal-form computation.
pub const REWRITE_BUDGET: usize = 1_000_000;

/// True when no adjacent pair of letters is `(1, 2)`.
pub fn is_admissible(letters: &[usize]) -> bool {
    letters.windows(2).all(|p| p != [1, 2])
}

/// A monomial over `x_1, …, x_{2g}` with no adjacent `x_1x_2`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SurfaceMonomial(Vec<usize>);

impl SurfaceMonomial {
    pub fn new(letters: Vec<usize>) -> Result<Self> {
        if !is_admissible(&letters) {
            return Err(Error::Input(format!("{letters:?} contains the pair (1,2)")));
        }
        Ok(Self(letters))
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }
}

/// All admissible tuples of length `q` over `{1, …, 2g}`, lexicographically sorted.
///
/// For `g = 0` the algebra is the scalars: one empty tuple at `q = 0`, none above.
pub fn admissible_basis(g: usize, q: usize) -> Vec<SurfaceMonomial> {
    let letters = 2 * g;
    if q == 0 {
        return vec![SurfaceMonomial(Vec::new())];
    }
    if letters == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(q);
    fn rec(letters: usize, q: usize, cur: &mut Vec<usize>, out: &mut Vec<SurfaceMonomial>) {
        if cur.len() == q {
            out.push(SurfaceMonomial(cur.clone()));
            return;
        }
        for i in 1..=letters {
            if i == 2 && cur.last() == Some(&1) {
                continue;
            }
            cur.push(i);
            rec(letters, q, cur, out);
            cur.pop();
        }
    }
    rec(letters, q, &mut cur, &mut out);
    out
}

/// `[γ_1,γ_2]⋯[γ_{2g−1},γ_{2g}]`.
pub fn surface_relator(g: usize) -> Word {
    (1..=g).fold(Word::identity(), |acc, k| {
        acc.concat(&Word::commutator(&Word::generator(2 * k - 1), &Word::generator(2 * k)))
    })
}

/// `b = [γ_{2g},γ_{2g−1}]⋯[γ_4,γ_3]`; the identity for `g = 1`.
pub fn b_word(g: usize) -> Word {
    (2..=g).rev().fold(Word::identity(), |acc, k| {
        acc.concat(&Word::commutator(&Word::generator(2 * k), &Word::generator(2 * k - 1)))
    })
}

/// Genus and truncation data shared by all surface-algebra operations.
#[derive(Clone, Debug)]
pub struct GenusContext {
    g: usize,
    cap: usize,
    b_series: TruncatedSeries,
    replacement: TruncatedSeries,
}

impl GenusContext {
    pub fn new(g: usize, cap: usize) -> Result<Self> {
        if g == 0 {
            return Err(Error::Input("genus 0 has no surface-algebra letters".into()));
        }
        let b_series = expand_word(&b_word(g), cap, 2 * g)?;
        let one = TruncatedSeries::one(cap);
        let x1 = TruncatedSeries::var(cap, 1);
        let x2 = TruncatedSeries::var(cap, 2);
        let x2x1 = TruncatedSeries::monomial(cap, Monomial(vec![2, 1]), Rational::one());
        let b_minus_one = &b_series - &one;
        let tail = &(&one + &x1) + &x2;
        let replacement = &b_series.mul(&x2x1)? + &b_minus_one.mul(&tail)?;
        Ok(Self { g, cap, b_series, replacement })
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn b_series(&self) -> &TruncatedSeries {
        &self.b_series
    }

    /// The series substituted for `x_1x_2`.
    pub fn replacement(&self) -> &TruncatedSeries {
        &self.replacement
    }
}

/// A truncated element of the surface algebra written in admissible monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceElement {
    g: usize,
    series: TruncatedSeries,
}

impl SurfaceElement {
    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn cap(&self) -> usize {
        self.series.cap()
    }

    pub fn series(&self) -> &TruncatedSeries {
        &self.series
    }

    pub fn into_series(self) -> TruncatedSeries {
        self.series
    }

    pub fn terms(&self) -> impl Iterator<Item = (SurfaceMonomial, &Rational)> {
        self.series.terms().map(|(m, c)| (SurfaceMonomial(m.0.clone()), c))
    }
}

/// Rewrites a raw series over `x_1, …, x_{2g}` into admissible monomials.
///
/// Strategy: always rewrite the lowest-degree non-admissible monomial, at its
/// leftmost `x_1x_2`, breaking ties towards the lexicographically smallest letter
/// tuple. The degree-preserving part of each rewrite is strictly smaller in the
/// graded order with `x_1 > x_2 > x_3 > …`; the remaining terms have higher
/// degree, so the process terminates within the cap.
pub fn rewrite_normal_form(e: &TruncatedSeries, ctx: &GenusContext) -> Result<SurfaceElement> {
    let letters = 2 * ctx.g;
    let mut work: BTreeMap<Monomial, Rational> = BTreeMap::new();
    for (m, c) in e.terms() {
        if m.degree() > ctx.cap {
            return Err(Error::Input(format!("term {} exceeds cap {}", m.label(), ctx.cap)));
        }
        if let Some(&bad) = m.0.iter().find(|&&i| i == 0 || i > letters) {
            return Err(Error::Input(format!("letter x{bad} out of range for genus {}", ctx.g)));
        }
        work.insert(m.clone(), c.clone());
    }

    let mut rewrites = 0usize;
    loop {
        let next = work
            .keys()
            .filter(|m| !is_admissible(&m.0))
            .min_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.0.cmp(&b.0)))
            .cloned();
        let Some(m) = next else { break };
        rewrites += 1;
        if rewrites > REWRITE_BUDGET {
            return Err(Error::Internal(format!("rewrite budget of {REWRITE_BUDGET} exhausted")));
        }
        let c = work.remove(&m).expect("monomial present");
        let at = m.0.windows(2).position(|p| p == [1, 2]).expect("non-admissible");
        let left = Monomial(m.0[..at].to_vec());
        let right = Monomial(m.0[at + 2..].to_vec());
        for (t, tc) in ctx.replacement.sandwich(&left, &right).terms() {
            let entry = work.entry(t.clone()).or_insert_with(Rational::zero);
            *entry += &c * tc;
            if entry.is_zero() {
                work.remove(t);
            }
        }
    }
    Ok(SurfaceElement { g: ctx.g, series: TruncatedSeries::from_terms(ctx.cap, work) })
}

/// Product in the surface algebra: free product followed by normal form.
pub fn surface_mul(a: &SurfaceElement, b: &SurfaceElement, ctx: &GenusContext) -> Result<SurfaceElement> {
    if a.g != b.g || a.g != ctx.g {
        return Err(Error::Input(format!("genus mismatch: {} vs {} (context {})", a.g, b.g, ctx.g)));
    }
    if a.cap() != b.cap() || a.cap() != ctx.cap {
        return Err(Error::Input(format!("cap mismatch: {} vs {} (context {})", a.cap(), b.cap(), ctx.cap)));
    }
    rewrite_normal_form(&a.series.mul(&b.series)?, ctx)
}

/// Lifts a series that is already admissible into a [`SurfaceElement`].
pub fn surface_element(series: TruncatedSeries, ctx: &GenusContext) -> Result<SurfaceElement> {
    if let Some((m, _)) = series.terms().find(|(m, _)| !is_admissible(&m.0)) {
        return Err(Error::Input(format!("{} is not admissible", m.label())));
    }
    if series.cap() != ctx.cap {
        return Err(Error::Input("cap mismatch".into()));
    }
    Ok(SurfaceElement { g: ctx.g, series })
}

/// Image of the two-sided ideal generated by `relator − 1` in the free algebra
/// on `2g` letters truncated at `cap`.
pub fn relator_ideal_image(g: usize, cap: usize) -> Result<Subspace> {
    let r = 2 * g;
    check_feasible(r, cap)?;
    let rel = expand_word(&surface_relator(g), cap, r)?;
    let gen = &rel - &TruncatedSeries::one(cap);
    if gen.is_zero() {
        return Ok(Subspace::zero(Rationals, MonomialSpace::new(r, cap).dim()));
    }
    two_sided_ideal_image(&[gen], cap, r)
}

/// `dim I^q/I^{q+1}` for the genus-`g` surface group, computed as the dimension
/// of the degree-`q` slice modulo the relator ideal, inside the free algebra
/// truncated at `q`.
pub fn relator_ideal_graded_dim(g: usize, q: usize) -> Result<usize> {
    if g == 0 || q == 0 {
        return Err(Error::Input("relator_ideal_graded_dim needs g ≥ 1 and q ≥ 1".into()));
    }
    check_feasible(2 * g, q)?;
    let ideal = relator_ideal_image(g, q)?;
    let slice = power_ideal_image(q, q, 2 * g)?;
    Ok(ideal.sum(&slice)?.dim() - ideal.dim())
}

/// Certifies that the admissible monomials of degree ≤ `cap` form a basis of
/// the truncated surface algebra: they are independent modulo the relator ideal
/// and together with it span the whole free algebra.
pub fn certify_admissible_basis(g: usize, cap: usize) -> Result<bool> {
    let r = 2 * g;
    let ideal = relator_ideal_image(g, cap)?;
    let space = MonomialSpace::new(r, cap);
    let admissible: Vec<Vec<Rational>> = (0..=cap)
        .flat_map(|d| admissible_basis(g, d))
        .map(|m| space.vector(&TruncatedSeries::monomial(cap, Monomial(m.0), Rational::one())))
        .collect::<Result<_>>()?;
    let count = admissible.len();
    let independent = ideal.quotient_rank(&admissible)? == count;
    Ok(independent && ideal.dim() + count == space.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::rat;

    fn mono(cap: usize, letters: &[usize]) -> TruncatedSeries {
        TruncatedSeries::monomial(cap, Monomial(letters.to_vec()), rat(1))
    }

    #[test]
    fn admissible_basis_examples() {
        let b = admissible_basis(1, 2);
        let got: Vec<&[usize]> = b.iter().map(|m| m.letters()).collect();
        assert_eq!(got, vec![&[1, 1][..], &[2, 1], &[2, 2]]);
        assert_eq!(admissible_basis(2, 1).len(), 4);
        assert_eq!(admissible_basis(2, 3).len(), 56);
        assert_eq!(admissible_basis(0, 0).len(), 1);
        assert!(admissible_basis(0, 3).is_empty());
    }

    #[test]
    fn admissible_count_matches_brute_force_filter() {
        // 4^3 tuples minus those containing an adjacent (1,2).
        let brute = (0..64)
            .map(|n| vec![n / 16 + 1, (n / 4) % 4 + 1, n % 4 + 1])
            .filter(|t| is_admissible(t))
            .count();
        assert_eq!(brute, 56);
    }

    #[test]
    fn genus_one_b_is_one() {
        let ctx = GenusContext::new(1, 4).unwrap();
        assert_eq!(ctx.b_series(), &TruncatedSeries::one(4));
        let nf = rewrite_normal_form(&mono(4, &[1, 2]), &ctx).unwrap();
        assert_eq!(nf.series(), &mono(4, &[2, 1]));
    }

    #[test]
    fn genus_two_degree_two_rewrite() {
        let ctx = GenusContext::new(2, 2).unwrap();
        let nf = rewrite_normal_form(&mono(2, &[1, 2]), &ctx).unwrap();
        let expected = &(&mono(2, &[2, 1]) + &mono(2, &[4, 3])) - &mono(2, &[3, 4]);
        assert_eq!(nf.series(), &expected);
    }

    #[test]
    fn admissible_input_is_fixed() {
        let ctx = GenusContext::new(2, 3).unwrap();
        let e = &mono(3, &[2, 1, 3]) + &mono(3, &[4]);
        assert_eq!(rewrite_normal_form(&e, &ctx).unwrap().series(), &e);
    }

    #[test]
    fn rejects_out_of_range_letters_and_degree() {
        let ctx = GenusContext::new(1, 2).unwrap();
        assert!(rewrite_normal_form(&mono(2, &[3]), &ctx).is_err());
        assert!(rewrite_normal_form(&mono(3, &[1, 1, 1]), &ctx).is_err());
        assert!(GenusContext::new(0, 2).is_err());
    }

    #[test]
    fn surface_mul_examples() {
        let ctx1 = GenusContext::new(1, 2).unwrap();
        let x1 = surface_element(mono(2, &[1]), &ctx1).unwrap();
        let x2 = surface_element(mono(2, &[2]), &ctx1).unwrap();
        assert_eq!(surface_mul(&x1, &x2, &ctx1).unwrap().series(), &mono(2, &[2, 1]));

        let ctx2 = GenusContext::new(2, 2).unwrap();
        let y1 = surface_element(mono(2, &[1]), &ctx2).unwrap();
        let y2 = surface_element(mono(2, &[2]), &ctx2).unwrap();
        assert_eq!(surface_mul(&y2, &y1, &ctx2).unwrap().series(), &mono(2, &[2, 1]));
        assert!(surface_mul(&x1, &y2, &ctx2).is_err());
    }

    #[test]
    fn graded_dim_examples() {
        assert_eq!(relator_ideal_graded_dim(1, 3).unwrap(), 4);
        assert_eq!(relator_ideal_graded_dim(2, 2).unwrap(), 15);
        assert_eq!(relator_ideal_graded_dim(1, 1).unwrap(), 2);
        assert!(matches!(relator_ideal_graded_dim(3, 8), Err(Error::Resource(_))));
    }

    #[test]
    fn admissible_monomials_form_a_basis() {
        assert!(certify_admissible_basis(1, 4).unwrap());
        assert!(certify_admissible_basis(2, 3).unwrap());
    }
}
