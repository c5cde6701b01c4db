//! The ideal tower `J_q = I^q + R[Γ]I_Σ` for a torsion-free Fuchsian group with cusps.
//!
//! With `s ≥ 1` cusps the group is free on `r = 2g+s−1` letters: the hyperbolic
//! generators `γ_1..γ_{2g}` and the parabolics `p_1..p_{s−1}`, while
//! `p_s = ([γ_1,γ_2]⋯[γ_{2g−1},γ_{2g}] p_1⋯p_{s−1})^{−1}` is dependent.
//!
//! Both `J_q/J_{q+1}` and `J_q/IJ_q` contain `I^{q+1}` in the denominator, so
//! they are computed exactly in the Magnus algebra truncated at degree `q`.
//! There `I^{q+1}` vanishes, the parabolic ideal is the two-sided ideal generated
//! by the series of `p_j − 1` (all `j`, including the dependent one), and
//! `IJ_q` is the letter-multiple of that ideal.

use crate::error::{Error, Result};
use crate::linear::{quotient_dim, Rational, Subspace};
use crate::magnus::{
    augmentation_times, check_feasible, expand_word, power_ideal_image, two_sided_ideal_image, MonomialSpace,
    TruncatedSeries, Word,
};
use crate::surface::surface_relator;

/// A torsion-free Fuchsian signature with at least one cusp, with its free presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FuchsianSignature {
    g: usize,
    s: usize,
    dependent_parabolic: Word,
}

impl FuchsianSignature {
    pub fn new(g: usize, s: usize) -> Result<Self> {
        if s == 0 {
            return Err(Error::Input("the free presentation needs at least one cusp (s ≥ 1)".into()));
        }
        let rank = 2 * g + s - 1;
        if rank == 0 {
            return Err(Error::Input(format!("signature (g={g}, s={s}) gives a trivial group")));
        }
        let mut prefix = surface_relator(g);
        for j in 1..s {
            prefix = prefix.concat(&Word::generator(2 * g + j));
        }
        let sig = Self { g, s, dependent_parabolic: prefix.inverse() };
        sig.validate()?;
        Ok(sig)
    }

    /// Builds a signature with an explicitly supplied `p_s` word, checking it.
    pub fn with_dependent_parabolic(g: usize, s: usize, word: Word) -> Result<Self> {
        let mut sig = Self::new(g, s)?;
        sig.dependent_parabolic = word;
        sig.validate()?;
        Ok(sig)
    }

    fn validate(&self) -> Result<()> {
        if !self.dependent_parabolic.is_reduced() {
            return Err(Error::Input("dependent parabolic word is not freely reduced".into()));
        }
        if self.dependent_parabolic.max_generator() > self.rank() {
            return Err(Error::Input("dependent parabolic uses a generator out of range".into()));
        }
        if !self.relator().is_empty() {
            return Err(Error::Input(format!(
                "relator does not reduce to the identity (left with {})",
                self.relator()
            )));
        }
        Ok(())
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    pub fn cusps(&self) -> usize {
        self.s
    }

    /// Free rank `2g + s − 1`.
    pub fn rank(&self) -> usize {
        2 * self.g + self.s - 1
    }

    pub fn hyperbolic_letters(&self) -> std::ops::RangeInclusive<usize> {
        1..=2 * self.g
    }

    /// Letters of the independent parabolics `p_1..p_{s−1}`.
    pub fn parabolic_letters(&self) -> std::ops::Range<usize> {
        2 * self.g + 1..2 * self.g + self.s
    }

    pub fn dependent_parabolic(&self) -> &Word {
        &self.dependent_parabolic
    }

    /// `p_1, …, p_s` as words in the free generators.
    pub fn parabolic_words(&self) -> Vec<Word> {
        let mut words: Vec<Word> = self.parabolic_letters().map(Word::generator).collect();
        words.push(self.dependent_parabolic.clone());
        words
    }

    /// `[γ_1,γ_2]⋯[γ_{2g−1},γ_{2g}] p_1⋯p_s`, freely reduced; always the identity.
    pub fn relator(&self) -> Word {
        self.parabolic_words().iter().fold(surface_relator(self.g), |acc, p| acc.concat(p))
    }

    /// Series of `p_j − 1` truncated at `cap`.
    pub fn parabolic_series(&self, cap: usize) -> Result<Vec<TruncatedSeries>> {
        self.parabolic_words()
            .iter()
            .map(|w| Ok(&expand_word(w, cap, self.rank())? - &TruncatedSeries::one(cap)))
            .collect()
    }
}

/// Images of `J_q`, `IJ_q` and `J_{q+1}` in the algebra truncated at degree `q`.
#[derive(Clone, Debug)]
pub struct JqModel {
    signature: FuchsianSignature,
    q: usize,
    space: MonomialSpace,
    parabolic_ideal: Subspace,
    jq: Subspace,
    i_jq: Subspace,
    jq_next: Subspace,
}

impl JqModel {
    pub fn signature(&self) -> &FuchsianSignature {
        &self.signature
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn cap(&self) -> usize {
        self.q
    }

    pub fn space(&self) -> &MonomialSpace {
        &self.space
    }

    pub fn parabolic_ideal(&self) -> &Subspace {
        &self.parabolic_ideal
    }

    pub fn jq_image(&self) -> &Subspace {
        &self.jq
    }

    pub fn i_jq_image(&self) -> &Subspace {
        &self.i_jq
    }

    pub fn jq_next_image(&self) -> &Subspace {
        &self.jq_next
    }
}

/// Builds the truncated images of `J_q`, `IJ_q` and `J_{q+1}`.
pub fn build_jq(sig: &FuchsianSignature, q: usize) -> Result<JqModel> {
    if q == 0 {
        return Err(Error::Input("order q must be at least 1".into()));
    }
    let rank = sig.rank();
    check_feasible(rank, q)?;
    let cap = q;
    let space = MonomialSpace::new(rank, cap);
    let parabolic_ideal = two_sided_ideal_image(&sig.parabolic_series(cap)?, cap, rank)?;
    let slice = power_ideal_image(q, cap, rank)?;
    let jq = slice.sum(&parabolic_ideal)?;
    // I·J_q = I^{q+1} + I·R[Γ]I_Σ, and I^{q+1} vanishes at this cap.
    let i_jq = augmentation_times(&parabolic_ideal, &space)?;
    // J_{q+1} = I^{q+1} + R[Γ]I_Σ.
    let jq_next = parabolic_ideal.clone();
    debug_assert!(i_jq.is_subspace_of(&jq)?);
    Ok(JqModel { signature: sig.clone(), q, space, parabolic_ideal, jq, i_jq, jq_next })
}

/// `dim J_q/IJ_q`, the dimension of `H^1_q(Γ, R)` for the trivial module.
pub fn h1_dim_n0(sig: &FuchsianSignature, q: usize) -> Result<usize> {
    let m = build_jq(sig, q)?;
    quotient_dim(&m.jq, &m.i_jq)
}

/// `dim J_q/J_{q+1}`, the dimension of the parabolic `H^1_{q,par}(Γ, R)`.
pub fn h1_par_dim_n0(sig: &FuchsianSignature, q: usize) -> Result<usize> {
    let m = build_jq(sig, q)?;
    quotient_dim(&m.jq, &m.jq_next)
}

/// Rank of the classes of `p_1 − 1, …, p_s − 1` in `J_q/IJ_q`.
pub fn parabolic_class_rank(sig: &FuchsianSignature, q: usize) -> Result<usize> {
    let m = build_jq(sig, q)?;
    parabolic_class_rank_in(&m)
}

pub fn parabolic_class_rank_in(m: &JqModel) -> Result<usize> {
    let classes: Vec<Vec<Rational>> = m
        .signature
        .parabolic_series(m.cap())?
        .iter()
        .map(|s| m.space.vector(s))
        .collect::<Result<_>>()?;
    m.i_jq.quotient_rank(&classes)
}

/// Whether `p_j − 1` lies in `J_q` for every `j` (it always should).
pub fn parabolics_in_jq(m: &JqModel) -> Result<bool> {
    for s in m.signature.parabolic_series(m.cap())? {
        if !m.jq.contains(&m.space.vector(&s)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Expected rank of the parabolic classes.
///
/// The product `p_1⋯p_s` is a product of commutators, so the classes satisfy one
/// linear relation whenever that product is invisible in `J_q/IJ_q`: always for
/// genus 0 (the product is trivial), and at `q = 1` for any genus (it lies in
/// `I²`). Otherwise the `s` classes are independent.
pub fn expected_parabolic_class_rank(g: usize, s: usize, q: usize) -> usize {
    if g == 0 || q == 1 {
        s - 1
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signature_wiring() {
        let sig = FuchsianSignature::new(1, 2).unwrap();
        assert_eq!(sig.rank(), 3);
        assert_eq!(sig.hyperbolic_letters(), 1..=2);
        assert_eq!(sig.parabolic_letters(), 3..4);
        assert!(sig.relator().is_empty());
        // p_2 = ([γ1,γ2] p1)^{-1} = p1^{-1} γ2 γ1 γ2^{-1} γ1^{-1}
        assert_eq!(sig.dependent_parabolic().to_signed(), vec![-3, 2, 1, -2, -1]);
        assert!(FuchsianSignature::new(1, 0).is_err());
        assert!(FuchsianSignature::new(0, 1).is_err());
    }

    #[test]
    fn bad_dependent_parabolic_rejected() {
        let w = Word::from_signed(&[1]).unwrap();
        assert!(FuchsianSignature::with_dependent_parabolic(1, 1, w).is_err());
    }

    #[test]
    fn g1s1_q1_model() {
        let sig = FuchsianSignature::new(1, 1).unwrap();
        let m = build_jq(&sig, 1).unwrap();
        assert_eq!(m.jq_image().dim(), 2);
        assert_eq!(m.jq_next_image().dim(), 0);
    }

    #[test]
    fn g0s3_q1_is_all_of_degree_one() {
        let sig = FuchsianSignature::new(0, 3).unwrap();
        let m = build_jq(&sig, 1).unwrap();
        assert_eq!(m.jq_image(), &power_ideal_image(1, 1, 2).unwrap().with_labels(m.space().labels()).unwrap());
    }

    #[test]
    fn containments_hold() {
        let sig = FuchsianSignature::new(1, 2).unwrap();
        let m = build_jq(&sig, 2).unwrap();
        assert!(m.i_jq_image().is_subspace_of(m.jq_image()).unwrap());
        assert!(m.jq_next_image().is_subspace_of(m.jq_image()).unwrap());
        assert!(parabolics_in_jq(&m).unwrap());
    }

    #[test]
    fn h1_examples() {
        let g1s1 = FuchsianSignature::new(1, 1).unwrap();
        let g0s3 = FuchsianSignature::new(0, 3).unwrap();
        assert_eq!(h1_dim_n0(&g1s1, 1).unwrap(), 2);
        assert_eq!(h1_dim_n0(&g1s1, 2).unwrap(), 4);
        assert_eq!(h1_dim_n0(&g0s3, 2).unwrap(), 2);
    }

    #[test]
    fn h1_par_examples() {
        assert_eq!(h1_par_dim_n0(&FuchsianSignature::new(1, 1).unwrap(), 2).unwrap(), 3);
        assert_eq!(h1_par_dim_n0(&FuchsianSignature::new(0, 3).unwrap(), 3).unwrap(), 0);
        assert_eq!(h1_par_dim_n0(&FuchsianSignature::new(2, 1).unwrap(), 2).unwrap(), 15);
    }

    #[test]
    fn parabolic_rank_examples() {
        let rank = |g, s, q| parabolic_class_rank(&FuchsianSignature::new(g, s).unwrap(), q).unwrap();
        assert_eq!(rank(1, 1, 2), 1);
        // p_1 p_2 p_3 = 1 for genus 0, so the three classes span only two dimensions.
        assert_eq!(rank(0, 3, 2), 2);
        // At q = 1 the class of p_1 p_2 = [γ1,γ2]^{-1} vanishes in I/I².
        assert_eq!(rank(1, 2, 1), 1);
        assert_eq!(rank(1, 2, 2), 2);
    }

    #[test]
    fn resource_bound() {
        let sig = FuchsianSignature::new(3, 3).unwrap();
        assert!(matches!(build_jq(&sig, 9), Err(Error::Resource(_))));
    }
}
