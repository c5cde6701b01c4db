//! Free-group words and their truncated Magnus expansion.
//!
//! A free generator `γ_i` is sent to `1 + x_i` in the algebra of noncommutative
//! polynomials in `x_1, …, x_r` with every monomial of degree above `cap` dropped.
//! That algebra is the quotient of the free group ring by the `(cap+1)`-st power
//! of its augmentation ideal, so ideal computations in the group ring reduce to
//! finite linear algebra over monomial coordinates.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linear::{Rational, Rationals, Subspace};

/// One letter of a free-group word: generator index (1-based) and exponent ±1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }

    fn inverted(self) -> Letter {
        Letter { generator: self.generator, inverse: !self.inverse }
    }
}

/// A freely reduced word in the free group. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn generator(i: usize) -> Self {
        Self { letters: vec![Letter { generator: i, inverse: false }] }
    }

    /// Builds a word from signed generator indices (`-2` is `γ_2^{-1}`), reducing freely.
    pub fn from_signed(letters: &[i64]) -> Result<Self> {
        let mut w = Word::identity();
        for &l in letters {
            if l == 0 {
                return Err(Error::Input("generator index 0 in word (indices are 1-based)".into()));
            }
            w.push(Letter { generator: l.unsigned_abs() as usize, inverse: l < 0 });
        }
        Ok(w)
    }

    fn push(&mut self, l: Letter) {
        match self.letters.last() {
            Some(&last) if last.cancels(l) => {
                self.letters.pop();
            }
            _ => self.letters.push(l),
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn to_signed(&self) -> Vec<i64> {
        self.letters
            .iter()
            .map(|l| if l.inverse { -(l.generator as i64) } else { l.generator as i64 })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn max_generator(&self) -> usize {
        self.letters.iter().map(|l| l.generator).max().unwrap_or(0)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &l in &other.letters {
            w.push(l);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inverted()).collect() }
    }

    /// `u v u^{-1} v^{-1}`.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.concat(v).concat(&u.inverse()).concat(&v.inverse())
    }

    /// Checks the no-adjacent-cancellation invariant.
    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|p| !p[0].cancels(p[1]))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|l| if l.inverse { format!("g{}^-1", l.generator) } else { format!("g{}", l.generator) })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// A noncommutative monomial `x_{i_1} ⋯ x_{i_d}` (1-based letters); empty means 1.
///
/// Ordered graded-lexicographically with `1 < 2 < … < r`, which is also the
/// coordinate order of [`MonomialSpace`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<usize>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Monomial(v)
    }

    pub fn label(&self) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        let sep = if self.0.iter().all(|&i| i < 10) { "" } else { "*" };
        self.0.iter().map(|i| format!("x{i}")).collect::<Vec<_>>().join(sep)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An element of the free algebra on `x_1, x_2, …` truncated above degree `cap`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    cap: usize,
    coeffs: BTreeMap<Monomial, Rational>,
}

impl TruncatedSeries {
    pub fn zero(cap: usize) -> Self {
        Self { cap, coeffs: BTreeMap::new() }
    }

    pub fn one(cap: usize) -> Self {
        Self::monomial(cap, Monomial::one(), Rational::one())
    }

    /// `c · m`, or zero when `m` is above the cap.
    pub fn monomial(cap: usize, m: Monomial, c: Rational) -> Self {
        let mut s = Self::zero(cap);
        s.add_term(m, c);
        s
    }

    /// The generator `x_i`.
    pub fn var(cap: usize, i: usize) -> Self {
        Self::monomial(cap, Monomial(vec![i]), Rational::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(cap: usize, terms: I) -> Self {
        let mut s = Self::zero(cap);
        for (m, c) in terms {
            s.add_term(m, c);
        }
        s
    }

    /// Adds `c · m`, dropping it when above the cap and removing zeros.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if m.degree() > self.cap || c.is_zero() {
            return;
        }
        match self.coeffs.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.coeffs.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.coeffs.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Augmentation: the constant coefficient.
    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one())
    }

    /// Lowest degree carrying a nonzero coefficient; `None` for zero.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.keys().map(Monomial::degree).min()
    }

    pub fn max_letter(&self) -> usize {
        self.coeffs.keys().flat_map(|m| m.0.iter().copied()).max().unwrap_or(0)
    }

    pub fn homogeneous_part(&self, degree: usize) -> TruncatedSeries {
        TruncatedSeries::from_terms(
            self.cap,
            self.coeffs.iter().filter(|(m, _)| m.degree() == degree).map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    /// Re-truncates at a different cap (dropping terms when lowering it).
    pub fn with_cap(&self, cap: usize) -> TruncatedSeries {
        TruncatedSeries::from_terms(cap, self.coeffs.iter().map(|(m, c)| (m.clone(), c.clone())))
    }

    pub fn scale(&self, c: &Rational) -> TruncatedSeries {
        TruncatedSeries::from_terms(self.cap, self.coeffs.iter().map(|(m, x)| (m.clone(), x * c)))
    }

    /// Truncated product. Both factors must share the same cap.
    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        if self.cap != other.cap {
            return Err(Error::Input(format!("cap mismatch: {} vs {}", self.cap, other.cap)));
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &TruncatedSeries) -> TruncatedSeries {
        let mut out = TruncatedSeries::zero(self.cap);
        for (ma, ca) in &self.coeffs {
            for (mb, cb) in &other.coeffs {
                if ma.degree() + mb.degree() <= self.cap {
                    out.add_term(ma.concat(mb), ca * cb);
                }
            }
        }
        out
    }

    /// `m_a · self · m_b`, truncated.
    pub fn sandwich(&self, left: &Monomial, right: &Monomial) -> TruncatedSeries {
        TruncatedSeries::from_terms(
            self.cap,
            self.coeffs.iter().map(|(m, c)| (left.concat(m).concat(right), c.clone())),
        )
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        assert_eq!(self.cap, rhs.cap, "cap mismatch in addition");
        let mut out = self.clone();
        for (m, c) in &rhs.coeffs {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self + &(-rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries::from_terms(self.cap, self.coeffs.iter().map(|(m, c)| (m.clone(), -c)))
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let is_unit = abs.is_one();
            match (m.degree(), is_unit) {
                (0, _) => write!(f, "{abs}")?,
                (_, true) => write!(f, "{}", m.label())?,
                (_, false) => write!(f, "{abs}{}", m.label())?,
            }
        }
        Ok(())
    }
}

/// Free product `Π m` over the truncated algebra.
pub fn mul(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries> {
    a.mul(b)
}

/// Image of a free-group word in the algebra truncated above degree `cap`.
///
/// `γ_i ↦ 1 + x_i` and `γ_i^{-1} ↦ Σ_{n=0}^{cap} (−x_i)^n`.
pub fn expand_word(w: &Word, cap: usize, rank: usize) -> Result<TruncatedSeries> {
    if let Some(l) = w.letters().iter().find(|l| l.generator == 0 || l.generator > rank) {
        return Err(Error::Input(format!("generator {} out of range 1..={rank}", l.generator)));
    }
    let mut acc = TruncatedSeries::one(cap);
    for l in w.letters() {
        acc = acc.mul_unchecked(&letter_series(*l, cap));
    }
    Ok(acc)
}

fn letter_series(l: Letter, cap: usize) -> TruncatedSeries {
    if !l.inverse {
        return &TruncatedSeries::one(cap) + &TruncatedSeries::var(cap, l.generator);
    }
    TruncatedSeries::from_terms(
        cap,
        (0..=cap).map(|n| {
            let c = if n % 2 == 0 { Rational::one() } else { -Rational::one() };
            (Monomial(vec![l.generator; n]), c)
        }),
    )
}

/// Coordinates of the truncated free algebra on `rank` letters: all monomials of
/// degree `≤ cap`, graded then lexicographic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialSpace {
    rank: usize,
    cap: usize,
    offsets: Vec<usize>,
}

impl MonomialSpace {
    pub fn new(rank: usize, cap: usize) -> Self {
        let mut offsets = Vec::with_capacity(cap + 2);
        let mut acc = 0usize;
        let mut block = 1usize;
        for _ in 0..=cap {
            offsets.push(acc);
            acc += block;
            block = block.saturating_mul(rank);
        }
        offsets.push(acc);
        Self { rank, cap, offsets }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn dim(&self) -> usize {
        self.offsets[self.cap + 1]
    }

    /// Coordinate range of the degree-`d` monomials.
    pub fn degree_range(&self, d: usize) -> std::ops::Range<usize> {
        self.offsets[d]..self.offsets[d + 1]
    }

    pub fn index(&self, m: &Monomial) -> Result<usize> {
        if m.degree() > self.cap {
            return Err(Error::Input(format!("monomial {} above cap {}", m.label(), self.cap)));
        }
        let mut idx = 0usize;
        for &i in &m.0 {
            if i == 0 || i > self.rank {
                return Err(Error::Input(format!("letter x{i} out of range 1..={}", self.rank)));
            }
            idx = idx * self.rank + (i - 1);
        }
        Ok(self.offsets[m.degree()] + idx)
    }

    pub fn monomial(&self, index: usize) -> Monomial {
        assert!(index < self.dim(), "coordinate {index} out of range");
        let d = (0..=self.cap).find(|&d| index < self.offsets[d + 1]).expect("index in range");
        let mut rest = index - self.offsets[d];
        let mut letters = vec![0; d];
        for slot in letters.iter_mut().rev() {
            *slot = rest % self.rank + 1;
            rest /= self.rank;
        }
        Monomial(letters)
    }

    pub fn monomials(&self) -> impl Iterator<Item = Monomial> + '_ {
        (0..self.dim()).map(|i| self.monomial(i))
    }

    /// All monomials of exactly degree `d`, in coordinate order.
    pub fn monomials_of_degree(&self, d: usize) -> impl Iterator<Item = Monomial> + '_ {
        self.degree_range(d).map(|i| self.monomial(i))
    }

    pub fn labels(&self) -> Arc<Vec<String>> {
        Arc::new(self.monomials().map(|m| m.label()).collect())
    }

    pub fn vector(&self, s: &TruncatedSeries) -> Result<Vec<Rational>> {
        if s.cap() > self.cap {
            if let Some((m, _)) = s.terms().find(|(m, _)| m.degree() > self.cap) {
                return Err(Error::Input(format!("term {} above cap {}", m.label(), self.cap)));
            }
        }
        let mut v = vec![Rational::zero(); self.dim()];
        for (m, c) in s.terms() {
            v[self.index(m)?] = c.clone();
        }
        Ok(v)
    }

    pub fn series(&self, v: &[Rational]) -> TruncatedSeries {
        TruncatedSeries::from_terms(
            self.cap,
            v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (self.monomial(i), c.clone())),
        )
    }

    pub fn subspace(&self, vectors: &[Vec<Rational>]) -> Result<Subspace> {
        Subspace::span(Rationals, vectors, self.dim())?.with_labels(self.labels())
    }
}

/// Upper bound on coordinates for the exact ideal engines.
pub const MAX_COORDINATES: usize = 1_000_000;

pub(crate) fn check_feasible(rank: usize, cap: usize) -> Result<()> {
    let top = (rank as u128).checked_pow(cap as u32 + 1);
    match top {
        Some(n) if n <= MAX_COORDINATES as u128 => Ok(()),
        _ => Err(Error::Resource(format!(
            "{rank}^{} exceeds the {MAX_COORDINATES}-coordinate bound",
            cap + 1
        ))),
    }
}

/// Image of `I^q` at truncation `cap`: the span of all monomials of degree in `[q, cap]`.
///
/// `q = cap + 1` gives the zero subspace; larger `q` is a range error.
pub fn power_ideal_image(q: usize, cap: usize, rank: usize) -> Result<Subspace> {
    if q == 0 {
        return Err(Error::Range("power of the augmentation ideal must be at least 1".into()));
    }
    if q > cap + 1 {
        return Err(Error::Range(format!("I^{q} is invisible at cap {cap}; need q ≤ cap + 1")));
    }
    check_feasible(rank, cap)?;
    let space = MonomialSpace::new(rank, cap);
    let n = space.dim();
    let vectors: Vec<Vec<Rational>> = (space.offsets[q]..n)
        .map(|i| {
            let mut v = vec![Rational::zero(); n];
            v[i] = Rational::one();
            v
        })
        .collect();
    space.subspace(&vectors)
}

/// Image of the two-sided ideal generated by `gens`: the span of
/// `m_a · g · m_b` over monomials with `deg m_a + deg m_b ≤ cap − val(g)`.
pub fn two_sided_ideal_image(gens: &[TruncatedSeries], cap: usize, rank: usize) -> Result<Subspace> {
    if gens.is_empty() {
        return Err(Error::Input("two-sided ideal needs at least one generator".into()));
    }
    check_feasible(rank, cap)?;
    let space = MonomialSpace::new(rank, cap);
    let mut sub = Subspace::zero(Rationals, space.dim()).with_labels(space.labels())?;
    for (k, g) in gens.iter().enumerate() {
        if !g.constant_term().is_zero() {
            return Err(Error::Input(format!(
                "generator {k} has nonzero constant term; the ideal would be the whole algebra"
            )));
        }
        let g = g.with_cap(cap);
        let Some(val) = g.valuation() else { continue };
        for total in 0..=(cap - val) {
            for left_deg in 0..=total {
                for left in space.monomials_of_degree(left_deg) {
                    for right in space.monomials_of_degree(total - left_deg) {
                        let v = space.vector(&g.sandwich(&left, &right))?;
                        sub.insert(&v)?;
                    }
                }
            }
        }
    }
    Ok(sub)
}

/// `I · S`: the span of `x_i · b` over letters `x_i` and basis vectors `b` of `S`.
///
/// When `S` is a left ideal image this is the image of the product with the
/// augmentation ideal.
pub fn augmentation_times(sub: &Subspace, space: &MonomialSpace) -> Result<Subspace> {
    let mut out = Subspace::zero(Rationals, space.dim()).with_labels(space.labels())?;
    for b in sub.basis() {
        let s = space.series(b);
        for i in 1..=space.rank() {
            let prod = TruncatedSeries::var(space.cap(), i).mul(&s)?;
            out.insert(&space.vector(&prod)?)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::rat;

    fn m(letters: &[usize]) -> Monomial {
        Monomial(letters.to_vec())
    }

    fn series(cap: usize, terms: &[(&[usize], i64)]) -> TruncatedSeries {
        TruncatedSeries::from_terms(cap, terms.iter().map(|(l, c)| (m(l), rat(*c))))
    }

    #[test]
    fn words_reduce_freely() {
        let w = Word::from_signed(&[1, 2, -2, -1, 3]).unwrap();
        assert_eq!(w.to_signed(), vec![3]);
        assert!(w.is_reduced());
        assert!(Word::from_signed(&[0]).is_err());
    }

    #[test]
    fn expand_generator() {
        let s = expand_word(&Word::generator(1), 3, 2).unwrap();
        assert_eq!(s, series(3, &[(&[], 1), (&[1], 1)]));
    }

    #[test]
    fn expand_inverse_generator_is_truncated_geometric_series() {
        let s = expand_word(&Word::from_signed(&[-1]).unwrap(), 2, 2).unwrap();
        assert_eq!(s, series(2, &[(&[], 1), (&[1], -1), (&[1, 1], 1)]));
        assert_eq!(s.to_string(), "1 - x1 + x1x1");
    }

    #[test]
    fn expand_commutator() {
        let w = Word::commutator(&Word::generator(1), &Word::generator(2));
        let s = expand_word(&w, 2, 2).unwrap();
        assert_eq!(s, series(2, &[(&[], 1), (&[1, 2], 1), (&[2, 1], -1)]));
    }

    #[test]
    fn expand_rejects_out_of_range_generator() {
        assert!(expand_word(&Word::generator(3), 2, 2).is_err());
    }

    #[test]
    fn mul_examples() {
        let a = series(2, &[(&[], 1), (&[1], 1)]);
        let b = series(2, &[(&[], 1), (&[1], -1), (&[1, 1], 1)]);
        assert_eq!(mul(&a, &b).unwrap(), TruncatedSeries::one(2));
        let x1 = TruncatedSeries::var(1, 1);
        let x2 = TruncatedSeries::var(1, 2);
        assert!(mul(&x1, &x2).unwrap().is_zero());
        let p = mul(&series(2, &[(&[], 1), (&[1], 1)]), &series(2, &[(&[], 1), (&[2], 1)])).unwrap();
        assert_eq!(p, series(2, &[(&[], 1), (&[1], 1), (&[2], 1), (&[1, 2], 1)]));
        assert!(mul(&TruncatedSeries::one(1), &TruncatedSeries::one(2)).is_err());
    }

    #[test]
    fn monomial_space_round_trip_and_order() {
        let sp = MonomialSpace::new(2, 3);
        assert_eq!(sp.dim(), 15);
        assert_eq!(sp.monomial(0), Monomial::one());
        assert_eq!(sp.monomial(1), m(&[1]));
        assert_eq!(sp.monomial(3), m(&[1, 1]));
        assert_eq!(sp.monomial(4), m(&[1, 2]));
        for i in 0..sp.dim() {
            assert_eq!(sp.index(&sp.monomial(i)).unwrap(), i);
        }
        let all: Vec<Monomial> = sp.monomials().collect();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn power_ideal_dimensions() {
        assert_eq!(power_ideal_image(2, 2, 2).unwrap().dim(), 4);
        assert_eq!(power_ideal_image(1, 2, 2).unwrap().dim(), 6);
        assert_eq!(power_ideal_image(3, 2, 2).unwrap().dim(), 0);
        assert!(matches!(power_ideal_image(4, 2, 2), Err(Error::Range(_))));
    }

    #[test]
    fn two_sided_ideal_of_a_letter() {
        let s = two_sided_ideal_image(&[TruncatedSeries::var(2, 1)], 2, 2).unwrap();
        assert_eq!(s.dim(), 4);
        let sp = MonomialSpace::new(2, 2);
        for mono in [m(&[1]), m(&[1, 1]), m(&[1, 2]), m(&[2, 1])] {
            let v = sp.vector(&TruncatedSeries::monomial(2, mono, rat(1))).unwrap();
            assert!(s.contains(&v).unwrap());
        }
    }

    #[test]
    fn two_sided_ideal_of_commutator_has_no_room() {
        let c = series(2, &[(&[1, 2], 1), (&[2, 1], -1)]);
        assert_eq!(two_sided_ideal_image(&[c], 2, 2).unwrap().dim(), 1);
    }

    #[test]
    fn two_sided_ideal_rejects_bad_generators() {
        assert!(two_sided_ideal_image(&[], 2, 2).is_err());
        assert!(two_sided_ideal_image(&[TruncatedSeries::one(2)], 2, 2).is_err());
    }

    #[test]
    fn feasibility_bound() {
        assert!(matches!(power_ideal_image(1, 20, 4), Err(Error::Resource(_))));
    }
}
