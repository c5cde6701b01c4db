//! Exact dimension formulas for higher-order cohomology of Fuchsian groups.
//!
//! `N_g(q)` counts words of length `q` over `2g` letters that avoid the adjacent
//! pattern `(1,2)`. It satisfies `N_g(q+1) = 2g N_g(q) − N_g(q−1)` and the
//! closed form `α^q + α^{q−2} + ⋯ + α^{−q}` with `α = g + √(g²−1)`, evaluated
//! here in `Z[√(g²−1)]` so that no rounding is involved. Genus 0 follows the
//! convention `N_0(q) = 0` for `q ≥ 1`.

use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// `a + b√d` with integer `a`, `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticInteger {
    pub a: BigInt,
    pub b: BigInt,
    pub d: BigInt,
}

impl QuadraticInteger {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, d: impl Into<BigInt>) -> Self {
        Self { a: a.into(), b: b.into(), d: d.into() }
    }

    pub fn one(d: &BigInt) -> Self {
        Self { a: BigInt::one(), b: BigInt::zero(), d: d.clone() }
    }

    pub fn conjugate(&self) -> Self {
        Self { a: self.a.clone(), b: -&self.b, d: self.d.clone() }
    }

    /// `a² − d b²`.
    pub fn norm(&self) -> BigInt {
        &self.a * &self.a - &self.d * &self.b * &self.b
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one(&self.d);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl Add for &QuadraticInteger {
    type Output = QuadraticInteger;
    fn add(self, rhs: &QuadraticInteger) -> QuadraticInteger {
        assert_eq!(self.d, rhs.d, "mixed quadratic rings");
        QuadraticInteger { a: &self.a + &rhs.a, b: &self.b + &rhs.b, d: self.d.clone() }
    }
}

impl Mul for &QuadraticInteger {
    type Output = QuadraticInteger;
    fn mul(self, rhs: &QuadraticInteger) -> QuadraticInteger {
        assert_eq!(self.d, rhs.d, "mixed quadratic rings");
        QuadraticInteger {
            a: &self.a * &rhs.a + &self.d * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            d: self.d.clone(),
        }
    }
}

impl fmt::Display for QuadraticInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}√{}", self.a, self.b, self.d)
    }
}

/// `α = g + √(g²−1)`.
pub fn alpha(g: u64) -> QuadraticInteger {
    let g = BigInt::from(g);
    let d = &g * &g - 1;
    QuadraticInteger { a: g, b: BigInt::one(), d }
}

/// `Σ_{j=0}^{q} α^{q−2j}` in `Z[√(g²−1)]`, using `α^{−1} = ᾱ` (norm 1).
pub fn n_g_closed_form_exact(g: u64, q: u32) -> QuadraticInteger {
    let a = alpha(g);
    let abar = a.conjugate();
    let d = a.d.clone();
    (0..=q).fold(QuadraticInteger::new(0, 0, d), |acc, j| {
        let k = q as i64 - 2 * j as i64;
        let term = if k >= 0 { a.pow(k as u32) } else { abar.pow((-k) as u32) };
        &acc + &term
    })
}

fn to_u64(x: &BigInt, what: &str) -> u64 {
    x.to_u64().unwrap_or_else(|| panic!("{what} = {x} does not fit in u64"))
}

/// `N_g(q)` from the closed form (genus 0 by convention).
pub fn n_g_closed_form(g: u64, q: u32) -> u64 {
    if g == 0 {
        return if q == 0 { 1 } else { 0 };
    }
    let v = n_g_closed_form_exact(g, q);
    assert!(v.b.is_zero(), "irrational part {} survived in N_{g}({q})", v.b);
    to_u64(&v.a, "N_g(q)")
}

/// `N_g(q)` from the three-term recursion (genus 0 by convention).
///
/// Panics if the value leaves the `u64` range.
pub fn n_g(g: u64, q: u32) -> u64 {
    if q == 0 {
        return 1;
    }
    if g == 0 {
        return 0;
    }
    let two_g = 2 * g as u128;
    let (mut prev, mut cur) = (1u128, two_g);
    for _ in 1..q {
        let next = two_g
            .checked_mul(cur)
            .and_then(|x| x.checked_sub(prev))
            .expect("N_g(q) recursion overflow");
        prev = cur;
        cur = next;
    }
    u64::try_from(cur).unwrap_or_else(|_| panic!("N_{g}({q}) does not fit in u64"))
}

/// `N_g(q)` by enumerating tuples over `{1..2g}` that avoid an adjacent `(1,2)`.
///
/// Counts via a two-state automaton (last letter is 1 or not), so it stays
/// linear in `q`; the brute-force tuple filter lives in the tests.
pub fn n_g_enumerated(g: u64, q: u32) -> u64 {
    if q == 0 {
        return 1;
    }
    if g == 0 {
        return 0;
    }
    let letters = 2 * g as u128;
    let (mut ends_one, mut other) = (1u128, letters - 1);
    for _ in 1..q {
        let total = ends_one + other;
        let new_ends_one = total;
        let new_other = other * (letters - 1) + ends_one * (letters - 2);
        ends_one = new_ends_one;
        other = new_other;
    }
    u64::try_from(ends_one + other).expect("N_g(q) fits in u64")
}

/// `N̄_g(q) = 1 + N_g(1) + ⋯ + N_g(q)`.
pub fn bar_n(g: u64, q: u32) -> u64 {
    (0..=q).map(|k| n_g(g, k)).sum()
}

pub fn check_weight(n: u64) -> Result<()> {
    if n % 2 != 0 {
        return Err(Error::Input(format!("weight parameter n = {n} must be even")));
    }
    Ok(())
}

/// Validates a torsion-free signature `(g, s)` for the dimension tables.
///
/// The formulas need `2g + s ≥ 2`; below that some entries would go negative.
pub fn check_signature(g: u64, s: u64) -> Result<()> {
    if 2 * g + s < 2 {
        return Err(Error::Input(format!("signature (g={g}, s={s}) needs 2g + s ≥ 2")));
    }
    Ok(())
}

fn check_order(q: u32) -> Result<()> {
    if q == 0 {
        return Err(Error::Input("order q must be at least 1".into()));
    }
    Ok(())
}

/// Classical `dim H^1(Γ, V_n)`.
pub fn dim_h1_classical(g: u64, s: u64, n: u64) -> Result<u64> {
    check_weight(n)?;
    check_signature(g, s)?;
    Ok(match (n, s) {
        (0, 0) => 2 * g,
        (0, _) => 2 * g + s - 1,
        _ => (2 * g + s - 2) * (n + 1),
    })
}

/// Classical parabolic `dim H^1_par(Γ, V_n)`.
pub fn dim_h1_par_classical(g: u64, s: u64, n: u64) -> Result<u64> {
    check_weight(n)?;
    check_signature(g, s)?;
    if n == 0 {
        return Ok(2 * g);
    }
    signed_to_u64((2 * g as i64 - 2) * (n as i64 + 1) + (s * n) as i64)
}

fn signed_to_u64(v: i64) -> Result<u64> {
    u64::try_from(v).map_err(|_| Error::Input(format!("dimension formula evaluates to {v} < 0")))
}

/// `dim H^1_q(Γ, V_n)`.
pub fn dim_h1(g: u64, s: u64, n: u64, q: u32) -> Result<u64> {
    check_weight(n)?;
    check_signature(g, s)?;
    check_order(q)?;
    let bar = bar_n(g, q - 1);
    Ok(match (n, s) {
        (0, 0) => n_g(g, q),
        (0, _) => bar * (2 * g + s - 2) + 1,
        _ => bar * (2 * g + s - 2) * (n + 1),
    })
}

/// `dim H^1_{q,par}(Γ, V_n)`.
pub fn dim_h1_par(g: u64, s: u64, n: u64, q: u32) -> Result<u64> {
    check_weight(n)?;
    check_signature(g, s)?;
    check_order(q)?;
    if n == 0 {
        return Ok(n_g(g, q));
    }
    Ok(bar_n(g, q - 1) * dim_h1_par_classical(g, s, n)?)
}

/// `dim S_{n+2}(Γ) = (2g−2)(n+1) + ns`, reported verbatim.
///
/// At `n = 0` this does not agree with the complex dimension `g` of weight-2
/// cusp forms; callers get a [`ConventionFlag`] alongside the value.
pub fn dim_cusp_classical(g: u64, s: u64, n: u64) -> Result<(i64, Option<ConventionFlag>)> {
    check_weight(n)?;
    check_signature(g, s)?;
    let v = (2 * g as i64 - 2) * (n as i64 + 1) + (n * s) as i64;
    let flag = (n == 0).then_some(ConventionFlag::WeightTwoCuspDimension);
    Ok((v, flag))
}

/// `dim Ext²_A(A/J_q, R)` for `n = s = 0`, which is `N_g(q−1)`.
///
/// With cusps present (`s > 0`) the Ext² group vanishes and the closed-surface
/// formula does not apply, so asking for it is a domain error.
pub fn dim_ext2_s0(g: u64, s: u64, n: u64, q: u32) -> Result<u64> {
    check_weight(n)?;
    check_order(q)?;
    if s > 0 {
        return Err(Error::Domain(format!("Ext² vanishes for s = {s} > 0; the s = 0 formula is undefined")));
    }
    if n > 0 {
        return Ok(0);
    }
    Ok(n_g(g, q - 1))
}

/// Marks formula values whose interpretation depends on a dimension convention.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ConventionFlag {
    /// `(2g−2)(n+1)+ns` at `n = 0` gives `2g−2`, not the complex dimension `g`.
    WeightTwoCuspDimension,
}

/// Auxiliary classical quantities for one parameter set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuxDims {
    pub dim_cusp_classical: i64,
    pub cusp_convention: Option<ConventionFlag>,
    /// `None` when `s > 0`.
    pub dim_ext2_s0: Option<u64>,
    pub dim_h1_classical: u64,
}

pub fn dim_aux(g: u64, s: u64, n: u64, q: u32) -> Result<AuxDims> {
    let (dim_cusp_classical, cusp_convention) = dim_cusp_classical(g, s, n)?;
    let dim_ext2_s0 = if s == 0 { Some(dim_ext2_s0(g, s, n, q)?) } else { None };
    Ok(AuxDims { dim_cusp_classical, cusp_convention, dim_ext2_s0, dim_h1_classical: dim_h1_classical(g, s, n)? })
}

/// Which exact sequence an identity comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SequenceBranch {
    /// `n ≥ 1`: `0 → H_q → H_{q+1} → H^1(Γ,V)^{N_g(q)} → 0`.
    A,
    /// `n = 0, s > 0`: `0 → R^{N_g(q)} → H_q → H_{q+1} → H^1(Γ,R)^{N_g(q)} → 0`.
    B,
    /// `n = 0 = s`: as (B) followed by `→ R^{N_g(q−1)} → 0`.
    C,
    /// Parabolic, `n ≥ 1`: `0 → H_{q,par} → H_{q+1,par} → H^1_par(Γ,V)^{N_g(q)} → 0`.
    Parabolic,
}

/// One alternating-sum identity of an exact sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceIdentity {
    pub branch: SequenceBranch,
    pub q: u32,
    /// Dimensions of the terms, in sequence order.
    pub terms: Vec<u64>,
    pub alternating_sum: i128,
}

impl SequenceIdentity {
    pub fn holds(&self) -> bool {
        self.alternating_sum == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceReport {
    pub g: u64,
    pub s: u64,
    pub n: u64,
    pub identities: Vec<SequenceIdentity>,
}

impl SequenceReport {
    pub fn all_hold(&self) -> bool {
        self.identities.iter().all(SequenceIdentity::holds)
    }
}

fn alternating(terms: &[u64]) -> i128 {
    terms.iter().enumerate().map(|(i, &t)| if i % 2 == 0 { t as i128 } else { -(t as i128) }).sum()
}

/// Checks that every applicable exact sequence has vanishing alternating sum
/// of dimensions, for `q = 1..=q_max`.
pub fn sequence_consistency(g: u64, s: u64, n: u64, q_max: u32) -> Result<SequenceReport> {
    check_weight(n)?;
    check_signature(g, s)?;
    let h1 = dim_h1_classical(g, s, n)?;
    let mut identities = Vec::new();
    for q in 1..=q_max {
        let nq = n_g(g, q);
        let (hq, hq1) = (dim_h1(g, s, n, q)?, dim_h1(g, s, n, q + 1)?);
        let (branch, terms) = match (n, s) {
            (0, 0) => (SequenceBranch::C, vec![nq, hq, hq1, nq * h1, n_g(g, q - 1)]),
            (0, _) => (SequenceBranch::B, vec![nq, hq, hq1, nq * h1]),
            _ => (SequenceBranch::A, vec![hq, hq1, nq * h1]),
        };
        identities.push(SequenceIdentity { branch, q, alternating_sum: alternating(&terms), terms });
        if n > 0 {
            let hp = dim_h1_par_classical(g, s, n)?;
            let terms = vec![dim_h1_par(g, s, n, q)?, dim_h1_par(g, s, n, q + 1)?, nq * hp];
            identities.push(SequenceIdentity {
                branch: SequenceBranch::Parabolic,
                q,
                alternating_sum: alternating(&terms),
                terms,
            });
        }
    }
    Ok(SequenceReport { g, s, n, identities })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n_g_anchor_values() {
        assert_eq!(n_g(2, 2), 15);
        assert_eq!(n_g(0, 5), 0);
        assert_eq!(n_g(2, 3), 56);
        for g in 1..5 {
            assert_eq!(n_g(g, 1), 2 * g);
            assert_eq!(n_g(g, 2), (2 * g) * (2 * g) - 1);
        }
        assert_eq!(n_g(0, 0), 1);
    }

    #[test]
    fn closed_form_is_rational_and_matches() {
        for g in 1..=4 {
            for q in 0..=8 {
                let v = n_g_closed_form_exact(g, q);
                assert!(v.b.is_zero(), "g={g} q={q}: {v}");
                assert_eq!(n_g_closed_form(g, q), n_g(g, q));
            }
        }
    }

    #[test]
    fn alpha_has_norm_one() {
        for g in 1..6 {
            assert_eq!(alpha(g).norm(), BigInt::one());
        }
    }

    #[test]
    fn conjugation_is_an_involution() {
        let x = QuadraticInteger::new(3, -7, 8);
        assert_eq!(x.conjugate().conjugate(), x);
    }

    #[test]
    fn bar_n_examples() {
        assert_eq!(bar_n(1, 2), 6);
        assert_eq!(bar_n(0, 4), 1);
        assert_eq!(bar_n(2, 1), 5);
        assert_eq!(bar_n(3, 0), 1);
    }

    #[test]
    fn dim_h1_examples() {
        assert_eq!(dim_h1(1, 1, 0, 1).unwrap(), 2);
        assert_eq!(dim_h1(1, 1, 2, 2).unwrap(), 9);
        assert_eq!(dim_h1(1, 0, 0, 3).unwrap(), 4);
        assert!(matches!(dim_h1(1, 1, 1, 1), Err(Error::Input(_))));
    }

    #[test]
    fn dim_h1_par_examples() {
        assert_eq!(dim_h1_par(2, 1, 2, 1).unwrap(), 8);
        assert_eq!(dim_h1_par(1, 2, 0, 2).unwrap(), 3);
        assert_eq!(dim_h1_par(1, 1, 0, 1).unwrap(), 2);
        assert!(dim_h1_par(1, 1, 3, 1).is_err());
    }

    #[test]
    fn aux_examples() {
        assert_eq!(dim_cusp_classical(1, 2, 2).unwrap(), (4, None));
        assert_eq!(dim_ext2_s0(2, 0, 0, 2).unwrap(), 4);
        assert_eq!(dim_h1_classical(2, 1, 2).unwrap(), 9);
        assert!(matches!(dim_ext2_s0(2, 1, 0, 2), Err(Error::Domain(_))));
        let aux = dim_aux(1, 1, 0, 2).unwrap();
        assert_eq!(aux.cusp_convention, Some(ConventionFlag::WeightTwoCuspDimension));
        assert_eq!(aux.dim_ext2_s0, None);
    }

    #[test]
    fn sequence_examples() {
        let a = sequence_consistency(1, 1, 2, 4).unwrap();
        assert!(a.all_hold());
        assert!(a.identities.iter().any(|i| i.branch == SequenceBranch::A));
        let c = sequence_consistency(1, 0, 0, 4).unwrap();
        assert!(c.all_hold());
        assert!(c.identities.iter().all(|i| i.branch == SequenceBranch::C));
        let b = sequence_consistency(0, 3, 0, 4).unwrap();
        assert!(b.all_hold());
        assert!(b.identities.iter().all(|i| i.branch == SequenceBranch::B && i.terms[0] == 0));
    }

    #[test]
    fn signature_validation() {
        assert!(check_signature(0, 1).is_err());
        assert!(check_signature(0, 2).is_ok());
        assert!(check_signature(1, 0).is_ok());
    }
}
