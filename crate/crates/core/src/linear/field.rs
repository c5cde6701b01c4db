//! Scalar fields for the exact kernel: the rationals and small prime fields.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar. Always stored in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Builds the rational `n / 1`.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// A field whose elements the row-reduction kernel can operate on.
///
/// Field elements carry no reference to their field, so the operations live on a
/// (cheap, cloneable) field descriptor instead of on the element type.
pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse. Panics on zero; callers only invert pivots.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    /// Pivot preference: smaller is better. Bit size for rationals.
    fn pivot_cost(&self, a: &Self::Elem) -> u64;
    /// 0 for the rationals, p for F_p.
    fn characteristic(&self) -> u64;
    fn name(&self) -> String;
}

/// The field of rational numbers with exact big-integer arithmetic.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn from_i64(&self, v: i64) -> Rational {
        rat(v)
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn inv(&self, a: &Rational) -> Rational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn pivot_cost(&self, a: &Rational) -> u64 {
        a.numer().abs().bits() + a.denom().bits()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn name(&self) -> String {
        "Q".to_string()
    }
}

/// The prime field F_p for a prime p ≤ 97.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

pub const MAX_PRIME: u32 = 97;

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p < 2 || p > MAX_PRIME || !(2..p).take_while(|d| d * d <= p).all(|d| p % d != 0) {
            return Err(Error::Input(format!("{p} is not a prime in [2, {MAX_PRIME}]")));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    fn reduce(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    fn pow(&self, base: u32, mut exp: u32) -> u32 {
        let p = self.p as u64;
        let mut acc = 1u64;
        let mut b = base as u64 % p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            exp >>= 1;
        }
        acc as u32
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn from_i64(&self, v: i64) -> u32 {
        self.reduce(v)
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        (a * b) % self.p
    }
    fn neg(&self, a: &u32) -> u32 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u32) -> u32 {
        assert!(*a != 0, "inverse of zero in F_{}", self.p);
        self.pow(*a, self.p - 2)
    }
    fn pivot_cost(&self, _a: &u32) -> u64 {
        0
    }
    fn characteristic(&self) -> u64 {
        self.p as u64
    }
    fn name(&self) -> String {
        format!("F_{}", self.p)
    }
}

/// Reduces a rational into F_p, or `None` when p divides the denominator.
pub fn rational_mod_p(x: &Rational, field: &PrimeField) -> Option<u32> {
    let p = BigInt::from(field.modulus());
    let den = (x.denom() % &p + &p) % &p;
    if den.is_zero() {
        return None;
    }
    let num = (x.numer() % &p + &p) % &p;
    let to_u32 = |b: &BigInt| -> u32 { b.to_string().parse().expect("residue fits in u32") };
    Some(field.mul(&to_u32(&num), &field.inv(&to_u32(&den))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_rejects_composites_and_large_primes() {
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(97).is_ok());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(91).is_err());
        assert!(PrimeField::new(101).is_err());
    }

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(f.mul(&a, &f.inv(&a)), 1);
        }
        assert_eq!(f.from_i64(-1), 6);
    }

    #[test]
    fn rational_reduction_mod_p() {
        let f = PrimeField::new(5).unwrap();
        let half = Rational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(rational_mod_p(&half, &f), Some(3));
        let fifth = Rational::new(BigInt::from(1), BigInt::from(5));
        assert_eq!(rational_mod_p(&fifth, &f), None);
    }

    #[test]
    fn pivot_cost_prefers_small_entries() {
        let q = Rationals;
        assert!(q.pivot_cost(&rat(1)) < q.pivot_cost(&rat(1024)));
    }
}
