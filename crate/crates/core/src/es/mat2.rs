use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::magnus::Word;

/// Integer 2×2 matrix `(a b; c d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mat2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 { a: 1, b: 0, c: 0, d: 1 };

    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self { a, b, c, d }
    }

    /// Checked constructor: determinant must be 1.
    pub fn sl2(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let m = Self::new(a, b, c, d);
        if m.det() != 1 {
            return Err(Error::Input(format!("matrix {m} has determinant {} ≠ 1", m.det())));
        }
        Ok(m)
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> i64 {
        self.a + self.d
    }

    /// Inverse of a determinant-1 matrix.
    pub fn inverse(&self) -> Self {
        Self::new(self.d, -self.b, -self.c, self.a)
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.a, -self.b, -self.c, -self.d)
    }

    pub fn mul(&self, o: &Mat2) -> Result<Self> {
        let f = |x: i64, y: i64, z: i64, w: i64| -> Result<i64> {
            x.checked_mul(y)
                .and_then(|p| z.checked_mul(w).and_then(|q| p.checked_add(q)))
                .ok_or_else(|| Error::Range("matrix entry overflow".into()))
        };
        Ok(Self::new(
            f(self.a, o.a, self.b, o.c)?,
            f(self.a, o.b, self.b, o.d)?,
            f(self.c, o.a, self.d, o.c)?,
            f(self.c, o.b, self.d, o.d)?,
        ))
    }

    /// Equality in PSL₂.
    pub fn eq_up_to_sign(&self, o: &Mat2) -> bool {
        self == o || self == &o.neg()
    }

    /// Möbius action `(az+b)/(cz+d)`.
    pub fn act(&self, z: Complex64) -> Complex64 {
        (z * self.a as f64 + self.b as f64) / (z * self.c as f64 + self.d as f64)
    }

    /// Automorphy factor `cz + d`.
    pub fn j(&self, z: Complex64) -> Complex64 {
        z * self.c as f64 + self.d as f64
    }

    pub fn is_parabolic(&self) -> bool {
        self.trace().abs() == 2
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.a, self.b, self.c, self.d)
    }
}

/// The matrix of a word, with generator `i` (1-based) mapped to `gens[i-1]`.
pub fn word_matrix(word: &Word, gens: &[Mat2]) -> Result<Mat2> {
    let mut m = Mat2::IDENTITY;
    for letter in word.letters() {
        let g = gens
            .get(letter.generator - 1)
            .ok_or_else(|| Error::Input(format!("word uses generator {} of {}", letter.generator, gens.len())))?;
        m = m.mul(&if letter.inverse { g.inverse() } else { *g })?;
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_action() {
        let a = Mat2::sl2(7, -2, 11, -3).unwrap();
        assert_eq!(a.mul(&a.inverse()).unwrap(), Mat2::IDENTITY);
        let z = Complex64::new(0.3, 0.7);
        let back = a.inverse().act(a.act(z));
        assert!((back - z).norm() < 1e-12);
        assert!(Mat2::sl2(2, 0, 0, 1).is_err());
    }

    #[test]
    fn cusp_zero_parabolic_word() {
        let gens = [Mat2::new(1, 1, 0, 1), Mat2::new(7, -2, 11, -3), Mat2::new(8, -3, 11, -4)];
        // T⁻¹ B A⁻¹ B⁻¹ A
        let w = Word::from_signed(&[-1, 3, -2, -3, 2]).unwrap();
        assert_eq!(word_matrix(&w, &gens).unwrap(), Mat2::new(1, 0, -11, 1));
    }
}
