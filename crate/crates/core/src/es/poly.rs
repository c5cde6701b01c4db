use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linear::Rational;

use super::mat2::Mat2;

fn check(gamma: &Mat2, n: usize) -> Result<()> {
    if gamma.det() != 1 {
        return Err(Error::Input(format!("{gamma} has determinant {} ≠ 1", gamma.det())));
    }
    if n % 2 == 1 {
        return Err(Error::Input(format!("weight parameter n = {n} must be even")));
    }
    Ok(())
}

/// Coefficients (by power of Y) of `(uX + vY)^m`.
fn binomial_power(u: i64, v: i64, m: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::from(1)];
    for _ in 0..m {
        let mut next = vec![BigInt::zero(); out.len() + 1];
        for (j, c) in out.iter().enumerate() {
            next[j] += c * u;
            next[j + 1] += c * v;
        }
        out = next;
    }
    out
}

fn poly_mul(p: &[BigInt], q: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

fn pn_integer(gamma: &Mat2, n: usize) -> Vec<Vec<BigInt>> {
    // γ⁻¹(X, Y) = (dX − bY, −cX + aY).
    let mut m = vec![vec![BigInt::zero(); n + 1]; n + 1];
    for k in 0..=n {
        let col = poly_mul(&binomial_power(gamma.d, -gamma.b, n - k), &binomial_power(-gamma.c, gamma.a, k));
        for (row, c) in col.into_iter().enumerate() {
            m[row][k] = c;
        }
    }
    m
}

/// Matrix of `p_n(γ)f(X,Y) = f(γ⁻¹(X,Y))` in the basis `X^n, X^{n−1}Y, …, Y^n`;
/// column `k` holds the image of `X^{n−k}Y^k`.
pub fn pn_matrix(gamma: &Mat2, n: usize) -> Result<DMatrix<f64>> {
    check(gamma, n)?;
    let m = pn_integer(gamma, n);
    Ok(DMatrix::from_fn(n + 1, n + 1, |i, j| m[i][j].to_f64().unwrap_or(f64::NAN)))
}

/// Exact version of [`pn_matrix`] for rank computations.
pub fn pn_matrix_exact(gamma: &Mat2, n: usize) -> Result<Vec<Vec<Rational>>> {
    check(gamma, n)?;
    Ok(pn_integer(gamma, n)
        .into_iter()
        .map(|row| row.into_iter().map(Rational::from_integer).collect())
        .collect())
}

/// Coefficients of `(X − zY)^n` in the monomial basis.
pub fn delta_vector(z: Complex64, n: usize) -> Vec<Complex64> {
    let mut binom = 1.0f64;
    let mut power = Complex64::new(1.0, 0.0);
    let mut out = Vec::with_capacity(n + 1);
    for k in 0..=n {
        out.push(power * binom);
        power *= -z;
        binom = binom * (n - k) as f64 / (k + 1) as f64;
    }
    out
}

/// `p_n(γ)` applied to a complex vector.
pub fn apply(m: &DMatrix<f64>, v: &[Complex64]) -> Vec<Complex64> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| v[j] * m[(i, j)]).sum())
        .collect()
}

/// Relative residual of `p_n(γ)(X − zY)^n = (cz + d)^n (X − γz·Y)^n`.
pub fn pullback_residual(gamma: &Mat2, n: usize, z: Complex64) -> Result<f64> {
    let m = pn_matrix(gamma, n)?;
    let lhs = apply(&m, &delta_vector(z, n));
    let factor = gamma.j(z).powu(n as u32);
    let rhs: Vec<Complex64> = delta_vector(gamma.act(z), n).into_iter().map(|c| c * factor).collect();
    let scale = rhs.iter().map(|c| c.norm()).fold(1.0f64, f64::max);
    Ok(lhs.iter().zip(&rhs).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max) / scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_trivial_weight() {
        let id = pn_matrix(&Mat2::IDENTITY, 4).unwrap();
        assert_eq!(id, DMatrix::identity(5, 5));
        let a = Mat2::new(7, -2, 11, -3);
        assert_eq!(pn_matrix(&a, 0).unwrap(), DMatrix::from_element(1, 1, 1.0));
    }

    #[test]
    fn translation_at_n2() {
        // (X, Y) ↦ (X − Y, Y): X² ↦ X² − 2XY + Y², XY ↦ XY − Y², Y² ↦ Y².
        let t = Mat2::new(1, 1, 0, 1);
        let m = pn_matrix(&t, 2).unwrap();
        let expected = DMatrix::from_row_slice(3, 3, &[1.0, 0.0, 0.0, -2.0, 1.0, 0.0, 1.0, -1.0, 1.0]);
        assert_eq!(m, expected);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(pn_matrix(&Mat2::new(2, 0, 0, 1), 2).is_err());
        assert!(pn_matrix(&Mat2::IDENTITY, 3).is_err());
    }

    #[test]
    fn sign_insensitive_and_multiplicative() {
        let a = Mat2::new(7, -2, 11, -3);
        let b = Mat2::new(8, -3, 11, -4);
        for n in [0, 2, 4] {
            assert_eq!(pn_matrix(&a, n).unwrap(), pn_matrix(&a.neg(), n).unwrap());
            let ab = pn_matrix(&a.mul(&b).unwrap(), n).unwrap();
            let prod = pn_matrix(&a, n).unwrap() * pn_matrix(&b, n).unwrap();
            assert!((ab - prod).amax() < 1e-12);
        }
    }

    #[test]
    fn pullback_law() {
        let a = Mat2::new(7, -2, 11, -3);
        for n in [0, 2, 4] {
            let r = pullback_residual(&a, n, Complex64::new(0.2, 0.9)).unwrap();
            assert!(r < 1e-12, "{r}");
        }
    }
}
