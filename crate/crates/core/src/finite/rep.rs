use crate::error::{Error, Result};
use crate::linear::Field;

use super::group::FiniteGroup;

/// Dense square matrix over `F`, row-major, acting on column vectors.
pub type Matrix<F> = Vec<Vec<<F as Field>::Elem>>;

/// Relation checks run on every (element, generator) pair up to this `dim·order`.
pub const FULL_CHECK_LIMIT: usize = 10_000;

pub fn identity<F: Field>(field: &F, n: usize) -> Matrix<F> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect())
        .collect()
}

pub fn mat_mul<F: Field>(field: &F, a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            let mut out = vec![field.zero(); n];
            for (k, aik) in row.iter().enumerate() {
                if field.is_zero(aik) {
                    continue;
                }
                for (j, bkj) in b[k].iter().enumerate() {
                    if !field.is_zero(bkj) {
                        out[j] = field.add(&out[j], &field.mul(aik, bkj));
                    }
                }
            }
            out
        })
        .collect()
}

pub fn mat_sub<F: Field>(field: &F, a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| field.sub(x, y)).collect())
        .collect()
}

pub fn mat_vec<F: Field>(field: &F, a: &Matrix<F>, v: &[F::Elem]) -> Vec<F::Elem> {
    a.iter()
        .map(|row| {
            row.iter().zip(v).fold(field.zero(), |acc, (x, y)| {
                if field.is_zero(x) || field.is_zero(y) {
                    acc
                } else {
                    field.add(&acc, &field.mul(x, y))
                }
            })
        })
        .collect()
}

/// A representation ρ of a finite group, with ρ(x) cached for every element.
#[derive(Clone, Debug)]
pub struct ModuleRep<F: Field> {
    field: F,
    dim: usize,
    generator_action: Vec<Matrix<F>>,
    element_action: Vec<Matrix<F>>,
}

impl<F: Field> ModuleRep<F> {
    /// Builds ρ from generator matrices and checks it against the Cayley table.
    pub fn new(gp: &FiniteGroup, field: F, dim: usize, generator_action: Vec<Matrix<F>>) -> Result<Self> {
        if generator_action.len() != gp.generators().len() {
            return Err(Error::Input(format!(
                "{} matrices given for {} generators",
                generator_action.len(),
                gp.generators().len()
            )));
        }
        for (k, m) in generator_action.iter().enumerate() {
            if m.len() != dim || m.iter().any(|r| r.len() != dim) {
                return Err(Error::Input(format!("matrix for generator {k} is not {dim}×{dim}")));
            }
        }
        let n = gp.order();
        let mut element_action: Vec<Option<Matrix<F>>> = vec![None; n];
        for (x, word) in gp.words() {
            let m = word
                .iter()
                .fold(identity(&field, dim), |acc, &k| mat_mul(&field, &acc, &generator_action[k]));
            element_action[x] = Some(m);
        }
        let element_action: Vec<Matrix<F>> = element_action.into_iter().map(|m| m.expect("generated")).collect();
        let rep = Self { field, dim, generator_action, element_action };
        rep.check_relations(gp)?;
        Ok(rep)
    }

    /// ρ(xγ) = ρ(x)ρ(γ) on every pair, or on a deterministic sample when large.
    fn check_relations(&self, gp: &FiniteGroup) -> Result<()> {
        let n = gp.order();
        let stride = if self.dim * n <= FULL_CHECK_LIMIT { 1 } else { (self.dim * n).div_ceil(FULL_CHECK_LIMIT) };
        for x in (0..n).step_by(stride) {
            for (k, &g) in gp.generators().iter().enumerate() {
                let lhs = mat_mul(&self.field, &self.element_action[x], &self.generator_action[k]);
                if lhs != self.element_action[gp.mul(x, g)] {
                    return Err(Error::Input(format!(
                        "representation violates the group law at element {x} times generator {k}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The left regular representation on F[Γ]: ρ(g)e_x = e_{gx}.
    pub fn regular(gp: &FiniteGroup, field: F) -> Result<Self> {
        let n = gp.order();
        let mats = gp
            .generators()
            .iter()
            .map(|&g| {
                let mut m = vec![vec![field.zero(); n]; n];
                for (x, col) in (0..n).map(|x| (x, gp.mul(g, x))) {
                    m[col][x] = field.one();
                }
                m
            })
            .collect();
        Self::new(gp, field, n, mats)
    }

    /// The trivial representation of dimension `dim`.
    pub fn trivial(gp: &FiniteGroup, field: F, dim: usize) -> Result<Self> {
        let mats = gp.generators().iter().map(|_| identity(&field, dim)).collect();
        Self::new(gp, field, dim, mats)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generator_action(&self) -> &[Matrix<F>] {
        &self.generator_action
    }

    pub fn action(&self, element: usize) -> &Matrix<F> {
        &self.element_action[element]
    }

    /// ρ extended linearly to a group-algebra element given by coordinates.
    pub fn algebra_action(&self, coords: &[F::Elem]) -> Matrix<F> {
        let mut out = vec![vec![self.field.zero(); self.dim]; self.dim];
        for (x, c) in coords.iter().enumerate() {
            if self.field.is_zero(c) {
                continue;
            }
            for (orow, mrow) in out.iter_mut().zip(&self.element_action[x]) {
                for (o, m) in orow.iter_mut().zip(mrow) {
                    if !self.field.is_zero(m) {
                        *o = self.field.add(o, &self.field.mul(c, m));
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::{PrimeField, Rationals};

    #[test]
    fn regular_rep_is_valid() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let rep = ModuleRep::regular(&s3, Rationals).unwrap();
        assert_eq!(rep.dim(), 6);
        assert_eq!(rep.action(s3.identity()), &identity(&Rationals, 6));
    }

    #[test]
    fn rejects_bad_matrices() {
        let z3 = FiniteGroup::cyclic(3).unwrap();
        let f = PrimeField::new(5).unwrap();
        // 2 has order 4 mod 5, so 2³ ≠ 1.
        let err = ModuleRep::new(&z3, f.clone(), 1, vec![vec![vec![2]]]).unwrap_err();
        assert!(matches!(err, Error::Input(_)));
        assert!(ModuleRep::new(&z3, f, 1, vec![vec![vec![1, 0]]]).is_err());
    }

    #[test]
    fn sign_rep_of_z2() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let rep = ModuleRep::new(&z2, Rationals, 1, vec![vec![vec![crate::linear::rat(-1)]]]).unwrap();
        assert_eq!(rep.action(1)[0][0], crate::linear::rat(-1));
    }
}
