use std::fmt;
use std::sync::Arc;

use super::field::{Field, Rationals};
use crate::error::{Error, Result};

/// A linear subspace of `F^n`, stored as a reduced row-echelon basis.
///
/// Rows are nonzero, each row's pivot entry is 1, pivot columns are strictly
/// increasing and every pivot column is zero in all other rows. Two subspaces are
/// equal exactly when their bases are equal.
#[derive(Clone)]
pub struct Subspace<F: Field = Rationals> {
    field: F,
    ambient_dim: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
    labels: Option<Arc<Vec<String>>>,
}

impl<F: Field> fmt::Debug for Subspace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subspace")
            .field("field", &self.field.name())
            .field("ambient_dim", &self.ambient_dim)
            .field("dim", &self.dim())
            .field("pivots", &self.pivots)
            .finish()
    }
}

impl<F: Field> PartialEq for Subspace<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.pivots == other.pivots && self.rows == other.rows
    }
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: F, ambient_dim: usize) -> Self {
        Self { field, ambient_dim, rows: Vec::new(), pivots: Vec::new(), labels: None }
    }

    pub fn full(field: F, ambient_dim: usize) -> Self {
        let rows = (0..ambient_dim).map(|i| unit(&field, ambient_dim, i)).collect();
        Self { field, ambient_dim, rows, pivots: (0..ambient_dim).collect(), labels: None }
    }

    /// Span of the given coordinate vectors.
    ///
    /// Gauss–Jordan elimination; in each column the pivot is the entry of smallest
    /// cost (bit size for rationals) among the remaining rows.
    pub fn span(field: F, vectors: &[Vec<F::Elem>], ambient_dim: usize) -> Result<Self> {
        check_lengths(vectors, ambient_dim)?;
        let mut mat: Vec<Vec<F::Elem>> = vectors
            .iter()
            .filter(|v| v.iter().any(|x| !field.is_zero(x)))
            .cloned()
            .collect();
        let mut pivots = Vec::new();
        let mut row_i = 0;
        for col in 0..ambient_dim {
            if row_i == mat.len() {
                break;
            }
            let best = (row_i..mat.len())
                .filter(|&r| !field.is_zero(&mat[r][col]))
                .min_by_key(|&r| field.pivot_cost(&mat[r][col]));
            let Some(best) = best else { continue };
            mat.swap(row_i, best);
            let inv = field.inv(&mat[row_i][col]);
            for x in mat[row_i][col..].iter_mut() {
                if !field.is_zero(x) {
                    *x = field.mul(x, &inv);
                }
            }
            let (head, tail) = mat.split_at_mut(row_i);
            let (pivot_row, rest) = tail.split_first_mut().expect("pivot row exists");
            for other in head.iter_mut().chain(rest.iter_mut()) {
                eliminate(&field, other, pivot_row, col);
            }
            pivots.push(col);
            row_i += 1;
        }
        mat.truncate(row_i);
        Ok(Self { field, ambient_dim, rows: mat, pivots, labels: None })
    }

    /// Attaches coordinate labels (for example monomial names). Length must match.
    pub fn with_labels(mut self, labels: Arc<Vec<String>>) -> Result<Self> {
        if labels.len() != self.ambient_dim {
            return Err(Error::Input(format!(
                "{} labels for ambient dimension {}",
                labels.len(),
                self.ambient_dim
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref().map(|v| v.as_slice())
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Reduces `v` against the basis and returns the residual, which is zero
    /// exactly when `v` lies in the subspace.
    pub fn residual(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if v.len() != self.ambient_dim {
            return Err(Error::Input(format!(
                "vector of length {} in ambient dimension {}",
                v.len(),
                self.ambient_dim
            )));
        }
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            eliminate(&self.field, &mut out, row, p);
        }
        Ok(out)
    }

    pub fn contains(&self, v: &[F::Elem]) -> Result<bool> {
        Ok(self.residual(v)?.iter().all(|x| self.field.is_zero(x)))
    }

    /// Adds one vector to the span. Returns whether the dimension grew.
    pub fn insert(&mut self, v: &[F::Elem]) -> Result<bool> {
        let mut res = self.residual(v)?;
        let Some(p) = res.iter().position(|x| !self.field.is_zero(x)) else {
            return Ok(false);
        };
        let inv = self.field.inv(&res[p]);
        for x in res[p..].iter_mut() {
            if !self.field.is_zero(x) {
                *x = self.field.mul(x, &inv);
            }
        }
        for row in self.rows.iter_mut() {
            eliminate(&self.field, row, &res, p);
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, res);
        Ok(true)
    }

    /// Inserts every vector; stops early once the space is full.
    pub fn extend<'a, I>(&mut self, vectors: I) -> Result<()>
    where
        I: IntoIterator<Item = &'a Vec<F::Elem>>,
        F::Elem: 'a,
    {
        for v in vectors {
            if self.dim() == self.ambient_dim {
                if v.len() != self.ambient_dim {
                    return Err(Error::Input("dimension mismatch".into()));
                }
                continue;
            }
            self.insert(v)?;
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_same_ambient(other)?;
        let (big, small) = if self.dim() >= other.dim() { (self, other) } else { (other, self) };
        let mut out = big.clone();
        out.extend(small.rows.iter())?;
        if out.labels.is_none() {
            out.labels = small.labels.clone();
        }
        Ok(out)
    }

    /// Whether every basis vector of `self` lies in `other`.
    pub fn is_subspace_of(&self, other: &Self) -> Result<bool> {
        Ok(self.first_outside(other)?.is_none())
    }

    fn first_outside(&self, other: &Self) -> Result<Option<usize>> {
        self.check_same_ambient(other)?;
        for (i, row) in self.rows.iter().enumerate() {
            if !other.contains(row)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    fn check_same_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::Input(format!(
                "ambient dimensions differ: {} vs {}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }

    /// Rank of the images of `vectors` in the quotient `F^n / self`.
    pub fn quotient_rank(&self, vectors: &[Vec<F::Elem>]) -> Result<usize> {
        let mut s = self.clone();
        let before = s.dim();
        s.extend(vectors.iter())?;
        Ok(s.dim() - before)
    }
}

fn unit<F: Field>(field: &F, n: usize, i: usize) -> Vec<F::Elem> {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

fn check_lengths<E>(vectors: &[Vec<E>], ambient_dim: usize) -> Result<()> {
    if let Some((i, v)) = vectors.iter().enumerate().find(|(_, v)| v.len() != ambient_dim) {
        return Err(Error::Input(format!(
            "vector {i} has length {} but the ambient dimension is {ambient_dim}",
            v.len()
        )));
    }
    Ok(())
}

/// `target -= target[col] * pivot_row`, where `pivot_row[col] == 1`.
fn eliminate<F: Field>(field: &F, target: &mut [F::Elem], pivot_row: &[F::Elem], col: usize) {
    if field.is_zero(&target[col]) {
        return;
    }
    let factor = target[col].clone();
    for (t, p) in target[col..].iter_mut().zip(&pivot_row[col..]) {
        if !field.is_zero(p) {
            *t = field.sub(t, &field.mul(&factor, p));
        }
    }
}

/// Row-reduced span of `vectors` inside `F^ambient_dim`.
pub fn span_reduce<F: Field>(field: F, vectors: &[Vec<F::Elem>], ambient_dim: usize) -> Result<Subspace<F>> {
    Subspace::span(field, vectors, ambient_dim)
}

/// `dim U − dim W`, after checking `W ⊆ U`.
pub fn quotient_dim<F: Field>(u: &Subspace<F>, w: &Subspace<F>) -> Result<usize> {
    if let Some(index) = w.first_outside(u)? {
        return Err(Error::Containment { index });
    }
    Ok(u.dim() - w.dim())
}

/// Rank of a list of vectors.
pub fn rank<F: Field>(field: F, vectors: &[Vec<F::Elem>], ambient_dim: usize) -> Result<usize> {
    Ok(Subspace::span(field, vectors, ambient_dim)?.dim())
}

/// Kernel `{v : M v = 0}` of the matrix whose rows are `rows`, each of length `ncols`.
pub fn nullspace<F: Field>(field: F, rows: &[Vec<F::Elem>], ncols: usize) -> Result<Subspace<F>> {
    let rref = Subspace::span(field.clone(), rows, ncols)?;
    let mut basis = Vec::new();
    let mut pivot_iter = rref.pivots.iter().peekable();
    for free in 0..ncols {
        if pivot_iter.peek() == Some(&&free) {
            pivot_iter.next();
            continue;
        }
        let mut v = vec![field.zero(); ncols];
        v[free] = field.one();
        for (row, &p) in rref.rows.iter().zip(&rref.pivots) {
            if p < free && !field.is_zero(&row[free]) {
                v[p] = field.neg(&row[free]);
            }
        }
        basis.push(v);
    }
    Subspace::span(field, &basis, ncols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::field::{rat, PrimeField, Rational};

    fn q(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn span_of_standard_basis_is_full() {
        let s = span_reduce(Rationals, &q(&[&[1, 0], &[0, 1]]), 2).unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(s, Subspace::full(Rationals, 2));
    }

    #[test]
    fn proportional_rows_have_rank_one() {
        let s = span_reduce(Rationals, &q(&[&[1, 2], &[2, 4]]), 2).unwrap();
        assert_eq!(s.dim(), 1);
    }

    #[test]
    fn dependent_triple_in_three_space() {
        // (1,0,-1) = (1,1,0) - (0,1,1); determinant of the 3x3 matrix is 0.
        let s = span_reduce(Rationals, &q(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, -1]]), 3).unwrap();
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn length_mismatch_is_an_input_error() {
        let err = span_reduce(Rationals, &q(&[&[1, 0], &[0, 1, 0]]), 2).unwrap_err();
        assert!(matches!(err, Error::Input(_)));
    }

    #[test]
    fn quotient_dim_examples() {
        let full = Subspace::full(Rationals, 3);
        let zero = Subspace::zero(Rationals, 3);
        assert_eq!(quotient_dim(&full, &zero).unwrap(), 3);
        assert_eq!(quotient_dim(&full, &full).unwrap(), 0);
        let u = span_reduce(Rationals, &q(&[&[1, 0, 0], &[0, 1, 0]]), 3).unwrap();
        let w = span_reduce(Rationals, &q(&[&[1, 1, 0]]), 3).unwrap();
        assert_eq!(quotient_dim(&u, &w).unwrap(), 1);
    }

    #[test]
    fn quotient_dim_rejects_non_containment() {
        let u = span_reduce(Rationals, &q(&[&[1, 0, 0]]), 3).unwrap();
        let w = span_reduce(Rationals, &q(&[&[1, 0, 0], &[0, 0, 1]]), 3).unwrap();
        assert_eq!(quotient_dim(&u, &w).unwrap_err(), Error::Containment { index: 1 });
    }

    #[test]
    fn insert_matches_batch_span() {
        let vs = q(&[&[0, 2, 4, 1], &[3, 1, 0, 0], &[3, 3, 4, 1], &[0, 0, 0, 5]]);
        let batch = span_reduce(Rationals, &vs, 4).unwrap();
        let mut inc = Subspace::zero(Rationals, 4);
        inc.extend(vs.iter()).unwrap();
        assert_eq!(batch, inc);
        assert_eq!(batch.dim(), 3);
    }

    #[test]
    fn nullspace_of_rank_one_matrix() {
        let ns = nullspace(Rationals, &q(&[&[1, 1, 1]]), 3).unwrap();
        assert_eq!(ns.dim(), 2);
        for v in ns.basis() {
            let s: Rational = v.iter().sum();
            assert_eq!(s, rat(0));
        }
    }

    #[test]
    fn nullspace_over_f2() {
        let f2 = PrimeField::new(2).unwrap();
        // (1 1; 1 1) over F_2 kills (1,1).
        let ns = nullspace(f2, &[vec![1, 1], vec![1, 1]], 2).unwrap();
        assert_eq!(ns.basis(), &[vec![1u32, 1]]);
    }

    #[test]
    fn labels_must_match_dimension() {
        let s = Subspace::zero(Rationals, 2);
        assert!(s.clone().with_labels(Arc::new(vec!["a".into()])).is_err());
        let s = s.with_labels(Arc::new(vec!["a".into(), "b".into()])).unwrap();
        assert_eq!(s.labels().unwrap()[1], "b");
    }
}
