use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::magnus::Word;

use super::mat2::{word_matrix, Mat2};

/// A cusp stabilizer generator, given as a word in the fixture generators.
#[derive(Clone, Debug, PartialEq)]
pub struct Parabolic {
    pub label: String,
    pub cusp: String,
    pub word: Word,
    pub matrix: Mat2,
}

/// Scaling matrix `σ_c` with `σ_c(∞) = c`, stored as real entries.
#[derive(Clone, Debug, PartialEq)]
pub struct CuspScaling {
    pub cusp: String,
    pub sigma: [[f64; 2]; 2],
}

/// A torsion-free Fuchsian group given by integer generators and cusp data.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupFixture {
    pub name: String,
    pub genus: usize,
    pub cusps: usize,
    pub level: Option<u64>,
    pub generator_names: Vec<String>,
    pub generators: Vec<Mat2>,
    pub parabolics: Vec<Parabolic>,
    pub scalings: Vec<CuspScaling>,
}

fn cusp_point(label: &str) -> Option<Option<(f64, f64)>> {
    // None inside means ∞; otherwise (numerator, denominator).
    if label == "inf" {
        return Some(None);
    }
    match label.split_once('/') {
        Some((a, c)) => Some(Some((a.trim().parse().ok()?, c.trim().parse().ok()?))),
        None => Some(Some((label.trim().parse().ok()?, 1.0))),
    }
}

impl GroupFixture {
    /// Checks every structural invariant and returns all violations.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.generator_names.len() != self.generators.len() {
            out.push(format!(
                "{} generator names for {} matrices",
                self.generator_names.len(),
                self.generators.len()
            ));
        }
        let expected_rank = 2 * self.genus + self.cusps - 1;
        if self.cusps == 0 || self.generators.len() != expected_rank {
            out.push(format!(
                "signature ({}, {}) needs a free basis of rank {expected_rank}, got {}",
                self.genus,
                self.cusps,
                self.generators.len()
            ));
        }
        for (name, m) in self.generator_names.iter().zip(&self.generators) {
            if m.det() != 1 {
                out.push(format!("generator {name} = {m} has determinant {}", m.det()));
            }
            if m.trace().abs() < 2 {
                out.push(format!("generator {name} = {m} is elliptic (|trace| < 2)"));
            }
            if let Some(level) = self.level {
                if m.c.rem_euclid(level as i64) != 0 {
                    out.push(format!("generator {name} = {m} has lower-left entry not divisible by {level}"));
                }
            }
        }
        if self.parabolics.len() != self.cusps {
            out.push(format!("{} parabolics for {} cusps", self.parabolics.len(), self.cusps));
        }
        for p in &self.parabolics {
            if p.matrix.det() != 1 {
                out.push(format!("parabolic {} = {} has determinant {}", p.label, p.matrix, p.matrix.det()));
            }
            if !p.matrix.is_parabolic() {
                out.push(format!("parabolic {} = {} has |trace| ≠ 2", p.label, p.matrix));
            }
            match word_matrix(&p.word, &self.generators) {
                Ok(m) if m.eq_up_to_sign(&p.matrix) => {}
                Ok(m) => out.push(format!("parabolic {} word {} evaluates to {m}, not {}", p.label, p.word, p.matrix)),
                Err(e) => out.push(format!("parabolic {}: {e}", p.label)),
            }
            match self.scalings.iter().find(|s| s.cusp == p.cusp) {
                None => out.push(format!("no scaling matrix for cusp {}", p.cusp)),
                Some(s) => {
                    if let Some(msg) = check_scaling(s, &p.matrix) {
                        out.push(msg);
                    }
                }
            }
        }
        out
    }

    pub fn validate(self) -> Result<Self> {
        let v = self.violations();
        if v.is_empty() {
            Ok(self)
        } else {
            Err(Error::Input(v.join("; ")))
        }
    }

    /// Γ_0(11): genus 1, cusps ∞ and 0, free on `T, A, B`.
    pub fn gamma0_11() -> Self {
        let r = 11f64.sqrt();
        Self {
            name: "Gamma0(11)".into(),
            genus: 1,
            cusps: 2,
            level: Some(11),
            generator_names: vec!["T".into(), "A".into(), "B".into()],
            generators: vec![Mat2::new(1, 1, 0, 1), Mat2::new(7, -2, 11, -3), Mat2::new(8, -3, 11, -4)],
            parabolics: vec![
                Parabolic {
                    label: "P_inf".into(),
                    cusp: "inf".into(),
                    word: Word::from_signed(&[1]).expect("word"),
                    matrix: Mat2::new(1, 1, 0, 1),
                },
                Parabolic {
                    label: "P_0".into(),
                    cusp: "0".into(),
                    word: Word::from_signed(&[-1, 3, -2, -3, 2]).expect("word"),
                    matrix: Mat2::new(1, 0, -11, 1),
                },
            ],
            scalings: vec![
                CuspScaling { cusp: "inf".into(), sigma: [[1.0, 0.0], [0.0, 1.0]] },
                CuspScaling { cusp: "0".into(), sigma: [[0.0, -1.0 / r], [r, 0.0]] },
            ],
        }
    }

    pub fn matrix(&self, word: &Word) -> Result<Mat2> {
        word_matrix(word, &self.generators)
    }

    pub fn generator_word(&self, i: usize) -> Word {
        Word::from_signed(&[(i + 1) as i64]).expect("generator word")
    }

    pub fn word_label(&self, word: &Word) -> String {
        if word.is_empty() {
            return "1".into();
        }
        word.letters()
            .iter()
            .map(|l| {
                let name = &self.generator_names[l.generator - 1];
                if l.inverse {
                    format!("{name}^-1")
                } else {
                    name.clone()
                }
            })
            .collect::<Vec<_>>()
            .join("·")
    }
}

/// `σ(∞) = c` and `σ⁻¹Pσ = ±(1 h; 0 1)`.
fn check_scaling(s: &CuspScaling, p: &Mat2) -> Option<String> {
    let [[a, b], [c, d]] = s.sigma;
    let det = a * d - b * c;
    if (det - 1.0).abs() > 1e-12 {
        return Some(format!("scaling matrix for cusp {} has determinant {det}", s.cusp));
    }
    let target = match cusp_point(&s.cusp) {
        Some(t) => t,
        None => return Some(format!("cannot parse cusp label {}", s.cusp)),
    };
    let ok = match target {
        None => c.abs() < 1e-12,
        Some((num, den)) => c.abs() > 1e-12 && (a / c - num / den).abs() < 1e-12,
    };
    if !ok {
        return Some(format!("scaling matrix for cusp {} does not send ∞ there", s.cusp));
    }
    // σ⁻¹ P σ.
    let inv = [[d, -b], [-c, a]];
    let pm = [[p.a as f64, p.b as f64], [p.c as f64, p.d as f64]];
    let mul = |x: [[f64; 2]; 2], y: [[f64; 2]; 2]| {
        [
            [x[0][0] * y[0][0] + x[0][1] * y[1][0], x[0][0] * y[0][1] + x[0][1] * y[1][1]],
            [x[1][0] * y[0][0] + x[1][1] * y[1][0], x[1][0] * y[0][1] + x[1][1] * y[1][1]],
        ]
    };
    let conj = mul(mul(inv, pm), s.sigma);
    let unipotent = conj[1][0].abs() < 1e-9 && (conj[0][0] - conj[1][1]).abs() < 1e-9 && (conj[0][0].abs() - 1.0).abs() < 1e-9;
    if !unipotent {
        return Some(format!("σ⁻¹Pσ for cusp {} is not ±(1 h; 0 1)", s.cusp));
    }
    None
}

/// A finite real combination of words in the fixture generators.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupRingElement {
    terms: BTreeMap<Vec<i64>, f64>,
}

impl GroupRingElement {
    pub fn word(w: &Word) -> Self {
        Self { terms: BTreeMap::from([(w.to_signed(), 1.0)]) }
    }

    pub fn one() -> Self {
        Self::word(&Word::identity())
    }

    /// `w − 1`.
    pub fn minus_one(w: &Word) -> Self {
        Self::word(w).sub(&Self::one())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (w, c) in &o.terms {
            *terms.entry(w.clone()).or_insert(0.0) -= c;
        }
        terms.retain(|_, c| *c != 0.0);
        Self { terms }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut terms: BTreeMap<Vec<i64>, f64> = BTreeMap::new();
        for (u, a) in &self.terms {
            for (v, b) in &o.terms {
                let w = Word::from_signed(u).expect("word").concat(&Word::from_signed(v).expect("word"));
                *terms.entry(w.to_signed()).or_insert(0.0) += a * b;
            }
        }
        terms.retain(|_, c| *c != 0.0);
        Self { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (Word, f64)> + '_ {
        self.terms.iter().map(|(w, &c)| (Word::from_signed(w).expect("word"), c))
    }

    pub fn augmentation(&self) -> f64 {
        self.terms.values().sum()
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms().map(|(w, c)| format!("{c:+}·[{w}]")).collect();
        write!(f, "{}", if parts.is_empty() { "0".into() } else { parts.join(" ") })
    }
}

/// `min(Im z, Im w⁻¹z)` over the words.
pub fn domain_score(matrices: &[Mat2], z: Complex64) -> f64 {
    matrices.iter().map(|m| m.inverse().act(z).im).fold(z.im, f64::min)
}

/// Grid search over `Re ∈ [−1, 1]` (step 0.05) and geometric `Im ∈ [min_im, 3]`,
/// returning up to `count` points ordered by score, pairwise at least 0.1 apart
/// when the admissible region allows it and 0.01 apart otherwise.
pub fn base_points(matrices: &[Mat2], min_im: f64, count: usize) -> Vec<(Complex64, f64)> {
    const IM_STEPS: usize = 48;
    let ratio = (3.0 / min_im).powf(1.0 / (IM_STEPS - 1) as f64);
    let mut scored = Vec::new();
    for i in 0..=40 {
        let x = -1.0 + 0.05 * i as f64;
        for k in 0..IM_STEPS {
            let y = min_im * ratio.powi(k as i32);
            let z = Complex64::new(x, y);
            scored.push((z, domain_score(matrices, z)));
        }
    }
    scored.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.re.total_cmp(&b.0.re)).then(a.0.im.total_cmp(&b.0.im)));
    scored.retain(|p| p.1 >= min_im);
    let pick = |sep: f64| {
        let mut out: Vec<(Complex64, f64)> = Vec::new();
        for &(z, s) in &scored {
            if out.len() == count {
                break;
            }
            if out.iter().all(|(w, _)| (w - z).norm() >= sep) {
                out.push((z, s));
            }
        }
        out
    };
    let wide = pick(0.1);
    if wide.len() >= count {
        wide
    } else {
        pick(0.01)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma0_11_is_valid() {
        let fx = GroupFixture::gamma0_11();
        assert!(fx.violations().is_empty(), "{:?}", fx.violations());
    }

    #[test]
    fn bad_matrices_are_named() {
        let mut fx = GroupFixture::gamma0_11();
        fx.generators[1] = Mat2::new(7, -2, 11, -2);
        let v = fx.violations();
        assert!(v.iter().any(|m| m.contains("generator A") && m.contains("determinant")), "{v:?}");
        let mut fx = GroupFixture::gamma0_11();
        fx.generators[2] = Mat2::new(1, -1, 1, 0);
        assert!(fx.violations().iter().any(|m| m.contains("elliptic")));
    }

    #[test]
    fn group_ring_products() {
        let t = Word::from_signed(&[1]).unwrap();
        let a = Word::from_signed(&[2]).unwrap();
        let m = GroupRingElement::minus_one(&t).mul(&GroupRingElement::minus_one(&a));
        assert_eq!(m.terms().count(), 4);
        assert_eq!(m.augmentation(), 0.0);
    }

    #[test]
    fn base_point_search_respects_threshold() {
        let fx = GroupFixture::gamma0_11();
        let ab = fx.generators[1].mul(&fx.generators[2]).unwrap();
        let pts = base_points(&[ab, fx.generators[1], fx.generators[2]], 0.004, 2);
        assert_eq!(pts.len(), 2);
        assert!(pts.iter().all(|(_, s)| *s >= 0.004));
    }
}
