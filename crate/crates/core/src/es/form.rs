use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default lower bound on Im z for direct evaluation.
pub const DEFAULT_MIN_IM: f64 = 0.004;
/// Certified bound on the discarded q-series tail.
pub const DEFAULT_TAIL_TOL: f64 = 1e-13;
/// Terms always summed, so values far up the half-plane keep their leading behaviour.
const MIN_TERMS: usize = 16;

/// `Σ_k (−1)^k q^{k(3k−1)/2}`, the expansion of `∏(1 − q^m)`, up to `q^degree`.
pub fn euler_series(degree: usize) -> Vec<i64> {
    let mut out = vec![0i64; degree + 1];
    for k in 0i64.. {
        let mut any = false;
        for kk in [k, -k] {
            let e = (kk * (3 * kk - 1) / 2) as usize;
            if e <= degree {
                any = true;
                out[e] = if k % 2 == 0 { 1 } else { -1 };
            }
        }
        if !any {
            break;
        }
    }
    out
}

fn series_mul(p: &[i64], q: &[i64], degree: usize) -> Vec<i64> {
    let mut out = vec![0i64; degree + 1];
    for (i, &a) in p.iter().enumerate().take(degree + 1) {
        if a == 0 {
            continue;
        }
        for (j, &b) in q.iter().enumerate().take(degree + 1 - i) {
            out[i + j] += a * b;
        }
    }
    out
}

/// Coefficients `a_1..a_count` of `∏ η(d z)^{e}` for factors `(d, e)`.
///
/// The leading power `Σ d·e / 24` must be a positive integer (a cusp form at ∞).
pub fn eta_product(factors: &[(usize, usize)], count: usize) -> Result<Vec<i64>> {
    let weight_shift: usize = factors.iter().map(|&(d, e)| d * e).sum();
    if factors.is_empty() || weight_shift % 24 != 0 || weight_shift == 0 {
        return Err(Error::Input(format!(
            "eta product has leading exponent {weight_shift}/24, not a positive integer"
        )));
    }
    let shift = weight_shift / 24;
    if shift > count {
        return Ok(vec![0; count]);
    }
    let degree = count - shift;
    let mut acc = vec![0i64; degree + 1];
    acc[0] = 1;
    for &(d, e) in factors {
        if d == 0 {
            return Err(Error::Input("eta factor with d = 0".into()));
        }
        let base = euler_series(degree / d);
        let mut dilated = vec![0i64; degree + 1];
        for (i, c) in base.into_iter().enumerate() {
            dilated[i * d] = c;
        }
        for _ in 0..e {
            acc = series_mul(&acc, &dilated, degree);
        }
    }
    // a_m is the coefficient of q^{m − shift}.
    Ok((1..=count).map(|m| if m < shift { 0 } else { acc[m - shift] }).collect())
}

/// Smallest `M` with `Σ_{m>M} m² e^{−2πmy} < tol`, using the ratio bound
/// `(M+1)² t^{M+1} / (1 − ((M+2)/(M+1))² t)`.
pub fn tail_terms(y: f64, tol: f64) -> Option<usize> {
    if !(y > 0.0) {
        return None;
    }
    let t = (-2.0 * PI * y).exp();
    let mut tm = t; // t^{M+1}
    for m in 0usize..10_000_000 {
        let m1 = (m + 1) as f64;
        let ratio = ((m1 + 1.0) / m1).powi(2) * t;
        tm *= if m == 0 { 1.0 } else { t };
        if ratio < 1.0 && m1 * m1 * tm / (1.0 - ratio) < tol {
            return Some(m);
        }
    }
    None
}

/// Fricke data: `f(z) = sign · (√N z)^{−k} f(−1/(Nz))`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Fricke {
    pub level: u64,
    pub sign: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayCertificate {
    pub cusp: String,
    /// Index of the first nonzero coefficient at this cusp.
    pub leading_index: usize,
    pub via: String,
}

/// A cusp form given by its q-expansion at ∞.
#[derive(Clone, Debug, PartialEq)]
pub struct CuspFormSpec {
    pub name: String,
    pub weight: u32,
    pub order: u32,
    /// `coeffs[m-1] = a_m`.
    pub coeffs: Vec<Complex64>,
    pub provenance: String,
    pub fricke: Option<Fricke>,
    pub decay: Vec<DecayCertificate>,
    pub min_im: f64,
    pub tail_tol: f64,
}

/// Where a point was evaluated.
#[derive(Clone, Copy, Debug, PartialEq)]
enum Chart {
    Direct(Complex64),
    /// `z ≡ z' (mod 1)` and the series is summed at `−1/(N z')`.
    Fricke { shifted: Complex64, image: Complex64 },
}

impl CuspFormSpec {
    pub fn new(name: impl Into<String>, weight: u32, coeffs: Vec<Complex64>, provenance: impl Into<String>) -> Result<Self> {
        if weight < 2 || weight % 2 == 1 {
            return Err(Error::Input(format!("weight {weight} must be even and at least 2")));
        }
        if coeffs.is_empty() {
            return Err(Error::Input("no q-expansion coefficients".into()));
        }
        let leading = coeffs.iter().position(|c| c.norm() > 0.0).map_or(0, |i| i + 1);
        let spec = Self {
            name: name.into(),
            weight,
            order: 1,
            coeffs,
            provenance: provenance.into(),
            fricke: None,
            decay: vec![DecayCertificate { cusp: "inf".into(), leading_index: leading, via: "q-expansion".into() }],
            min_im: DEFAULT_MIN_IM,
            tail_tol: DEFAULT_TAIL_TOL,
        };
        spec.check_length()?;
        Ok(spec)
    }

    /// A form from an eta product with rational integer coefficients.
    pub fn from_eta_product(name: impl Into<String>, factors: &[(usize, usize)], count: usize) -> Result<Self> {
        let weight: usize = factors.iter().map(|&(_, e)| e).sum::<usize>() / 2;
        let coeffs = eta_product(factors, count)?.into_iter().map(|a| Complex64::new(a as f64, 0.0)).collect();
        let recipe: Vec<String> = factors.iter().map(|(d, e)| format!("eta({d}z)^{e}")).collect();
        Self::new(name, weight as u32, coeffs, format!("eta product {}", recipe.join("·")))
    }

    pub fn with_min_im(mut self, min_im: f64) -> Result<Self> {
        self.min_im = min_im;
        self.check_length()?;
        Ok(self)
    }

    fn check_length(&self) -> Result<()> {
        let needed = tail_terms(self.min_im, self.tail_tol)
            .ok_or_else(|| Error::Input(format!("min Im {} admits no finite truncation", self.min_im)))?;
        if self.coeffs.len() < needed {
            return Err(Error::Input(format!(
                "{} coefficients supplied, {needed} needed for min Im {}",
                self.coeffs.len(),
                self.min_im
            )));
        }
        Ok(())
    }

    /// Attaches Fricke data, determining the sign numerically at a point away
    /// from the fixed point `i/√N`.
    pub fn with_fricke(mut self, level: u64) -> Result<Self> {
        let n = level as f64;
        let z = Complex64::new(0.2, 0.5);
        let w = -1.0 / (z * n);
        let lhs = self.q_series(z, &self.coeffs)?;
        let rhs = (z * n.sqrt()).powi(-(self.weight as i32)) * self.q_series(w, &self.coeffs)?;
        let sign = lhs / rhs;
        if (sign.norm() - 1.0).abs() > 1e-9 || sign.im.abs() > 1e-9 || (sign.re.abs() - 1.0).abs() > 1e-9 {
            return Err(Error::Input(format!("no Fricke symmetry at level {level}: ratio {sign}")));
        }
        let sign = sign.re.signum();
        self.fricke = Some(Fricke { level, sign });
        let leading = self.decay[0].leading_index;
        self.decay.push(DecayCertificate { cusp: "0".into(), leading_index: leading, via: format!("Fricke, sign {sign:+}") });
        Ok(self)
    }

    pub fn level(&self) -> Option<u64> {
        self.fricke.map(|f| f.level)
    }

    /// `Σ c_m e^{2πimz}` with certified tail, or a domain error.
    fn q_series(&self, z: Complex64, coeffs: &[Complex64]) -> Result<Complex64> {
        let m = tail_terms(z.im, self.tail_tol)
            .ok_or_else(|| Error::EvaluationDomain(format!("Im z = {} is not positive", z.im)))?
            .max(MIN_TERMS.min(coeffs.len()));
        if m > coeffs.len() {
            return Err(Error::EvaluationDomain(format!(
                "z = {z} needs {m} coefficients, {} available",
                coeffs.len()
            )));
        }
        let q = (Complex64::i() * 2.0 * PI * z).exp();
        // Horner in q: Σ_{m=1}^{M} c_m q^m.
        let mut acc = Complex64::new(0.0, 0.0);
        for c in coeffs[..m].iter().rev() {
            acc = (acc + c) * q;
        }
        Ok(acc)
    }

    fn chart(&self, z: Complex64) -> Result<Chart> {
        let mut best = Chart::Direct(z);
        let mut best_im = z.im;
        if let Some(fr) = self.fricke {
            let n = fr.level as f64;
            for k in [z.re.floor(), z.re.ceil()] {
                let shifted = z - k;
                let image = -1.0 / (shifted * n);
                if image.im > best_im {
                    best_im = image.im;
                    best = Chart::Fricke { shifted, image };
                }
            }
        }
        if best_im < self.min_im {
            return Err(Error::EvaluationDomain(format!(
                "z = {z}: effective Im {best_im:.3e} is below the threshold {}",
                self.min_im
            )));
        }
        Ok(best)
    }

    /// Effective imaginary part after the best available rewrite.
    pub fn effective_im(&self, z: Complex64) -> Result<f64> {
        Ok(match self.chart(z)? {
            Chart::Direct(z) => z.im,
            Chart::Fricke { image, .. } => image.im,
        })
    }

    /// `f(z)`.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        match self.chart(z)? {
            Chart::Direct(z) => self.q_series(z, &self.coeffs),
            Chart::Fricke { shifted, image } => {
                let fr = self.fricke.expect("Fricke chart");
                let n = fr.level as f64;
                Ok((shifted * n.sqrt()).powi(-(self.weight as i32)) * self.q_series(image, &self.coeffs)? * fr.sign)
            }
        }
    }

    fn eichler_coeffs(&self) -> Vec<Complex64> {
        self.coeffs.iter().enumerate().map(|(i, a)| a / (i + 1) as f64).collect()
    }
}

/// The Eichler integral `Λ(z) = Σ a_m/m e^{2πimz}`, a primitive of `2πi f`
/// vanishing at i∞, for a weight-2 form.
#[derive(Clone, Debug)]
pub struct EichlerIntegral {
    form: CuspFormSpec,
    coeffs: Vec<Complex64>,
    /// `Λ(Wz) = sign·Λ(z) + constant` under the Fricke involution.
    fricke_constant: Complex64,
}

impl EichlerIntegral {
    pub fn new(form: &CuspFormSpec) -> Result<Self> {
        if form.weight != 2 {
            return Err(Error::Input(format!("Eichler integral needs weight 2, got {}", form.weight)));
        }
        let coeffs = form.eichler_coeffs();
        let fricke_constant = match form.fricke {
            Some(fr) => {
                let fixed = Complex64::new(0.0, 1.0 / (fr.level as f64).sqrt());
                form.q_series(fixed, &coeffs)? * (1.0 - fr.sign)
            }
            None => Complex64::new(0.0, 0.0),
        };
        Ok(Self { form: form.clone(), coeffs, fricke_constant })
    }

    pub fn form(&self) -> &CuspFormSpec {
        &self.form
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        match self.form.chart(z)? {
            Chart::Direct(z) => self.form.q_series(z, &self.coeffs),
            Chart::Fricke { image, .. } => {
                let sign = self.form.fricke.expect("Fricke chart").sign;
                Ok((self.form.q_series(image, &self.coeffs)? - self.fricke_constant) * sign)
            }
        }
    }

    /// `λ(γ) = Λ(γz) − Λ(z)`.
    pub fn lambda(&self, gamma: &super::mat2::Mat2, z: Complex64) -> Result<Complex64> {
        Ok(self.eval(gamma.act(z))? - self.eval(z)?)
    }
}

/// Something evaluable on the upper half-plane with a slash weight.
pub trait Form: Send + Sync {
    fn weight(&self) -> u32;
    fn eval(&self, z: Complex64) -> Result<Complex64>;
}

impl Form for CuspFormSpec {
    fn weight(&self) -> u32 {
        self.weight
    }
    fn eval(&self, z: Complex64) -> Result<Complex64> {
        CuspFormSpec::eval(self, z)
    }
}

/// The second-order form `G = f·Λ` built from a weight-2 form.
#[derive(Clone, Debug)]
pub struct SecondOrderForm {
    pub lambda: EichlerIntegral,
}

impl SecondOrderForm {
    pub fn new(f: &CuspFormSpec) -> Result<Self> {
        Ok(Self { lambda: EichlerIntegral::new(f)? })
    }

    pub fn base(&self) -> &CuspFormSpec {
        self.lambda.form()
    }
}

impl Form for SecondOrderForm {
    fn weight(&self) -> u32 {
        2
    }
    fn eval(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.base().eval(z)? * self.lambda.eval(z)?)
    }
}

/// `(F|_k(γ − 1))(z) = F(γz)(cz + d)^{−k} − F(z)`.
pub fn slash_minus_one(form: &dyn Form, gamma: &super::mat2::Mat2, z: Complex64) -> Result<Complex64> {
    Ok(form.eval(gamma.act(z))? * gamma.j(z).powi(-(form.weight() as i32)) - form.eval(z)?)
}

/// The level-11 form `η(z)²η(11z)²` with enough coefficients for the default threshold.
pub fn level11_form() -> Result<CuspFormSpec> {
    CuspFormSpec::from_eta_product("eta(z)^2 eta(11z)^2", &[(1, 2), (11, 2)], 4000)?.with_fricke(11)
}
