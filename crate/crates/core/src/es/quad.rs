use std::f64::consts::PI;
use std::sync::Arc;

use gauss_quad::legendre::GaussLegendre;
use num_complex::Complex64;

use crate::error::{Error, Result};

use super::form::Form;
use super::poly::delta_vector;

#[derive(Clone, Debug)]
pub struct QuadConfig {
    pub order: usize,
    /// Successive refinements must differ by less than `tol·max(1, |I|)`.
    pub tol: f64,
    pub max_depth: usize,
    /// Lower bound on Im along integration segments.
    pub min_im: f64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self { order: 32, tol: 1e-12, max_depth: 20, min_im: super::form::DEFAULT_MIN_IM }
    }
}

/// Adaptive Gauss–Legendre integration along straight segments.
#[derive(Clone, Debug)]
pub struct Integrator {
    config: QuadConfig,
    /// Nodes and weights on [−1, 1].
    rule: Arc<Vec<(f64, f64)>>,
}

impl Integrator {
    pub fn new(config: QuadConfig) -> Result<Self> {
        let rule = GaussLegendre::new(config.order)
            .map_err(|e| Error::Input(format!("quadrature order {}: {e}", config.order)))?;
        let mut pairs: Vec<(f64, f64)> = rule.iter().map(|&(x, w)| (x, w)).collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        Ok(Self { config, rule: Arc::new(pairs) })
    }

    pub fn config(&self) -> &QuadConfig {
        &self.config
    }

    fn panel<G>(&self, g: &G, z0: Complex64, z1: Complex64, dim: usize) -> Result<Vec<Complex64>>
    where
        G: Fn(Complex64) -> Result<Vec<Complex64>>,
    {
        let half = (z1 - z0) * 0.5;
        let mid = (z1 + z0) * 0.5;
        let mut acc = vec![Complex64::new(0.0, 0.0); dim];
        for &(x, w) in self.rule.iter() {
            let v = g(mid + half * x)?;
            for (a, c) in acc.iter_mut().zip(v) {
                *a += c * w;
            }
        }
        Ok(acc.into_iter().map(|a| a * half).collect())
    }

    fn adapt<G>(
        &self,
        g: &G,
        z0: Complex64,
        z1: Complex64,
        whole: Vec<Complex64>,
        tol: f64,
        depth: usize,
    ) -> Result<Vec<Complex64>>
    where
        G: Fn(Complex64) -> Result<Vec<Complex64>>,
    {
        let dim = whole.len();
        let mid = (z0 + z1) * 0.5;
        let left = self.panel(g, z0, mid, dim)?;
        let right = self.panel(g, mid, z1, dim)?;
        let refined: Vec<Complex64> = left.iter().zip(&right).map(|(a, b)| a + b).collect();
        let diff = refined.iter().zip(&whole).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        let size = refined.iter().map(|c| c.norm()).fold(1.0, f64::max);
        if diff < tol * size {
            return Ok(refined);
        }
        if depth >= self.config.max_depth {
            return Err(Error::Convergence(format!(
                "adaptive quadrature exceeded depth {} on [{z0}, {z1}] (difference {diff:.3e})",
                self.config.max_depth
            )));
        }
        let l = self.adapt(g, z0, mid, left, tol, depth + 1)?;
        let r = self.adapt(g, mid, z1, right, tol, depth + 1)?;
        Ok(l.iter().zip(&r).map(|(a, b)| a + b).collect())
    }

    /// `∫_{z0}^{z1} g(z) dz` along the segment, componentwise.
    pub fn integrate<G>(&self, g: G, z0: Complex64, z1: Complex64, dim: usize) -> Result<Vec<Complex64>>
    where
        G: Fn(Complex64) -> Result<Vec<Complex64>>,
    {
        if z0 == z1 {
            return Ok(vec![Complex64::new(0.0, 0.0); dim]);
        }
        // Im is affine along the segment, so endpoints bound it.
        let low = z0.im.min(z1.im);
        if low < self.config.min_im {
            return Err(Error::EvaluationDomain(format!(
                "segment [{z0}, {z1}] reaches Im {low:.3e} below {}",
                self.config.min_im
            )));
        }
        let whole = self.panel(&g, z0, z1, dim)?;
        self.adapt(&g, z0, z1, whole, self.config.tol, 0)
    }

    /// `∫_{z0}^{z1} 2πi f(z)(X − zY)^n dz` as a vector in the monomial basis.
    pub fn integrate_omega(&self, f: &dyn Form, n: usize, z0: Complex64, z1: Complex64) -> Result<Vec<Complex64>> {
        let two_pi_i = Complex64::new(0.0, 2.0 * PI);
        self.integrate(
            |z| {
                let fz = f.eval(z)? * two_pi_i;
                Ok(delta_vector(z, n).into_iter().map(|c| c * fz).collect())
            },
            z0,
            z1,
            n + 1,
        )
    }

    /// Difference between the direct segment and the detour through the
    /// midpoint raised by `0.3i`.
    pub fn detour_residual(&self, f: &dyn Form, n: usize, z0: Complex64, z1: Complex64) -> Result<f64> {
        let apex = (z0 + z1) * 0.5 + Complex64::new(0.0, 0.3);
        let direct = self.integrate_omega(f, n, z0, z1)?;
        let a = self.integrate_omega(f, n, z0, apex)?;
        let b = self.integrate_omega(f, n, apex, z1)?;
        Ok(direct
            .iter()
            .zip(a.iter().zip(&b))
            .map(|(d, (x, y))| (d - x - y).norm())
            .fold(0.0, f64::max))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::es::form::{level11_form, EichlerIntegral};

    fn integrator() -> Integrator {
        Integrator::new(QuadConfig::default()).unwrap()
    }

    #[test]
    fn polynomial_exactness() {
        let q = integrator();
        let z0 = Complex64::new(0.0, 1.0);
        let z1 = Complex64::new(1.0, 2.0);
        let got = q.integrate(|z| Ok(vec![z * z]), z0, z1, 1).unwrap()[0];
        let exact = (z1 * z1 * z1 - z0 * z0 * z0) / 3.0;
        assert!((got - exact).norm() < 1e-13);
    }

    #[test]
    fn empty_and_reversed_segments() {
        let f = level11_form().unwrap();
        let q = integrator();
        let z0 = Complex64::new(0.0, 1.0);
        let z1 = Complex64::new(1.0, 1.0);
        assert_eq!(q.integrate_omega(&f, 2, z0, z0).unwrap(), vec![Complex64::new(0.0, 0.0); 3]);
        let fwd = q.integrate_omega(&f, 2, z0, z1).unwrap();
        let back = q.integrate_omega(&f, 2, z1, z0).unwrap();
        for (a, b) in fwd.iter().zip(&back) {
            assert!((a + b).norm() < 1e-13);
        }
    }

    #[test]
    fn matches_eichler_difference() {
        let f = level11_form().unwrap();
        let lam = EichlerIntegral::new(&f).unwrap();
        let q = integrator();
        let z0 = Complex64::new(-0.3, 0.05);
        let z1 = Complex64::new(0.4, 0.08);
        let got = q.integrate_omega(&f, 0, z0, z1).unwrap()[0];
        let exact = lam.eval(z1).unwrap() - lam.eval(z0).unwrap();
        assert!((got - exact).norm() < 1e-10, "{got} vs {exact}");
    }

    #[test]
    fn detour_agreement() {
        let f = level11_form().unwrap();
        let r = integrator().detour_residual(&f, 0, Complex64::new(0.0, 1.0), Complex64::new(1.0, 1.0)).unwrap();
        assert!(r < 1e-10, "{r}");
    }

    #[test]
    fn segment_outside_domain() {
        let f = level11_form().unwrap();
        let err = integrator().integrate_omega(&f, 0, Complex64::new(0.0, 0.001), Complex64::new(0.0, 1.0));
        assert!(matches!(err, Err(Error::EvaluationDomain(_))));
    }
}
