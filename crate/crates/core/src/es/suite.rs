use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linear::{nullspace, Rational, Rationals};
use crate::magnus::Word;

use super::fixture::{base_points, GroupFixture, GroupRingElement};
use super::form::{slash_minus_one, CuspFormSpec, EichlerIntegral, Form, SecondOrderForm};
use super::mat2::Mat2;
use super::poly::{apply, delta_vector, pn_matrix, pn_matrix_exact, pullback_residual};
use super::quad::{Integrator, QuadConfig};

/// `Σ_w c_w p_n(w) ∫_z^{w⁻¹z} ω(f)`, before taking real parts.
pub fn phi_complex(
    fixture: &GroupFixture,
    form: &dyn Form,
    m: &GroupRingElement,
    z: Complex64,
    n: usize,
    integrator: &Integrator,
) -> Result<Vec<Complex64>> {
    let mut acc = vec![Complex64::new(0.0, 0.0); n + 1];
    for (w, c) in m.terms() {
        let g = fixture.matrix(&w)?;
        let integral = integrator.integrate_omega(form, n, z, g.inverse().act(z))?;
        for (a, v) in acc.iter_mut().zip(apply(&pn_matrix(&g, n)?, &integral)) {
            *a += v * c;
        }
    }
    Ok(acc)
}

/// `φ_z(f)(m)`: the componentwise real part of [`phi_complex`].
pub fn phi(
    fixture: &GroupFixture,
    form: &dyn Form,
    m: &GroupRingElement,
    z: Complex64,
    n: usize,
    integrator: &Integrator,
) -> Result<Vec<f64>> {
    Ok(phi_complex(fixture, form, m, z, n, integrator)?.into_iter().map(|c| c.re).collect())
}

fn matrices_of(fixture: &GroupFixture, m: &GroupRingElement) -> Result<Vec<Mat2>> {
    m.terms().map(|(w, _)| fixture.matrix(&w)).collect()
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn norm(a: &[f64]) -> f64 {
    a.iter().map(|x| x.abs()).fold(0.0, f64::max)
}

/// Points ordered by `min(Im z, Im γz, Im γ⁻¹z)`, from a fixed grid.
pub fn sample_points(gamma: &Mat2, count: usize) -> Vec<Complex64> {
    let mut cands = Vec::new();
    for i in 0..=20 {
        for y in [0.12, 0.2, 0.35, 0.6, 1.0] {
            let z = Complex64::new(-0.5 + 0.05 * i as f64, y);
            let s = z.im.min(gamma.act(z).im).min(gamma.inverse().act(z).im);
            cands.push((z, s));
        }
    }
    cands.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.re.total_cmp(&b.0.re)).then(a.0.im.total_cmp(&b.0.im)));
    let mut out: Vec<Complex64> = Vec::new();
    for (z, _) in cands {
        if out.len() == count {
            break;
        }
        if out.iter().all(|w| (w - z).norm() >= 0.1) {
            out.push(z);
        }
    }
    out
}

/// Max relative residual of `γ_!ω(f) = ω(f)` at the samples, where
/// `γ_!ω(f)(z) = p_n(γ)·2πi f(γ⁻¹z)(X − γ⁻¹z·Y)^n d(γ⁻¹z)/dz`.
pub fn gamma_shriek_check(f: &dyn Form, gamma: &Mat2, n: usize, samples: &[Complex64]) -> Result<f64> {
    let two_pi_i = Complex64::new(0.0, 2.0 * std::f64::consts::PI);
    let inv = gamma.inverse();
    let pn = pn_matrix(gamma, n)?;
    let mut worst = 0.0f64;
    for &z in samples {
        let w = inv.act(z);
        let dw = inv.j(z).powi(-2);
        let fw = f.eval(w)? * two_pi_i * dw;
        let pulled: Vec<Complex64> = delta_vector(w, n).into_iter().map(|c| c * fw).collect();
        let lhs = apply(&pn, &pulled);
        let fz = f.eval(z)? * two_pi_i;
        let rhs: Vec<Complex64> = delta_vector(z, n).into_iter().map(|c| c * fz).collect();
        let scale = rhs.iter().map(|c| c.norm()).fold(1.0f64, f64::max);
        let r = lhs.iter().zip(&rhs).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max) / scale;
        worst = worst.max(r);
    }
    Ok(worst)
}

/// Dimensions of the common kernel of `(p_n(γ_{i_1}) − 1)⋯(p_n(γ_{i_q}) − 1)` over
/// all generator tuples, for `q = 1..=q_max`, in exact arithmetic.
pub fn fixed_tower_dims(gens: &[Mat2], n: usize, q_max: usize) -> Result<Vec<usize>> {
    let dim = n + 1;
    let shifted: Vec<Vec<Vec<Rational>>> = gens
        .iter()
        .map(|g| {
            let mut m = pn_matrix_exact(g, n)?;
            for (i, row) in m.iter_mut().enumerate() {
                row[i] -= Rational::from_integer(1.into());
            }
            Ok(m)
        })
        .collect::<Result<_>>()?;
    let mat_mul = |a: &Vec<Vec<Rational>>, b: &Vec<Vec<Rational>>| -> Vec<Vec<Rational>> {
        (0..dim)
            .map(|i| (0..dim).map(|j| (0..dim).map(|k| &a[i][k] * &b[k][j]).sum()).collect())
            .collect()
    };
    let mut products: Vec<Vec<Vec<Rational>>> = vec![(0..dim)
        .map(|i| (0..dim).map(|j| Rational::from_integer(((i == j) as i64).into())).collect())
        .collect()];
    let mut dims = Vec::with_capacity(q_max);
    for _ in 0..q_max {
        products = products.iter().flat_map(|p| shifted.iter().map(move |s| mat_mul(p, s))).collect();
        let rows: Vec<Vec<Rational>> = products.iter().flatten().cloned().collect();
        dims.push(nullspace(Rationals, &rows, dim)?.dim());
    }
    Ok(dims)
}

#[derive(Clone, Debug, Serialize)]
pub struct EsCheck {
    pub name: String,
    pub anchor: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub detail: String,
}

impl EsCheck {
    fn new(name: &str, anchor: &str, residual: f64, tolerance: f64, detail: String) -> Self {
        Self {
            name: name.into(),
            anchor: anchor.into(),
            residual,
            tolerance,
            pass: residual.is_finite() && residual < tolerance,
            detail,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CocycleEntry {
    pub label: String,
    pub parabolic: bool,
    pub value: Vec<f64>,
    pub base_point: [f64; 2],
    pub alt_base_point: [f64; 2],
    pub base_point_residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CocycleTable {
    pub fixture: String,
    pub form: String,
    pub order: u32,
    pub n: usize,
    pub entries: Vec<CocycleEntry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EsReport {
    pub table: CocycleTable,
    pub checks: Vec<EsCheck>,
}

impl EsReport {
    pub fn passes(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Clone, Debug)]
pub struct EsConfig {
    pub quad: QuadConfig,
    /// Sample points per generator for pointwise identities.
    pub samples: usize,
    /// Sample points for the pullback law.
    pub pullback_samples: usize,
}

impl Default for EsConfig {
    fn default() -> Self {
        Self { quad: QuadConfig::default(), samples: 5, pullback_samples: 10 }
    }
}

fn pt(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

/// The generating set of `J_q` used for the table: products of `q` generator
/// augmentations, then one augmentation per parabolic.
pub fn jq_generators(fixture: &GroupFixture, q: u32) -> Vec<(String, bool, GroupRingElement)> {
    let r = fixture.generators.len();
    let mut out = Vec::new();
    let mut tuples: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..q {
        tuples = tuples.into_iter().flat_map(|t| (0..r).map(move |i| [t.clone(), vec![i]].concat())).collect();
    }
    for t in tuples {
        let label = t.iter().map(|&i| format!("({}-1)", fixture.generator_names[i])).collect::<String>();
        let m = t
            .iter()
            .map(|&i| GroupRingElement::minus_one(&fixture.generator_word(i)))
            .reduce(|a, b| a.mul(&b))
            .unwrap_or_else(GroupRingElement::one);
        out.push((label, false, m));
    }
    for p in &fixture.parabolics {
        out.push((format!("({}-1)", p.label), true, GroupRingElement::minus_one(&p.word)));
    }
    out
}

fn table_entry(
    fixture: &GroupFixture,
    form: &dyn Form,
    label: String,
    parabolic: bool,
    m: &GroupRingElement,
    n: usize,
    integrator: &Integrator,
) -> Result<CocycleEntry> {
    let mats = matrices_of(fixture, m)?;
    let pts = base_points(&mats, integrator.config().min_im, 2);
    if pts.len() < 2 {
        return Err(Error::EvaluationDomain(format!("no admissible base points for {label}")));
    }
    let v0 = phi(fixture, form, m, pts[0].0, n, integrator)?;
    let v1 = phi(fixture, form, m, pts[1].0, n, integrator)?;
    Ok(CocycleEntry {
        label,
        parabolic,
        base_point_residual: max_diff(&v0, &v1),
        value: v0,
        base_point: pt(pts[0].0),
        alt_base_point: pt(pts[1].0),
    })
}

fn build_table(
    fixture: &GroupFixture,
    form: &dyn Form,
    form_name: &str,
    q: u32,
    n: usize,
    integrator: &Integrator,
) -> Result<CocycleTable> {
    let gens = jq_generators(fixture, q);
    let entries = gens
        .into_par_iter()
        .map(|(label, parabolic, m)| table_entry(fixture, form, label, parabolic, &m, n, integrator))
        .collect::<Result<Vec<_>>>()?;
    Ok(CocycleTable { fixture: fixture.name.clone(), form: form_name.into(), order: q, n, entries })
}

fn table_checks(table: &CocycleTable, checks: &mut Vec<EsCheck>) {
    let par = table.entries.iter().filter(|e| e.parabolic).map(|e| norm(&e.value)).fold(0.0, f64::max);
    checks.push(EsCheck::new(
        &format!("q{}: parabolic vanishing", table.order),
        "φ_z(f)(p − 1) = 0 for parabolic p",
        par,
        1e-6,
        format!("{} parabolic entries", table.entries.iter().filter(|e| e.parabolic).count()),
    ));
    if table.n == 0 {
        let bp = table.entries.iter().map(|e| e.base_point_residual).fold(0.0, f64::max);
        checks.push(EsCheck::new(
            &format!("q{}: base-point independence", table.order),
            "φ_z(f)(m) − φ_z'(f)(m) = p_n(m)∫_z^z' Re ω(f) = 0 for m ∈ J_q, n = 0",
            bp,
            1e-6,
            format!("{} entries, two base points each", table.entries.len()),
        ));
    }
}

/// A-linearity `φ(γm) = p_n(γ)φ(m)` for every generator γ and table entry m
/// with an admissible common base point.
fn a_linearity(
    fixture: &GroupFixture,
    form: &dyn Form,
    table_gens: &[(String, bool, GroupRingElement)],
    n: usize,
    integrator: &Integrator,
) -> Result<(f64, usize, usize)> {
    let jobs: Vec<(usize, &GroupRingElement)> = (0..fixture.generators.len())
        .flat_map(|i| table_gens.iter().map(move |(_, _, m)| (i, m)))
        .collect();
    let results: Vec<Option<f64>> = jobs
        .into_par_iter()
        .map(|(i, m)| {
            let g = GroupRingElement::word(&fixture.generator_word(i));
            let gm = g.mul(m);
            let mut mats = matrices_of(fixture, &gm)?;
            mats.extend(matrices_of(fixture, m)?);
            let Some(&(z, _)) = base_points(&mats, integrator.config().min_im, 1).first() else {
                return Ok(None);
            };
            let lhs = phi(fixture, form, &gm, z, n, integrator)?;
            let rhs = phi(fixture, form, m, z, n, integrator)?;
            let pn = pn_matrix(&fixture.generators[i], n)?;
            let rhs: Vec<f64> = (0..=n).map(|r| (0..=n).map(|c| pn[(r, c)] * rhs[c]).sum()).collect();
            Ok(Some(max_diff(&lhs, &rhs)))
        })
        .collect::<Result<_>>()?;
    let done: Vec<f64> = results.iter().flatten().copied().collect();
    Ok((done.iter().copied().fold(0.0, f64::max), done.len(), results.len() - done.len()))
}

fn order_one_checks(
    fixture: &GroupFixture,
    f: &CuspFormSpec,
    integrator: &Integrator,
    config: &EsConfig,
    checks: &mut Vec<EsCheck>,
) -> Result<()> {
    let n = (f.weight - 2) as usize;
    let gens = &fixture.generators;
    let r = gens.len();
    let lam = EichlerIntegral::new(f)?;

    // Cocycle identity on generator pairs.
    let pairs: Vec<(usize, usize)> = (0..r).flat_map(|i| (0..r).map(move |j| (i, j))).collect();
    let cocycle: Vec<f64> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let gi = fixture.generator_word(i);
            let gj = fixture.generator_word(j);
            let gij = gi.concat(&gj);
            let mats = [gens[i], gens[j], fixture.matrix(&gij)?];
            let z = base_points(&mats, integrator.config().min_im, 1)
                .first()
                .map(|p| p.0)
                .ok_or_else(|| Error::EvaluationDomain("no base point for cocycle pair".into()))?;
            let e = |w: &Word| phi(fixture, f, &GroupRingElement::word(w), z, n, integrator);
            let (a, b, c) = (e(&gij)?, e(&gi)?, e(&gj)?);
            let pn = pn_matrix(&gens[i], n)?;
            let res = (0..=n)
                .map(|row| (a[row] - b[row] - (0..=n).map(|k| pn[(row, k)] * c[k]).sum::<f64>()).abs())
                .fold(0.0, f64::max);
            Ok(res)
        })
        .collect::<Result<_>>()?;
    checks.push(EsCheck::new(
        "q1: cocycle identity",
        "φ(γτ) = φ(γ) + p_n(γ)φ(τ)",
        cocycle.into_iter().fold(0.0, f64::max),
        1e-8,
        format!("{} generator pairs", pairs.len()),
    ));

    // Table entries against Eichler periods: φ(γ − 1) = −Re λ(γ) at n = 0.
    if n == 0 {
        let mut worst = 0.0f64;
        for (i, g) in gens.iter().enumerate() {
            let z = base_points(&[*g], integrator.config().min_im, 1)[0].0;
            let via_phi = phi(fixture, f, &GroupRingElement::minus_one(&fixture.generator_word(i)), z, 0, integrator)?[0];
            let via_lambda = -lam.lambda(g, z)?.re;
            worst = worst.max((via_phi - via_lambda).abs());
        }
        checks.push(EsCheck::new(
            "q1: quadrature vs Eichler periods",
            "∫_z^{γ⁻¹z} 2πi f = Λ(γ⁻¹z) − Λ(z)",
            worst,
            1e-8,
            format!("{r} generators"),
        ));
    }

    // Rank of the real cocycles from f and if.
    let mut rows = Vec::new();
    let mut vals_f = Vec::new();
    let mut vals_if = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let z = base_points(&[*g], integrator.config().min_im, 1)[0].0;
        let v = phi_complex(fixture, f, &GroupRingElement::minus_one(&fixture.generator_word(i)), z, n, integrator)?;
        vals_f.extend(v.iter().map(|c| c.re));
        vals_if.extend(v.iter().map(|c| (c * Complex64::i()).re));
    }
    rows.push(vals_f);
    rows.push(vals_if);
    let cols = rows[0].len();
    let mat = DMatrix::from_fn(2, cols, |i, j| rows[i][j]);
    let sv = mat.singular_values();
    let rank = sv.iter().filter(|s| **s > 1e-6).count();
    let expected = 2 * fixture.genus;
    checks.push(EsCheck::new(
        "q1: rank of cocycles from f and if",
        "rank = dim H^1_{1,par} = 2g at n = 0",
        (rank as f64 - expected as f64).abs(),
        0.5,
        format!(
            "rank {rank}, expected {expected}, singular values {}",
            sv.iter().map(|s| format!("{s:.6e}")).collect::<Vec<_>>().join(", ")
        ),
    ));

    // γ_!ω(f) = ω(f) for order-1 forms.
    let mut shriek = 0.0f64;
    for g in gens {
        shriek = shriek.max(gamma_shriek_check(f, g, n, &sample_points(g, config.samples))?);
    }
    checks.push(EsCheck::new(
        "q1: shriek annihilation",
        "m_!ω(f) = 0 for m = γ − 1",
        shriek,
        1e-9,
        format!("{} samples per generator", config.samples),
    ));

    // Path independence through a raised detour.
    let detour = integrator.detour_residual(f, 0, Complex64::new(0.0, 1.0), Complex64::new(1.0, 1.0))?;
    checks.push(EsCheck::new(
        "q1: detour path independence",
        "∫ ω(f) does not depend on the path",
        detour,
        1e-10,
        "z0 = i, z1 = 1 + i, apex raised by 0.3i".into(),
    ));
    Ok(())
}

fn order_two_checks(
    fixture: &GroupFixture,
    g_form: &SecondOrderForm,
    integrator: &Integrator,
    config: &EsConfig,
    checks: &mut Vec<EsCheck>,
) -> Result<Vec<Complex64>> {
    let f = g_form.base();
    let lam = &g_form.lambda;
    let gens = &fixture.generators;
    let r = gens.len();
    let ref_point = |g: &Mat2| -> Result<Complex64> {
        sample_points(g, 1)
            .first()
            .copied()
            .ok_or_else(|| Error::EvaluationDomain(format!("no sample point for {g}")))
    };

    let lambdas: Vec<Complex64> = gens.iter().map(|g| lam.lambda(g, ref_point(g)?)).collect::<Result<_>>()?;

    // G|(γ − 1) = λ(γ)f, and λ constant in z.
    let mut defect = 0.0f64;
    let mut constancy = 0.0f64;
    let mut product = 0.0f64;
    for (g, l) in gens.iter().zip(&lambdas) {
        for z in sample_points(g, config.samples) {
            let lhs = slash_minus_one(g_form, g, z)?;
            let fz = f.eval(z)?;
            defect = defect.max((lhs - l * fz).norm());
            constancy = constancy.max((lam.lambda(g, z)? - l).norm());
            // (fG)|_4(γ − 1) = λ(γ) f².
            let fg_gz = f.eval(g.act(z))? * Form::eval(g_form, g.act(z))? * g.j(z).powi(-4);
            let fg_z = fz * Form::eval(g_form, z)?;
            product = product.max((fg_gz - fg_z - l * fz * fz).norm());
        }
    }
    checks.push(EsCheck::new(
        "q2: second-order defect",
        "G|_2(γ − 1) = λ(γ) f",
        defect,
        1e-8,
        format!("{} samples per generator", config.samples),
    ));
    checks.push(EsCheck::new(
        "q2: λ constant in z",
        "λ(γ) = Λ(γz) − Λ(z)",
        constancy,
        1e-8,
        format!("{} samples per generator", config.samples),
    ));
    checks.push(EsCheck::new(
        "q2: product identity",
        "(fG)|_4(γ − 1) = λ(γ) f²",
        product,
        1e-8,
        format!("{} samples per generator", config.samples),
    ));

    // λ on parabolics.
    let mut par = 0.0f64;
    for p in &fixture.parabolics {
        par = par.max(lam.lambda(&p.matrix, ref_point(&p.matrix)?)?.norm());
    }
    checks.push(EsCheck::new(
        "q2: λ vanishes on parabolics",
        "G|_2(p − 1) = 0 for parabolic p",
        par,
        1e-8,
        format!("{} parabolics", fixture.parabolics.len()),
    ));

    // λ(γγ') = λ(γ) + λ(γ'), with λ(γγ') by direct quadrature.
    let mut additivity = 0.0f64;
    let mut done = 0;
    for i in 0..r {
        for j in 0..r {
            let gg = gens[i].mul(&gens[j])?;
            // Scoring γγ'⁻¹ keeps both z and γγ'z above the threshold.
            let Some(&(z, _)) = base_points(&[gg.inverse()], integrator.config().min_im, 1).first() else {
                continue;
            };
            let path = integrator.integrate_omega(f, 0, z, gg.act(z))?[0];
            additivity = additivity.max((path - lambdas[i] - lambdas[j]).norm());
            done += 1;
        }
    }
    checks.push(EsCheck::new(
        "q2: λ additivity",
        "λ(γγ') = λ(γ) + λ(γ')",
        if done == 0 { f64::INFINITY } else { additivity },
        1e-8,
        format!("{done} of {} generator pairs, quadrature oracle", r * r),
    ));
    Ok(lambdas)
}

/// At n = 0 the primitive of `2πi fΛ` is `Λ²/2`, so
/// `φ((γ_i − 1)(γ_j − 1)) = Re λ(γ_i)λ(γ_j)` independently of quadrature.
fn closed_form_check(table: &CocycleTable, lambdas: &[Complex64]) -> EsCheck {
    let r = lambdas.len();
    let worst = table
        .entries
        .iter()
        .filter(|e| !e.parabolic)
        .enumerate()
        .map(|(k, e)| (e.value[0] - (lambdas[k / r] * lambdas[k % r]).re).abs())
        .fold(0.0, f64::max);
    EsCheck::new(
        "q2: table vs Λ²/2 closed form",
        "φ((γ − 1)(τ − 1)) = Re λ(γ)λ(τ) for G = fΛ",
        worst,
        1e-8,
        format!("{} product entries", r * r),
    )
}

/// Runs every numerical identity for order `q` (1 uses `f`, 2 uses `G = f·Λ`).
pub fn verify_suite(
    fixture: &GroupFixture,
    f: &CuspFormSpec,
    q: u32,
    n: usize,
    config: &EsConfig,
) -> Result<EsReport> {
    if f.weight as usize != n + 2 {
        return Err(Error::Input(format!("form of weight {} does not match n = {n}", f.weight)));
    }
    if !(1..=2).contains(&q) {
        return Err(Error::Range(format!("order {q} not supported; forms are built for q ∈ {{1, 2}}")));
    }
    let integrator = Integrator::new(config.quad.clone())?;
    let mut checks = Vec::new();

    // Form-independent identities.
    let mut pullback = 0.0f64;
    for g in &fixture.generators {
        for z in sample_points(g, config.pullback_samples) {
            for nn in [0, 2] {
                pullback = pullback.max(pullback_residual(g, nn, z)?);
            }
        }
    }
    checks.push(EsCheck::new(
        "pullback law",
        "γ^*δ_n(z) = (cz + d)^{−n−2} p_n(γ) δ_n(z)",
        pullback,
        1e-9,
        format!("n ∈ {{0, 2}}, {} samples per generator", config.pullback_samples),
    ));
    let fixed = fixed_tower_dims(&fixture.generators, 2, 3)?;
    checks.push(EsCheck::new(
        "fixed-vector tower at n = 2",
        "V^{I^q} = 0 for V = P_2",
        fixed.iter().sum::<usize>() as f64,
        0.5,
        format!("dims {fixed:?} for q = 1..3"),
    ));

    let table_gens = jq_generators(fixture, q);
    let (table, a_lin) = if q == 1 {
        order_one_checks(fixture, f, &integrator, config, &mut checks)?;
        let table = build_table(fixture, f, &f.name, 1, n, &integrator)?;
        (table, a_linearity(fixture, f, &table_gens, n, &integrator)?)
    } else {
        if n != 0 {
            return Err(Error::Input("second-order forms are built from weight-2 forms only".into()));
        }
        let g = SecondOrderForm::new(f)?;
        let lambdas = order_two_checks(fixture, &g, &integrator, config, &mut checks)?;
        let name = format!("{}·Λ", f.name);
        let table = build_table(fixture, &g, &name, 2, 0, &integrator)?;
        checks.push(closed_form_check(&table, &lambdas));
        (table, a_linearity(fixture, &g, &table_gens, 0, &integrator)?)
    };
    table_checks(&table, &mut checks);
    let (res, done, skipped) = a_lin;
    checks.push(EsCheck::new(
        &format!("q{q}: A-linearity"),
        "φ_z(f)(γm) = p_n(γ)φ_z(f)(m)",
        if done == 0 { f64::INFINITY } else { res },
        1e-6,
        format!("{done} pairs checked, {skipped} outside the evaluation domain"),
    ));
    Ok(EsReport { table, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::es::form::level11_form;

    #[test]
    fn lemma_fixed_vectors_vanish() {
        let fx = GroupFixture::gamma0_11();
        assert_eq!(fixed_tower_dims(&fx.generators, 2, 3).unwrap(), vec![0, 0, 0]);
        // The translation alone fixes Y², and (T − 1)² kills X·Y too.
        assert_eq!(fixed_tower_dims(&fx.generators[..1], 2, 2).unwrap(), vec![1, 2]);
        assert_eq!(fixed_tower_dims(&fx.generators, 0, 2).unwrap(), vec![1, 1]);
    }

    #[test]
    fn identity_word_gives_zero() {
        let fx = GroupFixture::gamma0_11();
        let f = level11_form().unwrap();
        let q = Integrator::new(QuadConfig::default()).unwrap();
        let v = phi(&fx, &f, &GroupRingElement::one(), Complex64::new(0.0, 1.0), 0, &q).unwrap();
        assert_eq!(v, vec![0.0]);
    }

    #[test]
    fn translation_is_parabolic_zero() {
        let fx = GroupFixture::gamma0_11();
        let f = level11_form().unwrap();
        let q = Integrator::new(QuadConfig::default()).unwrap();
        let m = GroupRingElement::minus_one(&fx.generator_word(0));
        let v = phi(&fx, &f, &m, Complex64::new(0.1, 0.5), 0, &q).unwrap();
        assert!(v[0].abs() < 1e-8);
    }

    #[test]
    fn shriek_identity_for_generators() {
        let fx = GroupFixture::gamma0_11();
        let f = level11_form().unwrap();
        for g in &fx.generators {
            let r = gamma_shriek_check(&f, g, 0, &sample_points(g, 5)).unwrap();
            assert!(r < 1e-9, "{g}: {r}");
        }
        assert_eq!(gamma_shriek_check(&f, &Mat2::IDENTITY, 0, &sample_points(&Mat2::IDENTITY, 3)).unwrap(), 0.0);
    }

    #[test]
    fn weight_mismatch_rejected() {
        let fx = GroupFixture::gamma0_11();
        let f = level11_form().unwrap();
        assert!(verify_suite(&fx, &f, 1, 2, &EsConfig::default()).is_err());
    }
}
