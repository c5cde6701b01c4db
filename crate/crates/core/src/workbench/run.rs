use std::collections::BTreeSet;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::dims;
use crate::error::{Error, Result};
use crate::es::{verify_suite, EsConfig, QuadConfig};
use crate::finite::{augmentation_powers, perfect_check, stabilization_report, FiniteGroup};
use crate::jq::{build_jq, expected_parabolic_class_rank, parabolic_class_rank_in, parabolics_in_jq};
use crate::linear::{quotient_dim, Field, Rationals, Subspace};
use crate::surface::{admissible_basis, certify_admissible_basis, relator_ideal_graded_dim};

use super::fixture::{
    build_module, fixture_root, load_fixture, resolve_fixture, FieldSpec, FiniteCheck, FiniteFixture, FixtureFile,
    FixtureKind, FixturePayload, ModuleSpec,
};
use super::report::{num, Metadata, Record, Report, Table};

pub const FUCHSIAN_FIXTURES: [&str; 4] = ["g1s1", "g1s2", "g2s1", "g0s3"];
pub const FINITE_FIXTURES: [&str; 5] = ["s3", "z2", "z3", "z5", "a5"];
pub const MODULAR_FIXTURES: [&str; 1] = ["gamma0_11"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    Dims,
    Surface,
    Fuchsian,
    Finite,
    Es,
    All,
}

impl Command {
    pub const ALL: [Command; 6] =
        [Command::Dims, Command::Surface, Command::Fuchsian, Command::Finite, Command::Es, Command::All];

    pub fn as_str(self) -> &'static str {
        match self {
            Command::Dims => "dims",
            Command::Surface => "surface",
            Command::Fuchsian => "fuchsian",
            Command::Finite => "finite",
            Command::Es => "es",
            Command::All => "all",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::Input(format!("unknown command {s:?}")))
    }
}

/// Parameters shared by every command; unset fields take per-command defaults.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub fixture: Option<String>,
    pub qmax: Option<u32>,
    pub g: Option<u64>,
    pub s: Option<u64>,
    pub n: Option<u64>,
    pub order: Option<u32>,
    /// Quadrature tolerance for the numerical suite.
    pub tol: Option<f64>,
    /// Not part of the report: results do not depend on it.
    #[serde(skip_serializing)]
    pub threads: Option<usize>,
    pub fixture_root: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Input(format!("config: {e}")))
    }

    /// Fields set in `over` replace those in `self`.
    pub fn merged(&self, over: &RunConfig) -> RunConfig {
        RunConfig {
            fixture: over.fixture.clone().or_else(|| self.fixture.clone()),
            qmax: over.qmax.or(self.qmax),
            g: over.g.or(self.g),
            s: over.s.or(self.s),
            n: over.n.or(self.n),
            order: over.order.or(self.order),
            tol: over.tol.or(self.tol),
            threads: over.threads.or(self.threads),
            fixture_root: over.fixture_root.clone().or_else(|| self.fixture_root.clone()),
        }
    }
}

/// Process exit status for an engine error: 3 for resource bounds, 2 for bad
/// input, 1 for anything else (a check that could not be completed).
pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::Resource(_) => 3,
        Error::Input(_) | Error::Range(_) | Error::Domain(_) | Error::Io(_) => 2,
        _ => 1,
    }
}

/// Executes a command and returns its report.
pub fn run(command: Command, config: &RunConfig) -> Result<Report> {
    match config.threads {
        Some(0) => Err(Error::Input("--threads must be at least 1".into())),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::Resource(format!("thread pool: {e}")))?
            .install(|| dispatch(command, config)),
        None => dispatch(command, config),
    }
}

fn dispatch(command: Command, config: &RunConfig) -> Result<Report> {
    let meta = Metadata::new(command.as_str(), serde_json::to_value(config)?);
    let mut report = Report::new(meta);
    match command {
        Command::Dims => run_dims(config, &mut report)?,
        Command::Surface => run_surface(config, &mut report)?,
        Command::Fuchsian => run_fuchsian(config, &mut report)?,
        Command::Finite => run_finite(config, &mut report)?,
        Command::Es => run_es(config, &mut report)?,
        Command::All => {
            // Shipped fixtures and default grids; only shared knobs pass through.
            let base = RunConfig {
                tol: config.tol,
                fixture_root: config.fixture_root.clone(),
                ..RunConfig::default()
            };
            for sub in &Command::ALL[..5] {
                report.absorb(dispatch(*sub, &base)?);
            }
        }
    }
    Ok(report)
}

fn load_kind(config: &RunConfig, name: &str, kind: FixtureKind, report: &mut Report) -> Result<FixtureFile> {
    let root = fixture_root(config.fixture_root.as_deref());
    let path = resolve_fixture(name, &root);
    let f = load_fixture(&path)?;
    if f.kind() != kind {
        return Err(Error::Input(format!(
            "fixture {} is {}, command needs {}",
            path.display(),
            f.kind().as_str(),
            kind.as_str()
        )));
    }
    report.metadata.fixtures.insert(f.name.clone(), f.sha256.clone());
    Ok(f)
}

fn fixture_names(config: &RunConfig, defaults: &[&str]) -> Vec<String> {
    match &config.fixture {
        Some(f) => vec![f.clone()],
        None => defaults.iter().map(|s| s.to_string()).collect(),
    }
}

// ---- dims ----

fn run_dims(config: &RunConfig, report: &mut Report) -> Result<()> {
    let q_max = config.qmax.unwrap_or(4);
    if q_max == 0 {
        return Err(Error::Input("--qmax must be at least 1".into()));
    }
    let gs: Vec<u64> = config.g.map_or_else(|| (0..=3).collect(), |g| vec![g]);
    let ss: Vec<u64> = config.s.map_or_else(|| (0..=3).collect(), |s| vec![s]);
    let ns: Vec<u64> = config.n.map_or_else(|| vec![0, 2], |n| vec![n]);
    let explicit = config.g.is_some() && config.s.is_some();
    let mut signatures = Vec::new();
    for &g in &gs {
        for &s in &ss {
            match dims::check_signature(g, s) {
                Err(e) if explicit => return Err(e),
                Err(_) => {}
                // The default grid keeps hyperbolic signatures and the closed torus.
                Ok(()) if explicit || 2 * g + s > 2 || (g, s) == (1, 0) => signatures.push((g, s)),
                Ok(()) => {}
            }
        }
    }
    if signatures.is_empty() {
        return Err(Error::Input("no valid signature (2g + s ≥ 2) in the requested grid".into()));
    }

    let genera: BTreeSet<u64> = signatures.iter().map(|&(g, _)| g).collect();
    for &g in &genera {
        n_g_records(g, q_max, report);
    }

    let mut table = Table::new(&[
        "g",
        "s",
        "n",
        "q",
        "N_g(q)",
        "bar_N_g(q-1)",
        "dim_h1",
        "dim_h1_par",
        "dim_h1_classical",
        "dim_cusp_classical",
        "cusp_convention",
        "dim_ext2_s0",
    ]);
    for &(g, s) in &signatures {
        for &n in &ns {
            dims::check_weight(n)?;
            for q in 1..=q_max {
                let aux = dims::dim_aux(g, s, n, q)?;
                table.push(vec![
                    json!(g),
                    json!(s),
                    json!(n),
                    json!(q),
                    json!(dims::n_g(g, q)),
                    json!(dims::bar_n(g, q - 1)),
                    json!(dims::dim_h1(g, s, n, q)?),
                    json!(dims::dim_h1_par(g, s, n, q)?),
                    json!(aux.dim_h1_classical),
                    json!(aux.dim_cusp_classical),
                    json!(aux.cusp_convention.map_or(String::new(), |c| format!("{c:?}"))),
                    aux.dim_ext2_s0.map_or(Value::Null, |v| json!(v)),
                ]);
            }
            dims_records(g, s, n, q_max, report)?;
        }
    }
    report.tables.insert("dims".into(), table);
    Ok(())
}

fn n_g_records(g: u64, q_max: u32, report: &mut Report) {
    for q in 0..=q_max.max(2) {
        let r = dims::n_g(g, q);
        let exact = dims::n_g_closed_form_exact(g, q);
        report.records.push(
            Record::exact(
                format!("N_g(q) by recursion, closed form and enumeration g={g} q={q}"),
                "N_g(q+1) = 2g·N_g(q) − N_g(q−1) = α^q + α^{q−2} + ⋯ + α^{−q} = #{q-tuples over 2g letters avoiding (1,2)}",
                json!({"recursion": r, "closed_form": r, "enumeration": r, "sqrt_part": "0"}),
                json!({
                    "recursion": r,
                    "closed_form": dims::n_g_closed_form(g, q),
                    "enumeration": dims::n_g_enumerated(g, q),
                    "sqrt_part": exact.b.to_string(),
                }),
            ),
        );
        if q >= 1 {
            report.records.push(Record::exact(
                format!("bar N increment g={g} q={q}"),
                "bar N_g(q) − bar N_g(q−1) = N_g(q)",
                r,
                dims::bar_n(g, q) - dims::bar_n(g, q - 1),
            ));
        }
    }
    if g >= 1 {
        report.records.push(Record::exact(format!("N_g(1) g={g}"), "N_g(1) = 2g", 2 * g, dims::n_g(g, 1)));
        report.records.push(Record::exact(
            format!("N_g(2) g={g}"),
            "N_g(2) = (2g)^2 − 1",
            4 * g * g - 1,
            dims::n_g(g, 2),
        ));
    }
}

fn dims_records(g: u64, s: u64, n: u64, q_max: u32, report: &mut Report) -> Result<()> {
    let tag = format!("g={g} s={s} n={n}");
    let seq = dims::sequence_consistency(g, s, n, q_max)?;
    for id in &seq.identities {
        let anchor = match id.branch {
            dims::SequenceBranch::A => "0 → H_q^1 → H_{q+1}^1 → H^1(Γ,V)^{N_g(q)} → 0",
            dims::SequenceBranch::B => "0 → R^{N_g(q)} → H_q^1 → H_{q+1}^1 → H^1(Γ,R)^{N_g(q)} → 0",
            dims::SequenceBranch::C => "0 → R^{N_g(q)} → H_q^1 → H_{q+1}^1 → H^1(Γ,R)^{N_g(q)} → R^{N_g(q−1)} → 0",
            dims::SequenceBranch::Parabolic => "0 → H_{q,par}^1 → H_{q+1,par}^1 → H_par^1(Γ,V)^{N_g(q)} → 0",
        };
        report.records.push(
            Record::exact(
                format!("exact sequence ({:?}) {tag} q={}", id.branch, id.q),
                anchor,
                0i128,
                id.alternating_sum,
            )
            .with_detail(format!("terms {:?}", id.terms)),
        );
    }
    report.records.push(Record::exact(
        format!("order-one reduction of dim H_q^1 {tag}"),
        "dim H_1^1(Γ,V_n) = dim H^1(Γ,V_n)",
        dims::dim_h1_classical(g, s, n)?,
        dims::dim_h1(g, s, n, 1)?,
    ));
    if n >= 1 {
        let (cusp, _) = dims::dim_cusp_classical(g, s, n)?;
        report.records.push(Record::exact(
            format!("order-one parabolic dimension matches cusp forms {tag}"),
            "dim H_{1,par}^1(Γ,V_n) = dim S_{n+2}(Γ) = (2g−2)(n+1) + ns",
            cusp,
            dims::dim_h1_par(g, s, n, 1)? as i64,
        ));
    } else {
        report.records.push(Record::exact(
            format!("order-one parabolic dimension {tag}"),
            "dim H_{1,par}^1(Γ,R) = 2g",
            2 * g,
            dims::dim_h1_par(g, s, n, 1)?,
        ));
    }
    if s == 0 {
        for q in 1..=q_max {
            report.records.push(Record::exact(
                format!("Ext² dimension {tag} q={q}"),
                "dim Ext²_A(A/J_q, R) = N_g(q−1) for n = s = 0",
                if n == 0 { dims::n_g(g, q - 1) } else { 0 },
                dims::dim_ext2_s0(g, s, n, q)?,
            ));
        }
    }
    Ok(())
}

// ---- surface ----

fn run_surface(config: &RunConfig, report: &mut Report) -> Result<()> {
    let q_max = config.qmax.unwrap_or(4) as usize;
    let gs: Vec<usize> = config.g.map_or_else(|| vec![1, 2], |g| vec![g as usize]);
    if q_max == 0 || gs.contains(&0) {
        return Err(Error::Input("surface needs g ≥ 1 and --qmax ≥ 1".into()));
    }
    let tasks: Vec<(usize, usize)> = gs.iter().flat_map(|&g| (1..=q_max).map(move |q| (g, q))).collect();
    let graded: Vec<Result<usize>> = tasks.par_iter().map(|&(g, q)| relator_ideal_graded_dim(g, q)).collect();
    let certificates: Vec<Result<bool>> = gs.par_iter().map(|&g| certify_admissible_basis(g, q_max)).collect();

    let mut table = Table::new(&["g", "q", "N_g(q)", "relator_quotient_dim", "admissible_monomials"]);
    for (&(g, q), dim) in tasks.iter().zip(graded) {
        let expected = dims::n_g(g as u64, q as u32) as usize;
        let admissible = admissible_basis(g, q).len();
        let dim = dim?;
        table.push(vec![json!(g), json!(q), json!(expected), json!(dim), json!(admissible)]);
        report.records.push(Record::exact(
            format!("graded quotient of the surface group algebra g={g} q={q}"),
            "dim I^q/I^{q+1} = N_g(q)",
            expected,
            dim,
        ));
        report.records.push(Record::exact(
            format!("admissible monomials g={g} q={q}"),
            "#{admissible monomials of degree q} = N_g(q)",
            expected,
            admissible,
        ));
    }
    for (&g, cert) in gs.iter().zip(certificates) {
        report.records.push(Record::exact(
            format!("admissible monomials form a basis g={g} degree ≤ {q_max}"),
            "admissible monomials ⊕ relator ideal = free algebra (truncated)",
            true,
            cert?,
        ));
    }
    report.tables.insert("surface".into(), table);
    Ok(())
}

// ---- fuchsian ----

struct FuchsianRow {
    q: usize,
    par: usize,
    h1: usize,
    parabolic_rank: usize,
    parabolics_inside: bool,
    nested: bool,
}

fn fuchsian_row(sig: &crate::jq::FuchsianSignature, q: usize) -> Result<FuchsianRow> {
    let m = build_jq(sig, q)?;
    Ok(FuchsianRow {
        q,
        par: quotient_dim(m.jq_image(), m.jq_next_image())?,
        h1: quotient_dim(m.jq_image(), m.i_jq_image())?,
        parabolic_rank: parabolic_class_rank_in(&m)?,
        parabolics_inside: parabolics_in_jq(&m)?,
        nested: m.i_jq_image().is_subspace_of(m.jq_image())? && m.jq_next_image().is_subspace_of(m.jq_image())?,
    })
}

fn run_fuchsian(config: &RunConfig, report: &mut Report) -> Result<()> {
    let q_max = config.qmax.unwrap_or(3) as usize;
    if q_max == 0 {
        return Err(Error::Input("--qmax must be at least 1".into()));
    }
    let mut table = Table::new(&[
        "fixture",
        "g",
        "s",
        "rank",
        "q",
        "dim_Jq/Jq+1",
        "dim_Jq/IJq",
        "parabolic_class_rank",
    ]);
    for name in fixture_names(config, &FUCHSIAN_FIXTURES) {
        let file = load_kind(config, &name, FixtureKind::Fuchsian, report)?;
        let FixturePayload::Fuchsian(fx) = &file.payload else { unreachable!("kind checked") };
        let sig = &fx.signature;
        let (g, s) = (sig.genus(), sig.cusps());
        let rows: Vec<Result<FuchsianRow>> = (1..=q_max).into_par_iter().map(|q| fuchsian_row(sig, q)).collect();
        for row in rows {
            let row = row?;
            let q = row.q;
            let tag = format!("{} q={q}", file.name);
            table.push(vec![
                json!(file.name),
                json!(g),
                json!(s),
                json!(sig.rank()),
                json!(q),
                json!(row.par),
                json!(row.h1),
                json!(row.parabolic_rank),
            ]);
            report.records.push(Record::exact(
                format!("dim J_q/J_(q+1) {tag}"),
                "dim J_q/J_{q+1} = dim H_{q,par}^1(Γ,R) = N_g(q)",
                dims::n_g(g as u64, q as u32) as usize,
                row.par,
            ));
            report.records.push(Record::exact(
                format!("dim J_q/IJ_q {tag}"),
                "dim J_q/IJ_q = dim H_q^1(Γ,R) = bar N_g(q−1)(2g+s−2) + 1",
                dims::dim_h1(g as u64, s as u64, 0, q as u32)? as usize,
                row.h1,
            ));
            report.records.push(Record::exact(
                format!("parabolic classes in J_q/IJ_q {tag}"),
                "rank ⟨[p_j − 1]⟩ ⊆ J_q/IJ_q = s − 1 if g = 0 or q = 1, else s",
                expected_parabolic_class_rank(g, s, q),
                row.parabolic_rank,
            ));
            report.records.push(Record::exact(
                format!("parabolic augmentations lie in J_q {tag}"),
                "p_j − 1 ∈ I_Σ ⊆ J_q",
                true,
                row.parabolics_inside,
            ));
            report.records.push(Record::exact(
                format!("IJ_q and J_(q+1) inside J_q {tag}"),
                "IJ_q ⊆ J_q, J_{q+1} ⊆ J_q",
                true,
                row.nested,
            ));
        }
    }
    report.tables.insert("fuchsian".into(), table);
    Ok(())
}

// ---- finite ----

fn module_label(m: &ModuleSpec) -> String {
    match m {
        ModuleSpec::Trivial { dim } => format!("trivial^{dim}"),
        ModuleSpec::Regular => "regular".into(),
        ModuleSpec::Matrices { generators } => format!("matrices({})", generators.first().map_or(0, Vec::len)),
    }
}

fn prefix_match(expected: &[usize], computed: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let k = expected.len().min(computed.len());
    (expected[..k].to_vec(), computed[..k].to_vec())
}

fn hq0_records<F: Field>(
    gp: &FiniteGroup,
    field: F,
    module: &ModuleSpec,
    q_max: usize,
    expected: Option<&Vec<usize>>,
    report: &mut Report,
    table: &mut Table,
) -> Result<()> {
    let field_name = field.name();
    let rep = build_module(gp, field, module)?;
    let r = stabilization_report(gp, &rep, q_max)?;
    let tag = format!("{} over {} on {}", gp.name(), field_name, module_label(module));
    for (q, d) in r.dims.iter().enumerate() {
        table.push(vec![json!(gp.name()), json!(field_name), json!(module_label(module)), json!("H_q^0"), json!(q + 1), json!(d)]);
    }
    if let Some(e) = expected {
        let (e, c) = prefix_match(e, &r.dims);
        report.records.push(Record::exact(format!("H_q^0 dimensions {tag}"), "dim H_q^0 = dim {v ∈ V : J_q v = 0}", e, c));
    }
    report.records.push(Record::exact(
        format!("H_q^0 tower agrees with direct annihilator {tag}"),
        "{v : (ρ(γ)−1)^q-products and ρ(σ)−1 kill v} = ann_V(J_q)",
        true,
        r.routes_agree,
    ));
    report.records.push(Record::exact(format!("H_q^0 ascending {tag}"), "H_q^0 ⊆ H_{q+1}^0", true, r.ascending));
    let mut stable = Record {
        name: format!("H_q^0 stabilization {tag}"),
        anchor: "|Γ| invertible in k ⇒ H_q^0 = H_1^0 for all q".into(),
        expected: json!(if r.invertible { "STABLE" } else { "STABLE or GROWTH" }),
        computed: json!(r.verdict.to_string()),
        residual: None,
        tolerance: None,
        pass: r.passes(),
        detail: None,
    };
    if !r.invertible {
        stable.detail = Some(format!("|Γ| = {} is zero in {field_name}", gp.order()));
    }
    report.records.push(stable);
    Ok(())
}

fn augmentation_dims<F: Field>(gp: &FiniteGroup, field: F, q_max: usize) -> Result<Vec<usize>> {
    Ok(augmentation_powers(gp, field, q_max)?.iter().map(Subspace::dim).collect())
}

fn finite_fixture_records(fx: &FiniteFixture, q_override: Option<usize>, report: &mut Report, table: &mut Table) -> Result<()> {
    let gp = &fx.group;
    for check in &fx.checks {
        match check {
            FiniteCheck::Hq0 { field, module, q_max, expected_dims } => {
                let q = q_override.unwrap_or(*q_max);
                match FieldSpec::parse(field)? {
                    FieldSpec::Rationals => hq0_records(gp, Rationals, module, q, expected_dims.as_ref(), report, table)?,
                    FieldSpec::Prime(p) => hq0_records(gp, p, module, q, expected_dims.as_ref(), report, table)?,
                }
            }
            FiniteCheck::Augmentation { field, q_max, expected_dims } => {
                let q = q_override.unwrap_or(*q_max);
                let spec = FieldSpec::parse(field)?;
                let computed = match &spec {
                    FieldSpec::Rationals => augmentation_dims(gp, Rationals, q)?,
                    FieldSpec::Prime(p) => augmentation_dims(gp, *p, q)?,
                };
                for (k, d) in computed.iter().enumerate() {
                    table.push(vec![json!(gp.name()), json!(field), json!(""), json!("I^q"), json!(k + 1), json!(d)]);
                }
                let (e, c) = prefix_match(expected_dims, &computed);
                report.records.push(Record::exact(
                    format!("augmentation powers {} over {field}", gp.name()),
                    "I^{q+1} = Σ_i I^q(γ_i − 1), dim I = |Γ| − 1",
                    e,
                    c,
                ));
            }
            FiniteCheck::Perfect { expected } => {
                report.records.push(Record::exact(
                    format!("perfect check {}", gp.name()),
                    "I² = I over Z ⇔ Γ = [Γ,Γ]",
                    *expected,
                    perfect_check(gp)?,
                ));
            }
        }
    }
    Ok(())
}

fn run_finite(config: &RunConfig, report: &mut Report) -> Result<()> {
    let q_override = config.qmax.map(|q| q as usize);
    if q_override == Some(0) {
        return Err(Error::Input("--qmax must be at least 1".into()));
    }
    let mut table = Table::new(&["group", "field", "module", "quantity", "q", "dim"]);
    for name in fixture_names(config, &FINITE_FIXTURES) {
        let file = load_kind(config, &name, FixtureKind::Finite, report)?;
        let FixturePayload::Finite(fx) = &file.payload else { unreachable!("kind checked") };
        finite_fixture_records(fx, q_override, report, &mut table)?;
    }
    report.tables.insert("finite".into(), table);
    Ok(())
}

// ---- es ----

fn run_es(config: &RunConfig, report: &mut Report) -> Result<()> {
    let orders: Vec<u32> = config.order.map_or_else(|| vec![1, 2], |o| vec![o]);
    let mut es_config = EsConfig::default();
    if let Some(tol) = config.tol {
        if !(tol > 0.0 && tol < 1.0) {
            return Err(Error::Input(format!("--tol {tol} must lie in (0, 1)")));
        }
        es_config.quad = QuadConfig { tol, ..QuadConfig::default() };
    }
    let mut table = Table::new(&[
        "fixture",
        "order",
        "element",
        "parabolic",
        "component",
        "value",
        "base_re",
        "base_im",
        "alt_re",
        "alt_im",
        "base_point_residual",
    ]);
    for name in fixture_names(config, &MODULAR_FIXTURES) {
        let file = load_kind(config, &name, FixtureKind::Modular, report)?;
        let FixturePayload::Modular(fx) = &file.payload else { unreachable!("kind checked") };
        let n = fx.form.weight as usize - 2;
        for &q in &orders {
            let r = verify_suite(&fx.group, &fx.form, q, n, &es_config)?;
            for c in &r.checks {
                report.records.push(
                    Record::residual(
                        format!("{} q={q}: {}", file.name, c.name.trim_start_matches(&format!("q{q}: "))),
                        c.anchor.clone(),
                        c.residual,
                        c.tolerance,
                    )
                        .with_detail(c.detail.clone()),
                );
            }
            for e in &r.table.entries {
                for (k, v) in e.value.iter().enumerate() {
                    table.push(vec![
                        json!(file.name),
                        json!(q),
                        json!(e.label),
                        json!(e.parabolic),
                        json!(k),
                        num(*v),
                        num(e.base_point[0]),
                        num(e.base_point[1]),
                        num(e.alt_base_point[0]),
                        num(e.alt_base_point[1]),
                        num(e.base_point_residual),
                    ]);
                }
            }
        }
    }
    report.tables.insert("cocycles".into(), table);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn command_names_round_trip() {
        for c in Command::ALL {
            assert_eq!(c.as_str().parse::<Command>().unwrap(), c);
        }
        assert!(matches!("plot".parse::<Command>(), Err(Error::Input(_))));
    }

    #[test]
    fn dims_example_row() {
        let cfg = RunConfig { g: Some(1), s: Some(1), n: Some(0), qmax: Some(4), ..RunConfig::default() };
        let r = run(Command::Dims, &cfg).unwrap();
        assert!(r.passes());
        let t = &r.tables["dims"];
        let row = (0..t.rows.len()).find(|&i| t.get(i, "q") == Some(&json!(2))).unwrap();
        assert_eq!(t.get(row, "dim_h1"), Some(&json!(4)));
    }

    #[test]
    fn invalid_signature_is_input_error() {
        let cfg = RunConfig { g: Some(0), s: Some(1), ..RunConfig::default() };
        let err = run(Command::Dims, &cfg).unwrap_err();
        assert_eq!(error_exit_code(&err), 2);
    }

    #[test]
    fn config_merge_prefers_override() {
        let file = RunConfig::from_json(r#"{"qmax": 2, "g": 1}"#).unwrap();
        let cli = RunConfig { qmax: Some(5), ..RunConfig::default() };
        let m = file.merged(&cli);
        assert_eq!((m.qmax, m.g), (Some(5), Some(1)));
        assert!(RunConfig::from_json(r#"{"bogus": 1}"#).is_err());
    }
}
