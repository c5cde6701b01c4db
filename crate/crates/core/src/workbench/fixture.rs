//! Fixture files: JSON documents with a schema version, a kind, a payload and
//! an optional SHA-256 checksum of the payload.
//!
//! Loading validates every structural invariant and reports all violations at once.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::es::fixture::CuspScaling;
use crate::es::{CuspFormSpec, GroupFixture, Mat2, Parabolic};
use crate::finite::{FiniteGroup, Matrix, ModuleRep};
use crate::jq::FuchsianSignature;
use crate::linear::{Field, PrimeField, Rationals};
use crate::magnus::Word;

use super::report::{sha256_hex, stable_json};

pub const SCHEMA_VERSION: u32 = 1;
/// Environment variable overriding the fixture directory.
pub const FIXTURE_ROOT_ENV: &str = "HOC_FIXTURE_ROOT";

/// The directory holding the shipped fixtures.
pub fn default_fixture_root() -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures"))
}

/// Explicit root, else the environment variable, else the shipped directory.
pub fn fixture_root(explicit: Option<&Path>) -> PathBuf {
    if let Some(p) = explicit {
        return p.to_path_buf();
    }
    match std::env::var_os(FIXTURE_ROOT_ENV) {
        Some(v) if !v.is_empty() => PathBuf::from(v),
        _ => default_fixture_root(),
    }
}

/// A name without a path separator or extension resolves to `<root>/<name>.json`.
pub fn resolve_fixture(name: &str, root: &Path) -> PathBuf {
    let p = Path::new(name);
    if p.extension().is_some() || p.components().count() > 1 {
        p.to_path_buf()
    } else {
        root.join(format!("{name}.json"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FixtureKind {
    Fuchsian,
    Finite,
    Modular,
}

impl FixtureKind {
    pub fn as_str(self) -> &'static str {
        match self {
            FixtureKind::Fuchsian => "fuchsian",
            FixtureKind::Finite => "finite",
            FixtureKind::Modular => "modular",
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFixture {
    schema_version: u32,
    kind: FixtureKind,
    name: String,
    #[serde(default)]
    description: Option<String>,
    payload: Value,
    #[serde(default)]
    checksum: Option<String>,
}

/// `sha256:<hex>` of the stable rendering of a payload.
pub fn payload_checksum(payload: &Value) -> String {
    format!("sha256:{}", sha256_hex(stable_json(payload).as_bytes()))
}

/// Returns the fixture text with its checksum field recomputed.
pub fn seal_fixture(text: &str) -> Result<String> {
    let mut v: Value = serde_json::from_str(text)?;
    let sum = payload_checksum(v.get("payload").ok_or_else(|| Error::Input("fixture has no payload".into()))?);
    v["checksum"] = Value::String(sum);
    Ok(stable_json(&v))
}

// ---- fuchsian ----

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFuchsian {
    genus: usize,
    cusps: usize,
    #[serde(default)]
    parabolic_words: Option<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug)]
pub struct FuchsianFixture {
    pub signature: FuchsianSignature,
}

fn load_fuchsian(payload: Value, violations: &mut Vec<String>) -> Option<FuchsianFixture> {
    let raw: RawFuchsian = match serde_json::from_value(payload) {
        Ok(r) => r,
        Err(e) => {
            violations.push(format!("payload: {e}"));
            return None;
        }
    };
    let base = match FuchsianSignature::new(raw.genus, raw.cusps) {
        Ok(s) => s,
        Err(e) => {
            violations.push(e.to_string());
            return None;
        }
    };
    let Some(words) = raw.parabolic_words else {
        return Some(FuchsianFixture { signature: base });
    };
    if words.len() != raw.cusps {
        violations.push(format!("{} parabolic words for {} cusps", words.len(), raw.cusps));
        return None;
    }
    let mut ok = true;
    for (j, w) in words.iter().take(raw.cusps - 1).enumerate() {
        let letter = (2 * raw.genus + j + 1) as i64;
        if w != &[letter] {
            violations.push(format!("parabolic p_{} must be the free generator [{letter}], got {w:?}", j + 1));
            ok = false;
        }
    }
    let last = match Word::from_signed(words.last().expect("s ≥ 1")) {
        Ok(w) => w,
        Err(e) => {
            violations.push(format!("parabolic p_{}: {e}", raw.cusps));
            return None;
        }
    };
    match FuchsianSignature::with_dependent_parabolic(raw.genus, raw.cusps, last) {
        Ok(signature) if ok => Some(FuchsianFixture { signature }),
        Ok(_) => None,
        Err(e) => {
            violations.push(format!("parabolic p_{}: {e}", raw.cusps));
            None
        }
    }
}

// ---- finite ----

#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
enum SigmaEntry {
    Index(usize),
    Permutation(Vec<usize>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFinite {
    #[serde(default)]
    cayley: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    generators: Option<Vec<usize>>,
    #[serde(default)]
    permutations: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    sigma: Option<Vec<SigmaEntry>>,
    #[serde(default)]
    checks: Vec<FiniteCheck>,
}

/// A representation of the fixture group, by generator matrices with integer entries.
#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModuleSpec {
    Trivial { dim: usize },
    Regular,
    Matrices { generators: Vec<Vec<Vec<i64>>> },
}

#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum FiniteCheck {
    /// The `H_q^0` tower of a module for `q = 1..=q_max`.
    Hq0 {
        field: String,
        module: ModuleSpec,
        q_max: usize,
        #[serde(default)]
        expected_dims: Option<Vec<usize>>,
    },
    /// `dim I^q` for `q = 1..=q_max`.
    Augmentation { field: String, q_max: usize, expected_dims: Vec<usize> },
    /// Whether the group is perfect.
    Perfect { expected: bool },
}

/// A field named `Q` or `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rationals,
    Prime(PrimeField),
}

impl FieldSpec {
    pub fn parse(s: &str) -> Result<Self> {
        if s == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        let p = s
            .strip_prefix("F_")
            .and_then(|p| p.parse::<u32>().ok())
            .ok_or_else(|| Error::Input(format!("unknown field {s:?}; expected Q or F_p")))?;
        Ok(FieldSpec::Prime(PrimeField::new(p)?))
    }
}

/// Builds the module over an explicit field.
pub fn build_module<F: Field>(gp: &FiniteGroup, field: F, spec: &ModuleSpec) -> Result<ModuleRep<F>> {
    match spec {
        ModuleSpec::Trivial { dim } => ModuleRep::trivial(gp, field, *dim),
        ModuleSpec::Regular => ModuleRep::regular(gp, field),
        ModuleSpec::Matrices { generators } => {
            let dim = generators.first().map_or(0, Vec::len);
            let mats: Vec<Matrix<F>> = generators
                .iter()
                .map(|m| m.iter().map(|row| row.iter().map(|&x| field.from_i64(x)).collect()).collect())
                .collect();
            ModuleRep::new(gp, field, dim, mats)
        }
    }
}

#[derive(Clone, Debug)]
pub struct FiniteFixture {
    pub group: FiniteGroup,
    pub checks: Vec<FiniteCheck>,
}

fn finite_group(raw: &RawFinite, name: &str) -> Result<(FiniteGroup, Option<BTreeMap<Vec<usize>, usize>>)> {
    match (&raw.cayley, &raw.permutations) {
        (Some(cayley), None) => {
            let gens = raw.generators.clone().ok_or_else(|| Error::Input("cayley payload needs generators".into()))?;
            Ok((FiniteGroup::from_cayley(name, cayley.clone(), gens)?, None))
        }
        (None, Some(perms)) => {
            if raw.generators.is_some() {
                return Err(Error::Input("generators are implied by permutations".into()));
            }
            let (gp, index) = FiniteGroup::permutation_group(name, perms)?;
            Ok((gp, Some(index)))
        }
        _ => Err(Error::Input("exactly one of cayley or permutations is required".into())),
    }
}

fn load_finite(name: &str, payload: Value, violations: &mut Vec<String>) -> Option<FiniteFixture> {
    let raw: RawFinite = match serde_json::from_value(payload) {
        Ok(r) => r,
        Err(e) => {
            violations.push(format!("payload: {e}"));
            return None;
        }
    };
    let (mut group, index) = match finite_group(&raw, name) {
        Ok(x) => x,
        Err(e) => {
            violations.push(e.to_string());
            return None;
        }
    };
    if let Some(sigma) = &raw.sigma {
        let mut elements = Vec::new();
        for entry in sigma {
            match (entry, &index) {
                (SigmaEntry::Index(i), None) => elements.push(*i),
                (SigmaEntry::Permutation(p), Some(idx)) => match idx.get(p) {
                    Some(&i) => elements.push(i),
                    None => violations.push(format!("Σ permutation {p:?} is not in the group")),
                },
                (SigmaEntry::Index(_), Some(_)) => violations.push("Σ entries must be permutations".into()),
                (SigmaEntry::Permutation(_), None) => violations.push("Σ entries must be element indices".into()),
            }
        }
        match group.clone().with_sigma(elements) {
            Ok(g) => group = g,
            Err(e) => violations.push(e.to_string()),
        }
    }
    for (k, check) in raw.checks.iter().enumerate() {
        let (field, q_max, expected) = match check {
            FiniteCheck::Hq0 { field, q_max, expected_dims, .. } => (field, *q_max, expected_dims.as_ref()),
            FiniteCheck::Augmentation { field, q_max, expected_dims } => (field, *q_max, Some(expected_dims)),
            FiniteCheck::Perfect { .. } => continue,
        };
        if q_max == 0 {
            violations.push(format!("check {k}: q_max must be at least 1"));
        }
        if let Some(e) = expected {
            if e.len() != q_max {
                violations.push(format!("check {k}: {} expected dims for q_max = {q_max}", e.len()));
            }
        }
        let field = match FieldSpec::parse(field) {
            Ok(f) => f,
            Err(e) => {
                violations.push(format!("check {k}: {e}"));
                continue;
            }
        };
        if let FiniteCheck::Hq0 { module, .. } = check {
            let built = match field {
                FieldSpec::Rationals => build_module(&group, Rationals, module).map(|_| ()),
                FieldSpec::Prime(p) => build_module(&group, p, module).map(|_| ()),
            };
            if let Err(e) = built {
                violations.push(format!("check {k}: {e}"));
            }
        }
    }
    Some(FiniteFixture { group, checks: raw.checks })
}

// ---- modular ----

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGenerator {
    name: String,
    matrix: [[i64; 2]; 2],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParabolic {
    label: String,
    cusp: String,
    word: Vec<i64>,
    matrix: [[i64; 2]; 2],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScaling {
    cusp: String,
    sigma: [[f64; 2]; 2],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroup {
    name: String,
    genus: usize,
    cusps: usize,
    #[serde(default)]
    level: Option<u64>,
    generators: Vec<RawGenerator>,
    parabolics: Vec<RawParabolic>,
    scalings: Vec<RawScaling>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawForm {
    name: String,
    eta_product: Vec<(usize, usize)>,
    coefficients: usize,
    #[serde(default)]
    leading_coefficients: Vec<i64>,
    #[serde(default)]
    fricke_level: Option<u64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModular {
    group: RawGroup,
    form: RawForm,
}

#[derive(Clone, Debug)]
pub struct ModularFixture {
    pub group: GroupFixture,
    pub form: CuspFormSpec,
}

fn mat(m: [[i64; 2]; 2]) -> Mat2 {
    Mat2::new(m[0][0], m[0][1], m[1][0], m[1][1])
}

fn load_modular(payload: Value, violations: &mut Vec<String>) -> Option<ModularFixture> {
    let raw: RawModular = match serde_json::from_value(payload) {
        Ok(r) => r,
        Err(e) => {
            violations.push(format!("payload: {e}"));
            return None;
        }
    };
    let mut parabolics = Vec::new();
    for p in raw.group.parabolics {
        match Word::from_signed(&p.word) {
            Ok(word) => parabolics.push(Parabolic { label: p.label, cusp: p.cusp, word, matrix: mat(p.matrix) }),
            Err(e) => violations.push(format!("parabolic {}: {e}", p.label)),
        }
    }
    let group = GroupFixture {
        name: raw.group.name,
        genus: raw.group.genus,
        cusps: raw.group.cusps,
        level: raw.group.level,
        generator_names: raw.group.generators.iter().map(|g| g.name.clone()).collect(),
        generators: raw.group.generators.iter().map(|g| mat(g.matrix)).collect(),
        parabolics,
        scalings: raw.group.scalings.into_iter().map(|s| CuspScaling { cusp: s.cusp, sigma: s.sigma }).collect(),
    };
    violations.extend(group.violations());

    let f = raw.form;
    let mut form = match CuspFormSpec::from_eta_product(f.name, &f.eta_product, f.coefficients) {
        Ok(form) => form,
        Err(e) => {
            violations.push(format!("form: {e}"));
            return None;
        }
    };
    for (i, &a) in f.leading_coefficients.iter().enumerate() {
        let got = form.coeffs.get(i).map(|c| c.re);
        if got != Some(a as f64) {
            violations.push(format!("form coefficient a_{} is {got:?}, fixture says {a}", i + 1));
        }
    }
    if let Some(level) = f.fricke_level {
        if group.level.is_some_and(|l| l != level) {
            violations.push(format!("Fricke level {level} differs from group level {:?}", group.level));
        }
        match form.with_fricke(level) {
            Ok(g) => form = g,
            Err(e) => {
                violations.push(format!("form: {e}"));
                return None;
            }
        }
    }
    Some(ModularFixture { group, form })
}

// ---- files ----

#[derive(Clone, Debug)]
pub enum FixturePayload {
    Fuchsian(FuchsianFixture),
    Finite(FiniteFixture),
    Modular(Box<ModularFixture>),
}

#[derive(Clone, Debug)]
pub struct FixtureFile {
    pub name: String,
    pub description: Option<String>,
    pub payload: FixturePayload,
    /// SHA-256 of the file bytes.
    pub sha256: String,
}

impl FixtureFile {
    pub fn kind(&self) -> FixtureKind {
        match self.payload {
            FixturePayload::Fuchsian(_) => FixtureKind::Fuchsian,
            FixturePayload::Finite(_) => FixtureKind::Finite,
            FixturePayload::Modular(_) => FixtureKind::Modular,
        }
    }
}

/// Parses and validates fixture text; `origin` labels error messages.
pub fn parse_fixture(text: &str, origin: &str) -> Result<FixtureFile> {
    let raw: RawFixture =
        serde_json::from_str(text).map_err(|e| Error::Input(format!("{origin}: malformed fixture: {e}")))?;
    let mut violations = Vec::new();
    if raw.schema_version != SCHEMA_VERSION {
        violations.push(format!("schema_version {} unsupported (expected {SCHEMA_VERSION})", raw.schema_version));
    }
    if let Some(sum) = &raw.checksum {
        let actual = payload_checksum(&raw.payload);
        if sum != &actual {
            violations.push(format!("checksum mismatch: file says {sum}, payload hashes to {actual}"));
        }
    }
    let payload = match raw.kind {
        FixtureKind::Fuchsian => load_fuchsian(raw.payload, &mut violations).map(FixturePayload::Fuchsian),
        FixtureKind::Finite => load_finite(&raw.name, raw.payload, &mut violations).map(FixturePayload::Finite),
        FixtureKind::Modular => load_modular(raw.payload, &mut violations).map(|m| FixturePayload::Modular(Box::new(m))),
    };
    match payload {
        Some(payload) if violations.is_empty() => Ok(FixtureFile {
            name: raw.name,
            description: raw.description,
            payload,
            sha256: sha256_hex(text.as_bytes()),
        }),
        _ => Err(Error::Input(format!(
            "{origin}: {} violation(s): {}",
            violations.len(),
            violations.join("; ")
        ))),
    }
}

pub fn load_fixture(path: &Path) -> Result<FixtureFile> {
    let text = fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read fixture {}: {e}", path.display())))?;
    parse_fixture(&text, &path.display().to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn wrap(kind: &str, payload: Value) -> String {
        json!({"schema_version": 1, "kind": kind, "name": "t", "payload": payload}).to_string()
    }

    #[test]
    fn fuchsian_payload() {
        let f = parse_fixture(&wrap("fuchsian", json!({"genus": 1, "cusps": 1})), "t").unwrap();
        match f.payload {
            FixturePayload::Fuchsian(ff) => assert_eq!(ff.signature.rank(), 2),
            _ => panic!("kind"),
        }
        let bad = wrap("fuchsian", json!({"genus": 1, "cusps": 2, "parabolic_words": [[3], [1, 2]]}));
        let err = parse_fixture(&bad, "t").unwrap_err().to_string();
        assert!(err.contains("parabolic p_2"), "{err}");
    }

    #[test]
    fn non_normal_sigma_names_the_conjugation() {
        // S_3 with Σ generated by a transposition.
        let text = wrap("finite", json!({"permutations": [[1, 0, 2], [1, 2, 0]], "sigma": [[0, 1, 2], [1, 0, 2]]}));
        let err = parse_fixture(&text, "t").unwrap_err().to_string();
        assert!(err.contains("Σ is not normal"), "{err}");
        assert!(err.contains("lies outside Σ"), "{err}");
    }

    #[test]
    fn all_violations_are_listed() {
        let text = json!({"schema_version": 7, "kind": "finite", "name": "t",
            "payload": {"cayley": [[0, 1], [1, 0]], "generators": [1],
                "checks": [{"type": "augmentation", "field": "F_4", "q_max": 2, "expected_dims": [1]}]}})
        .to_string();
        let err = parse_fixture(&text, "t").unwrap_err().to_string();
        assert!(err.contains("3 violation(s)"), "{err}");
    }

    #[test]
    fn checksum_round_trip() {
        let sealed = seal_fixture(&wrap("fuchsian", json!({"genus": 0, "cusps": 3}))).unwrap();
        assert!(parse_fixture(&sealed, "t").is_ok());
        let tampered = sealed.replace("\"cusps\": 3", "\"cusps\": 4");
        let err = parse_fixture(&tampered, "t").unwrap_err().to_string();
        assert!(err.contains("checksum mismatch"), "{err}");
    }

    #[test]
    fn resolution() {
        let root = Path::new("/r");
        assert_eq!(resolve_fixture("g1s1", root), PathBuf::from("/r/g1s1.json"));
        assert_eq!(resolve_fixture("x/y.json", root), PathBuf::from("x/y.json"));
    }
}
