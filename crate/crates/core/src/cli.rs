//! Problem documents in, JSON reports out.
//!
//! A document looks like
//!
//! ```json
//! { "field": "Q", "generators": ["(x, y+1)"], "point": [0, 0], "config": { "orbit_cap": 500 } }
//! ```
//!
//! `field` is `"Q"`, `{"cyclotomic": n}` or `{"minpoly": [c0, c1, ...], "trusted": false}`
//! (constant term first). Coordinates and coefficients are JSON integers or
//! strings in the polynomial grammar, where `t` is the field generator.

use std::fmt;

use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::amalgam::{conjugate_into_factor, factorize, Letter, Verdict, Word};
use crate::closure::{orbit_closure, Certificate, ClosureConfig, ClosureResult};
use crate::error::Error;
use crate::lattice::{classify, Kind, LatticeDescriptor, Subvariety};
use crate::numfield::{Field, FieldElement, FieldRef, Rational};
use crate::planeauto::{PlaneAutomorphism, PlanePoint};
use crate::poly2::{parse_poly, BiPoly, UniPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subcommand {
    Factorize,
    Conjugate,
    Classify,
    Closure,
}

impl Subcommand {
    pub fn name(self) -> &'static str {
        match self {
            Subcommand::Factorize => "factorize",
            Subcommand::Conjugate => "conjugate",
            Subcommand::Classify => "classify",
            Subcommand::Closure => "closure",
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    /// Malformed document or inputs the engine rejects.
    Input(String),
    /// The engine gave up without a wrong answer.
    Inconclusive(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Inconclusive(_) => 2,
        }
    }

    pub fn to_report(&self) -> Value {
        match self {
            CliError::Input(m) => json!({ "error": "input", "message": m }),
            CliError::Inconclusive(m) => json!({ "error": "inconclusive", "message": m }),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {}", m),
            CliError::Inconclusive(m) => write!(f, "inconclusive: {}", m),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e.root() {
            Error::Inconclusive(_) => CliError::Inconclusive(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Named(String),
    Cyclotomic { cyclotomic: u32 },
    Custom {
        minpoly: Vec<Value>,
        #[serde(default)]
        trusted: bool,
    },
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::Named("Q".into())
    }
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigOverrides {
    pub orbit_cap: Option<usize>,
    pub word_cap: Option<usize>,
    pub multdep_bound: Option<u64>,
    pub height_cap_bits: Option<u64>,
}

impl ConfigOverrides {
    /// Fills unset fields from `fallback`.
    pub fn or(&self, fallback: &ConfigOverrides) -> ConfigOverrides {
        ConfigOverrides {
            orbit_cap: self.orbit_cap.or(fallback.orbit_cap),
            word_cap: self.word_cap.or(fallback.word_cap),
            multdep_bound: self.multdep_bound.or(fallback.multdep_bound),
            height_cap_bits: self.height_cap_bits.or(fallback.height_cap_bits),
        }
    }

    /// Reads `PLANE_ORBITS_ORBIT_CAP` and friends.
    pub fn from_env() -> CliResult<ConfigOverrides> {
        fn var<T: std::str::FromStr>(name: &str) -> CliResult<Option<T>> {
            match std::env::var(name) {
                Ok(s) => s
                    .trim()
                    .parse()
                    .map(Some)
                    .map_err(|_| CliError::Input(format!("{} is not a valid number: {:?}", name, s))),
                Err(_) => Ok(None),
            }
        }
        Ok(ConfigOverrides {
            orbit_cap: var("PLANE_ORBITS_ORBIT_CAP")?,
            word_cap: var("PLANE_ORBITS_WORD_CAP")?,
            multdep_bound: var("PLANE_ORBITS_MULTDEP_BOUND")?,
            height_cap_bits: var("PLANE_ORBITS_HEIGHT_CAP_BITS")?,
        })
    }

    pub fn resolve(&self) -> ClosureConfig {
        let d = ClosureConfig::default();
        ClosureConfig {
            orbit_cap: self.orbit_cap.unwrap_or(d.orbit_cap),
            word_cap: self.word_cap.unwrap_or(d.word_cap),
            multdep_bound: self.multdep_bound.unwrap_or(d.multdep_bound),
            height_cap_bits: self.height_cap_bits.unwrap_or(d.height_cap_bits),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemDocument {
    #[serde(default)]
    pub field: FieldSpec,
    pub generators: Vec<String>,
    #[serde(default)]
    pub point: Option<Vec<Value>>,
    #[serde(default)]
    pub config: ConfigOverrides,
}

impl ProblemDocument {
    pub fn from_json(src: &str) -> CliResult<Self> {
        serde_json::from_str(src).map_err(|e| {
            CliError::Input(format!("document line {} column {}: {}", e.line(), e.column(), e))
        })
    }
}

/// A document with its field built and its polynomials parsed.
pub struct Problem {
    pub field: FieldRef,
    pub generators: Vec<PlaneAutomorphism>,
    pub point: Option<PlanePoint>,
}

fn rational_of(v: &Value) -> CliResult<Rational> {
    let s = match v {
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
        Value::String(s) => s.trim().to_string(),
        _ => return Err(CliError::Input(format!("expected an integer or a rational string, got {}", v))),
    };
    s.parse::<Rational>().map_err(|_| CliError::Input(format!("not a rational number: {:?}", s)))
}

fn build_field(spec: &FieldSpec) -> CliResult<FieldRef> {
    match spec {
        FieldSpec::Named(s) if s == "Q" || s == "QQ" => Ok(Field::rationals()),
        FieldSpec::Named(s) => Err(CliError::Input(format!("unknown field {:?}", s))),
        FieldSpec::Cyclotomic { cyclotomic } => Ok(Field::cyclotomic(*cyclotomic)?),
        FieldSpec::Custom { minpoly, trusted } => {
            let coeffs = minpoly.iter().map(rational_of).collect::<CliResult<Vec<_>>>()?;
            Ok(Field::custom(coeffs, *trusted)?)
        }
    }
}

fn element_of(v: &Value, field: &FieldRef, what: &str) -> CliResult<FieldElement> {
    let text = match v {
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
        Value::String(s) => s.clone(),
        _ => return Err(CliError::Input(format!("{}: expected an integer or a string, got {}", what, v))),
    };
    let p = parse_poly(&text, field).map_err(|e| CliError::Input(format!("{}: {}", what, e)))?;
    if !p.is_constant() {
        return Err(CliError::Input(format!("{}: {:?} is not a constant", what, text)));
    }
    Ok(p.eval(&field.zero(), &field.zero()))
}

impl Problem {
    pub fn from_document(doc: &ProblemDocument) -> CliResult<Self> {
        let field = build_field(&doc.field)?;
        if doc.generators.is_empty() {
            return Err(CliError::Input("no generators".into()));
        }
        let generators = doc
            .generators
            .iter()
            .enumerate()
            .map(|(i, g)| {
                PlaneAutomorphism::parse(g, &field).map_err(|e| CliError::Input(format!("generator {}: {}", i, e)))
            })
            .collect::<CliResult<Vec<_>>>()?;
        let point = match &doc.point {
            None => None,
            Some(v) if v.len() == 2 => Some(PlanePoint::new(
                element_of(&v[0], &field, "point x")?,
                element_of(&v[1], &field, "point y")?,
            )),
            Some(v) => return Err(CliError::Input(format!("point needs 2 coordinates, got {}", v.len()))),
        };
        Ok(Problem { field, generators, point })
    }
}

/// Runs one subcommand. `config` is the fully resolved configuration.
pub fn run(cmd: Subcommand, problem: &Problem, config: &ClosureConfig, trace: bool) -> CliResult<Value> {
    let body = match cmd {
        Subcommand::Factorize => factorize_report(problem)?,
        Subcommand::Conjugate => {
            let r = conjugate_into_factor(&problem.generators)?;
            conjugacy_json(r.verdict, r.conjugator.as_ref(), r.conjugated_generators.as_deref())
        }
        Subcommand::Classify => {
            let items = problem
                .generators
                .iter()
                .map(|g| classify(g, config.multdep_bound).map(|d| descriptor_json(&d)))
                .collect::<crate::Result<Vec<_>>>()?;
            json!({ "generators": problem.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(), "descriptors": items })
        }
        Subcommand::Closure => {
            let p = problem.point.as_ref().ok_or_else(|| CliError::Input("closure needs a point".into()))?;
            let r = orbit_closure(&problem.generators, p, config)?;
            closure_json(&r, config, trace)
        }
    };
    let mut out = Map::new();
    out.insert("command".into(), json!(cmd.name()));
    out.insert("field".into(), json!(field_name(&problem.field)));
    if let Value::Object(m) = body {
        out.extend(m);
    }
    Ok(Value::Object(out))
}

/// Parses, resolves the configuration (document over `fallback`) and runs.
pub fn run_document(
    cmd: Subcommand,
    src: &str,
    flags: &ConfigOverrides,
    fallback: &ConfigOverrides,
    trace: bool,
) -> CliResult<Value> {
    let doc = ProblemDocument::from_json(src)?;
    let problem = Problem::from_document(&doc)?;
    let config = flags.or(&doc.config).or(fallback).resolve();
    run(cmd, &problem, &config, trace)
}

/// Pretty JSON with a trailing newline.
pub fn render(report: &Value) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports are plain JSON");
    s.push('\n');
    s
}

fn field_name(field: &FieldRef) -> String {
    use crate::numfield::FieldMode;
    match field.mode() {
        FieldMode::Rationals => "Q".into(),
        FieldMode::Cyclotomic(n) => format!("Q(zeta_{})", n),
        FieldMode::Custom { .. } => {
            let q = Field::rationals();
            let m = UniPoly::new(&q, field.minpoly().iter().map(|c| q.rational(c.clone())).collect());
            format!("Q[t]/({})", m.compose_bi(&BiPoly::x(&q)).to_string().replace('x', "t"))
        }
    }
}

fn letter_json(l: &Letter, field: &FieldRef) -> Value {
    let kind = match l {
        Letter::Shear(_) => "shear",
        Letter::Swap => "swap",
        Letter::Triangular(_) => "triangular",
    };
    json!({ "kind": kind, "factor": format!("{:?}", l.factor()), "map": l.to_automorphism(field).to_string() })
}

fn word_json(w: &Word) -> Value {
    json!({
        "head": w.head().to_automorphism().to_string(),
        "letters": w.letters().iter().map(|l| letter_json(l, w.field())).collect::<Vec<_>>(),
        "length": w.len(),
        "normal_form": w.to_string(),
    })
}

fn factorize_report(problem: &Problem) -> CliResult<Value> {
    let mut items = Vec::new();
    for g in &problem.generators {
        let w = factorize(g)?;
        let mut m = Map::new();
        m.insert("input".into(), json!(g.to_string()));
        m.insert("bidegree".into(), json!(g.bidegree()));
        if let Value::Object(wm) = word_json(&w) {
            m.extend(wm);
        }
        items.push(Value::Object(m));
    }
    Ok(json!({ "factorizations": items }))
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::ConjugateIntoAffine => "ConjugateIntoAffine",
        Verdict::ConjugateIntoJonquieres => "ConjugateIntoJonquieres",
        Verdict::NotConjugate => "NotConjugate",
    }
}

fn conjugacy_json(v: Verdict, c: Option<&Word>, gens: Option<&[PlaneAutomorphism]>) -> Value {
    json!({
        "verdict": verdict_name(v),
        "conjugator": c.map(|w| json!({ "map": w.to_automorphism().to_string(), "word": word_json(w) })),
        "conjugated_generators": gens.map(|g| g.iter().map(|m| m.to_string()).collect::<Vec<_>>()),
    })
}

fn strings(ps: &[BiPoly]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

fn point_json(p: &PlanePoint) -> Value {
    json!([p.x.to_string(), p.y.to_string()])
}

pub fn descriptor_json(d: &LatticeDescriptor) -> Value {
    let mut m = Map::new();
    match d.kind {
        Kind::FiniteOrder(n) => {
            m.insert("kind".into(), json!("FiniteOrder"));
            m.insert("order".into(), json!(n));
        }
        Kind::OrbitFibration => {
            m.insert("kind".into(), json!("OrbitFibration"));
        }
        Kind::ProjectiveQuotient => {
            m.insert("kind".into(), json!("ProjectiveQuotient"));
        }
        Kind::NonFibration => {
            m.insert("kind".into(), json!("NonFibration"));
        }
    }
    if let Some(p) = &d.pi_affine {
        m.insert("pi".into(), json!(p.to_string()));
    }
    if let Some((n, q)) = &d.pi_projective {
        m.insert("pencil".into(), json!([n.to_string(), q.to_string()]));
    }
    if !matches!(d.kind, Kind::FiniteOrder(_)) {
        m.insert("grouping_order".into(), json!(d.grouping_order));
    }
    if let Some(u) = &d.pi_scaling {
        m.insert("scaling".into(), json!(u.to_string()));
    }
    if let Some(l) = &d.transversal_curve {
        m.insert("transversal_curve".into(), json!(l.to_string()));
    }
    if let Some(l) = &d.torsion_locus {
        m.insert("torsion_locus".into(), json!(l.to_string()));
    }
    if let Some(p) = &d.distinguished_point {
        m.insert("distinguished_point".into(), point_json(p));
    }
    if !d.invariant_curves.is_empty() {
        m.insert("invariant_curves".into(), json!(strings(&d.invariant_curves)));
    }
    if let Some((x, y)) = &d.coordinates {
        m.insert("coordinates".into(), json!([x.to_string(), y.to_string()]));
    }
    if let Some((s1, s2)) = d.exponents {
        m.insert("exponents".into(), json!([s1, s2]));
    }
    if !d.caveats.is_empty() {
        m.insert("caveats".into(), json!(d.caveats));
    }
    Value::Object(m)
}

pub fn subvariety_json(s: &Subvariety) -> Value {
    json!({
        "dimension": s.dimension(),
        "whole_plane": s.is_whole_plane(),
        "curves": strings(s.curves()),
        "points": s.points().iter().map(point_json).collect::<Vec<_>>(),
    })
}

fn certificate_json(c: &Certificate) -> Value {
    json!({
        "steps": c.steps,
        "orbit_points_explored": c.orbit_points_explored,
        "verdict": c.verdict.map(verdict_name),
        "conjugator": c.conjugator.as_ref().map(|w| w.to_automorphism().to_string()),
        "conjugated_generators": c.conjugated_generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        "conjugated_point": c.conjugated_point.as_ref().map(point_json),
        "torsion_orders": c.torsion_orders,
        "added_generator": c.added_generator.as_ref().map(|g| g.to_string()),
        "descriptors": c.descriptors.iter().map(|(i, d)| json!({ "generator": i, "descriptor": descriptor_json(d) })).collect::<Vec<_>>(),
        "candidate_curves": strings(&c.candidate_curves),
    })
}

fn closure_json(r: &ClosureResult, config: &ClosureConfig, trace: bool) -> Value {
    let mut m = Map::new();
    m.insert("closure".into(), subvariety_json(&r.closure));
    m.insert("caveats".into(), json!(r.caveats));
    m.insert("decided_at".into(), json!(r.certificate.decided_at()));
    m.insert(
        "config".into(),
        json!({
            "orbit_cap": config.orbit_cap,
            "word_cap": config.word_cap,
            "multdep_bound": config.multdep_bound,
            "height_cap_bits": config.height_cap_bits,
        }),
    );
    if trace {
        m.insert("certificate".into(), certificate_json(&r.certificate));
    }
    Value::Object(m)
}
