//! Command-line front end: input parsing, report assembly and rendering.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::bcomplex::{e1_total, from_abstract, AbstractBData, BError, FaceReport, FiltrationPage};
use crate::builders::{build, BuildError, Built, CATALOGUE};
use crate::corners::{check_nice, face_lattice, validate, CornerError, CornerModel, Violation};
use crate::scomplex::{cohomology_dims, pair_cohomology, ComplexError, Simplex, SimplicialComplex, Subcomplex};
use crate::syzygy::{
    ab_hilbert_series, abstract_restriction_check, analyze_model, is_jth_syzygy,
    restriction_monotonicity_check, syzygy_order, RestrictionRow, SyzygyError, SyzygyOrder, SyzygyReport,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("validation failed: {0}")]
    ValidationFailed(String),
    #[error("not nice: offending faces {}", .0.join(", "))]
    NotNice(Vec<String>),
    #[error("internal invariant failure: {0}")]
    Internal(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Schema { .. } | CliError::ValidationFailed(_) => 2,
            CliError::NotNice(_) => 3,
            CliError::Internal(_) | CliError::Io(_) => 4,
        }
    }
}

fn violations_text(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

impl From<CornerError> for CliError {
    fn from(e: CornerError) -> Self {
        match e {
            CornerError::ValidationFailed(v) => CliError::ValidationFailed(violations_text(&v)),
            CornerError::NotNice(names) => CliError::NotNice(names),
            other => CliError::Internal(other.to_string()),
        }
    }
}

impl From<BuildError> for CliError {
    fn from(e: BuildError) -> Self {
        match e {
            BuildError::Corner(c) => c.into(),
            BuildError::UnboundedPolytope | BuildError::DegenerateDimension { .. } => {
                CliError::Internal(e.to_string())
            }
            other => CliError::ValidationFailed(other.to_string()),
        }
    }
}

/// Errors from abstract data are the user's; on a triangulation they are ours.
fn b_error(e: BError, user_data: bool) -> CliError {
    if user_data {
        CliError::ValidationFailed(e.to_string())
    } else {
        CliError::Internal(e.to_string())
    }
}

fn syzygy_error(e: SyzygyError, user_data: bool) -> CliError {
    match e {
        SyzygyError::Corner(c) => c.into(),
        SyzygyError::B(b) => b_error(b, user_data),
    }
}

#[derive(Clone, Debug)]
pub enum Input {
    Geometric(CornerModel),
    Abstract(AbstractBData),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GeometricInput {
    n: usize,
    maximal_simplices: Vec<Vec<u32>>,
    facets: BTreeMap<String, Vec<Vec<u32>>>,
}

fn schema<E: std::fmt::Display>(e: serde_path_to_error::Error<E>) -> CliError {
    let path = e.path().to_string();
    CliError::Schema {
        path: if path == "." { "$".to_string() } else { path },
        message: e.into_inner().to_string(),
    }
}

/// Parses and validates a JSON model. Niceness is left to the caller.
pub fn parse_input(bytes: &[u8]) -> Result<Input, CliError> {
    let text = std::str::from_utf8(bytes).map_err(|e| CliError::Parse(e.to_string()))?;
    let mut value: Value = serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    let obj = value.as_object_mut().ok_or_else(|| CliError::Schema {
        path: "$".into(),
        message: "expected an object".into(),
    })?;
    let mode = match obj.remove("mode") {
        Some(Value::String(s)) => s,
        Some(_) => return Err(CliError::Schema { path: "mode".into(), message: "expected a string".into() }),
        None => return Err(CliError::Schema { path: "mode".into(), message: "missing field `mode`".into() }),
    };
    match mode.as_str() {
        "geometric" => {
            let raw: GeometricInput = serde_path_to_error::deserialize(value).map_err(schema)?;
            Ok(Input::Geometric(geometric_model(&raw)?))
        }
        "abstract" => {
            let raw: AbstractBData = serde_path_to_error::deserialize(value).map_err(schema)?;
            from_abstract(&raw).map_err(|e| b_error(e, true))?;
            Ok(Input::Abstract(raw))
        }
        other => Err(CliError::Schema {
            path: "mode".into(),
            message: format!("unknown mode `{other}`, expected `geometric` or `abstract`"),
        }),
    }
}

fn geometric_model(raw: &GeometricInput) -> Result<CornerModel, CliError> {
    let complex_err = |path: String, e: ComplexError| CliError::Schema { path, message: e.to_string() };
    for (i, s) in raw.maximal_simplices.iter().enumerate() {
        SimplicialComplex::build(&[s]).map_err(|e| complex_err(format!("maximal_simplices[{i}]"), e))?;
    }
    let complex = SimplicialComplex::build(&raw.maximal_simplices)
        .map_err(|e| complex_err("maximal_simplices".into(), e))?;
    let mut facets = Vec::new();
    for (name, gens) in &raw.facets {
        for (j, s) in gens.iter().enumerate() {
            if complex.find(s).is_none() {
                return Err(CliError::Schema {
                    path: format!("facets.{name}[{j}]"),
                    message: format!("{s:?} is not a simplex of the complex"),
                });
            }
        }
        let sub = Subcomplex::generated(&complex, gens).map_err(|e| complex_err(format!("facets.{name}"), e))?;
        facets.push((name.clone(), sub));
    }
    let model = CornerModel::new(complex, raw.n, facets);
    let violations = validate(&model);
    if !violations.is_empty() {
        return Err(CliError::ValidationFailed(violations_text(&violations)));
    }
    Ok(model)
}

/// Serializes a geometric model in the input format.
pub fn model_to_json(model: &CornerModel) -> Value {
    let complex = model.complex();
    let facets: serde_json::Map<String, Value> = model
        .facets()
        .iter()
        .map(|(name, sub)| {
            let tops: Vec<Simplex> = SimplicialComplex::from_subcomplex(complex, sub).maximal_simplices();
            (name.clone(), serde_json::json!(tops))
        })
        .collect();
    serde_json::json!({
        "mode": "geometric",
        "n": model.n(),
        "maximal_simplices": complex.maximal_simplices(),
        "facets": facets,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceRow {
    pub id: usize,
    pub name: String,
    /// Facets containing the face; absent for abstract input.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label_set: Option<Vec<String>>,
    pub rank: usize,
    pub codim: usize,
    /// Simplex counts by dimension; absent for abstract input.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cells: Option<Vec<usize>>,
    /// `dim H^k(Q, ∂Q)`.
    pub cohomology: Vec<usize>,
    pub contains: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRow {
    pub index: usize,
    pub numerator: Vec<i64>,
    pub denominator_exponent: usize,
    pub coefficients: Vec<i64>,
    pub display: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRow {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

pub const HILBERT_CONVENTION: &str =
    "class of h^{i,q}(P) in degree i+q, times t^c/(1-t)^c with c = n - rank P";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub source: String,
    pub mode: String,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    pub faces: Vec<FaceRow>,
    pub b_cohomology: Vec<FaceReport>,
    pub order: SyzygyOrder,
    pub verdict: String,
    pub formal: bool,
    pub witnesses: Vec<String>,
    pub hilbert_convention: String,
    pub hilbert_series: Vec<SeriesRow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<CheckRow>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restrictions: Option<Vec<RestrictionRow>>,
}

impl Report {
    /// Some requested check or audit row failed.
    pub fn has_failures(&self) -> bool {
        self.checks.iter().flatten().any(|c| !c.passed) || self.restrictions.iter().flatten().any(|r| r.violation)
    }
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub hilbert_degree: usize,
    pub check: bool,
    pub audit_restrictions: bool,
}

fn series_rows(reports: &[FaceReport], n: usize, degree: usize) -> Vec<SeriesRow> {
    (0..=n)
        .map(|i| {
            let hs = ab_hilbert_series(reports, n, i, degree);
            SeriesRow {
                index: i,
                display: hs.to_string(),
                numerator: hs.numerator,
                denominator_exponent: hs.denominator_exponent,
                coefficients: hs.coefficients,
            }
        })
        .collect()
}

fn check(name: &str, passed: bool, detail: String) -> CheckRow {
    CheckRow {
        name: name.to_string(),
        passed,
        detail: if passed { String::new() } else { detail },
    }
}

fn failing<I: IntoIterator<Item = (String, bool)>>(items: I) -> (bool, String) {
    let bad: Vec<String> = items.into_iter().filter(|x| !x.1).map(|x| x.0).collect();
    (bad.is_empty(), bad.join(", "))
}

/// Checks shared by both modes.
fn common_checks(pages: &[FiltrationPage], syz: &SyzygyReport, series: &[SeriesRow], covers: &dyn Fn(usize, usize) -> bool) -> Vec<CheckRow> {
    let mut out = Vec::new();
    let (ok, bad) = failing(pages.iter().map(|p| (p.name.clone(), p.d1_squares_to_zero())));
    out.push(check("d1 squares to zero", ok, bad));
    let (ok, bad) = failing(pages.iter().map(|p| (p.name.clone(), p.blocks_vanish_off(covers))));
    out.push(check("d1 vanishes off covering pairs", ok, bad));
    let (ok, bad) = failing(pages.iter().zip(&syz.per_face).map(|(p, r)| {
        let top = p.rank + p.rows;
        (p.name.clone(), (0..top).all(|k| r.total(k) <= e1_total(p, k)))
    }));
    out.push(check("B-cohomology bounded by E1", ok, bad));
    let level = syz.order.level(syz.n);
    let (ok, bad) = failing((1..=syz.n).map(|j| (format!("j = {j}"), is_jth_syzygy(&syz.per_face, j) == (j <= level))));
    out.push(check("criterion agrees with the order for every j", ok, bad));
    let (ok, bad) = failing(series.iter().map(|s| (format!("i = {}", s.index), s.coefficients.iter().all(|&c| c >= 0))));
    out.push(check("Hilbert series coefficients are non-negative", ok, bad));
    if syz.order == SyzygyOrder::Free {
        let (ok, bad) = failing(series.iter().skip(1).map(|s| (format!("i = {}", s.index), s.numerator.is_empty())));
        out.push(check("free model has no higher AB cohomology", ok, bad));
    }
    out
}

pub fn analyze_geometric(model: &CornerModel, source: &str, opts: &Options) -> Result<Report, CliError> {
    let lattice = face_lattice(model)?;
    check_nice(&lattice)?;
    let analysis = analyze_model(model).map_err(|e| syzygy_error(e, false))?;
    let lat = &analysis.lattice;
    let names: Vec<String> = model.facets().iter().map(|f| f.0.clone()).collect();
    let faces = lat
        .faces
        .iter()
        .zip(&analysis.face_dims)
        .map(|(f, dims)| FaceRow {
            id: f.id,
            name: f.name.clone(),
            label_set: Some(f.label_set.iter().map(|&i| names[i].clone()).collect()),
            rank: f.rank,
            codim: f.codim,
            cells: Some(f.cells.counts()),
            cohomology: dims.clone(),
            contains: f.contains.iter().map(|&q| lat.faces[q].name.clone()).collect(),
        })
        .collect();
    let syz = &analysis.syzygy;
    let series = series_rows(&syz.per_face, model.n(), opts.hilbert_degree);
    let checks = opts.check.then(|| {
        let covering = lat.covering_pairs();
        let mut out = common_checks(&analysis.pages, syz, &series, &|a, b| covering.binary_search(&(a, b)).is_ok());
        let complex = model.complex();
        let empty = Subcomplex::empty(complex);
        let absolute: Vec<Vec<usize>> = lat
            .faces
            .iter()
            .map(|f| cohomology_dims(&pair_cohomology(complex, &f.cells, &empty)))
            .collect();
        let (ok, bad) = failing(analysis.pages.iter().zip(&lat.faces).map(|(p, f)| {
            (f.name.clone(), p.euler_characteristic() == f.cells.euler_characteristic())
        }));
        out.push(check("Euler characteristic of E1 equals that of the face", ok, bad));
        let (ok, bad) = failing(lat.faces.iter().zip(&syz.per_face).map(|(f, r)| {
            let h = &absolute[f.id];
            (f.name.clone(), (0..h.len()).all(|k| h[k] <= r.total(k)))
        }));
        out.push(check("H*(P) bounded by B-cohomology", ok, bad));
        out
    });
    let restrictions = if opts.audit_restrictions {
        Some(restriction_monotonicity_check(model, &analysis).map_err(|e| syzygy_error(e, false))?)
    } else {
        None
    };
    Ok(Report {
        source: source.to_string(),
        mode: "geometric".into(),
        n: model.n(),
        m: Some(model.m()),
        faces,
        b_cohomology: syz.per_face.clone(),
        order: syz.order,
        verdict: syz.order.verdict(),
        formal: syz.order == SyzygyOrder::Free,
        witnesses: syz.witnesses.iter().map(|&w| lat.faces[w].name.clone()).collect(),
        hilbert_convention: HILBERT_CONVENTION.into(),
        hilbert_series: series,
        checks,
        restrictions,
    })
}

pub fn analyze_abstract(data: &AbstractBData, source: &str, opts: &Options) -> Result<Report, CliError> {
    let analysis = from_abstract(data).map_err(|e| b_error(e, true))?;
    let lat = &analysis.lattice;
    let syz = syzygy_order(&analysis.reports, data.n);
    let faces = (0..lat.names.len())
        .map(|p| FaceRow {
            id: p,
            name: lat.names[p].clone(),
            label_set: None,
            rank: lat.ranks[p],
            codim: data.n - lat.ranks[p],
            cells: None,
            cohomology: lat.dims[p].clone(),
            contains: lat.below[p].iter().map(|&q| lat.names[q].clone()).collect(),
        })
        .collect();
    let series = series_rows(&syz.per_face, data.n, opts.hilbert_degree);
    let checks = opts
        .check
        .then(|| common_checks(&analysis.pages, &syz, &series, &|a, b| lat.covers(a, b)));
    let restrictions = if opts.audit_restrictions {
        Some(abstract_restriction_check(data).map_err(|e| syzygy_error(e, true))?)
    } else {
        None
    };
    Ok(Report {
        source: source.to_string(),
        mode: "abstract".into(),
        n: data.n,
        m: None,
        faces,
        b_cohomology: syz.per_face.clone(),
        order: syz.order,
        verdict: syz.order.verdict(),
        formal: syz.order == SyzygyOrder::Free,
        witnesses: syz.witnesses.iter().map(|&w| lat.names[w].clone()).collect(),
        hilbert_convention: HILBERT_CONVENTION.into(),
        hilbert_series: series,
        checks,
        restrictions,
    })
}

pub fn analyze_input(input: &Input, source: &str, opts: &Options) -> Result<Report, CliError> {
    match input {
        Input::Geometric(m) => analyze_geometric(m, source, opts),
        Input::Abstract(d) => analyze_abstract(d, source, opts),
    }
}

pub fn render_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

fn list<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

pub fn render_text(r: &Report) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "source: {}", r.source);
    let _ = write!(s, "mode: {}  n = {}", r.mode, r.n);
    if let Some(m) = r.m {
        let _ = write!(s, "  m = {m}");
    }
    s.push('\n');
    let _ = writeln!(s, "\nfaces:");
    for f in &r.faces {
        let _ = write!(s, "  [{}] {}  rank {}  codim {}  H*(Q,dQ) = [{}]", f.id, f.name, f.rank, f.codim, list(&f.cohomology));
        if let Some(c) = &f.cells {
            let _ = write!(s, "  cells [{}]", list(c));
        }
        if !f.contains.is_empty() {
            let _ = write!(s, "  contains {}", f.contains.join(" "));
        }
        s.push('\n');
    }
    let _ = writeln!(s, "\nB-cohomology h[p][q]:");
    for b in &r.b_cohomology {
        let rows: Vec<String> = b.h.iter().map(|c| format!("[{}]", list(c))).collect();
        let _ = writeln!(s, "  {}  rank {}  m = {}  h = [{}]", b.name, b.rank, b.obstruction, rows.join(", "));
    }
    let _ = writeln!(s, "\nverdict: {}", r.verdict);
    let _ = writeln!(s, "order: {}", r.order);
    let _ = writeln!(s, "formal: {}", r.formal);
    let _ = writeln!(s, "witnesses: {}", if r.witnesses.is_empty() { "-".to_string() } else { r.witnesses.join(", ") });
    let _ = writeln!(s, "\nHilbert series of H^i(AB) ({}):", r.hilbert_convention);
    for h in &r.hilbert_series {
        let _ = writeln!(
            s,
            "  i = {}: {}  numerator [{}] / (1-t)^{}  coefficients [{}]",
            h.index,
            h.display,
            list(&h.numerator),
            h.denominator_exponent,
            list(&h.coefficients)
        );
    }
    if let Some(checks) = &r.checks {
        let _ = writeln!(s, "\nchecks:");
        for c in checks {
            let _ = write!(s, "  {} {}", if c.passed { "PASS" } else { "FAIL" }, c.name);
            if !c.detail.is_empty() {
                let _ = write!(s, " ({})", c.detail);
            }
            s.push('\n');
        }
    }
    if let Some(rows) = &r.restrictions {
        let _ = writeln!(s, "\nrestriction audit:");
        for row in rows {
            let _ = writeln!(
                s,
                "  {}  rank {}  order {}  {}",
                row.name,
                row.rank,
                row.order,
                if row.violation { "VIOLATION" } else { "ok" }
            );
        }
    }
    s
}

#[derive(Parser, Debug)]
#[command(name = "quotcrit", version, about = "Syzygy order of equivariant cohomology from the orbit space")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the full analysis on a model file or a built-in example.
    Analyze {
        /// JSON model file.
        #[arg(required_unless_present = "example", conflicts_with = "example")]
        file: Option<PathBuf>,
        /// Built-in example name (see `examples`).
        #[arg(long)]
        example: Option<String>,
        /// Example parameter, `key=value`; may be repeated.
        #[arg(long = "param", value_parser = parse_param)]
        params: Vec<(String, String)>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Truncation degree of the Hilbert series.
        #[arg(long, default_value_t = 10)]
        hilbert_degree: usize,
        /// Also run invariant checks.
        #[arg(long)]
        check: bool,
        /// Also rerun the analysis on every face of positive rank.
        #[arg(long)]
        audit_restrictions: bool,
    },
    /// List the built-in examples.
    Examples,
    /// Check schema, model invariants and niceness only.
    Validate { file: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

fn parse_param(s: &str) -> Result<(String, String), String> {
    s.split_once('=')
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .ok_or_else(|| format!("expected key=value, got `{s}`"))
}

fn load(path: &PathBuf) -> Result<Input, CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    parse_input(&bytes)
}

fn load_example(name: &str, params: &[(String, String)]) -> Result<Input, CliError> {
    let params: BTreeMap<String, String> = params.iter().cloned().collect();
    Ok(match build(name, &params)? {
        Built::Geometric(m) => Input::Geometric(m),
        Built::Abstract(d) => Input::Abstract(d),
    })
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    match cli.command {
        Command::Examples => {
            for (name, params, about) in CATALOGUE {
                let params = if params.is_empty() { String::new() } else { format!(" [--param {params}]") };
                writeln!(out, "{name}{params}\n    {about}")?;
            }
            Ok(0)
        }
        Command::Validate { file } => {
            match load(&file)? {
                Input::Geometric(model) => {
                    let lattice = face_lattice(&model)?;
                    check_nice(&lattice)?;
                    writeln!(out, "ok: {} faces, nice", lattice.faces.len())?;
                }
                Input::Abstract(data) => writeln!(out, "ok: {} faces", data.faces.len())?,
            }
            Ok(0)
        }
        Command::Analyze { file, example, params, format, hilbert_degree, check, audit_restrictions } => {
            let (input, source) = match (&file, &example) {
                (Some(path), _) => (load(path)?, path.display().to_string()),
                (None, Some(name)) => {
                    let mut source = format!("example {name}");
                    for (k, v) in &params {
                        let _ = write!(source, " {k}={v}");
                    }
                    (load_example(name, &params)?, source)
                }
                (None, None) => unreachable!("clap requires a source"),
            };
            if file.is_some() && !params.is_empty() {
                return Err(CliError::ValidationFailed("--param only applies to --example".into()));
            }
            let opts = Options { hilbert_degree, check, audit_restrictions };
            let report = analyze_input(&input, &source, &opts)?;
            let text = match format {
                Format::Json => render_json(&report),
                Format::Text => render_text(&report),
            };
            out.write_all(text.as_bytes())?;
            Ok(if report.has_failures() { 4 } else { 0 })
        }
    }
}

/// Runs the command line; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
