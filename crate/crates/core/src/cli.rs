//! Command-line front end.
//!
//! Every command reads one JSON document (a file path, `-` for stdin) and
//! writes one report `{version, command, status, payload, diagnostics}`.
//! Exit codes: 0 when the status is `ok`, 1 when a checked hypothesis fails,
//! 2 on malformed input. Object keys are emitted in sorted order, so identical
//! inputs and seeds give byte-identical output.

use std::f64::consts::PI;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::Parser;
use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::arrangement::{
    ball_strata, codim2_criterion, cone_decomposition, enumerate_isotropic, invar_hypothesis, strata_poset,
    Arrangement, ConeOptions, IsotropicDatum, IsotropicKind, PosetView, StratumKind, SubspaceWitness,
};
use crate::error::{Error, Result};
use crate::field::{ComplexScalar, GaussianRational, Rational};
use crate::geomclass::{
    boundary_pair_type, gauss_lattice_report, k3_degeneration_type, kulikov_classify, tube_integral,
    BoundaryPairDatum, KulikovFiber, SingularityLabel,
};
use crate::json::{self as js, Doc};
use crate::linalg::Matrix;
use crate::monodromy::{
    analyze, classify_nilpotent, exp_nilpotent, is_unipotent, jm_weight, log_unipotent_matrix,
    max_order_from_env, nilpotent_from_pair, unipotent_power, MonodromyOperator, NilpotentData,
};
use crate::period::{
    boundary_line, check_limit_orthogonality, default_complement, functional_from_vector, hermitian,
    hodge_norm, in_domain, in_open_set, limit_line, limit_mhs, psi_ef, psi_ef_norm_rhs, psi_tau,
    psi_tau_norm_rhs, same_component, tube_coords, untwist, ComplexVector, DomainWitness, LimitOptions,
    PeriodSample, PeriodSampleSet, MEMBERSHIP_TOL,
};
use crate::qspace::{eigenspace_chi, QuadraticSpace, Subspace};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Default tolerance for the limit orthogonality check.
pub const ORTHOGONALITY_TOL: f64 = 1e-8;
/// Default tolerance for the tube integral against `2 pi i`.
pub const TUBE_TOL: f64 = 1e-8;

pub const COMMANDS: [&str; 21] = [
    "signature",
    "classify-subspace",
    "eigenspace",
    "monodromy-log",
    "classify-degeneration",
    "weight-filtration",
    "untwist",
    "limit-period",
    "check-orthogonality",
    "psi-verify",
    "arrangement-k1",
    "cone-cells",
    "strata-poset",
    "codim2-check",
    "ball-strata",
    "enumerate-isotropic",
    "boundary-type",
    "k3-type",
    "kulikov",
    "gauss-lattice",
    "tube-integral",
];

/// Library operation to the single command that exposes it.
pub const OPERATION_MAP: &[(&str, &str)] = &[
    ("signature", "signature"),
    ("radical", "classify-subspace"),
    ("orthogonal_complement", "classify-subspace"),
    ("classify_subspace", "classify-subspace"),
    ("subspace_sum", "classify-subspace"),
    ("subspace_intersect", "classify-subspace"),
    ("eigenspace_chi", "eigenspace"),
    ("log_unipotent", "monodromy-log"),
    ("classify_nilpotent", "classify-degeneration"),
    ("one_param", "classify-degeneration"),
    ("weight_filtration", "weight-filtration"),
    ("untwist", "untwist"),
    ("in_domain", "untwist"),
    ("same_component", "untwist"),
    ("limit_line", "limit-period"),
    ("limit_mhs", "limit-period"),
    ("check_limit_orthogonality", "check-orthogonality"),
    ("hodge_norm", "check-orthogonality"),
    ("psi_tau", "psi-verify"),
    ("psi_ef", "psi-verify"),
    ("tube_coords", "psi-verify"),
    ("build_K1", "arrangement-k1"),
    ("K_J_plane", "arrangement-k1"),
    ("cone_decomposition", "cone-cells"),
    ("K_sigma", "cone-cells"),
    ("strata_poset", "strata-poset"),
    ("codim2_criterion", "codim2-check"),
    ("invar_hypothesis", "codim2-check"),
    ("ball_strata", "ball-strata"),
    ("enumerate_isotropic", "enumerate-isotropic"),
    ("boundary_pair_type", "boundary-type"),
    ("k3_degeneration_type", "k3-type"),
    ("kulikov_classify", "kulikov"),
    ("gauss_lattice_report", "gauss-lattice"),
    ("tube_integral_check", "tube-integral"),
];

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Options {
    pub text: bool,
    pub seed: u64,
    pub tol: Option<f64>,
    pub height: Option<u32>,
    pub degree: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Fail,
    Error,
}

impl Status {
    pub fn name(&self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }

    fn from_check(passed: bool) -> Self {
        if passed {
            Status::Ok
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub payload: Value,
    pub diagnostics: Vec<String>,
}

impl Report {
    fn from_error(command: &str, e: &Error) -> Report {
        let status = if e.is_input_error() { Status::Error } else { Status::Fail };
        let mut err = Map::new();
        err.insert("kind".into(), json!(error_kind(e)));
        err.insert("message".into(), json!(e.to_string()));
        if let Error::Schema { path, .. } = e {
            err.insert("path".into(), json!(path));
        }
        Report {
            command: command.to_string(),
            status,
            payload: json!({ "error": err }),
            diagnostics: vec![e.to_string()],
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "version": VERSION,
            "command": self.command,
            "status": self.status.name(),
            "payload": self.payload,
            "diagnostics": self.diagnostics,
        })
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
        s.push('\n');
        s
    }

    /// Plain-text rendering: a header line, the payload as indented
    /// `key: value` lines, then the diagnostics.
    pub fn render_text(&self) -> String {
        let mut out = format!("pdt {} {}: {}\n", VERSION, self.command, self.status.name());
        text_value(&self.payload, 1, &mut out);
        for d in &self.diagnostics {
            out.push_str(&format!("note: {d}\n"));
        }
        out
    }

    pub fn render(&self, opts: &Options) -> String {
        if opts.text {
            self.render_text()
        } else {
            self.render_json()
        }
    }
}

fn is_flat(v: &Value) -> bool {
    !v.is_object() && !v.is_array()
}

fn scalar_text(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(if *b { "yes".into() } else { "no".into() }),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| is_flat(x) || x.as_array().is_some_and(|r| r.iter().all(is_flat))) => {
            Some(serde_json::to_string(v).expect("serializable"))
        }
        _ => None,
    }
}

fn text_value(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match scalar_text(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        text_value(x, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                match scalar_text(x) {
                    Some(s) => out.push_str(&format!("{pad}[{i}] {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}[{i}]\n"));
                        text_value(x, depth + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar_text(other).unwrap_or_default())),
    }
}

pub fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Malformed(_) => "malformed",
        Error::Schema { .. } => "schema",
        Error::Unsupported(_) => "unsupported",
        Error::Mismatch(_) => "mismatch",
        Error::Classification(_) => "classification",
        Error::Impossible(_) => "impossible",
        Error::NeedsBaseChange => "needs-base-change",
        Error::NotTypeIv(_) => "not-type-iv",
        Error::InconsistentSamples(_) => "inconsistent-samples",
        Error::NoConvergence { .. } => "no-convergence",
        Error::OutsideChart(_) => "outside-chart",
        Error::NotBoundaryPair(_) => "not-boundary-pair",
        Error::Io(_) => "io",
    }
}

/// Result of a command handler before it is wrapped into a report.
struct Outcome {
    status: Status,
    payload: Value,
    diagnostics: Vec<String>,
}

impl Outcome {
    fn ok(payload: Value) -> Self {
        Outcome {
            status: Status::Ok,
            payload,
            diagnostics: Vec::new(),
        }
    }

    fn check(passed: bool, payload: Value) -> Self {
        Outcome {
            status: Status::from_check(passed),
            payload,
            diagnostics: Vec::new(),
        }
    }

    fn note(mut self, d: impl Into<String>) -> Self {
        self.diagnostics.push(d.into());
        self
    }
}

type Handler = fn(Doc<'_>, &Options) -> Result<Outcome>;

fn handler(command: &str) -> Option<Handler> {
    Some(match command {
        "signature" => cmd_signature,
        "classify-subspace" => cmd_classify_subspace,
        "eigenspace" => cmd_eigenspace,
        "monodromy-log" => cmd_monodromy_log,
        "classify-degeneration" => cmd_classify_degeneration,
        "weight-filtration" => cmd_weight_filtration,
        "untwist" => cmd_untwist,
        "limit-period" => cmd_limit_period,
        "check-orthogonality" => cmd_check_orthogonality,
        "psi-verify" => cmd_psi_verify,
        "arrangement-k1" => cmd_arrangement_k1,
        "cone-cells" => cmd_cone_cells,
        "strata-poset" => cmd_strata_poset,
        "codim2-check" => cmd_codim2_check,
        "ball-strata" => cmd_ball_strata,
        "enumerate-isotropic" => cmd_enumerate_isotropic,
        "boundary-type" => cmd_boundary_type,
        "k3-type" => cmd_k3_type,
        "kulikov" => cmd_kulikov,
        "gauss-lattice" => cmd_gauss_lattice,
        "tube-integral" => cmd_tube_integral,
        _ => return None,
    })
}

/// Commands that may run without an input document.
fn input_optional(command: &str) -> bool {
    matches!(command, "gauss-lattice" | "tube-integral")
}

/// Run `command` on a parsed document.
pub fn run_value(command: &str, input: &Value, opts: &Options) -> Report {
    let Some(h) = handler(command) else {
        let e = Error::Unsupported(format!("unknown command {command:?}"));
        return Report::from_error(command, &e);
    };
    match h(Doc::root(input), opts) {
        Ok(o) => Report {
            command: command.to_string(),
            status: o.status,
            payload: o.payload,
            diagnostics: o.diagnostics,
        },
        Err(e) => Report::from_error(command, &e),
    }
}

fn read_input(input: Option<&str>) -> Result<String> {
    match input {
        None | Some("-") => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Error::Io(format!("stdin: {e}")))?;
            Ok(s)
        }
        Some(p) => std::fs::read_to_string(p).map_err(|e| Error::Io(format!("{p}: {e}"))),
    }
}

fn parse_document(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::schema("$", format!("invalid JSON: {e}")))
}

/// Run `command` on a file (`-` or `None` reads stdin).
pub fn run(command: &str, input: Option<&str>, opts: &Options) -> Report {
    if command == "batch" {
        return match input {
            Some(p) if p != "-" => batch(Path::new(p), opts),
            _ => Report::from_error("batch", &Error::malformed("batch needs a manifest path")),
        };
    }
    if handler(command).is_none() {
        return run_value(command, &Value::Null, opts);
    }
    if input.is_none() && input_optional(command) {
        return run_value(command, &json!({}), opts);
    }
    match read_input(input).and_then(|t| parse_document(&t)) {
        Ok(v) => run_value(command, &v, opts),
        Err(e) => Report::from_error(command, &e),
    }
}

/// Run every entry of a manifest `{"entries": [{"command", "input", "options"?}]}`.
/// `input` is a path relative to the manifest or an inline document; entry
/// options override the global ones.
pub fn batch(manifest: &Path, opts: &Options) -> Report {
    let text = match std::fs::read_to_string(manifest) {
        Ok(t) => t,
        Err(e) => return Report::from_error("batch", &Error::Io(format!("{}: {e}", manifest.display()))),
    };
    let value = match parse_document(&text) {
        Ok(v) => v,
        Err(e) => return Report::from_error("batch", &e),
    };
    let base = manifest.parent().map(Path::to_path_buf).unwrap_or_default();
    batch_value(&value, &base, opts)
}

/// [`batch`] on a parsed manifest; relative input paths resolve against `base`.
pub fn batch_value(manifest: &Value, base: &Path, opts: &Options) -> Report {
    let root = Doc::root(manifest);
    let entries = match root.field("entries", |d| d.each(|e| Ok(e.value.clone()))) {
        Ok(e) => e,
        Err(e) => return Report::from_error("batch", &e),
    };
    let reports: Vec<Report> = entries
        .iter()
        .enumerate()
        .map(|(i, e)| batch_entry(i, e, base, opts))
        .collect();
    let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
    let (ok, fail, error) = (count(Status::Ok), count(Status::Fail), count(Status::Error));
    let status = if error > 0 {
        Status::Error
    } else if fail > 0 {
        Status::Fail
    } else {
        Status::Ok
    };
    let errors: Vec<Value> = reports
        .iter()
        .enumerate()
        .filter(|(_, r)| r.status == Status::Error)
        .map(|(i, r)| json!({"entry": i, "command": r.command, "diagnostics": r.diagnostics}))
        .collect();
    Report {
        command: "batch".into(),
        status,
        payload: json!({
            "entries": reports.iter().map(Report::to_json).collect::<Vec<_>>(),
            "summary": {"total": reports.len(), "ok": ok, "fail": fail, "error": error},
            "errors": errors,
        }),
        diagnostics: Vec::new(),
    }
}

fn batch_entry(i: usize, entry: &Value, base: &Path, opts: &Options) -> Report {
    let path = js::Path::new(format!("$.entries[{i}]"));
    let doc = Doc::with(entry, &path);
    let command = match doc.field("command", |d| d.str().map(str::to_string)) {
        Ok(c) => c,
        Err(e) => return Report::from_error("batch-entry", &e),
    };
    let entry_opts = match doc.opt("options", |d| entry_options(d, opts)) {
        Ok(o) => o.unwrap_or_else(|| opts.clone()),
        Err(e) => return Report::from_error(&command, &e),
    };
    let input = match doc.value.get("input") {
        None | Some(Value::Null) if input_optional(&command) => json!({}),
        Some(Value::String(p)) => {
            let full: PathBuf = base.join(p);
            match std::fs::read_to_string(&full)
                .map_err(|e| Error::Io(format!("{}: {e}", full.display())))
                .and_then(|t| parse_document(&t))
            {
                Ok(v) => v,
                Err(e) => return Report::from_error(&command, &e),
            }
        }
        Some(v) if !v.is_null() => v.clone(),
        _ => return Report::from_error(&command, &Error::schema(doc.path(), "missing field \"input\"")),
    };
    run_value(&command, &input, &entry_opts)
}

fn entry_options(d: Doc<'_>, global: &Options) -> Result<Options> {
    let mut o = global.clone();
    if let Some(s) = d.opt("seed", |x| x.i64())? {
        o.seed = s as u64;
    }
    if let Some(t) = d.opt("tol", |x| x.f64())? {
        o.tol = Some(t);
    }
    if let Some(h) = d.opt("height", |x| x.usize())? {
        o.height = Some(h as u32);
    }
    if let Some(g) = d.opt("degree", |x| x.usize())? {
        o.degree = Some(g);
    }
    Ok(o)
}

#[derive(Parser, Debug)]
#[command(name = "pdt", version, about = "Degenerations of type IV Hodge structures")]
struct Args {
    /// One of the commands listed by `pdt help`, or `batch`.
    command: String,
    /// Input JSON file (`-` or omitted reads stdin); for `batch`, the manifest.
    input: Option<String>,
    /// Render the report as prose instead of JSON.
    #[arg(long)]
    text: bool,
    /// Seed for randomized witness search.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Numerical tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Height bound for isotropic enumeration.
    #[arg(long)]
    height: Option<u32>,
    /// Polynomial degree for limit extrapolation.
    #[arg(long)]
    degree: Option<usize>,
}

fn usage() -> String {
    let mut s = String::from("usage: pdt <command> [input|-] [--text] [--seed N] [--tol F] [--height N] [--degree N]\n\ncommands:\n");
    for c in COMMANDS.iter().chain(std::iter::once(&"batch")) {
        s.push_str(&format!("  {c}\n"));
    }
    s
}

/// Entry point shared by the `pdt` binary: parse `args` (program name first),
/// print the report and return the exit code.
pub fn main_with_args<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if args.command == "help" {
        print!("{}", usage());
        return 0;
    }
    if args.command != "batch" && !COMMANDS.contains(&args.command.as_str()) {
        eprintln!("pdt: unknown command {:?}\n\n{}", args.command, usage());
        return 2;
    }
    let opts = Options {
        text: args.text,
        seed: args.seed,
        tol: args.tol,
        height: args.height,
        degree: args.degree,
    };
    let report = run(&args.command, args.input.as_deref(), &opts);
    print!("{}", report.render(&opts));
    report.exit_code()
}

// ---- shared document readers ----

/// `{"space": {...}}` or a bare space document.
fn space_arg(doc: Doc<'_>) -> Result<Arc<QuadraticSpace>> {
    if doc.has("space") {
        doc.field("space", |d| d.space()).map(Arc::new)
    } else {
        doc.space().map(Arc::new)
    }
}

/// Monodromy from `{"space", "T"}`, replacing `T` by its first unipotent power.
/// Returns the operator and the exponent used.
fn monodromy_arg(doc: Doc<'_>) -> Result<(MonodromyOperator, u32)> {
    let space = space_arg(doc)?;
    let t = doc.field("T", |d| d.square_matrix(space.dim()))?;
    if is_unipotent(&t) {
        return Ok((MonodromyOperator::new(space, t)?, 1));
    }
    if t.transpose().mul(space.gram()).mul(&t) != *space.gram() {
        return Err(Error::malformed("T does not preserve the form"));
    }
    let (k, tk) = unipotent_power(&t, max_order_from_env()).ok_or(Error::NeedsBaseChange)?;
    Ok((MonodromyOperator::new(space, tk)?, k))
}

fn base_change_note(k: u32) -> Option<String> {
    (k > 1).then(|| format!("T is not unipotent; replaced by T^{k}"))
}

/// `N` from `{"space", "N"}`, `{"space", "e", "u"}` or `{"space", "T"}`.
fn nilpotent_arg(doc: Doc<'_>) -> Result<(NilpotentData, u32)> {
    if doc.has("N") {
        let space = space_arg(doc)?;
        let n = doc.field("N", |d| d.square_matrix(space.dim()))?;
        return Ok((classify_nilpotent(space, n)?, 1));
    }
    if doc.has("e") || doc.has("u") {
        let space = space_arg(doc)?;
        let e = doc.field("e", |d| d.vector(space.dim()))?;
        let u = doc.field("u", |d| d.vector(space.dim()))?;
        let n = nilpotent_from_pair(&space, &e, &u)?;
        return Ok((classify_nilpotent(space, n)?, 1));
    }
    if doc.has("T") {
        let (m, k) = monodromy_arg(doc)?;
        return Ok((analyze(&m)?, k));
    }
    Err(Error::schema(doc.path(), "expected one of the fields \"N\", \"T\" or \"e\"/\"u\""))
}

fn arrangement_arg(doc: Doc<'_>, space: Arc<QuadraticSpace>) -> Result<Arrangement> {
    let d = space.dim();
    if doc.has("normals") {
        let normals = doc.field("normals", |x| x.each(|v| v.vector(d)))?;
        return Arrangement::from_normals(space, &normals);
    }
    let hyperplanes = doc.opt("hyperplanes", |x| x.each(|h| h.subspace(d)))?.unwrap_or_default();
    Arrangement::new(space, hyperplanes)
}

fn isotropic_arg(doc: Doc<'_>, space: &QuadraticSpace) -> Result<IsotropicDatum> {
    let kind = doc.field("kind", |k| match k.str()? {
        "line" => Ok(IsotropicKind::Line),
        "plane" => Ok(IsotropicKind::Plane),
        other => Err(Error::schema(k.path(), format!("kind must be \"line\" or \"plane\", got {other:?}"))),
    })?;
    let sub = doc.field("basis", |b| b.subspace(space.dim()))?;
    IsotropicDatum::new(space, kind, sub)
}

fn isotropics_arg(doc: Doc<'_>, key: &str, space: &QuadraticSpace) -> Result<Vec<IsotropicDatum>> {
    Ok(doc.opt(key, |x| x.each(|i| isotropic_arg(i, space)))?.unwrap_or_default())
}

fn isotropic_json(j: &IsotropicDatum) -> Value {
    json!({
        "kind": j.kind.name(),
        "basis": j.subspace.basis().iter().map(|v| js::rat_vec(v)).collect::<Vec<_>>(),
        "generator": j.generator().map(|g| js::rat_vec(&g)),
    })
}

fn samples_arg(doc: Doc<'_>, monodromy: MonodromyOperator, k: u32) -> Result<PeriodSampleSet> {
    let d = monodromy.space().dim();
    let scale = 1.0 / k as f64;
    let samples = doc.field("samples", |s| {
        s.each(|x| {
            let w = x.field("w", |w| w.c64())?;
            let alpha = x.field("alpha", |a| a.complex_vector(d))?;
            Ok(PeriodSample { w: w * scale, alpha })
        })
    })?;
    if samples.is_empty() {
        return Err(Error::schema(doc.path(), "samples must not be empty"));
    }
    Ok(PeriodSampleSet { monodromy, samples })
}

fn nilpotent_json(nd: &NilpotentData) -> Value {
    json!({
        "case": nd.case.name(),
        "N": js::rat_matrix(&nd.n),
        "e": nd.e.as_ref().map(|v| js::rat_vec(v)),
        "u": nd.u.as_ref().map(|v| js::rat_vec(v)),
        "J": js::subspace(&nd.j),
        "J0": js::subspace(&nd.j0),
        "uu": js::rat(&nd.uu),
        "polarized_sign": nd.polarized_sign(),
    })
}

fn gaussian_matrix(m: &Matrix<GaussianRational>) -> Value {
    Value::Array(m.to_rows().iter().map(|r| Value::Array(r.iter().map(js::gaussian).collect())).collect())
}

fn witness_json(w: &SubspaceWitness) -> Value {
    json!({
        "subspace": js::subspace(&w.subspace),
        "signature": js::signature(&w.signature),
        "witness": js::rat_vec(&w.witness),
    })
}

// ---- qspace ----

fn cmd_signature(doc: Doc<'_>, _: &Options) -> Result<Outcome> {
    let space = space_arg(doc)?;
    Ok(Outcome::ok(js::signature(&space.signature())))
}

fn cmd_classify_subspace(doc: Doc<'_>, _: &Options) -> Result<Outcome> {
    let space = space_arg(doc)?;
    let d = space.dim();
    let v = doc.field("subspace", |s| s.subspace(d))?;
    let mut p = Map::new();
    p.insert("subspace".into(), js::subspace(&v));
    p.insert("signature".into(), js::signature(&space.restricted_signature(&v)?));
    p.insert("radical".into(), js::subspace(&space.radical(&v)?));
    let mut notes = Vec::new();
    match space.orthogonal_complement(&v) {
        Ok(c) => {
            p.insert("orthogonal_complement".into(), js::subspace(&c));
        }
        Err(e) => {
            p.insert("orthogonal_complement".into(), Value::Null);
            notes.push(e.to_string());
        }
    }
    let mut status = Status::Ok;
    let sig = space.signature();
    if sig.q == 2 && sig.r == 0 {
        match space.classify_subspace(&v) {
            Ok(c) => {
                p.insert(
                    "classification".into(),
                    json!({
                        "class": c.class.name(),
                        "radical": js::subspace(&c.radical),
                        "complement_signature": js::signature(&c.complement_signature),
                        "complement_negative_semidefinite": c.complement_negative_semidefinite,
                        "side_condition": c.side_condition,
                    }),
                );
                if !c.side_condition {
                    status = Status::Fail;
                    notes.push(format!("{} side condition does not hold", c.class.name()));
                }
            }
            Err(e) if !e.is_input_error() => {
                status = Status::Fail;
                p.insert("classification".into(), json!({"error": e.to_string(), "kind": error_kind(&e)}));
                notes.push(e.to_string());
            }
            Err(e) => return Err(e),
        }
    } else {
        p.insert("classification".into(), Value::Null);
        notes.push(format!("classification needs an ambient signature (n,2,0), got ({},{},{})", sig.p, sig.q, sig.r));
    }
    if let Some(w) = doc.opt("with", |s| s.subspace(d))? {
        p.insert("with".into(), js::subspace(&w));
        p.insert("sum".into(), js::subspace(&v.sum(&w)?));
        p.insert("intersection".into(), js::subspace(&v.intersect(&w)?));
    }
    Ok(Outcome {
        status,
        payload: Value::Object(p),
        diagnostics: notes,
    })
}

fn cmd_eigenspace(doc: Doc<'_>, _: &Options) -> Result<Outcome> {
    let space = space_arg(doc)?;
    let rho = doc.field("rho", |r| r.square_matrix(space.dim()))?;
    let l = doc.field("l", |x| x.usize())? as u32;
    let e = eigenspace_chi(&space, &rho, l)?;
    Ok(Outcome::ok(json!({
        "l": l,
        "dim": e.dim(),
        "basis": e.chi_basis.iter().map(|v| js::cyclotomic_vec(v)).collect::<Vec<_>>(),
        "herm_signature": {"p": e.herm_signature.p, "q": e.herm_signature.q},
    })))
}

// ---- monodromy ----

fn cmd_monodromy_log(doc: Doc<'_>, _: &Options) -> Result<Outcome> {
    let (m, k) = monodromy_arg(doc)?;
    let n = log_unipotent_matrix(m.matrix())?;
    let exp_ok = exp_nilpotent(&n) == *m.matrix();
    let mut o = Outcome::check(
        exp_ok,
        json!({
            "base_change": k,
            "T": js::rat_matrix(m.matrix()),
            "N": js::rat_matrix(&n),
            "nilpotency": if n.is_zero() { 1 } else if n.pow(2).is_zero() { 2 } else { 3 },
            "exp_matches": exp_ok,
        }),
    );
    if let Some(note) = base_change_note(k) {
        o = o.note(note);
    }
    Ok(o)
}

fn cmd_classify_degeneration(doc: Doc<'_>, _: &Options) -> Result<Outcome> {
    let (nd, k) = nilpotent_arg(doc)?;
    let mut p = nilpotent_json(&nd);
    p["base_change"] = json!(k);
    let mut passed = true;
    if let Some(w) = doc.opt("w", |w| w.gaussian())? {
        let closed = nd.one_param(&w);
        let series = nd.exp_series(&w);
        passed = closed == series;
        p["w"] = js::gaussian(&w);
        p["one_param"] = gaussian_matrix(&closed);
        p["matches_series"] = json!(passed);
    }
    let mut o = Outcome::check(passed, p);
    if let Some(note) = base_change_note(k) {
        o = o.note(note);
    }
    Ok(o)
}

fn cmd_weight_filtration(doc: Doc<'_>, _: &Options) -> Result<Outcome> {
    let (nd, k) = nilpotent_arg(doc)?;
    let wf = nd.weight_filtration()?;
    let agrees = wf.steps.iter().all(|(i, s)| jm_weight(&nd.n, *i) == *s);
    let steps: Vec<Value> = wf
        .steps
        .iter()
        .map(|(i, s)| json!({"k": i, "subspace": js::subspace(s)}))
        .collect();
    let mut o = Outcome::check(agrees, json!({"case": nd.case.name(), "steps": steps, "jm_agrees": agrees, "base_change": k}));
    if let Some(note) = base_change_note(k) {
        o = o.note(note);
    }
    Ok(o)
}

// ---- period ----

fn tol(opts: &Options, default: f64) -> f64 {
    opts.tol.unwrap_or(default)
}

fn cmd_untwist(doc: Doc<'_>, opts: &Options) -> Result<Outcome> {
    let (m, k) = doc.field("monodromy", monodromy_arg)?;
    let space = m.space().clone();
    let nd = analyze(&m)?;
    let ps = samples_arg(doc, m, k)?;
    let t = tol(opts, MEMBERSHIP_TOL);
    let witness = doc
        .opt("witness", |w| w.complex_vector(space.dim()))?
        .map(|w| DomainWitness::new(&space, w, t))
        .transpose()?;
    let reference = witness
        .as_ref()
        .map(|w| w.basepoint.clone())
        .unwrap_or_else(|| ps.samples[0].alpha.clone());
    let untwisted = untwist(&ps, &nd, t)?;
    let mut all_same = true;
    let mut rows = Vec::new();
    for (sample, u) in ps.samples.iter().zip(&untwisted) {
        let open = in_open_set(&space, &sample.alpha, t)?;
        let same = open && same_component(&space, &sample.alpha, &reference, t)?;
        all_same &= same;
        let mut row = json!({
            "w": js::c64(&u.w),
            "s": js::c64(&u.s),
            "phi": js::c64_vec(&u.phi),
            "in_open_set": open,
            "same_component": same,
        });
        if let Some(w) = &witness {
            row["in_domain"] = json!(in_domain(&space, &sample.alpha, w, t)?);
        }
        rows.push(row);
    }
    let mut o = Outcome::ok(json!({
        "case": nd.case.name(),
        "base_change": k,
        "samples": rows,
        "all_same_component": all_same,
    }));
    if let Some(note) = base_change_note(k) {
        o = o.note(note);
    }
    Ok(o)
}

fn limit_options(doc: Doc<'_>, opts: &Options) -> Result<LimitOptions> {
    let mut lo = LimitOptions::default();
    if let Some(d) = doc.opt("degree", |x| x.usize())? {
        lo.degree = d;
    }
    if let Some(d) = opts.degree {
        lo.degree = d;
    }
    if let Some(th) = doc.opt("threshold", |x| x.f64())? {
        lo.threshold = th;
    }
    lo.tol = tol(opts, lo.tol);
    Ok(lo)
}

fn cmd_limit_period(doc: Doc<'_>, opts: &Options) -> Result<Outcome> {
    let (m, k) = doc.field("monodromy", monodromy_arg)?;
    let space = m.space().clone();
    let nd = analyze(&m)?;
    let ps = samples_arg(doc, m, k)?;
    let lo = limit_options(doc, opts)?;
    let line = limit_line(&ps, &nd, &lo)?;
    let bl = boundary_line(&line.f_lim, &nd, lo.tol);
    let mut p = json!({
        "case": nd.case.name(),
        "base_change": k,
        "f_lim": js::c64_vec(&line.f_lim),
        "boundary_line": js::c64_vec(&bl),
        "residual": line.residual,
        "degree": line.degree,
        "samples_used": line.samples_used,
    });
    let mut status = Status::Ok;
    if let Some(v) = doc.opt("V", |x| x.subspace(space.dim()))? {
        let functional = functional_from_vector(&space, &v, &line.f_lim);
        let mhs = limit_mhs(&space, &v, &functional, lo.tol)?;
        if !mhs.hodge_consistent {
            status = Status::Fail;
        }
        p["limit_mhs"] = json!({
            "V": js::subspace(&v),
            "V0": js::subspace(&mhs.v0),
            "class": mhs.class.map(|c| c.name()),
            "pieces": mhs.pieces.iter().map(|w| json!({"name": w.name, "dim": w.dim, "weight": w.weight})).collect::<Vec<_>>(),
            "projects_nontrivially": mhs.projects_nontrivially,
            "hodge_consistent": mhs.hodge_consistent,
        });
    }
    let mut o = Outcome {
        status,
        payload: p,
        diagnostics: Vec::new(),
    };
    if let Some(note) = base_change_note(k) {
        o = o.note(note);
    }
    Ok(o)
}

fn cmd_check_orthogonality(doc: Doc<'_>, opts: &Options) -> Result<Outcome> {
    let t = tol(opts, ORTHOGONALITY_TOL);
    let mut p = Map::new();
    let (space, f, notes) = if doc.has("F") {
        let space = space_arg(doc)?;
        let f = doc.field("F", |x| x.complex_vector(space.dim()))?.to_numeric();
        p.insert("line".into(), json!("supplied"));
        (space, f, Vec::new())
    } else {
        let (m, k) = doc.field("monodromy", monodromy_arg)?;
        let space = m.space().clone();
        let nd = analyze(&m)?;
        let ps = samples_arg(doc, m, k)?;
        let lo = limit_options(doc, opts)?;
        let line = limit_line(&ps, &nd, &lo)?;
        let norms: Vec<f64> = ps.samples.iter().map(|s| hodge_norm(&space, &s.alpha)).collect();
        p.insert("hodge_norms".into(), json!(norms));
        p.insert("line".into(), json!("boundary"));
        p.insert("f_lim".into(), js::c64_vec(&line.f_lim));
        (space, boundary_line(&line.f_lim, &nd, lo.tol), base_change_note(k).into_iter().collect())
    };
    let v = doc.field("V", |x| x.subspace(space.dim()))?;
    let r = check_limit_orthogonality(&space, &f, &v, t)?;
    p.insert("F".into(), js::c64_vec(&f));
    p.insert("V".into(), js::subspace(&v));
    p.insert("max_ratio".into(), json!(r.max_ratio));
    p.insert("tol".into(), json!(r.tol));
    p.insert("passed".into(), json!(r.passed));
    Ok(Outcome {
        status: Status::from_check(r.passed),
        payload: Value::Object(p),
        diagnostics: notes,
    })
}

/// Exact or floating-point complex scalars as JSON.
trait ScalarJson: ComplexScalar {
    fn to_json(&self) -> Value;
    fn matrix_json(m: &Matrix<Self>) -> Value {
        Value::Array(m.to_rows().iter().map(|r| Value::Array(r.iter().map(Self::to_json).collect())).collect())
    }
}

impl ScalarJson for GaussianRational {
    fn to_json(&self) -> Value {
        js::gaussian(self)
    }
}

impl ScalarJson for Complex64 {
    fn to_json(&self) -> Value {
        js::c64(self)
    }
}

fn real_json<C: ScalarJson>(x: &C::Real) -> Value {
    C::from_real(x.clone()).to_json()
}

/// Form preservation and the norm identity for a transvection `m`.
fn transvection_check<C: ScalarJson>(space: &QuadraticSpace, m: &Matrix<C>, alpha: &[C], rhs: C::Real, tol: f64) -> (bool, Value) {
    use crate::field::RealField;
    let g: Matrix<C> = space.gram().map(C::from_rational);
    let defect = m.transpose().mul(&g).mul(m).sub(&g);
    let preserves = (0..defect.nrows()).all(|i| (0..defect.ncols()).all(|j| defect[(i, j)].approx_zero(tol)));
    let image = m.mul_vec(alpha);
    let lhs = hermitian(space, &image, &image).re();
    let scale = 1.0 + lhs.to_f64().abs().max(rhs.to_f64().abs());
    let diff = (lhs.clone() - rhs.clone()).to_f64().abs();
    let identity = diff <= tol * scale;
    let passed = preserves && identity;
    (
        passed,
        json!({
            "matrix": C::matrix_json(m),
            "image": Value::Array(image.iter().map(C::to_json).collect()),
            "preserves_form": preserves,
            "norm_lhs": real_json::<C>(&lhs),
            "norm_rhs": real_json::<C>(&rhs),
            "norm_identity": identity,
            "passed": passed,
        }),
    )
}

fn cmd_psi_verify(doc: Doc<'_>, opts: &Options) -> Result<Outcome> {
    let space = space_arg(doc)?;
    let d = space.dim();
    let alpha = doc.field("alpha", |a| a.complex_vector(d))?;
    let t = tol(opts, MEMBERSHIP_TOL);
    let mut p = Map::new();
    let mut passed = true;
    let mut any = false;

    if doc.has("tau") || doc.has("e0") {
        any = true;
        let e0 = doc.field("e0", |x| x.vector(d))?;
        let e1 = doc.field("e1", |x| x.vector(d))?;
        let exact_tau = doc.field("tau", |x| Ok(x.value.is_object() || x.value.is_string()))?;
        let (ok, v) = match (&alpha, exact_tau) {
            (ComplexVector::Exact(a), true) => {
                let tau = doc.field("tau", |x| x.gaussian())?;
                let m = psi_tau(&space, &e0, &e1, &tau)?;
                let rhs = psi_tau_norm_rhs(&space, a, &e0, &e1, &tau);
                transvection_check(&space, &m, a, rhs, 0.0)
            }
            _ => {
                let tau = doc.field("tau", |x| x.c64())?;
                let a = alpha.to_numeric();
                let m = psi_tau(&space, &e0, &e1, &tau)?;
                let rhs = psi_tau_norm_rhs(&space, &a, &e0, &e1, &tau);
                transvection_check(&space, &m, &a, rhs, t)
            }
        };
        passed &= ok;
        p.insert("psi_tau".into(), v);
    }

    if doc.has("f") || doc.has("e") {
        any = true;
        let e = doc.field("e", |x| x.vector(d))?;
        let fv = doc.field("f", |x| x.complex_vector(d))?;
        let (ok, mut v, image) = match (&alpha, &fv) {
            (ComplexVector::Exact(a), ComplexVector::Exact(f)) => {
                let m = psi_ef(&space, &e, f, 0.0)?;
                let rhs = psi_ef_norm_rhs(&space, a, &e, f);
                let (ok, v) = transvection_check(&space, &m, a, rhs, 0.0);
                (ok, v, ComplexVector::Exact(m.mul_vec(a)))
            }
            _ => {
                let (a, f) = (alpha.to_numeric(), fv.to_numeric());
                let m = psi_ef(&space, &e, &f, t)?;
                let rhs = psi_ef_norm_rhs(&space, &a, &e, &f);
                let (ok, v) = transvection_check(&space, &m, &a, rhs, t);
                (ok, v, ComplexVector::Numeric(m.mul_vec(&a)))
            }
        };
        passed &= ok;
        // psi_{e,f} translates tube coordinates by Im f.
        let comp = default_complement(&space, &e)?;
        let exact = alpha.is_exact() && fv.is_exact();
        let ct = if exact { 0.0 } else { t };
        let before = tube_coords(&space, &alpha, &e, &comp, ct)?;
        let after = tube_coords(&space, &image, &e, &comp, ct)?;
        let y_f = tube_coords(&space, &chart_point(&space, &e, &fv)?, &e, &comp, ct)?;
        let translation_ok = match (&after.exact, &before.exact, &y_f.exact) {
            (Some(a), Some(b), Some(y)) => a.iter().zip(b).map(|(x, z)| x - z).eq(y.iter().cloned()),
            _ => {
                let n = y_f.y.iter().map(|x| x.abs()).fold(1.0, f64::max);
                after.y.iter().zip(&before.y).zip(&y_f.y).all(|((a, b), y)| (a - b - y).abs() <= 10.0 * t * n)
            }
        };
        passed &= translation_ok;
        v["tube_before"] = json!(before.y);
        v["tube_after"] = json!(after.y);
        v["translation_by_im_f"] = json!(translation_ok);
        v["passed"] = json!(ok && translation_ok);
        p.insert("psi_ef".into(), v);
    }
    if !any {
        return Err(Error::schema(doc.path(), "expected \"e0\"/\"e1\"/\"tau\" or \"e\"/\"f\""));
    }
    Ok(Outcome::check(passed, Value::Object(p)))
}

/// `e' + i Im f` with `e'.e = 1`; its tube coordinates are those of `Im f`.
fn chart_point(space: &QuadraticSpace, e: &[Rational], f: &ComplexVector) -> Result<ComplexVector> {
    let ge = space.gram_vec(e);
    let i = ge
        .iter()
        .position(|x| !num_traits::Zero::is_zero(x))
        .ok_or_else(|| Error::malformed("e is in the radical"))?;
    let mut base = vec![Rational::default(); space.dim()];
    base[i] = num_traits::One::one();
    base[i] /= ge[i].clone();
    Ok(match f {
        ComplexVector::Exact(f) => ComplexVector::Exact(
            base.iter().zip(f).map(|(b, z)| GaussianRational::new(b.clone(), z.im.clone())).collect(),
        ),
        ComplexVector::Numeric(f) => ComplexVector::Numeric(
            base.iter().zip(f).map(|(b, z)| Complex64::new(crate::field::rat_to_f64(b), z.im)).collect(),
        ),
    })
}

// ---- arrangement ----

fn cmd_arrangement_k1(doc: Doc<'_>, _: &Options) -> Result<Outcome> {
    let space = space_arg(doc)?;
    let arr = arrangement_arg(doc, space.clone())?;
    let k1: Vec<Value> = arr
        .build_k1()
        .iter()
        .map(|s| {
            let perp = space.perp_unchecked(s);
            json!({
                "subspace": js::subspace(s),
                "members": arr.members_containing(s),
                "perp_signature": space.restricted_signature(&perp).map(|x| js::signature(&x)).unwrap_or(Value::Null),
            })
        })
        .collect();
    let planes = isotropics_arg(doc, "planes", &space)?;
    let mut kj = Vec::new();
    for j in &planes {
        if j.kind != IsotropicKind::Plane {
            return Err(Error::malformed("arrangement-k1 \"planes\" entries must have kind \"plane\""));
        }
        let k = arr.k_j_plane(j)?;
        kj.push(json!({"plane": isotropic_json(j), "K": js::subspace(&k)}));
    }
    Ok(Outcome::ok(json!({
        "hyperplanes": arr.len(),
        "K1": k1,
        "K_J": kj,
    })))
}

fn cone_options(doc: Doc<'_>, opts: &Options, d: usize) -> Result<ConeOptions> {
    let mut co = ConeOptions {
        seed: opts.seed,
        ..ConeOptions::default()
    };
    if let Some(n) = doc.opt("samples", |x| x.usize())? {
        co.samples = n;
    }
    co.witness = doc.opt("witness", |x| x.vector(d))?;
    Ok(co)
}

fn cmd_cone_cells(doc: Doc<'_>, opts: &Options) -> Result<Outcome> {
    let space = space_arg(doc)?;
    let d = space.dim();
    let arr = arrangement_arg(doc, space.clone())?;
    let line = if doc.has("line") {
        doc.field("line", |x| isotropic_arg(x, &space))?
    } else {
        let e = doc.field("e", |x| x.vector(d))?;
        IsotropicDatum::line(&space, e)?
    };
    let co = cone_options(doc, opts, d)?;
    let dec = cone_decomposition(&arr, &line, &co)?;
    let cells: Vec<Value> = dec
        .cells
        .iter()
        .map(|c| {
            json!({
                "sign": c.sign_string(),
                "dim": c.dim,
                "witness": js::rat_vec(&c.witness),
                "point": js::rat_vec(&c.point),
                "K_sigma": js::subspace(&c.k_sigma),
                "chamber": c.dim + 1 == dec.complement.len(),
            })
        })
        .collect();
    Ok(Outcome::ok(json!({
        "line": js::rat_vec(&dec.line),
        "f": js::rat_vec(&dec.f),
        "complement": dec.complement.iter().map(|v| js::rat_vec(v)).collect::<Vec<_>>(),
        "complement_signature": js::signature(&dec.complement_signature),
        "cone_witness": js::rat_vec(&dec.witness),
        "relevant": dec.relevant,
        "chambers": dec.chambers.len(),
        "cells": cells,
        "seed": co.seed,
    })))
}

fn cmd_strata_poset(doc: Doc<'_>, opts: &Options) -> Result<Outcome> {
    let space = space_arg(doc)?;
    let arr = arrangement_arg(doc, space.clone())?;
    let isotropics = isotropics_arg(doc, "isotropics", &space)?;
    let view = doc
        .opt("view", |v| {
            let s = v.str()?;
            PosetView::parse(s).ok_or_else(|| Error::schema(v.path(), format!("unknown view {s:?}")))
        })?
        .unwrap_or_default();
    let co = cone_options(doc, opts, space.dim())?;
    let poset = strata_poset(&arr, &isotropics, view, &co)?;
    let nodes: Vec<Value> = poset
        .nodes
        .iter()
        .enumerate()
        .map(|(i, n)| {
            let mut v = json!({
                "index": i,
                "kind": n.kind.tag(),
                "label": n.label,
                "K": js::subspace(&n.k),
            });
            match &n.kind {
                StratumKind::K1 { index } => v["k1_index"] = json!(index),
                StratumKind::K2 { plane } => v["isotropic"] = json!(plane),
                StratumKind::Sigma { line, cells } => {
                    v["isotropic"] = json!(line);
                    v["cells"] = json!(cells);
                }
                StratumKind::Interior => {}
            }
            v
        })
        .collect();
    Ok(Outcome::ok(json!({
        "view": poset.view.name(),
        "nodes": nodes,
        "covers": poset.covers,
        "counts": {
            "Interior": poset.count("Interior"),
            "K1": poset.count("K1"),
            "K2": poset.count("K2"),
            "Sigma": poset.count("Sigma"),
        },
        "dot": poset.to_dot(),
    })))
}

fn cmd_codim2_check(doc: Doc<'_>, opts: &Options) -> Result<Outcome> {
    let space = space_arg(doc)?;
    let arr = arrangement_arg(doc, space.clone())?;
    let lines = isotropics_arg(doc, "lines", &space)?;
    let co = cone_options(doc, opts, space.dim())?;
    let r = codim2_criterion(&arr, &lines, &co)?;
    let inv = invar_hypothesis(&arr)?;
    let mut o = Outcome::check(
        r.passed,
        json!({
            "codim2": {
                "dim": r.dim,
                "dim_ok": r.dim_ok,
                "failing_planes": r.failing_planes.iter().map(witness_json).collect::<Vec<_>>(),
                "negative_semidefinite": r.negative_semidefinite.iter().map(witness_json).collect::<Vec<_>>(),
                "one_dimensional_cells": r.one_dimensional_cells.iter().map(|(i, s)| json!({"line": i, "sign": s})).collect::<Vec<_>>(),
                "passed": r.passed,
            },
            "invar": {
                "planes": inv.planes.iter().map(|p| json!({
                    "subspace": js::subspace(&p.subspace),
                    "signature": js::signature(&p.signature),
                    "isotropic": p.isotropic,
                    "positive_witness": p.positive_witness.as_ref().map(|w| js::rat_vec(w)),
                    "passed": p.passed,
                })).collect::<Vec<_>>(),
                "passed": inv.passed,
            },
        }),
    );
    if !r.dim_ok {
        o = o.note(format!("dim H = {} < 5", r.dim));
    }
    if !r.failing_planes.is_empty() {
        o = o.note(format!("{} codimension-2 intersections are not positive definite", r.failing_planes.len()));
    }
    Ok(o)
}

fn cmd_ball_strata(doc: Doc<'_>, _: &Options) -> Result<Outcome> {
    let space = space_arg(doc)?;
    let d = space.dim();
    let rho = doc.field("rho", |r| r.square_matrix(d))?;
    let l = doc.field("l", |x| x.usize())? as u32;
    let eigen = eigenspace_chi(&space, &rho, l)?;
    let members: Vec<Subspace> = doc.opt("members", |m| m.each(|s| s.subspace(d)))?.unwrap_or_default();
    let lines = doc
        .opt("lines", |ls| {
            ls.each(|v| {
                let e = v.each(|x| x.cyclotomic(l))?;
                if e.len() != d {
                    return Err(Error::schema(v.path(), format!("expected {d} entries, got {}", e.len())));
                }
                Ok(e)
            })
        })?
        .unwrap_or_default();
    let b = ball_strata(&space, &eigen, &members, &lines)?;
    let nodes: Vec<Value> = b
        .nodes
        .iter()
        .enumerate()
        .map(|(i, n)| {
            json!({
                "index": i,
                "kind": n.kind.tag(),
                "label": n.label,
                "dim": n.dim(),
                "basis": n.basis.iter().map(|v| js::cyclotomic_vec(v)).collect::<Vec<_>>(),
                "herm_signature": {"p": n.herm_signature.p, "q": n.herm_signature.q, "r": n.herm_signature.r},
                "rational_signature": js::signature(&n.rational_signature),
                "class": n.class.map(|c| c.name()),
            })
        })
        .collect();
    let type3 = b.type3_nodes();
    let o = Outcome::check(
        type3 == 0,
        json!({
            "herm_signature": {"p": eigen.herm_signature.p, "q": eigen.herm_signature.q},
            "members": b.members.len(),
            "nodes": nodes,
            "covers": b.covers,
            "type3_nodes": type3,
        }),
    );
    Ok(if type3 > 0 { o.note("a ball stratum has a one-dimensional rational radical") } else { o })
}

fn cmd_enumerate_isotropic(doc: Doc<'_>, opts: &Options) -> Result<Outcome> {
    let space = space_arg(doc)?;
    let h = match opts.height {
        Some(h) => h,
        None => doc.opt("height", |x| x.usize())?.map_or(1, |h| h as u32),
    };
    let found = enumerate_isotropic(&space, h);
    let lines = found.iter().filter(|j| j.kind == IsotropicKind::Line).count();
    Ok(Outcome::ok(json!({
        "height": h,
        "lines": lines,
        "planes": found.len() - lines,
        "isotropics": found.iter().map(isotropic_json).collect::<Vec<_>>(),
    }))
    .note("bounded-height search; not claimed to be a complete set of orbit representatives"))
}

// ---- geomclass ----

fn cmd_boundary_type(doc: Doc<'_>, _: &Options) -> Result<Outcome> {
    let w = doc.field("weight_of_F", |x| x.i64())?;
    let context = doc.opt("context", |x| x.str().map(str::to_string))?.unwrap_or_default();
    let t = boundary_pair_type(&BoundaryPairDatum { weight_of_f: w, context })?;
    Ok(Outcome::ok(json!({"type": t})))
}

fn cmd_k3_type(doc: Doc<'_>, _: &Options) -> Result<Outcome> {
    let read = |d: Doc<'_>| {
        d.each(|s| {
            let text = s.str()?;
            text.parse::<SingularityLabel>().map_err(|e| Error::schema(s.path(), e.to_string()))
        })
    };
    let sings = if doc.is_object() { doc.field("singularities", read)? } else { read(doc)? };
    let t = k3_degeneration_type(&sings);
    Ok(Outcome::ok(json!({
        "type": t.name(),
        "degeneration_type": t.as_type(),
        "singularities": sings.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
    })))
}

fn cmd_kulikov(doc: Doc<'_>, _: &Options) -> Result<Outcome> {
    fn named<T: std::str::FromStr<Err = Error>>(d: Doc<'_>) -> Result<T> {
        let s = d.str()?;
        s.parse::<T>().map_err(|e| Error::schema(d.path(), e.to_string()))
    }
    let fiber = KulikovFiber {
        components: doc.field("components", |c| c.each(named))?,
        dual_complex: doc.field("dual_complex", named)?,
        double_curves: doc.field("double_curves", named)?,
    };
    Ok(Outcome::ok(json!({"type": kulikov_classify(&fiber)?})))
}

fn cmd_gauss_lattice(_: Doc<'_>, _: &Options) -> Result<Outcome> {
    let r = gauss_lattice_report();
    let passed = r.preserves_form && r.g_squared_is_minus_one && !r.has_even_overlattice;
    let elements: Vec<Value> = r
        .discriminant
        .elements
        .iter()
        .map(|e| json!({"coords": e.coords, "vector": js::rat_vec(&e.vector), "value": js::rat(&e.value), "q_mod2": js::rat(&e.q_mod2)}))
        .collect();
    Ok(Outcome::check(
        passed,
        json!({
            "gram": js::rat_matrix(&r.gram),
            "action": js::rat_matrix(&r.action),
            "signature": js::signature(&r.signature),
            "preserves_form": r.preserves_form,
            "g_squared_is_minus_one": r.g_squared_is_minus_one,
            "self_intersection": js::rat(&r.self_intersection),
            "discriminant": {
                "invariants": r.discriminant.invariants.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "order": r.discriminant.order.to_string(),
                "elements": elements,
                "isotropic": r.discriminant.isotropic,
            },
            "has_even_overlattice": r.has_even_overlattice,
        }),
    ))
}

fn cmd_tube_integral(doc: Doc<'_>, opts: &Options) -> Result<Outcome> {
    let eps = doc.opt("epsilon", |x| x.f64())?.unwrap_or(1.0);
    let points = doc.opt("points", |x| x.usize())?.unwrap_or(128);
    let t = tol(opts, TUBE_TOL);
    let z = tube_integral(eps, points)?;
    let expected = Complex64::new(0.0, 2.0 * PI);
    let err = (z - expected).norm();
    Ok(Outcome::check(
        err <= t,
        json!({
            "epsilon": eps,
            "points": points,
            "value": js::c64(&z),
            "expected": js::c64(&expected),
            "error": err,
            "tol": t,
        }),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_command_has_a_handler() {
        for c in COMMANDS {
            assert!(handler(c).is_some(), "{c}");
        }
        for (op, c) in OPERATION_MAP {
            assert!(COMMANDS.contains(c), "{op} -> {c}");
        }
        let mut ops: Vec<_> = OPERATION_MAP.iter().map(|(o, _)| *o).collect();
        ops.sort();
        ops.dedup();
        assert_eq!(ops.len(), OPERATION_MAP.len());
    }

    #[test]
    fn gauss_signature() {
        let r = run_value("signature", &json!({"dim": 2, "gram": [["-2", "0"], ["0", "-2"]]}), &Options::default());
        assert_eq!(r.payload, json!({"p": 0, "q": 2, "r": 0}));
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn schema_error_names_path() {
        let r = run_value("signature", &json!({"space": {"gram": [[1, "x"], [0, 1]]}}), &Options::default());
        assert_eq!(r.exit_code(), 2);
        assert_eq!(r.payload["error"]["path"], json!("$.space.gram[0][1]"));
    }

    #[test]
    fn unknown_command_is_an_error() {
        assert_eq!(run_value("frobnicate", &json!({}), &Options::default()).exit_code(), 2);
        assert_eq!(main_with_args(["pdt", "frobnicate"]), 2);
    }
}
