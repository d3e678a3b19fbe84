//! Command-line front end.
//!
//! Every command prints a short human-readable summary, or with `--json` a
//! single report object following the `derivlab/1` schema. Exit codes:
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success; `classify`: MZ |
//! | 1 | internal error (including a witness contradiction) |
//! | 2 | input error |
//! | 3 | `classify`: NotMZ |
//! | 4 | `classify`: ConditionalNotMZ |
//! | 5 | `classify`: Unknown or NotSimple |
//! | 6 | resource limit |

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::classify::{classify, ClassifyError, ClassifyOptions, Status};
use crate::derivation::{Derivation, NilpotencyProbe};
use crate::membership::{self, DegreeBounds, MembershipError, Outcome, WITNESS_DEFAULT_BOUND};
use crate::ode::{solvable_subspace, solve_ode, OdeError};
use crate::parse::{parse_derivation, parse_poly, ParseError};
use crate::poly::{Polynomial, VarContext};
use crate::resonance::{positive_resonances, ResonanceError, DEFAULT_BOUND};
use crate::selfcheck;
use crate::simplicity::{is_simple_shamsuddin, sufficient_simple_cor23};

pub const SCHEMA_ID: &str = "derivlab/1";
pub const SCHEMA_JSON: &str = include_str!("../schema/derivlab-1.schema.json");

pub mod exit {
    pub const OK: i32 = 0;
    pub const INTERNAL: i32 = 1;
    pub const INPUT: i32 = 2;
    pub const NOT_MZ: i32 = 3;
    pub const CONDITIONAL_NOT_MZ: i32 = 4;
    pub const UNKNOWN: i32 = 5;
    pub const RESOURCE_LIMIT: i32 = 6;
}

#[derive(Debug, Parser)]
#[command(name = "derivlab", version, about = "Exact tools for polynomial derivations over Q")]
pub struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Decide whether Im D is a Mathieu-Zhao space.
    Classify(ClassifyArgs),
    /// Decide simplicity of a Shamsuddin derivation.
    Simple(DerivationArg),
    /// Apply D (repeatedly) to a polynomial.
    Apply(ApplyArgs),
    /// Search for f with D(f) = g inside degree bounds.
    Preimage(PreimageArgs),
    /// Non-constant kernel elements inside degree bounds.
    Kernel(BoundsArgs),
    /// Polynomial solutions of z' = a z + b, or the solvable subspace for several b.
    Ode(OdeArgs),
    /// Non-negative integer relations among coefficients.
    Resonances(ResonanceArgs),
    /// Local nilpotency of D.
    Lnd(LndArgs),
    /// Print the JSON schema of the reports.
    Schema,
    /// Run randomized self-checks.
    Selfcheck(SelfcheckArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Classify(_) => "classify",
            Command::Simple(_) => "simple",
            Command::Apply(_) => "apply",
            Command::Preimage(_) => "preimage",
            Command::Kernel(_) => "kernel",
            Command::Ode(_) => "ode",
            Command::Resonances(_) => "resonances",
            Command::Lnd(_) => "lnd",
            Command::Schema => "schema",
            Command::Selfcheck(_) => "selfcheck",
        }
    }

    fn args_echo(&self) -> Value {
        match serde_json::to_value(self) {
            Ok(Value::Object(mut m)) => m.remove(self.name()).unwrap_or(Value::Null),
            _ => Value::Null,
        }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct DerivationArg {
    /// Derivation, e.g. "vars: x, y; x' = 1; y' = x*y + 1".
    #[arg(short = 'd', long = "derivation")]
    pub derivation: String,
}

#[derive(Debug, Args, Serialize)]
pub struct BoundsArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub d: DerivationArg,
    /// Per-variable maximum exponent, as `name=n`; repeatable.
    #[arg(long = "max-deg", value_parser = parse_max_deg)]
    pub max_deg: Vec<(String, u32)>,
    /// Bound for variables without `--max-deg`.
    #[arg(long, default_value_t = WITNESS_DEFAULT_BOUND)]
    pub bound: u32,
}

#[derive(Debug, Args, Serialize)]
pub struct ClassifyArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub d: DerivationArg,
    /// Treat D as simple where that cannot be decided.
    #[arg(long)]
    pub assume_simple: bool,
    /// Re-check the witness with this uniform degree bound.
    #[arg(long, value_name = "N")]
    pub check_witness: Option<u32>,
    /// Per-variable override of the witness bound, as `name=n`.
    #[arg(long = "max-deg", value_parser = parse_max_deg)]
    pub max_deg: Vec<(String, u32)>,
    /// Allow rules beyond the published statements.
    #[arg(long)]
    pub extensions: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct ApplyArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub d: DerivationArg,
    #[arg(short = 'f', long = "poly", allow_hyphen_values = true)]
    pub f: String,
    /// Number of applications.
    #[arg(long, default_value_t = 1)]
    pub times: u32,
}

#[derive(Debug, Args, Serialize)]
pub struct PreimageArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub bounds: BoundsArgs,
    /// Target polynomial g.
    #[arg(short = 'g', long = "target", allow_hyphen_values = true)]
    pub g: String,
}

#[derive(Debug, Args, Serialize)]
pub struct OdeArgs {
    #[arg(short = 'a', allow_hyphen_values = true)]
    pub a: String,
    /// Right-hand side; repeat to compute the solvable subspace.
    #[arg(short = 'b', allow_hyphen_values = true, required = true)]
    pub b: Vec<String>,
    /// Name of the variable.
    #[arg(long = "var", default_value = "x")]
    pub var: String,
}

#[derive(Debug, Args, Serialize)]
pub struct ResonanceArgs {
    /// Coefficient a_i; repeatable.
    #[arg(short = 'a', allow_hyphen_values = true, required = true)]
    pub a: Vec<String>,
    /// Largest entry of a listed relation.
    #[arg(long, default_value_t = DEFAULT_BOUND)]
    pub bound: u32,
    #[arg(long = "var", default_value = "x")]
    pub var: String,
}

#[derive(Debug, Args, Serialize)]
pub struct LndArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub d: DerivationArg,
    /// Iteration budget for the generator probe.
    #[arg(long, default_value_t = 64)]
    pub max_steps: u32,
}

#[derive(Debug, Args, Serialize)]
pub struct SelfcheckArgs {
    #[arg(long, env = "DERIVLAB_SEED", default_value_t = selfcheck::DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub cases: u32,
}

fn parse_max_deg(s: &str) -> Result<(String, u32), String> {
    let (name, n) = s.split_once('=').ok_or_else(|| format!("expected name=n, got `{s}`"))?;
    let n = n.trim().parse().map_err(|e| format!("bad bound in `{s}`: {e}"))?;
    Ok((name.trim().to_string(), n))
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Resource(String),
    Internal(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Input(_) => exit::INPUT,
            CliError::Resource(_) => exit::RESOURCE_LIMIT,
            CliError::Internal(_) => exit::INTERNAL,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Resource(m) | CliError::Internal(m) => m,
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Input(format!("parse error at {e}"))
    }
}

impl From<MembershipError> for CliError {
    fn from(e: MembershipError) -> Self {
        match e {
            MembershipError::ResourceLimit { .. } => CliError::Resource(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<ClassifyError> for CliError {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::NotNormalized => CliError::Input(e.to_string()),
            ClassifyError::WitnessContradiction { .. } => CliError::Internal(e.to_string()),
            ClassifyError::Membership(m) => m.into(),
        }
    }
}

impl From<OdeError> for CliError {
    fn from(e: OdeError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<ResonanceError> for CliError {
    fn from(e: ResonanceError) -> Self {
        CliError::Input(e.to_string())
    }
}

struct Output {
    derivation: Option<String>,
    result: Value,
    citations: Vec<String>,
    text: String,
    code: i32,
}

impl Output {
    fn new(kind: &str, payload: impl Serialize, text: String) -> Self {
        Output {
            derivation: None,
            result: tagged(kind, payload),
            citations: Vec::new(),
            text,
            code: exit::OK,
        }
    }

    fn with_derivation(mut self, d: &Derivation) -> Self {
        self.derivation = Some(d.to_string());
        self
    }
}

fn tagged(kind: &str, payload: impl Serialize) -> Value {
    let mut obj = serde_json::Map::new();
    obj.insert("kind".into(), Value::String(kind.into()));
    match serde_json::to_value(payload).expect("serializable payload") {
        Value::Object(m) => obj.extend(m),
        Value::Null => {}
        other => {
            obj.insert("value".into(), other);
        }
    }
    Value::Object(obj)
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::INPUT } else { exit::OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    if let Command::Schema = cli.command {
        let _ = writeln!(out, "{}", SCHEMA_JSON.trim_end());
        return exit::OK;
    }
    let start = Instant::now();
    let name = cli.command.name();
    let result = dispatch(&cli.command);
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    let (code, text, report) = match result {
        Ok(o) => {
            let report = json!({
                "schema": SCHEMA_ID,
                "command": name,
                "args": cli.command.args_echo(),
                "derivation": o.derivation,
                "result": o.result,
                "citations": o.citations,
                "timing": { "elapsed_ms": elapsed_ms },
            });
            (o.code, o.text, report)
        }
        Err(e) => {
            let report = json!({
                "schema": SCHEMA_ID,
                "command": name,
                "args": cli.command.args_echo(),
                "derivation": null,
                "result": { "kind": "error", "code": e.code(), "message": e.message() },
                "citations": [],
                "timing": { "elapsed_ms": elapsed_ms },
            });
            if !cli.json {
                let _ = writeln!(err, "error: {}", e.message());
            }
            (e.code(), String::new(), report)
        }
    };
    if cli.json {
        let _ = writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("json"));
    } else {
        let _ = write!(out, "{text}");
    }
    code
}

fn dispatch(cmd: &Command) -> Result<Output, CliError> {
    match cmd {
        Command::Classify(a) => cmd_classify(a),
        Command::Simple(a) => cmd_simple(a),
        Command::Apply(a) => cmd_apply(a),
        Command::Preimage(a) => cmd_preimage(a),
        Command::Kernel(a) => cmd_kernel(a),
        Command::Ode(a) => cmd_ode(a),
        Command::Resonances(a) => cmd_resonances(a),
        Command::Lnd(a) => cmd_lnd(a),
        Command::Selfcheck(a) => cmd_selfcheck(a),
        Command::Schema => unreachable!("handled before dispatch"),
    }
}

fn bounds_for(d: &Derivation, uniform: u32, overrides: &[(String, u32)]) -> Result<DegreeBounds, CliError> {
    let mut b = DegreeBounds::uniform(d.context(), uniform);
    for (name, n) in overrides {
        b.set(name, *n)?;
    }
    Ok(b)
}

fn status_code(s: Status) -> i32 {
    match s {
        Status::Mz => exit::OK,
        Status::NotMz => exit::NOT_MZ,
        Status::ConditionalNotMz => exit::CONDITIONAL_NOT_MZ,
        Status::Unknown | Status::NotSimple => exit::UNKNOWN,
    }
}

fn cmd_classify(a: &ClassifyArgs) -> Result<Output, CliError> {
    let d = parse_derivation(&a.d.derivation)?;
    let check_bounds = match (a.check_witness, a.max_deg.is_empty()) {
        (None, true) => None,
        (n, _) => Some(bounds_for(&d, n.unwrap_or(WITNESS_DEFAULT_BOUND), &a.max_deg)?),
    };
    let opts = ClassifyOptions {
        assume_simple: a.assume_simple,
        check_bounds,
        extensions: a.extensions,
    };
    let v = classify(&d, &opts)?;
    let mut t = String::new();
    let _ = writeln!(t, "derivation: {d}");
    let _ = writeln!(t, "status: {}", v.status.as_str());
    if let Some(r) = v.rule {
        let _ = writeln!(t, "rule: {}", r.tag());
    }
    if let Some(w) = &v.witness {
        let _ = writeln!(t, "witness: {w} (not in Im D)");
    }
    for ann in &v.annotations {
        let _ = writeln!(t, "also: {} by {}", ann.status.as_str(), ann.rule.tag());
    }
    if !v.hypotheses_used.is_empty() {
        let _ = writeln!(t, "hypotheses: {}", v.hypotheses_used.join("; "));
    }
    for n in &v.notes {
        let _ = writeln!(t, "note: {n}");
    }
    if let Some(c) = &v.certificate {
        let _ = writeln!(t, "witness check within {}: {}", c.bounds, outcome_word(&c.outcome));
    }
    if !v.citations.is_empty() {
        let _ = writeln!(t, "citations: {}", v.citations.join(", "));
    }
    let mut o = Output::new("verdict", &v, t).with_derivation(&d);
    o.citations = v.citations.clone();
    o.code = status_code(v.status);
    Ok(o)
}

fn outcome_word(o: &Outcome) -> String {
    match o {
        Outcome::Feasible(f) => format!("feasible, f = {f}"),
        Outcome::InfeasibleWithinBounds => "infeasible within bounds".to_string(),
    }
}

fn cmd_simple(a: &DerivationArg) -> Result<Output, CliError> {
    let d = parse_derivation(&a.derivation)?;
    let form = d
        .as_shamsuddin()
        .ok_or_else(|| CliError::Input("derivation is not of Shamsuddin form".into()))?;
    let v = is_simple_shamsuddin(&form);
    let fast = sufficient_simple_cor23(&form);
    let mut t = String::new();
    let _ = writeln!(t, "derivation: {d}");
    let _ = writeln!(t, "simple: {}", v.simple);
    if let (Some(g), Some(k)) = (v.failing_group, &v.failing_k) {
        let k: Vec<String> = k.iter().map(ToString::to_string).collect();
        let _ = writeln!(t, "failing group: {} (a = {}), k = ({})", g + 1, form.groups()[g].a, k.join(", "));
    } else if let Some(g) = v.failing_group {
        let _ = writeln!(t, "failing group: {} (a = {})", g + 1, form.groups()[g].a);
    }
    let _ = writeln!(t, "degree/independence test: {}", if fast { "holds" } else { "does not hold" });
    let payload = json!({
        "simple": v.simple,
        "failing_group": v.failing_group,
        "failing_k": serde_json::to_value(&v).expect("json")["failing_k"],
        "reason": v.reason,
        "groups": form.groups().len(),
        "sufficient_condition": fast,
    });
    let mut o = Output::new("simplicity", payload, t).with_derivation(&d);
    o.citations = vec![v.reason.citation().to_string()];
    Ok(o)
}

fn cmd_apply(a: &ApplyArgs) -> Result<Output, CliError> {
    let d = parse_derivation(&a.d.derivation)?;
    let f = parse_poly(&a.f, d.context())?;
    let g = d.iterate(&f, a.times).map_err(|e| CliError::Input(e.to_string()))?;
    let power = if a.times == 1 { String::new() } else { format!("^{}", a.times) };
    let t = format!("D{power}({f}) = {g}\n");
    let payload = json!({ "input": f, "times": a.times, "value": g });
    Ok(Output::new("polynomial", payload, t).with_derivation(&d))
}

fn cmd_preimage(a: &PreimageArgs) -> Result<Output, CliError> {
    let d = parse_derivation(&a.bounds.d.derivation)?;
    let g = parse_poly(&a.g, d.context())?;
    let bounds = bounds_for(&d, a.bounds.bound, &a.bounds.max_deg)?;
    let cert = membership::preimage_bounded(&d, &g, &bounds)?;
    let mut t = String::new();
    match &cert.outcome {
        Outcome::Feasible(f) => {
            let _ = writeln!(t, "feasible within {}", cert.bounds);
            let _ = writeln!(t, "f = {f}");
            let _ = writeln!(t, "check: D(f) = {}", d.apply(f).expect("same context"));
        }
        Outcome::InfeasibleWithinBounds => {
            let _ = writeln!(t, "no preimage of {g} within {}", cert.bounds);
            let _ = writeln!(t, "rank {} < augmented rank {}", cert.rank, cert.augmented_rank);
        }
    }
    let _ = writeln!(t, "system: {} equations, {} unknowns", cert.rows, cert.cols);
    Ok(Output::new("certificate", &cert, t).with_derivation(&d))
}

fn cmd_kernel(a: &BoundsArgs) -> Result<Output, CliError> {
    let d = parse_derivation(&a.d.derivation)?;
    let bounds = bounds_for(&d, a.bound, &a.max_deg)?;
    let basis = membership::kernel_bounded(&d, &bounds)?;
    let mut t = String::new();
    if basis.is_empty() {
        let _ = writeln!(t, "no non-constant kernel elements within {bounds}");
    } else {
        let _ = writeln!(t, "kernel within {bounds}, modulo constants:");
        for f in &basis {
            let _ = writeln!(t, "  {f}");
        }
    }
    let payload = json!({ "bounds": bounds, "dimension": basis.len(), "basis": basis });
    Ok(Output::new("kernel", payload, t).with_derivation(&d))
}

fn univariate_context(var: &str) -> Result<VarContext, CliError> {
    VarContext::with_names([var]).map_err(|e| CliError::Input(e.to_string()))
}

fn cmd_ode(a: &OdeArgs) -> Result<Output, CliError> {
    let ctx = univariate_context(&a.var)?;
    let ap = parse_poly(&a.a, &ctx)?;
    let bs: Vec<Polynomial> = a.b.iter().map(|b| parse_poly(b, &ctx)).collect::<Result<_, _>>()?;
    if let [b] = bs.as_slice() {
        let z = solve_ode(&ap, b)?;
        let t = match &z {
            Some(z) => format!("z = {z}\ncheck: z' = ({ap})*z + ({b}) holds\n"),
            None => format!("no polynomial solution of z' = ({ap})*z + ({b})\n"),
        };
        let payload = json!({ "a": ap, "b": b, "solution": z });
        return Ok(Output::new("ode", payload, t));
    }
    let sub = solvable_subspace(&ap, &bs)?;
    let mut t = format!("solvable subspace of k in Q^{}: dimension {}\n", sub.ambient, sub.dimension());
    for v in &sub.basis {
        let v: Vec<String> = v.iter().map(ToString::to_string).collect();
        let _ = writeln!(t, "  ({})", v.join(", "));
    }
    let mut payload = tagged("subspace", &sub);
    payload["a"] = json!(ap);
    payload["bs"] = json!(bs);
    let mut o = Output::new("subspace", Value::Null, t);
    o.result = payload;
    Ok(o)
}

fn cmd_resonances(a: &ResonanceArgs) -> Result<Output, CliError> {
    let ctx = univariate_context(&a.var)?;
    let as_: Vec<Polynomial> = a.a.iter().map(|s| parse_poly(s, &ctx)).collect::<Result<_, _>>()?;
    if a.bound == 0 {
        return Err(CliError::Input("--bound must be positive".into()));
    }
    let r = positive_resonances(&as_, a.bound)?;
    let tuple = |l: &Vec<u64>| format!("({})", l.iter().map(u64::to_string).collect::<Vec<_>>().join(","));
    let mut t = format!("kernel dimension {}\n", r.kernel_dimension);
    if r.relations.is_empty() {
        let _ = writeln!(t, "no relations with entries <= {}", r.bound);
    } else {
        let _ = writeln!(t, "relations: {}", r.relations.iter().map(tuple).collect::<Vec<_>>().join(","));
        let _ = writeln!(t, "primitive: {}", r.primitive.iter().map(tuple).collect::<Vec<_>>().join(","));
    }
    let mut o = Output::new("resonances", &r, t);
    o.result["coefficients"] = json!(as_);
    Ok(o)
}

fn cmd_lnd(a: &LndArgs) -> Result<Output, CliError> {
    let d = parse_derivation(&a.d.derivation)?;
    let tri = d.as_triangular();
    let decided = tri.as_ref().map(|t| t.is_locally_nilpotent());
    let bounds = tri.as_ref().and_then(|t| t.nilpotency_bounds());
    let probe = d.probe_nilpotency(a.max_steps);
    let mut t = String::new();
    let _ = writeln!(t, "derivation: {d}");
    match decided {
        Some(b) => {
            let _ = writeln!(t, "triangular: locally nilpotent = {b}");
        }
        None => {
            let _ = writeln!(t, "not triangular");
        }
    }
    match &probe {
        NilpotencyProbe::Nilpotent { orders } => {
            let names = d.context().names();
            let parts: Vec<String> = names.iter().zip(orders).map(|(n, o)| format!("{n}:{o}")).collect();
            let _ = writeln!(t, "generator orders: {}", parts.join(", "));
        }
        NilpotencyProbe::Inconclusive { steps, pending_var } => {
            let _ = writeln!(
                t,
                "probe inconclusive after {steps} steps at {}",
                d.context().name(*pending_var)
            );
        }
    }
    let payload = json!({
        "triangular": tri.is_some(),
        "locally_nilpotent": decided.or(matches!(probe, NilpotencyProbe::Nilpotent { .. }).then_some(true)),
        "order_bounds": bounds,
        "probe": probe,
    });
    Ok(Output::new("nilpotency", payload, t).with_derivation(&d))
}

fn cmd_selfcheck(a: &SelfcheckArgs) -> Result<Output, CliError> {
    let report = selfcheck::run(a.seed, a.cases);
    let mut t = format!("seed {}\n", report.seed);
    for c in &report.checks {
        let _ = writeln!(
            t,
            "{} {} ({} cases)",
            if c.failures == 0 { "ok  " } else { "FAIL" },
            c.name,
            c.cases
        );
    }
    let passed = report.passed();
    let mut o = Output::new("selfcheck", &report, t);
    if !passed {
        o.code = exit::INTERNAL;
    }
    Ok(o)
}
