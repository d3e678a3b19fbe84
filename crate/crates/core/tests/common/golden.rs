//! Golden JSON cases for the command-line contract.
//!
//! Set `UPDATE_GOLDEN=1` to rewrite the stored files from the current binary.

use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
}

const fn case(name: &'static str, args: &'static [&'static str], exit: i32) -> Case {
    Case { name, args, exit }
}

pub const CASES: &[Case] = &[
    case("classify_simple_shamsuddin", &["classify", "-d", "vars: x,y; x'=1; y'=x*y+1", "--check-witness", "6"], 3),
    case("classify_constant_a", &["classify", "-d", "vars: x,y; x'=1; y'=y+1"], 0),
    case("classify_missing_rule", &["classify", "-d", "vars: x,y; x'=1"], 2),
    case("classify_shared_constant", &["classify", "-d", "vars: x,y1,y2; x'=1; y1'=2*y1+x; y2'=x^2"], 0),
    case(
        "classify_shared_nonconstant",
        &["classify", "-d", "vars: x,y1,y2; x'=1; y1'=x*y1+x; y2'=x^2", "--check-witness", "6"],
        3,
    ),
    case(
        "classify_restriction",
        &["classify", "-d", "vars: x,y1,y2,y3; x'=1; y1'=2*y1; y2'=x*y2+x; y3'=x^2*y3"],
        3,
    ),
    case(
        "classify_triangular_top_constant",
        &["classify", "-d", "vars: x1,x2,x3; x1'=1; x2'=x1*x2+1; x3'=x2+1", "--check-witness", "6", "--max-deg", "x3=2"],
        3,
    ),
    case(
        "classify_triangular_last_coefficient",
        &["classify", "-d", "vars: x1,x2,x3; x1'=1; x2'=x1; x3'=x2*x3+1", "--check-witness", "6"],
        3,
    ),
    case(
        "classify_triangular_degree_gap",
        &["classify", "-d", "vars: x1,x2,x3; x1'=1; x2'=x1^2*x2+1; x3'=x1*x2", "--check-witness", "6"],
        3,
    ),
    case("classify_nilpotent_mz", &["classify", "-d", "vars: x,y1,y2; x'=1; y1'=x; y2'=y1"], 0),
    case("classify_nilpotent_only", &["classify", "-d", "vars: x,y1,y2,y3; x'=1; y1'=x; y2'=y1; y3'=y2*x"], 5),
    case(
        "classify_assumed_simple",
        &["classify", "-d", "vars: x1,x2,x3; x1'=1; x2'=x1*x2+1; x3'=-x1*x3+x2^2", "--assume-simple"],
        4,
    ),
    case("classify_unknown", &["classify", "-d", "vars: x1,x2,x3; x1'=1; x2'=x1*x2+1; x3'=-x1*x3+x2^2"], 5),
    case(
        "classify_extension",
        &["classify", "-d", "vars: x1,x2,x3; x1'=1; x2'=x1^2; x3'=2*x3+x2*x1", "--extensions"],
        0,
    ),
    case("classify_not_normalized", &["classify", "-d", "vars: x,y; x'=2; y'=y"], 2),
    case("simple_single_group", &["simple", "-d", "vars: x,y; x'=1; y'=x*y+1"], 0),
    case("simple_constant_a", &["simple", "-d", "vars: x,y; x'=1; y'=y+1"], 0),
    case("simple_solvable_combination", &["simple", "-d", "vars: x,y1,y2; x'=1; y1'=x*y1+1; y2'=x*y2+x"], 0),
    case("simple_two_groups", &["simple", "-d", "vars: x,y1,y2; x'=1; y1'=x*y1+1; y2'=x^2*y2+1"], 0),
    case("simple_not_shamsuddin", &["simple", "-d", "vars: x,y; x'=1; y'=y^2"], 2),
    case("apply_product", &["apply", "-d", "vars: x,y; x'=1; y'=x*y+1", "-f", "x*y"], 0),
    case("apply_iterated", &["apply", "-d", "vars: x,y1,y2; x'=1; y1'=x; y2'=y1", "-f", "y2", "--times", "3"], 0),
    case("apply_parse_error", &["apply", "-d", "vars: x,y; x'=1; y'=x", "-f", "x +"], 2),
    case(
        "preimage_linear",
        &["preimage", "-d", "vars: x,y; x'=1; y'=2*y+x", "-g", "y", "--max-deg", "x=2", "--max-deg", "y=1"],
        0,
    ),
    case("preimage_simple_witness", &["preimage", "-d", "vars: x,y; x'=1; y'=x*y+1", "-g", "y", "--bound", "6"], 0),
    case(
        "preimage_one",
        &["preimage", "-d", "vars: x,y; x'=1; y'=x*y+1", "-g", "1", "--bound", "0", "--max-deg", "x=1"],
        0,
    ),
    case(
        "kernel_nilpotent",
        &["kernel", "-d", "vars: x,y; x'=1; y'=x", "--max-deg", "x=2", "--max-deg", "y=1"],
        0,
    ),
    case("kernel_simple", &["kernel", "-d", "vars: x,y; x'=1; y'=x*y+1", "--bound", "6"], 0),
    case("kernel_resource_limit", &["kernel", "-d", "vars: x,y; x'=1; y'=x", "--bound", "4000"], 6),
    case("ode_no_solution", &["ode", "-a", "x", "-b", "1"], 0),
    case("ode_constant_a", &["ode", "-a", "2", "-b", "x"], 0),
    case("ode_subspace", &["ode", "-a", "x", "-b", "1", "-b", "x"], 0),
    case("ode_subspace_quadratic", &["ode", "-a", "x^2", "-b", "1", "-b", "x^3"], 0),
    case("resonances_cancelling", &["resonances", "-a", "x", "-a", "-x", "--bound", "3"], 0),
    case("resonances_independent", &["resonances", "-a", "x", "-a", "x^2"], 0),
    case("resonances_three", &["resonances", "-a", "x^2+x", "-a", "-x", "-a", "-x^2", "--bound", "3"], 0),
    case("lnd_chain", &["lnd", "-d", "vars: x,y1,y2; x'=1; y1'=x; y2'=y1"], 0),
    case("lnd_not_nilpotent", &["lnd", "-d", "vars: x,y; x'=1; y'=x*y+1", "--max-steps", "8"], 0),
    case("selfcheck_seeded", &["selfcheck", "--seed", "1", "--cases", "10"], 0),
];

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

pub fn run_json(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_derivlab"))
        .args(args)
        .arg("--json")
        .env_remove("DERIVLAB_SEED")
        .output()
        .expect("spawn derivlab");
    let code = out.status.code().expect("exit code");
    let text = String::from_utf8(out.stdout).expect("utf-8");
    let value = serde_json::from_str(&text).unwrap_or_else(|e| panic!("invalid JSON for {args:?}: {e}\n{text}"));
    (code, value)
}

/// Zeroes every `elapsed_ms` field.
pub fn mask_timing(v: &mut Value) {
    match v {
        Value::Object(m) => {
            for (k, x) in m.iter_mut() {
                if k == "elapsed_ms" {
                    *x = Value::from(0);
                } else {
                    mask_timing(x);
                }
            }
        }
        Value::Array(xs) => xs.iter_mut().for_each(mask_timing),
        _ => {}
    }
}

pub fn schema() -> jsonschema::JSONSchema {
    let text = std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schema/derivlab-1.schema.json"))
        .expect("schema file");
    let value: Value = serde_json::from_str(&text).expect("schema json");
    jsonschema::JSONSchema::compile(&value).expect("valid schema")
}

/// Runs one case; returns a list of problems (empty on success).
pub fn check_case(c: &Case, schema: &jsonschema::JSONSchema) -> Vec<String> {
    let mut problems = Vec::new();
    let (code, mut value) = run_json(c.args);
    if code != c.exit {
        problems.push(format!("exit {code}, expected {}", c.exit));
    }
    if let Err(errors) = schema.validate(&value) {
        for e in errors {
            problems.push(format!("schema: {e} at {}", e.instance_path));
        }
    }
    mask_timing(&mut value);
    let path = golden_dir().join(format!("{}.json", c.name));
    let rendered = serde_json::to_string_pretty(&value).expect("json") + "\n";
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(&path, rendered).expect("write golden");
        return problems;
    }
    match std::fs::read_to_string(&path) {
        Ok(stored) => {
            let stored: Value = serde_json::from_str(&stored).expect("golden json");
            if stored != value {
                problems.push(format!("output differs from {}\n{rendered}", path.display()));
            }
        }
        Err(_) => problems.push(format!("missing golden file {}", path.display())),
    }
    problems
}
