use proptest::prelude::*;
use schurcover_cli::{parse_group_spec, GroupSpec};
use schurcover_core::MetacyclicDesc;
use serde_json::Value;
use std::path::PathBuf;
use std::process::Command;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn data(name: &str) -> String {
    format!("table:@{}", PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display())
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", self.stdout))
    }
}

fn schurcover(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_schurcover")).args(args).output().expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn validator(name: &str) -> jsonschema::Validator {
    let text = std::fs::read_to_string(root().join("schemas").join(name)).expect("schema file");
    let schema: Value = serde_json::from_str(&text).expect("schema is JSON");
    jsonschema::validator_for(&schema).expect("schema compiles")
}

fn assert_valid(v: &Value) {
    let name = if v.get("error").is_some() { "error.schema.json" } else { "command-result.schema.json" };
    let errors: Vec<String> = validator(name).iter_errors(v).map(|e| format!("{} at {}", e, e.instance_path())).collect();
    assert!(errors.is_empty(), "{name}: {errors:#?}\n{v:#}");
}

#[test]
fn multiplier_of_g_8_0_3() {
    let r = schurcover(&["multiplier", "mc:8,0,3"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v = r.json();
    assert_eq!(v["result"]["invariant_factors"], serde_json::json!([2]));
    assert_eq!(v["seed"], 20240417);
    assert_valid(&v);
}

#[test]
fn semantic_error_names_the_rule() {
    let r = schurcover(&["multiplier", "mc:8,0,2"]);
    assert_eq!(r.code, 2);
    let v = r.json();
    assert_eq!(v["error"]["rule"], "gcd(r,m)=1");
    assert!(!r.stderr.is_empty());
    assert_valid(&v);
}

#[test]
fn syntax_error_reports_the_offset() {
    let r = schurcover(&["h2", "fab:[2,x]"]);
    assert_eq!(r.code, 2);
    let v = r.json();
    assert_eq!(v["error"]["offset"], 7);
    assert_valid(&v);
}

#[test]
fn non_associative_table_is_rejected() {
    let r = schurcover(&["h2", &data("bad.json")]);
    assert_eq!(r.code, 2, "{}", r.stdout);
    let v = r.json();
    assert_eq!(v["error"]["kind"], "invalid-input");
    assert_valid(&v);
}

#[test]
fn table_file_is_read() {
    let r = schurcover(&["h2", &data("klein.json"), "--method", "both"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v = r.json();
    assert_eq!(v["result"]["invariant_factors"], serde_json::json!([2]));
    assert_valid(&v);
}

#[test]
fn caps_exit_with_3() {
    let r = schurcover(&["h2", "fab:[2,2,2,2,2]"]);
    assert_eq!(r.code, 3);
    assert_valid(&r.json());
    let r = schurcover(&["--max-order", "3", "h2", "fab:[2,2]"]);
    assert_eq!(r.code, 3);
    assert_eq!(r.json()["error"]["kind"], "cap-exceeded");
}

#[test]
fn failed_check_exits_with_1_and_a_witness() {
    let r = schurcover(&["shift-demo", "--phi", "1,0,0,1"]);
    assert_eq!(r.code, 1);
    let v = r.json();
    let failed: Vec<&Value> = v["checks"].as_array().unwrap().iter().filter(|c| c["passed"] == false).collect();
    assert_eq!(failed.len(), 1);
    assert!(failed[0]["witness"].is_string());
    assert_valid(&v);
}

#[test]
fn usage_errors_and_help() {
    assert_eq!(schurcover(&["bogus"]).code, 2);
    assert_eq!(schurcover(&["alpha-finite"]).code, 2);
    let help = schurcover(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("multiplier"));
}

#[test]
fn identical_invocations_give_identical_bytes() {
    for args in [
        &["induce", "fab:[2,2]", "--class", "1", "--subgroup", "0,1", "--dense"][..],
        &["cocycle", "mc:12,0,7", "--lambda", "5", "--witness"][..],
        &["--seed", "7", "irr", "mc:4,2,3"][..],
    ] {
        let a = schurcover(args);
        let b = schurcover(args);
        assert_eq!(a.code, 0, "{args:?}: {}", a.stderr);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    assert_eq!(schurcover(&["--seed", "7", "irr", "mc:4,2,3"]).json()["seed"], 7);
}

#[test]
fn timing_is_opt_in() {
    assert!(schurcover(&["multiplier", "fab:[2,4]"]).json().get("wall_time_ms").is_none());
    let v = schurcover(&["--timing", "multiplier", "fab:[2,4]"]).json();
    assert!(v["wall_time_ms"].as_f64().unwrap() >= 0.0);
    assert_valid(&v);
}

#[test]
fn table_format_lists_checks() {
    let r = schurcover(&["--format", "table", "repgroup", "fab:[2,2]", "--verify"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.lines().any(|l| l.starts_with("PASS")), "{}", r.stdout);
    assert!(serde_json::from_str::<Value>(&r.stdout).is_err());
}

#[test]
fn every_subcommand_matches_the_schema() {
    let cases: &[&[&str]] = &[
        &["multiplier", "fab:[2,4]"],
        &["multiplier", "mc:4,2,3"],
        &["h2", "fab:[2,2]", "--xi"],
        &["h2", "mc:4,2,3", "--method", "bruteforce"],
        &["repgroup", "fab:[2,2]", "--verify", "--table"],
        &["repgroup", "mc:8,0,3", "--verify"],
        &["cocycle", "fab:[2,2]", "--class", "1"],
        &["cocycle", "fab:[2,2]", "--class", "0", "--witness"],
        &["cocycle", "mc:8,0,3", "--lambda", "1", "--witness"],
        &["cocycle", "heis:[1];4", "--lambda", "1", "--mu", "2"],
        &["irr", "fab:[2,2]"],
        &["irr", "fab:[2,2]", "--class", "1"],
        &["induce", "fab:[2,2]", "--class", "1", "--subgroup", "0,1", "--dense"],
        &["lift", "fab:[2,2]", "--class", "1", "--subgroup", "0,1"],
        &["lift", "mc:4,2,3", "--class", "1", "--subgroup", "0"],
        &["alpha-finite", "--metacyclic", "5,0,2"],
        &["alpha-finite", "--metacyclic", "0,5,2"],
        &["alpha-finite", "--heisenberg", "4", "--lambda", "1"],
        &["alpha-finite", "--shift-demo"],
        &["shift-demo"],
        &["shift-demo", "--phi", "0,1,-1,0"],
        &["selftest", "--up-to", "4"],
    ];
    for args in cases {
        let r = schurcover(args);
        assert!(r.code <= 1, "{args:?} exited with {}: {}", r.code, r.stdout);
        let v = r.json();
        assert_eq!(v["command"], args[0]);
        assert_valid(&v);
    }
}

#[test]
fn g_0_5_2_is_not_alpha_finite() {
    let v = schurcover(&["alpha-finite", "--metacyclic", "0,5,2"]).json();
    assert_eq!(v["result"]["verdict"], "not-alpha-finite");
    let v = schurcover(&["alpha-finite", "--metacyclic", "5,0,2"]).json();
    assert_eq!(v["result"]["equivalence_flag"], false);
    assert_eq!(v["result"]["index"], 4);
}

#[test]
fn selftest_passes() {
    let r = schurcover(&["selftest"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    let v = r.json();
    assert_eq!(v["result"]["failed"], 0);
    assert_valid(&v);
}

fn chain() -> impl Strategy<Value = Vec<u64>> {
    (1u64..4, prop::collection::vec(1u64..4, 0..3)).prop_map(|(d0, steps)| {
        let mut d = vec![d0];
        for s in steps {
            d.push(d.last().unwrap() * s);
        }
        d
    })
}

proptest! {
    #[test]
    fn finab_specs_round_trip(f in prop::collection::vec(0u64..60, 0..5)) {
        let s = GroupSpec::FinAb(f);
        prop_assert_eq!(parse_group_spec(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn heisenberg_specs_round_trip(d in chain(), modulus in 0u64..12) {
        let s = GroupSpec::Heisenberg { d, modulus };
        prop_assert_eq!(parse_group_spec(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn metacyclic_specs_follow_the_core_rules(m in 0u64..40, n in 0u64..12, r in 1u64..40) {
        let text = format!("mc:{m},{n},{r}");
        let core_ok = MetacyclicDesc::new(m, n, r).is_ok() && (m + n > 0 || r == 1);
        match parse_group_spec(&text) {
            Ok(s) => {
                prop_assert!(core_ok, "{} accepted", text);
                prop_assert_eq!(s.to_string(), text);
            }
            Err(_) => prop_assert!(!core_ok, "{} rejected", text),
        }
    }

    #[test]
    fn garbage_never_panics(s in "\\PC{0,20}") {
        let _ = parse_group_spec(&s);
    }
}
