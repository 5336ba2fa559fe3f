use std::process::{Command, Output};

use serde_json::{json, Value};

fn vahlen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vahlen")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

const TRANSLATE: &str = r#"{"a":[{"indices":[],"coeff":"1"}],"b":[{"indices":[0],"coeff":"2"}],"c":[],"d":[{"indices":[],"coeff":"1"}]}"#;
const WEYL: &str = r#"{"a":[],"b":[{"indices":[],"coeff":"-1"}],"c":[{"indices":[],"coeff":"1"}],"d":[]}"#;

#[test]
fn verify_passes_on_default_space() {
    let o = vahlen(&["verify", "--samples", "30"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
    assert!(String::from_utf8_lossy(&o.stdout).contains("all properties hold"));
}

#[test]
fn injected_fault_fails() {
    let o = vahlen(&["verify", "--samples", "30", "--inject-fault", "--json"]);
    assert_eq!(code(&o), 1);
    let r = stdout_json(&o);
    assert_eq!(r["passed"], json!(false));
    let first = r["properties"].as_array().unwrap().iter().find(|p| p["passed"] == json!(false)).unwrap();
    assert_eq!(first["suite"], json!("algebra"));
    assert!(first["counterexample"].is_object());
}

#[test]
fn json_output_is_deterministic() {
    let args = ["verify", "--field", "F5", "--space", r#"{"qdiag":["1","0"]}"#, "--c", "2", "--seed", "11", "--samples", "25", "--json"];
    let a = vahlen(&args);
    let b = vahlen(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let c = vahlen(&["verify", "--field", "F5", "--space", r#"{"qdiag":["1","0"]}"#, "--c", "2", "--seed", "12", "--samples", "25", "--json"]);
    assert_eq!(stdout_json(&c)["seed"], json!(12));
}

#[test]
fn configuration_errors_exit_2() {
    assert_eq!(code(&vahlen(&["verify", "--space", "{bad"])), 2);
    assert_eq!(code(&vahlen(&["verify", "--space", "/no/such/file"])), 2);
    assert_eq!(code(&vahlen(&["verify", "--field", "F4"])), 2);
    assert_eq!(code(&vahlen(&["verify", "--samples", "0"])), 2);
    assert_eq!(code(&vahlen(&["verify", "--kind", "spinor"])), 2);
    assert_eq!(code(&vahlen(&["verify", "--field", "F3", "--space", r#"{"field":"F5","qdiag":["1"]}"#])), 2);
    // exhaustive enumeration refuses spaces that are too large
    assert_eq!(code(&vahlen(&["enumerate", "--field", "F7", "--space", r#"{"qdiag":["1","1"]}"#])), 2);
}

#[test]
fn space_from_file() {
    let dir = std::env::temp_dir().join(format!("vahlen-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("space.json");
    std::fs::write(&path, r#"{"field":"F3","dim":1,"qdiag":["2"]}"#).unwrap();
    let o = vahlen(&["enumerate", "--space", path.to_str().unwrap(), "--json"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["field"], json!("F3"));
    std::fs::remove_dir_all(dir).ok();
}

#[test]
fn enumerate_reports_consistent_conditions() {
    for kind in ["vector", "paravector"] {
        let o = vahlen(&["enumerate", "--field", "F3", "--space", r#"{"qdiag":["1"]}"#, "--kind", kind]);
        assert_eq!(code(&o), 0);
        assert!(String::from_utf8_lossy(&o.stdout).ends_with("consistent\n"));
    }
}

#[test]
fn act_translates_base_point() {
    let o = vahlen(&["act", "--matrix", TRANSLATE]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o), json!({"kind":"regular","v":["2","0"],"t":"1","c":"1","model":"vector"}));
}

#[test]
fn act_reaches_boundary_and_cross_checks() {
    let point = r#"{"kind":"regular","v":["1","0"],"t":"1","c":"1","model":"vector"}"#;
    let o = vahlen(&["act", "--matrix", WEYL, "--point", point, "--cross-check"]);
    assert_eq!(code(&o), 0);
    let r = stdout_json(&o);
    assert_eq!(r["agree"], json!(true));
    assert_eq!(r["result"], json!({"kind":"boundary","u":["1","0"],"b":"1","c":"1","model":"vector"}));
}

#[test]
fn act_rejects_non_vahlen_matrix() {
    let m = r#"{"a":[{"indices":[0,1],"coeff":"1"}],"b":[],"c":[],"d":[{"indices":[],"coeff":"1"}]}"#;
    let o = vahlen(&["act", "--matrix", m, "--json"]);
    assert_eq!(code(&o), 1);
    let r = stdout_json(&o);
    assert_eq!(r["error"], json!("NotVahlen"));
    assert!(r["clause"].is_string());
    assert!(!o.stderr.is_empty());
}

#[test]
fn act_rejects_point_off_the_half_space() {
    let point = r#"{"kind":"regular","v":["0","0"],"t":"0","c":"1","model":"vector"}"#;
    assert_eq!(code(&vahlen(&["act", "--matrix", TRANSLATE, "--point", point])), 2);
}

#[test]
fn orbit_census_matches_prediction() {
    let o = vahlen(&["orbit", "--field", "F3", "--space", r#"{"qdiag":["1"]}"#, "--json"]);
    assert_eq!(code(&o), 0);
    let r = stdout_json(&o);
    assert_eq!(r["special"]["orbit_count"], json!(1));
    assert_eq!(r["total_points"], json!(12));

    // c = 2 is not a value of the zero form over F5: orbits follow the norm subgroup
    let o = vahlen(&["orbit", "--field", "F5", "--space", r#"{"qdiag":[]}"#, "--c", "2", "--json"]);
    assert_eq!(code(&o), 0);
    let r = stdout_json(&o);
    assert_eq!(r["boundary_points"], json!(0));
    assert_eq!(r["special"]["orbit_count"], r["norm_subgroup_index"]);
}

#[test]
fn mutated_prediction_fails() {
    let o = vahlen(&["orbit", "--field", "F3", "--space", r#"{"qdiag":["1"]}"#, "--mutate-prediction"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stdout).contains("mismatch"));
}

#[test]
fn orbit_needs_a_finite_field() {
    assert_eq!(code(&vahlen(&["orbit", "--space", r#"{"qdiag":["1"]}"#])), 2);
}
