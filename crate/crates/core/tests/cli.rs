//! End-to-end runs of the binary against the fixtures.

mod common;

use common::{assessment, fixture};
use contingent::model::{represents, SubjectiveModel};
use serde_json::Value;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_contingent"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path(name: &str) -> String {
    fixture(name).to_string_lossy().into_owned()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = run(&full);
    let v = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

#[test]
fn check_reports_linda_failures() {
    let out = run(&["check", "i", "--assessment", &path("linda.json")]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("I (Implication): FAIL"), "{text}");

    let (code, v) = json(&["check", "--session", &path("linda_session.json")]);
    assert_eq!(code, 1);
    assert_eq!(v["pass"], false);
    let models = v["models"].as_array().unwrap();
    assert_eq!(models.len(), 2);
    assert!(models.iter().all(|m| m["represents"] == true));
    assert_eq!(models[0]["truth"]["monotone"], false);
    assert_eq!(models[1]["lambda"]["monotone"], false);
}

#[test]
fn check_passes_for_an_additive_assessment() {
    let out = run(&["check", "nt", "e", "i", "ie", "a", "--assessment", &path("voting.json")]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn identify_voting_sub_theory() {
    let (code, v) = json(&["identify", "--session", &path("voting_session.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["not_understood"], 0);
    let s = &v["subtheory"];
    assert_eq!(s["unique"], true);
    assert_eq!(s["from_theory"], serde_json::json!([0]));
    assert_eq!(s["models"].as_array().unwrap().len(), 4);
}

#[test]
fn identify_linda_flags_one_pair() {
    let (_, v) = json(&["identify", "--assessment", &path("linda.json")]);
    let bad: Vec<&Value> = v["implications"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|i| i["understood"] == false)
        .collect();
    assert_eq!(bad.len(), 1);
    assert_eq!(bad[0]["antecedent"], "(t & f)");
    assert_eq!(bad[0]["margin"], "-1/4");
}

#[test]
fn certainty_route_refuses_without_ie() {
    let out = run(&["identify", "--via-certainty", "--session", &path("split_certainty_session.json")]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("refused: axiom IE fails"), "{text}");
}

#[test]
fn rationalize_two_state_strategies() {
    let session = path("two_state_session.json");
    let (code, v) = json(&["rationalize", "--session", &session]);
    assert_eq!(code, 0);
    let r = &v["results"][0];
    assert_eq!(r["strategy"], "s3");
    assert_eq!(r["values"]["s3"], "1/3");
    assert_eq!(r["values"]["s1"], "1/4");

    let (code, v) = json(&["rationalize", "--additive-only", "--session", &session]);
    assert_eq!(code, 1);
    assert_eq!(v["all_rationalizable"], false);

    // Choosing by 1-based position.
    let out = run(&["rationalize", "--choice", "1", "--session", &session]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn choquet_with_target() {
    let (code, v) = json(&[
        "choquet",
        "--session",
        &path("layers_session.json"),
        "--target",
        &path("layers_target.json"),
    ]);
    assert_eq!(code, 0);
    let r = &v["results"][0];
    assert_eq!(r["t_circ"], serde_json::json!(["3/1", "4/1", "2/1"]));
    assert_eq!(r["t_bullet"], serde_json::json!(["3/1", "2/1", "2/1"]));
    assert_eq!(r["value"], "7/3");
    assert_eq!(r["equal"], true);
}

#[test]
fn choquet_of_a_payoff_vector() {
    let out = run(&["choquet", "--payoff", "3,4,2", "--model", &path("layers_source.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("7/3"));
}

#[test]
fn mobius_of_a_belief_function() {
    let (code, v) = json(&["mobius", "--model", &path("layers_source.json")]);
    assert_eq!(code, 0);
    let text = v.to_string();
    assert!(text.contains("belief_function"), "{text}");
}

#[test]
fn built_model_round_trips_through_a_file() {
    let dir = std::env::temp_dir().join(format!("contingent-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out_path = dir.join("canonical.json");
    let out = run(&[
        "build",
        "canonical-sound",
        "--assessment",
        &path("voting.json"),
        "-o",
        &out_path.to_string_lossy(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&out_path).unwrap();
    let m = SubjectiveModel::from_json(&text, None).unwrap();
    assert!(represents(&m, &assessment("voting.json")).represents);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn input_errors_exit_with_two() {
    let out = run(&["check", "--assessment", "/no/such/file.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    let out = run(&["rationalize", "--choice", "nobody", "--session", &path("two_state_session.json")]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = ["--format", "json", "check", "--session", &path("split_certainty_session.json")];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let with_seed = run(&[&["--seed", "7"][..], &args[..]].concat());
    assert_eq!(a.stdout, with_seed.stdout);
}
