use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn prodmatch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prodmatch"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn scratch_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("prodmatch-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn product_json_uses_label_pairs() {
    let out = prodmatch(&["product", "--kind", "cartesian", "--left", "K2", "--right", "K2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["order"], 4);
    assert_eq!(v["size"], 4);
    assert_eq!(v["vertices"][1], serde_json::json!([0, 1]));
}

#[test]
fn product_dot() {
    let out = prodmatch(&["product", "--kind", "direct", "--left", "K2", "--right", "K3", "--out", "dot"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("graph G {"));
    assert_eq!(text.matches(" -- ").count(), 6);
}

#[test]
fn solve_reports_exact_values() {
    let out = prodmatch(&["solve", "--graph", "cartesian(S3,K3)", "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["m_k"], 6);
    assert_eq!(v["u_k"], 0);
    assert_eq!(v["exhaustive"], true);
    assert_eq!(v["witness"].as_array().unwrap().len(), 6);
}

#[test]
fn solve_enumerates() {
    // P3 has the empty set and its two edges.
    let out = prodmatch(&["solve", "--graph", "P3", "--k", "1", "--enumerate"]);
    assert_eq!(json(&out)["enumeration_count"], 3);
}

#[test]
fn construct_fast_on_direct_k2_k3() {
    let out = prodmatch(&[
        "construct", "--kind", "ast", "--product", "direct", "--left", "K2", "--right", "K3", "--mg", "0 1", "--mh",
        "0 1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["actual_size"], 2);
    assert_eq!(v["predicted_size"], 2);
    assert_eq!(v["valid"], true);
    assert_eq!(v["classification"]["condition"], "divisor_pair");
}

#[test]
fn construct_reads_edge_files() {
    let dir = scratch_dir("edges");
    let mg = dir.join("mg.txt");
    std::fs::write(&mg, "0 1\n").unwrap();
    let out = prodmatch(&[
        "construct", "--kind", "boxast", "--product", "cartesian", "--left", "K2", "--right", "K2", "--mg",
        mg.to_str().unwrap(), "--mh", "[]",
    ]);
    let v = json(&out);
    assert_eq!(v["actual_size"], 2);
    assert_eq!(v["classification"]["condition"], "perfect_primary");
}

#[test]
fn construct_rejects_unsupported_product() {
    let out = prodmatch(&[
        "construct", "--kind", "ast", "--product", "cartesian", "--left", "K2", "--right", "K2", "--mg", "0 1", "--mh",
        "0 1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn wellbehaved_s3_k3() {
    let out = prodmatch(&[
        "wellbehaved", "--flavor", "boxast", "--left", "S3", "--right", "K3", "--star", "cartesian", "--k", "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "false");
    assert_eq!(v["exhaustive"], true);
}

#[test]
fn whp_maximum_is_not_perfect() {
    let out = prodmatch(&[
        "whp", "--product", "cartesian", "--left", "S3", "--right", "K3", "--mg", "0 1", "--mh", "0 1", "--k", "1",
        "--enumerate",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["exhaustive"], true);
    assert!(v["maximum_size"].as_u64().unwrap() < 6);
    assert!(v["enumeration_count"].as_u64().unwrap() >= 1);
}

#[test]
fn bundled_scenarios_pass() {
    let out = prodmatch(&["scenario"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&out);
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["scenario"].as_str().unwrap()).collect();
    assert!(names.contains(&"s3k3-perfect"));
    assert!(names.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn scenario_output_is_stable_across_threads() {
    let one = prodmatch(&["scenario", "--threads", "1"]).stdout;
    let four = prodmatch(&["scenario", "--threads", "4"]).stdout;
    assert_eq!(one, four);
}

#[test]
fn failing_scenario_exits_1() {
    let dir = scratch_dir("scenario");
    let file = dir.join("s.json");
    std::fs::write(
        &file,
        r#"{"name": "wrong", "steps": [{"left": "K2", "right": "K2", "kind": "cartesian", "k": 1,
            "expect": [{"key": "m_product", "value": 3, "provenance": "trivial"}]}]}"#,
    )
    .unwrap();
    let out = prodmatch(&["scenario", "--file", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn unknown_scenario_is_an_input_error() {
    assert_eq!(prodmatch(&["scenario", "nope"]).status.code(), Some(2));
}

#[test]
fn bad_inputs_exit_2() {
    assert_eq!(prodmatch(&["solve", "--graph", "K3", "--k", "0"]).status.code(), Some(2));
    assert_eq!(prodmatch(&["solve", "--graph", "nonsense", "--k", "1"]).status.code(), Some(2));
    assert_eq!(prodmatch(&["wellbehaved", "--flavor", "ast", "--left", "K2", "--right", "K2", "--star", "cartesian", "--k", "1"]).status.code(), Some(2));
}

#[test]
fn empty_corpus_gives_empty_ledger() {
    let dir = scratch_dir("empty");
    let out = prodmatch(&["suite", "--corpus", dir.to_str().unwrap(), "--out", "json"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["criteria"].as_array().unwrap().is_empty());
}

#[test]
fn large_graph_is_unknown_not_failure() {
    let dir = scratch_dir("big");
    let mut text = String::new();
    let mut edges = 0;
    'outer: for a in 0..11 {
        for b in a + 1..11 {
            if edges == 50 {
                break 'outer;
            }
            text.push_str(&format!("{a} {b}\n"));
            edges += 1;
        }
    }
    std::fs::write(dir.join("g50.txt"), text).unwrap();
    let args = ["suite", "--corpus", dir.to_str().unwrap(), "--k", "1,2", "--budget", "2000", "--out", "json"];
    let out = prodmatch(&args);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let criteria = v["criteria"].as_array().unwrap();
    assert!(criteria.iter().all(|c| c["failures"] == 0));
    assert!(criteria.iter().any(|c| c["unknown"].as_u64().unwrap() > 0));

    let mut strict = args.to_vec();
    strict.push("--strict");
    assert_eq!(prodmatch(&strict).status.code(), Some(3));
}

#[test]
fn random_corpus_is_seeded() {
    let args = ["suite", "--random", "3", "--order", "4", "--k", "1", "--seed", "11", "--out", "json", "--no-determinism"];
    let a = prodmatch(&args);
    let b = prodmatch(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["corpus"], "random-seed11");
}
