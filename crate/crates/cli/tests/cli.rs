use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/fixtures")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wirtgraph"))
        .args(args)
        .env_remove("WIRTGRAPH_THREADS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn results(out: &Output) -> Vec<Value> {
    json(out)["results"].as_array().unwrap().clone()
}

#[test]
fn wirt_fixtures() {
    for (name, omega) in [("fig5.sg", 3), ("trivial_theta.sg", 1), ("trefoil.lk", 2)] {
        let path = fixture(name);
        let out = run(&["wirt", "--format", "json", path.to_str().unwrap()]);
        assert!(out.status.success(), "{name}");
        let doc = json(&out);
        assert_eq!(doc["schema_version"], 1);
        assert_eq!(doc["results"][0]["omega"], omega, "{name}");
    }
}

#[test]
fn json_is_default_on_pipes() {
    let out = run(&["wirt", fixture("fig5.sg").to_str().unwrap()]);
    let r = &results(&out)[0];
    assert_eq!(r["witness"][2]["passages"], serde_json::json!([-8, 9, -7]));
    assert_eq!(r["tau2"], 4);
    assert_eq!(r["euler"]["degree_sum"], 8);
}

#[test]
fn invalid_code_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.lk");
    std::fs::write(&bad, "[[1,2,-1]]\n").unwrap();
    let out = run(&["wirt", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(results(&out)[0]["issues"][0]["code"], "unpaired-crossing");
}

#[test]
fn lenient_keeps_one_row_per_input() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("mixed.lk");
    std::fs::write(&f, "[[1,-2,3,-1,2,-3]]\n[[1,1]]\n[[]]\n").unwrap();
    let out = run(&["wirt", "--lenient", f.to_str().unwrap()]);
    assert!(out.status.success());
    let rows = results(&out);
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[0]["omega"], 2);
    assert_eq!(rows[1]["exit_code"], 2);
    assert_eq!(rows[2]["omega"], 1);
}

#[test]
fn budget_exits_3() {
    let out = run(&["wirt", "--budget", "5", fixture("fig5.sg").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn bound_sandwich() {
    let out = run(&[
        "bound",
        "--quandle",
        "dihedral:3",
        "--sandwich",
        fixture("trefoil.lk").to_str().unwrap(),
        fixture("unknot.lk").to_str().unwrap(),
    ]);
    let rows = results(&out);
    assert_eq!((rows[0]["count"].as_u64(), rows[0]["bound"].as_u64()), (Some(9), Some(2)));
    assert_eq!(rows[0]["exact"], true);
    assert_eq!(rows[1]["count"], 3);
    let out = run(&[
        "bound",
        "--quandle",
        "alexander:4",
        "--sandwich",
        fixture("fig14_standin.sg").to_str().unwrap(),
    ]);
    let r = &results(&out)[0];
    assert_eq!((r["count"].as_u64(), r["bound"].as_u64(), r["omega"].as_u64()), (Some(16), Some(2), Some(2)));
    assert_eq!(r["sandwich"], "exact bridge index: 2");
}

#[test]
fn quandle_axiom_failure_exits_4() {
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("t.csv");
    std::fs::write(&t, "0,1\n0,1\n").unwrap();
    let out = run(&["quandle-check", t.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    assert_eq!(results(&out)[0]["right_invertible"]["holds"], false);
    let out = run(&["bound", "--quandle", t.to_str().unwrap(), fixture("trefoil.lk").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    let out = run(&["quandle-check", "--quandle", "dihedral:3"]);
    assert!(out.status.success());
    let r = &results(&out)[0];
    assert_eq!((r["n_quandle_order"].as_u64(), r["homogeneous"].as_bool()), (Some(2), Some(true)));
}

#[test]
fn generate_writes_codes_and_index() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("links.lk");
    std::fs::write(&input, "[[1,-2,3,-4],[-1,2,-3,4]]\n[[1,-1],[2,-2]]\n").unwrap();
    let outdir = dir.path().join("out");
    let out = run(&[
        "generate",
        "--min-arc",
        "0",
        "--out",
        outdir.to_str().unwrap(),
        input.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(results(&out).len(), 2);
    let index = std::fs::read_to_string(outdir.join("index.csv")).unwrap();
    assert_eq!(index, "source_line,x,y,output_id\n1,1,3,0\n1,2,4,1\n");
    let code = std::fs::read_to_string(outdir.join("0.sg")).unwrap();
    assert_eq!(code.trim(), "[[a1, -3, a2], [b2, -4, b1], [c1, 3, c2], [d2, 4, d1]]");
    // raising min_arc never adds outputs
    let out = run(&["generate", "--min-arc", "2", input.to_str().unwrap()]);
    assert!(results(&out).is_empty());
}

#[test]
fn threads_do_not_change_results() {
    let path = fixture("fig3_standin.sg");
    let one = run(&["wirt", "--threads", "1", path.to_str().unwrap()]);
    let many = run(&["wirt", "--threads", "4", path.to_str().unwrap()]);
    assert_eq!(one.stdout, many.stdout);
    let env = Command::new(env!("CARGO_BIN_EXE_wirtgraph"))
        .args(["wirt", path.to_str().unwrap()])
        .env("WIRTGRAPH_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(one.stdout, env.stdout);
}

#[test]
fn csv_and_text_formats() {
    let path = fixture("trefoil.lk");
    let out = run(&["wirt", "--format", "csv", path.to_str().unwrap()]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("source,line,strands,omega"));
    assert!(lines.next().unwrap().contains(",3,2,"));
    let out = run(&["wirt", "--format", "text", path.to_str().unwrap()]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("omega: 2"));
}
