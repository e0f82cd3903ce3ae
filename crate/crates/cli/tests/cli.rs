use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn mpg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mpg"))
        .args(args)
        .env_remove("MPG_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = mpg(&all);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn check_schema(name: &str, v: &Value) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join(format!("schemas/{name}.schema.json"));
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let errors: Vec<String> = validator.iter_errors(v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{name}: {errors:?}");
}

/// Leaves of a JSON value as `path=value` strings, written independently
/// of the binary's renderer.
fn leaves(prefix: String, v: &Value, out: &mut Vec<String>) {
    let word = |x: &Value| match x {
        Value::Null => Some("-".to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Bool(_) | Value::Number(_) => Some(x.to_string()),
        _ => None,
    };
    if let Some(w) = word(v) {
        out.push(format!("{prefix}={w}"));
    } else if let Value::Array(a) = v {
        match a.iter().map(word).collect::<Option<Vec<_>>>() {
            Some(ws) => out.push(format!("{prefix}={}", ws.join(" "))),
            None => {
                for (i, x) in a.iter().enumerate() {
                    leaves(format!("{prefix}[{i}]"), x, out);
                }
            }
        }
    } else if let Value::Object(m) = v {
        for (k, x) in m {
            let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
            leaves(p, x, out);
        }
    }
}

fn text_matches_json(args: &[&str]) {
    let v = json(args);
    let o = mpg(args);
    assert_eq!(o.status.code(), Some(0));
    let mut want = Vec::new();
    leaves(String::new(), &v, &mut want);
    let mut got: Vec<String> = stdout(&o).lines().map(String::from).collect();
    want.sort();
    got.sort();
    assert_eq!(got, want, "{args:?}");
}

#[test]
fn validate_k4() {
    let o = mpg(&["validate", data("k4.rot").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "is_mpg=true"));
    let v = json(&["validate", data("k4.rot").to_str().unwrap()]);
    check_schema("validate", &v);
    assert_eq!(v["n"], 4);
}

#[test]
fn icosahedron_has_ten_colorings() {
    let o = mpg(&["colorings", data("icosahedron.rot").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "10\n");
    let v = json(&["colorings", "--all", data("icosahedron.rot").to_str().unwrap()]);
    check_schema("colorings", &v);
    assert_eq!(v["colorings"].as_array().unwrap().len(), 10);
}

#[test]
fn order8_classes_and_ub_cycles() {
    let file = data("order8_ubcmpg.rot");
    let v = json(&["kempe-classes", "--members", file.to_str().unwrap()]);
    check_schema("kempe-classes", &v);
    let sizes: Vec<u64> = v["classes"].as_array().unwrap().iter().map(|c| c["size"].as_u64().unwrap()).collect();
    assert_eq!(sizes, [2, 1]);
    let v = json(&["ubc", file.to_str().unwrap()]);
    check_schema("ubc", &v);
    assert_eq!(v["type"], "tree");
    assert_eq!(v["tree_count"], 1);
    assert_eq!(v["ubc_count"], 2);
}

#[test]
fn b4_is_a_tree_type_module() {
    let v = json(&["base-module", data("b4_module.rot").to_str().unwrap()]);
    check_schema("base-module", &v);
    assert_eq!(v["is_4_base_module"], true);
    assert_eq!(v["module_type"], "tree");
}

#[test]
fn text_and_json_agree() {
    for (cmd, file) in [
        ("validate", "icosahedron.rot"),
        ("kempe-classes", "order8_ubcmpg.rot"),
        ("ubc", "order8_ubcmpg.rot"),
        ("base-module", "b4_module.rot"),
    ] {
        text_matches_json(&[cmd, data(file).to_str().unwrap()]);
    }
    text_matches_json(&["transform", data("icosahedron.rot").to_str().unwrap()]);
    text_matches_json(&["scan", "--max-order", "9"]);
}

#[test]
fn apply_and_contract_back() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("k5.rot");
    let v = json(&[
        "apply",
        "e3wo",
        "1,2,3",
        data("k4.rot").to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    check_schema("apply", &v);
    assert_eq!(v["order_after"], 5);
    let x = v["new_vertices"][0].as_u64().unwrap().to_string();
    let v = json(&["apply", "c3wo", &x, out.to_str().unwrap()]);
    check_schema("apply", &v);
    assert_eq!(v["order_after"], 4);
    assert!(v["rot"].as_str().unwrap().starts_with('4'));
}

#[test]
fn apply_propagates_a_coloring() {
    let dir = tempfile::tempdir().unwrap();
    let col = dir.path().join("k4.col");
    std::fs::write(&col, "1:1\n2:2\n3:3\n4:4\n").unwrap();
    let v = json(&[
        "apply",
        "e2wo",
        "1,2",
        data("k4.rot").to_str().unwrap(),
        "--coloring",
        col.to_str().unwrap(),
    ]);
    check_schema("apply", &v);
    let c = v["coloring"].as_array().unwrap();
    assert_eq!(c.len(), 5);
    assert!(c[4].as_u64().unwrap() >= 3);
}

#[test]
fn bad_inputs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.rot");
    std::fs::write(&bad, "3\n1: 2 3\n2: x\n").unwrap();
    let o = mpg(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));
    let o = mpg(&["apply", "e4wo", "1,2", data("k4.rot").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = mpg(&["transform", data("octahedron.rot").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = mpg(&["validate", dir.path().join("missing.rot").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = mpg(&["scan", "--max-order", "8", "--min-degree", "3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn transform_trace_replays() {
    let dir = tempfile::tempdir().unwrap();
    let ico = data("icosahedron.rot");
    for force in [false, true] {
        let trace = dir.path().join(format!("t{force}.json"));
        let mut args = vec![
            "transform",
            ico.to_str().unwrap(),
            "--trace",
            trace.to_str().unwrap(),
        ];
        if force {
            args.push("--force-module");
        }
        let v = json(&args);
        check_schema("transform", &v);
        assert_eq!(v["proper"], true);
        let t: Value = serde_json::from_str(&std::fs::read_to_string(&trace).unwrap()).unwrap();
        check_schema("trace", &t);
        let r = json(&["transform", "--replay", trace.to_str().unwrap()]);
        assert_eq!(r["coloring"], v["coloring"]);
        assert_eq!(r["steps"], v["steps"]);
        if force {
            assert_eq!(v["steps"].as_array().unwrap().last().unwrap(), "c4wo");
        }
    }
}

#[test]
fn tampered_trace_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("t.json");
    json(&[
        "transform",
        data("icosahedron.rot").to_str().unwrap(),
        "--force-module",
        "--trace",
        trace.to_str().unwrap(),
    ]);
    let mut t: Value = serde_json::from_str(&std::fs::read_to_string(&trace).unwrap()).unwrap();
    let out = t["output"].as_array_mut().unwrap();
    out[0] = Value::from(if out[0] == 1 { 2 } else { 1 });
    std::fs::write(&trace, t.to_string()).unwrap();
    let o = mpg(&["transform", "--replay", trace.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn generate_writes_numbered_files_and_stats() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("gen");
    let v = json(&["generate", "--max-order", "8", "--out", out.to_str().unwrap()]);
    check_schema("generate", &v);
    assert_eq!(v["total"], 1 + 1 + 2 + 5 + 14);
    let stats: Value = serde_json::from_str(&std::fs::read_to_string(out.join("stats.json")).unwrap()).unwrap();
    check_schema("stats", &stats);
    let files = stats["files"].as_array().unwrap();
    assert_eq!(files.len(), 23);
    for f in files {
        let o = mpg(&["--json", "validate", out.join(f.as_str().unwrap()).to_str().unwrap()]);
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["is_mpg"], true);
    }
    let d5 = out.join("d5");
    let v = json(&["--jobs", "1", "generate", "--max-order", "12", "--min-degree", "5", "--out", d5.to_str().unwrap()]);
    assert_eq!(v["total"], 1);
}

#[test]
fn scan_reports_no_pure_type() {
    let v = json(&["scan", "--max-order", "10"]);
    check_schema("scan", &v);
    assert_eq!(v["pure_total"], 0);
    assert_eq!(v["low_degree_ub_cycles"], 0);
    let tree: u64 = v["orders"].as_array().unwrap().iter().map(|o| o["tree"].as_u64().unwrap()).sum();
    assert_eq!(tree, 2);
}
