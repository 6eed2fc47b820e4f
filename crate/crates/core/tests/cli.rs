use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn eqtrace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eqtrace")).args(args).env_remove("EQTRACE_CACHE_DIR").output().expect("binary runs")
}

fn uncached(args: &[&str]) -> Output {
    let mut full = vec!["--no-cache"];
    full.extend_from_slice(args);
    eqtrace(&full)
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stderr)))
}

#[test]
fn koszul_check_dual_numbers() {
    let out = uncached(&["koszul", "check", "--algebra", &data("dual_numbers.json")]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["command"], "koszul check");
    assert_eq!(r["result"]["koszul"], true);
    assert_eq!(r["result"]["kos_acyclicity"]["acyclic"], true);
}

#[test]
fn cubic_relation_is_not_koszul() {
    let out = uncached(&["koszul", "check", "--algebra", &data("truncated_cubic.json"), "--depth", "4"]);
    let r = report(&out);
    assert_eq!(r["result"]["koszul"], false);
    assert_eq!(r["result"]["kos_acyclicity"]["acyclic"], false);
}

#[test]
fn malformed_input_names_the_field() {
    let out = uncached(&["koszul", "check", "--algebra", &data("bad_vertex.json")]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("arrows[0].dst"), "{err}");
    assert!(out.stdout.is_empty());

    let out = uncached(&["koszul", "check", "--algebra", &data("missing.json")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cache_hits_return_identical_results() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().display().to_string();
    let first = eqtrace(&["--cache-dir", &cache, "koszul", "check", "--algebra", &data("dual_numbers.json")]);
    // same algebra, different key order and whitespace
    let second = eqtrace(&["--cache-dir", &cache, "koszul", "check", "--algebra", &data("dual_numbers_reordered.json")]);
    let (a, b) = (report(&first), report(&second));
    assert_eq!(a["cached"], false);
    assert_eq!(b["cached"], true);
    assert_eq!(a["result"], b["result"]);
    assert_eq!(serde_json::to_string(&a["result"]).unwrap(), serde_json::to_string(&b["result"]).unwrap());

    let third = eqtrace(&["--cache-dir", &cache, "koszul", "check", "--algebra", &data("dual_numbers.json"), "--depth", "4"]);
    assert_eq!(report(&third)["cached"], false);
    let forced = eqtrace(&["--cache-dir", &cache, "--no-cache", "koszul", "check", "--algebra", &data("dual_numbers.json")]);
    assert_eq!(report(&forced)["cached"], false);
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = uncached(&["--output", path.to_str().unwrap(), "gcoh", "schur", "--group", &data("s4.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(r["result"]["display"], "Z/2");
    assert_eq!(r["result"]["group_order"], 24);
}

#[test]
fn group_cohomology() {
    let r = report(&uncached(&["gcoh", "compute", "--group", &data("z2.json"), "--module", &data("sign_module.json"), "--degree", "1"]));
    assert_eq!(r["result"]["display"], "Z/2");
    let r = report(&uncached(&["gcoh", "compute", "--group", &data("s3.json"), "--module", &data("trivial_z_s3.json"), "--degree", "2"]));
    assert_eq!(r["result"]["display"], "Z/2");
    let r = report(&uncached(&["gcoh", "compute", "--group", &data("s3.json"), "--module", &data("trivial_z_s3.json"), "--degree", "0"]));
    assert_eq!(r["result"]["display"], "Z");
    let out = uncached(&["gcoh", "product", "--a", &data("z2.json"), "--b", &data("z2.json")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["result"]["holds"], true);
}

#[test]
fn twisted_hochschild_of_dual_numbers() {
    let r = report(&uncached(&["hh", "compute", "--algebra", &data("dual_numbers.json"), "--twist", &data("double_x.json"), "--depth", "3"]));
    assert_eq!(r["result"]["dims"], json!({ "0": 1, "-1": 0, "-2": 0, "-3": 0 }));
    for method in ["resolution", "bar"] {
        let r = report(&uncached(&["hh", "compute", "--algebra", &data("dual_numbers.json"), "--depth", "2", "--method", method]));
        assert_eq!(r["result"]["dims"], json!({ "0": 2, "-1": 1, "-2": 1 }), "{method}");
    }
}

#[test]
fn bg_commands() {
    let out = uncached(&["bg", "inertia", "--group", &data("s3.json")]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["result"]["h0"], 2);
    assert_eq!(r["result"]["orbits"], 2);

    let args = ["--algebra", &data("dual_numbers.json"), "--group", &data("z2.json"), "--action", &data("negate_x.json")];
    let mut homotopy = vec!["bg", "homotopy", "--element", "x"];
    homotopy.extend_from_slice(&args);
    let out = uncached(&homotopy);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["result"]["holds"], true);

    let mut trace = vec!["bg", "trace", "--depth", "2"];
    trace.extend_from_slice(&args);
    let r = report(&uncached(&trace));
    assert_eq!(r["result"]["group_order"], 2);
    assert_eq!(r["result"]["fibers"].as_array().unwrap().len(), 2);
}

#[test]
fn root_data_and_gradings() {
    let r = report(&uncached(&["rootdata", "schur", "--datum", &data("datum_gl2.json")]));
    assert_eq!(r["result"]["order"], 1);
    let r = report(&uncached(&["rootdata", "pi1", "--type", "A2", "--X", "root"]));
    assert_eq!(r["result"]["display"], "Z/3");
    let r = report(&uncached(&["rootdata", "poincare", "--type", "A2"]));
    assert_eq!(r["result"]["weyl_order"], "6");
    let r = report(&uncached(&["orbit", "dims", "--type", "A2", "--weights", "2,2"]));
    assert_eq!(r["result"]["orbit"], 6);
    assert_eq!(r["result"]["centralizer"], 2);
}

#[test]
fn bounded_trace_amplitude() {
    let args = ["bg", "trace", "--bounded", "--algebra", &data("a3_path.json"), "--group", &data("trivial_group.json"), "--action", &data("no_generators.json")];
    let out = uncached(&args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert_eq!(r["result"]["within_bound"], true);
    assert_eq!(r["result"]["connective"], true);
    // HH of a path algebra of a tree is k in degree 0, one copy per vertex
    assert_eq!(r["result"]["amplitude"], json!([0, 0]));
    assert_eq!(r["result"]["global"]["0"], 3);
}

#[test]
fn flag_variety_flags() {
    let r = report(&uncached(&["rootdata", "poincare", "--type", "A2", "--P", "1", "--Q", "whole"]));
    assert_eq!(r["result"]["flag"], json!([1, 0, 1, 0, 1]));
    let r = report(&uncached(&["rootdata", "split", "--type", "A2", "--P", "borel", "--q", "cyclotomic:3:1"]));
    assert_eq!(r["result"]["splits"], false);
    let r = report(&uncached(&["rootdata", "split", "--type", "A2", "--q", "1"]));
    assert_eq!(r["result"]["splits"], true);
    assert_eq!(r["result"]["value"]["coefficients"], json!([6]));
    let out = uncached(&["rootdata", "brionpeyre", "--type", "A2"]);
    assert_eq!(out.status.code(), Some(0));
    // A1 x T1 with X spanned by 2ω and ε: M = Z/2
    let r = report(&uncached(&["rootdata", "schur", "--type", "A1xT1", "--X", &data("x_a1_t1.json")]));
    assert_eq!(r["result"]["display"], "Z/2");
}

#[test]
fn acceptance_selector() {
    let out = uncached(&["accept", "--select", "8,9"]);
    let r = report(&out);
    let rows = r["result"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[1]["id"], 9);
    assert_eq!(rows[1]["passed"], true);
    assert_eq!(out.status.code(), Some(if rows[0]["passed"] == true { 0 } else { 1 }));
}

#[test]
fn usage_errors() {
    let out = uncached(&["koszul", "check"]);
    assert_eq!(out.status.code(), Some(2));
    let out = uncached(&["rootdata", "split", "--type", "A1", "--at", "cyclotomic:0:1"]);
    assert_eq!(out.status.code(), Some(2));
}
