use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn balanced(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_balanced")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("stdout is not JSON ({e}); stderr: {}", String::from_utf8_lossy(&out.stderr)))
}

fn construct(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name);
    let p = path.to_str().unwrap().to_string();
    let mut full = vec!["construct"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["-o", &p]);
    let out = balanced(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    p
}

#[test]
fn report_on_c7_prime() {
    let dir = tempfile::tempdir().unwrap();
    let f = construct(dir.path(), "c7.json", &["c7prime"]);
    let out = balanced(&["report", &f, "--cap", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["n"], 28);
    assert_eq!(r["ambient_dim"], 7);
    assert_eq!(r["balanced"], true);
    assert_eq!(r["design_strength"], 2);
    assert_eq!(r["symmetry_order"], "384");
    assert_eq!(r["orbit_sizes"], serde_json::json!([4, 24]));
    assert_eq!(r["group_balanced"], false);
    assert_eq!(r["witnesses"].as_array().unwrap().len(), 24);
}

#[test]
fn report_on_paulus_embedding() {
    let dir = tempfile::tempdir().unwrap();
    let f = construct(dir.path(), "p.json", &["srg-embedding", "paulus"]);
    let r = json(&balanced(&["report", &f, "--cap", "4"]));
    assert_eq!(r["n"], 25);
    assert_eq!(r["ambient_dim"], 12);
    assert_eq!(r["balanced"], true);
    assert_eq!(r["symmetry_order"], "1");
    assert_eq!(r["group_balanced"], false);
    assert_eq!(r["theorem1_applies"], true);

    let out = balanced(&["check", "group-balanced", &f]);
    assert_eq!(out.status.code(), Some(1));
    let out = balanced(&["check", "balanced", &f]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let one = dir.path().join("one.json");
    fs::write(&one, r#"{"gram": [["1"]]}"#).unwrap();
    let out = balanced(&["check", "balanced", one.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["balanced"], true);

    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"gram": [["1", "1/2"], ["1/3", "1"]]}"#).unwrap();
    let out = balanced(&["check", "balanced", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());

    fs::write(&bad, "{ not json").unwrap();
    assert_eq!(balanced(&["report", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(balanced(&["report", "/nonexistent/file.json"]).status.code(), Some(2));

    let out = balanced(&["construct", "kissing", "leech"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(balanced(&["lattice", "leech"]).status.code(), Some(3));

    // a vertex pulled off the cube breaks balance
    let p = dir.path().join("tilted.json");
    fs::write(
        &p,
        r#"{"coords": [[0.6,0.0,0.8],[0.57735026918962573,-0.57735026918962573,-0.57735026918962573],
            [-0.57735026918962573,0.57735026918962573,-0.57735026918962573],[-0.57735026918962573,-0.57735026918962573,0.57735026918962573],
            [-0.57735026918962573,-0.57735026918962573,-0.57735026918962573],[-0.57735026918962573,0.57735026918962573,0.57735026918962573],
            [0.57735026918962573,-0.57735026918962573,0.57735026918962573],[0.57735026918962573,0.57735026918962573,-0.57735026918962573]]}"#,
    )
    .unwrap();
    assert_eq!(balanced(&["check", "balanced", p.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn construct_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for (name, args, antipodal_free) in [
        ("mid.json", &["simplex-midpoints", "6"][..], true),
        ("c7.json", &["c7prime"][..], true),
        ("cube.json", &["polytope", "cube"][..], false),
        ("e8.json", &["kissing", "e8"][..], false),
    ] {
        let f = construct(dir.path(), name, args);
        let doc: Value = serde_json::from_str(&fs::read_to_string(&f).unwrap()).unwrap();
        let gram = doc["gram"].as_array().unwrap();
        let n = gram.len();
        assert_eq!(json(&balanced(&["check", "balanced", &f]))["balanced"], true, "{name}");
        assert_eq!(json(&balanced(&["report", &f, "--cap", "3"]))["n"], n);

        // the union re-reads the file and writes it back as its leading block
        let out = balanced(&["construct", "antipodal-union", &f]);
        if !antipodal_free {
            assert_eq!(out.status.code(), Some(2), "{name}");
            continue;
        }
        let u = json(&out);
        let ug = u["gram"].as_array().unwrap();
        assert_eq!(ug.len(), 2 * n);
        for i in 0..n {
            assert_eq!(&ug[i].as_array().unwrap()[..n], gram[i].as_array().unwrap().as_slice(), "{name} row {i}");
        }
    }
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let f = construct(dir.path(), "c7.json", &["c7prime"]);
    for args in [
        vec!["report", f.as_str()],
        vec!["symmetry", f.as_str()],
        vec!["--threads", "4", "check", "group-balanced", f.as_str()],
        vec!["lattice", "d4", "--vectors"],
    ] {
        let a = balanced(&args);
        let b = balanced(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let one = balanced(&["--threads", "1", "report", &f]).stdout;
    let four = balanced(&["--threads", "4", "report", &f]).stdout;
    assert_eq!(one, four);
}

#[test]
fn symmetry_and_lattice_output() {
    let dir = tempfile::tempdir().unwrap();
    let f = construct(dir.path(), "c7.json", &["c7prime"]);
    let s = json(&balanced(&["symmetry", &f, "--stabilizer", "0"]));
    assert_eq!(s["point"], 0);
    assert!(s["order"] == "96" || s["order"] == "16");
    let o = json(&balanced(&["symmetry", &f, "--orbits"]));
    assert_eq!(o["order"], "384");
    assert!(o.get("generators").is_none());
    assert_eq!(balanced(&["symmetry", &f, "--stabilizer", "99"]).status.code(), Some(2));

    let l = json(&balanced(&["lattice", "e8"]));
    assert_eq!((l["norm"].as_i64(), l["count"].as_u64()), (Some(2), Some(240)));
    let l = json(&balanced(&["lattice", "d4", "--norm", "4"]));
    assert_eq!(l["count"], 24);
}

#[test]
fn graph_checks_and_numerics() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("paulus.txt");
    let out = balanced(&["construct", "paulus-graph", "--complement"]);
    fs::write(&g, &out.stdout).unwrap();
    let s = json(&balanced(&["check", "srg", g.to_str().unwrap()]));
    assert_eq!(s["params"]["k"], 12);
    let path = dir.path().join("path.txt");
    fs::write(&path, "0 1 0\n1 0 1\n0 1 0\n").unwrap();
    assert_eq!(balanced(&["check", "srg", path.to_str().unwrap()]).status.code(), Some(1));

    let cube = construct(dir.path(), "cube.json", &["polytope", "cube"]);
    let e = json(&balanced(&["energy", &cube, "-s", "1"]));
    let expected = 12.0 / (4.0f64 / 3.0).sqrt() + 12.0 / (8.0f64 / 3.0).sqrt() + 4.0 / 2.0;
    assert!((e["energy"].as_f64().unwrap() - expected).abs() < 1e-12);
    let f = json(&balanced(&["force", &cube, "-s", "2"]));
    assert!(f["max_tangential_norm"].as_f64().unwrap() < 1e-10);
    assert_eq!(balanced(&["saddle-demo"]).status.code(), Some(0));

    let t = json(&balanced(&["check", "theorem1", &cube, "--cap", "3"]));
    assert_eq!(t["applies"], true);
    let d = json(&balanced(&["check", "design", &cube, "--cap", "5"]));
    assert_eq!(d["strength"], 3);

    let eu = dir.path().join("hex.json");
    fs::write(&eu, r#"{"points": [[0, 0]], "period": [[1, 0], ["1/2", "1/2"]], "cutoff": "2"}"#).unwrap();
    assert_eq!(balanced(&["check", "euclidean", eu.to_str().unwrap()]).status.code(), Some(0));
    fs::write(&eu, r#"{"points": [[0, 0], ["1/3", 0]]}"#).unwrap();
    assert_eq!(balanced(&["check", "euclidean", eu.to_str().unwrap()]).status.code(), Some(1));
}
