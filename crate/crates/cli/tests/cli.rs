use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn klr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_klr")).args(args).output().expect("run klr")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn check_semisimple_exit_codes() {
    let out = klr(&["check-semisimple", "--ell", "3", "--charge", "2", "--n", "3"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("verdict: semisimple"));

    let out = klr(&["check-semisimple", "--ell", "2", "--charge", "0", "--n", "2", "--json"]);
    assert_eq!(code(&out), 1);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], false);
    assert_eq!(v["ss2"], false);
    assert_eq!(v["witnesses"][0]["component"], 1);

    let out = klr(&["check-semisimple", "--ell", "inf", "--charge", "5", "--n", "3"]);
    assert_eq!(code(&out), 0);

    assert_eq!(code(&klr(&["check-semisimple", "--ell", "x", "--charge", "5", "--n", "3"])), 2);
    assert_eq!(code(&klr(&["check-semisimple", "--ell", "3", "--charge", "1,,2", "--n", "3"])), 2);
}

#[test]
fn negative_charges_parse() {
    let out = klr(&["check-semisimple", "--ell", "3", "--charge", "-2", "--n", "3"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn worked_example_residue_diagram() {
    let out = klr(&["enumerate", "residues", "--ell", "3", "--charge", "1,4", "--shape", "8,3,2|5,3,1"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "12321012 / 012 / 10\n21012 / 321 / 2\n");
}

#[test]
fn enumerate_sequences_and_tableaux() {
    let out = klr(&["enumerate", "sequences", "--ell", "3", "--charge", "2", "--n", "3"]);
    let text = stdout(&out);
    let mut lines: Vec<&str> = text.lines().collect();
    lines.sort();
    assert_eq!(lines, vec!["2,1,0", "2,1,3", "2,3,1", "2,3,2"]);

    let out = klr(&["enumerate", "tableaux", "--shape", "2,1", "--ell", "3", "--charge", "2"]);
    assert_eq!(stdout(&out).lines().count(), 2);
}

#[test]
fn irreducible_verify_export_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let module = dir.path().join("m.json");
    let exported = dir.path().join("e.json");
    let out = klr(&["irreducible", "--ell", "3", "--charge", "2", "--shape", "2,1", "--field", "p5", "--out", module.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let first = fs::read_to_string(&module).unwrap();

    assert_eq!(code(&klr(&["verify", "--module", module.to_str().unwrap()])), 0);
    assert_eq!(code(&klr(&["export", "--module", module.to_str().unwrap(), "--out", exported.to_str().unwrap()])), 0);
    assert_eq!(fs::read_to_string(&exported).unwrap(), first);

    // deterministic output
    let again = klr(&["irreducible", "--ell", "3", "--charge", "2", "--shape", "2,1", "--field", "p5"]);
    assert_eq!(stdout(&again), first);

    assert_eq!(code(&klr(&["irreducible", "--ell", "2", "--charge", "0", "--shape", "1,1"])), 2);
}

#[test]
fn verify_and_export_reject_broken_modules() {
    let dir = tempfile::tempdir().unwrap();
    let module = dir.path().join("m.json");
    let out = klr(&["irreducible", "--ell", "3", "--charge", "2", "--shape", "2,1", "--out", module.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let mut v: Value = serde_json::from_str(&fs::read_to_string(&module).unwrap()).unwrap();
    v["matrices"]["psi2"][0][1] = Value::String("2".into());
    fs::write(&module, v.to_string()).unwrap();

    assert_eq!(code(&klr(&["verify", "--module", module.to_str().unwrap()])), 1);
    let target = dir.path().join("e.json");
    let t = target.to_str().unwrap();
    assert_eq!(code(&klr(&["export", "--module", module.to_str().unwrap(), "--out", t])), 1);
    assert!(!target.exists());
    assert_eq!(code(&klr(&["export", "--module", module.to_str().unwrap(), "--out", t, "--allow-unverified"])), 0);
    assert!(target.exists());

    fs::write(&module, "{").unwrap();
    assert_eq!(code(&klr(&["verify", "--module", module.to_str().unwrap()])), 2);
}

#[test]
fn witnesses_emit_certificates() {
    let cases: [&[&str]; 4] = [
        &["--kind", "boundary", "--ell", "2", "--charge", "0", "--n", "3"],
        &["--kind", "repeat", "--ell", "3", "--charge", "1,1", "--n", "2"],
        &["--kind", "ss2fail", "--ell", "2", "--charge", "1", "--n", "4"],
        &["--kind", "ss1fail", "--ell", "4", "--charge", "1,2", "--n", "2"],
    ];
    for args in cases {
        let mut full = vec!["witness"];
        full.extend_from_slice(args);
        let out = klr(&full);
        assert_eq!(code(&out), 0, "{args:?}");
        let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(v["passed"], true);
        let ob = &v["obstruction"];
        assert!(ob["rank"].as_u64().unwrap() < ob["augmented_rank"].as_u64().unwrap());
        assert_eq!(v["verification"]["violations"], 0);
    }
    let out = klr(&["witness", "--kind", "ss2fail", "--ell", "2", "--charge", "1", "--n", "4"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["shape"], "2,1,1");

    assert_eq!(code(&klr(&["witness", "--kind", "boundary", "--ell", "3", "--charge", "2", "--n", "3"])), 2);
}

#[test]
fn specht_scope_flag() {
    let out = klr(&["specht", "--ell", "2", "--charge", "1", "--shape", "2,1,1"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["dimension"], 3);
    assert_eq!(code(&klr(&["specht", "--ell", "6", "--charge", "3", "--shape", "2,2"])), 2);
    assert_eq!(code(&klr(&["specht", "--ell", "6", "--charge", "3", "--shape", "2,2", "--experimental"])), 0);
}

#[test]
fn sweep_outputs_json_lines() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.jsonl");
    let out = klr(&[
        "--threads",
        "2",
        "sweep",
        "--ells",
        "2,3",
        "--levels",
        "1",
        "--n-min",
        "1",
        "--n-max",
        "5",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&path).unwrap();
    let records: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(records.len(), 35);
    for r in &records {
        assert_eq!(r["passed"], true);
    }
    let repeat = klr(&["sweep", "--ells", "3", "--levels", "2", "--charges", "1,1", "--n-min", "2", "--n-max", "2"]);
    let v: Value = serde_json::from_str(stdout(&repeat).trim()).unwrap();
    assert_eq!(v["certificate"]["route"]["kind"], "repeat");

    let again = klr(&["sweep", "--ells", "2,3", "--levels", "1", "--n-min", "1", "--n-max", "5"]);
    assert_eq!(stdout(&again), text);
}

#[test]
fn empty_sweep() {
    let out = klr(&["sweep", "--ells", ""]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());

    let dir = tempfile::tempdir().unwrap();
    let grid = dir.path().join("g.json");
    fs::write(&grid, r#"{"ells":[],"levels":[1],"n_min":1,"n_max":3,"fields":["q"],"max_standard":10}"#).unwrap();
    let out = klr(&["sweep", "--grid", grid.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
}
