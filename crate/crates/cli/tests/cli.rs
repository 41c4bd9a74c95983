use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn ckmoves(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ckmoves"))
        .args(args)
        .env_remove("CKMOVES_CONFIG")
        .output()
        .expect("run ckmoves")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn cells(line: &str) -> Vec<String> {
    line.split('\t').map(|c| c.trim().to_string()).collect()
}

#[test]
fn invariants_match_the_oracle_table() {
    let o = ckmoves(&["invariants", data("samples.pd").to_str().unwrap(), "--check"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let got: Vec<Vec<String>> = stdout(&o).lines().map(|l| cells(l)[..5].to_vec()).collect();
    let want: Vec<Vec<String>> = std::fs::read_to_string(data("oracle_table.tsv")).unwrap().lines().map(cells).collect();
    assert_eq!(got, want);
    assert_eq!(got[1], ["unknot", "0", "0", "1*t^0", "1"]);
}

#[test]
fn malformed_line_reports_its_number() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.pd");
    std::fs::write(&p, "# comment\n3_1 PD: X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)\nbroken PD: X(1,2\n").unwrap();
    let o = ckmoves(&["invariants", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains(":3:"), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn generate_from_a_two_leaf_tree() {
    let o = ckmoves(&["move", "gen", "--tree", "TREE: edges=0-1; leaves=0,1; spec=0-1"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    assert!(out.starts_with("TEMPLATE k=1"), "{out}");
    assert!(out.contains("one-branched=true"));
}

#[test]
fn c3_move_on_figure_eight_keeps_v2() {
    let o = ckmoves(&["move", "apply", "--model", "3", "--base", "4_1", "--seed", "5"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("out.pd");
    let pds: String = stdout(&o).lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
    std::fs::write(&p, pds).unwrap();
    let o = ckmoves(&["invariants", p.to_str().unwrap()]);
    let rows: Vec<Vec<String>> = stdout(&o).lines().skip(1).map(cells).collect();
    assert_eq!(rows.len(), 2);
    for r in rows {
        assert_eq!(r[1], "-1", "{r:?}");
    }
}

#[test]
fn invalid_routes_file_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("r.bd");
    std::fs::write(&p, "CHORD k=3 genealogy=1,2 ball=f0\nband 0: attach=99@0L route=\n").unwrap();
    let o = ckmoves(&["move", "apply", "--model", "3", "--base", "4_1", "--routes", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn kappa_of_one_chord_has_two_signed_terms() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("one.bd");
    let o = ckmoves(&["singular", "--base", "3_1", "--type", "1", "--seed", "2"]);
    std::fs::write(&p, stdout(&o)).unwrap();
    let o = ckmoves(&["kappa", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    let signs: Vec<String> = out.lines().skip(1).take_while(|l| !l.is_empty()).map(|l| cells(l)[1].clone()).collect();
    assert_eq!(signs, ["+1", "-1"]);
    assert!(out.contains("evaluations"));
}

#[test]
fn thirteen_chords_hit_the_guard() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("many.bd");
    let o = ckmoves(&["singular", "--base", "unknot", "--type", "1,1,1,1,1,1,1,1,1,1,1,1,1", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).matches("CHORD").count(), 13);
    std::fs::write(&p, stdout(&o)).unwrap();
    let o = ckmoves(&["kappa", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("guard"), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn verify_ck_preserves_and_kappa_vanishing() {
    let o = ckmoves(&["verify", "ck-preserves", "--k", "3", "--trials", "100", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = ckmoves(&["verify", "kappa-vanishing", "--trials", "5", "--seed", "7", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["failures"].as_array().unwrap().is_empty());
}

#[test]
fn verify_output_is_deterministic() {
    let a = ckmoves(&["verify", "lemma38", "--trials", "6", "--seed", "3"]);
    let b = ckmoves(&["verify", "lemma38", "--trials", "6", "--seed", "3"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn replay_of_a_record() {
    let dir = tempfile::tempdir().unwrap();
    let rec = dir.path().join("rec.jsonl");
    // order 2 is too sharp for C_2 moves, so this suite records failures
    let o = ckmoves(&[
        "verify", "ck-preserves", "--k", "2", "--order", "2", "--trials", "4", "--seed", "7", "--records",
        rec.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let line = std::fs::read_to_string(&rec).unwrap().lines().next().unwrap().to_string();
    let good = dir.path().join("good.json");
    std::fs::write(&good, &line).unwrap();
    let o = ckmoves(&["replay", good.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let mut v: serde_json::Value = serde_json::from_str(&line).unwrap();
    let got = v["got"].as_i64().unwrap();
    v["got"] = serde_json::json!(got + 1);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, v.to_string()).unwrap();
    let o = ckmoves(&["replay", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("got"), "{}", stdout(&o));
}

#[test]
fn config_file_and_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{"format": "json"}"#).unwrap();
    let run = |extra: &[&str]| {
        let mut args = vec!["relator", "3_1", "4_1"];
        args.extend_from_slice(extra);
        Command::new(env!("CARGO_BIN_EXE_ckmoves")).args(&args).env("CKMOVES_CONFIG", &cfg).output().unwrap()
    };
    assert!(stdout(&run(&[])).trim_start().starts_with('{'));
    assert!(stdout(&run(&["--format", "tsv"])).starts_with("coeff"));
    std::fs::write(&cfg, r#"{"bogus": 1}"#).unwrap();
    assert_eq!(run(&[]).status.code(), Some(2));
}
