use std::path::PathBuf;
use std::process::{Command, Output};

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn mirrorkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mirrorkit")).args(args).current_dir(fixtures()).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn golden(name: &str, args: &[&str]) {
    let want = std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap();
    let out = mirrorkit(args);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(stdout(&out), want, "golden {} differs", name);
}

#[test]
fn golden_reports() {
    golden("parse-f2.json", &["parse", "f2.quiver"]);
    golden("basis-f2.json", &["basis", "f2.quiver"]);
    golden("mirror-f2.json", &["mirror", "f2.quiver"]);
    golden("tor-f2.json", &["tor", "f2.quiver"]);
    golden("reduced-mirror-f2.json", &["reduced-mirror", "f2.quiver"]);
    golden("domdim-f2.json", &["domdim", "f2.quiver"]);
    golden("strat-dim-a2.json", &["strat-dim", "a2.quiver"]);
}

#[test]
fn reruns_are_byte_identical() {
    for args in [
        &["mirror", "example1.quiver", "--idem", "e=4+5"][..],
        &["check-symmetric", "f2.quiver", "--seed", "11"],
        &["tower", "f2.quiver", "--levels", "2", "--cap", "8"],
        &["verify-paper-suite", "f2.quiver"],
    ] {
        let (a, b) = (mirrorkit(args), mirrorkit(args));
        assert_eq!(a.stdout, b.stdout, "{:?}", args);
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn malformed_input_reports_location() {
    let out = mirrorkit(&["parse", "bad.quiver"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("bad.quiver:2:13:"), "{}", stderr(&out));
    assert!(out.stdout.is_empty());
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["parse", "missing.quiver"][..],
        &["mirror", "f2.quiver", "--idem", "nope"],
        &["mirror", "f2.quiver", "--idem", "e=9"],
        &["mirror", "f2.quiver", "--scale", "0"],
        &["mirror-quiver", "f2.quiver", "--v0", "7"],
        &["basis", "f2.quiver", "--field", "F4"],
        &["basis", "f2.quiver", "--json", "--pretty"],
        &["frobnicate", "f2.quiver"],
    ] {
        let out = mirrorkit(args);
        assert_eq!(out.status.code(), Some(2), "{:?}: {}", args, stderr(&out));
        assert!(!stderr(&out).is_empty());
    }
}

#[test]
fn refuted_verdict_exits_1() {
    let out = mirrorkit(&["check-symmetric", "f2.quiver"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["report"]["symmetric"]["state"], "refuted");
    assert_eq!(json(&out)["tally"]["refuted"], 1);
}

#[test]
fn strict_turns_unknown_into_exit_3() {
    let lax = mirrorkit(&["domdim", "dual_numbers.quiver", "--cap", "6"]);
    assert_eq!(lax.status.code(), Some(0));
    assert_eq!(json(&lax)["report"]["dominant_dimension"]["state"], "unknown");
    let strict = mirrorkit(&["domdim", "dual_numbers.quiver", "--cap", "6", "--strict"]);
    assert_eq!(strict.status.code(), Some(3));
    assert_eq!(lax.stdout, strict.stdout);
}

#[test]
fn mirror_of_example() {
    let out = mirrorkit(&["mirror", "example1.quiver", "--idem", "e=4+5"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)["report"];
    assert_eq!(r["simples_R"], 7);
    assert_eq!(r["dim_A"], 24);
    assert_eq!(r["dim_R"], 42);
    assert!(r["properties"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn scaled_level_keeps_dimensions() {
    let out = mirrorkit(&["mirror", "f2.quiver", "--scale", "-3/2"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r = &json(&out)["report"];
    assert_eq!(r["scale"], "-3/2");
    assert_eq!(r["dim_R"], 10);
}

#[test]
fn mirror_quiver_output_reparses() {
    let out = mirrorkit(&["mirror-quiver", "example1.quiver", "--v0", "4,5", "--certify-theta"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out)["report"].clone();
    assert_eq!(r["theta_certified"], true);
    let dir = std::env::temp_dir().join(format!("mirrorkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("delta.quiver");
    std::fs::write(&file, r["quiver"].as_str().unwrap()).unwrap();
    let again = mirrorkit(&["basis", file.to_str().unwrap()]);
    assert_eq!(again.status.code(), Some(0), "{}", stderr(&again));
    assert_eq!(json(&again)["report"]["dimension"], 42);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn tower_reports_k0_findings() {
    let out = mirrorkit(&["tower", "f2.quiver", "--levels", "2", "--cap", "8"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    let levels = v["report"]["levels"].as_array().unwrap();
    assert_eq!(levels.len(), 2);
    assert_eq!(levels[1]["dims"]["A"], 15);
    assert_eq!(levels[1]["simples"]["R"], 7);
    let names: Vec<&str> = levels[1]["findings"].as_array().unwrap().iter().map(|f| f["name"].as_str().unwrap()).collect();
    assert!(names.iter().any(|n| n.starts_with("#(R_n)")), "{:?}", names);
    assert!(names.iter().any(|n| n.starts_with("#(S_n)")), "{:?}", names);
    assert_eq!(v["tally"]["refuted"], 0);
}

#[test]
fn paper_suite_on_fixtures() {
    let f2 = mirrorkit(&["verify-paper-suite", "f2.quiver"]);
    assert_eq!(f2.status.code(), Some(0), "{}", stdout(&f2));
    let r = &json(&f2)["report"];
    assert_eq!(r["R_symmetric"]["state"], "certified");
    assert_eq!(r["S_symmetric"]["state"], "certified");

    let ex = mirrorkit(&["verify-paper-suite", "example1.quiver"]);
    assert_eq!(ex.status.code(), Some(0), "{}", stdout(&ex));
    assert_eq!(json(&ex)["report"]["gendo_symmetric"]["state"], "refuted");
}

#[test]
fn field_override() {
    let out = mirrorkit(&["mirror", "f2.quiver", "--field", "F3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(json(&out)["report"]["dim_R"], 10);
    let p = mirrorkit(&["parse", "f2.quiver", "--field", "F3"]);
    assert_eq!(json(&p)["report"]["field"], "F3");
}

#[test]
fn pretty_output_is_text() {
    let out = mirrorkit(&["basis", "f2.quiver", "--pretty"]);
    assert_eq!(out.status.code(), Some(0));
    let s = stdout(&out);
    assert!(s.contains("dimension: 5"));
    assert!(!s.trim_start().starts_with('{'));
}

#[test]
fn ext_table_of_dual_numbers() {
    let out = mirrorkit(&["ext", "dual_numbers.quiver", "--max", "6"]);
    let v = json(&out);
    let rows = v["report"]["ext"].as_array().unwrap();
    assert_eq!(rows.len(), 7);
    assert!(rows.iter().all(|r| r["dims"][0][0] == 1));
}

#[test]
fn strong_idempotent_verdicts() {
    let f2 = mirrorkit(&["strong-idem", "f2.quiver"]);
    assert_eq!(f2.status.code(), Some(1));
    assert_eq!(json(&f2)["report"]["strong"]["degree"], 2);
    let a2 = mirrorkit(&["strong-idem", "a2.quiver", "--idem", "e2"]);
    assert_eq!(a2.status.code(), Some(0));
    assert_eq!(json(&a2)["report"]["strong"]["state"], "certified");
}

#[test]
fn gendo_check() {
    let out = mirrorkit(&["check-gendo", "f2.quiver"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["report"]["gendo_symmetric"]["value"]["vertices"], serde_json::json!(["1"]));
}
