use std::path::PathBuf;
use std::process::{Command, Output};

fn tametop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tametop"))
        .args(args)
        .env_remove("TAMETOP_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name).to_string_lossy().into_owned()
}

#[test]
fn tame1d_ranks() {
    let o = tametop(&["tame1d", "rank", "chain(0,1,1/2,point,closed)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "cb_rank: 2");
    let o = tametop(&["tame1d", "rank", "nested_chain(3)"]);
    assert_eq!(stdout(&o).trim(), "cb_rank: 4");
}

#[test]
fn tame1d_stratify_reports_frontier_condition() {
    let o = tametop(&["tame1d", "stratify", "union(interval(0,1,oo), chain(0,1,1/2,point,closed))"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l.starts_with("S0 ")));
    assert!(out.contains("frontier_condition: PASS"));
}

#[test]
fn tame1d_json_output() {
    let o = tametop(&["tame1d", "frontier", "interval(0,1,oc)", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["expr"], "point(0)");
}

#[test]
fn parse_errors_exit_1_with_position() {
    let o = tametop(&["tame1d", "rank", "union(point(0), pint(1))"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("byte 16"));
}

#[test]
fn rank_refuses_interior() {
    let o = tametop(&["tame1d", "rank", "interval(0,1,oo)"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn unknown_flags_are_rejected() {
    assert_eq!(tametop(&["tame1d", "rank", "empty", "--bogus"]).status.code(), Some(1));
    assert_eq!(tametop(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn ordinal_arithmetic() {
    assert_eq!(stdout(&tametop(&["ordinal", "nsum", "w^2 + 1", "w*3 + 4"])).trim(), "w^2 + w*3 + 5");
    assert_eq!(stdout(&tametop(&["ordinal", "add", "w + 5", "w^2"])).trim(), "w^2");
    assert_eq!(stdout(&tametop(&["ordinal", "mul", "w*2 + 1", "3"])).trim(), "w*6 + 1");
    assert_eq!(stdout(&tametop(&["ordinal", "omega-pow", "2"])).trim(), "w^2");
    assert_eq!(tametop(&["ordinal", "show", "w + w^2"]).status.code(), Some(1));
}

#[test]
fn complex_ranks() {
    assert_eq!(stdout(&tametop(&["complex", "rkp", &data("chain3.json")])).trim(), "rkP = 3");
    assert_eq!(stdout(&tametop(&["complex", "rkp", &data("interval.json")])).trim(), "rkP = 1");
    let o = tametop(&["complex", "inequalities", &data("random7.json"), "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("CHECK rkp_union PASS"));
}

#[test]
fn invalid_complex_exits_1() {
    let dir = std::env::temp_dir().join(format!("tametop-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("loop.json");
    std::fs::write(&path, r#"{"cells":[{"id":"a","dim":0}],"frontier":[["a","a"]]}"#).unwrap();
    let o = tametop(&["complex", "validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("loop.json"));
}

#[test]
fn whitney_expectations() {
    let o = tametop(&["whitney", "--pair", "stacked-lines", "--cond", "b", "--expect", "FAILS"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict: FAILS"));
    let o = tametop(&["whitney", "--pair", "exp-curves", "--cond", "w", "--expect", "FAILS"]);
    assert_eq!(o.status.code(), Some(0));
    let o = tametop(&["whitney", "--pair", "spiral", "--cond", "a", "--expect", "HOLDS"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn whitney_csv_quantities_vanish_on_half_plane() {
    let csv = std::env::temp_dir().join(format!("tametop-hp-{}.csv", std::process::id()));
    let o = tametop(&["whitney", "--pair", "half-plane", "--cond", "a", "--expect", "HOLDS", "--csv-out", csv.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("scale,quantity_max,samples"));
    for l in lines {
        assert_eq!(l.split(',').nth(1), Some("0"), "{l}");
    }
}

#[test]
fn whitney_pair_file_and_single_precision() {
    let o = tametop(&["whitney", "--pair", &data("gallery/stacked-lines.json"), "--cond", "w", "--precision", "f32", "--expect", "HOLDS"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn selftest_filter_runs_ordinal_checks_only() {
    let o = tametop(&["selftest", "--filter", "ordinal"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("PASS ordinal-laws"));
    assert!(!out.contains("whitney-gallery") && !out.contains("data-"));
}

#[test]
fn selftest_checks_data_files() {
    let o = tametop(&["selftest", "--filter", "data", "--data", &data("")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let out = stdout(&o);
    for f in ["chain3.json", "interval.json", "random7.json", "exp-curves", "spiral"] {
        assert!(out.contains(f), "{f} not exercised");
    }
}

#[test]
fn selftest_corrupted_gallery_exits_1_with_path() {
    let dir = std::env::temp_dir().join(format!("tametop-data-{}", std::process::id()));
    std::fs::create_dir_all(dir.join("gallery")).unwrap();
    for f in ["chain3.json", "interval.json", "random7.json"] {
        std::fs::copy(data(f), dir.join(f)).unwrap();
    }
    let bad = dir.join("gallery/spiral.json");
    std::fs::write(&bad, "{\"name\": \"spiral\", \"x\": ").unwrap();
    let o = tametop(&["selftest", "--data", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains(bad.to_str().unwrap()));
}
