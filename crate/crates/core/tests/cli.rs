use std::path::PathBuf;
use std::process::{Command, Output};

fn scenario(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../scenarios").join(name)
}

fn hint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hint")).args(args).output().expect("run hint")
}

fn hint_files(sub: &str, files: &[&str], flags: &[&str]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hint"));
    cmd.arg(sub).args(files.iter().map(|f| scenario(f))).args(flags);
    cmd.output().expect("run hint")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn eval_root_pair() {
    let o = hint_files("eval", &["unit-interval-dim1.json", "root-pair.json"], &[]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "(2, 0)\n");
}

#[test]
fn eval_constant_with_certificate() {
    let o = hint_files("eval", &["unit-interval-dim1.json", "constant-one.json"], &["--json", "--certificate"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["value"], "(2, 1)");
    assert_eq!(doc["verified"], true);
    assert!(doc["certificate"]["m_witnesses"].as_array().is_some_and(|w| !w.is_empty()));
}

#[test]
fn eval_atoms() {
    let o = hint_files("eval", &["two-atoms.json", "two-atoms-fn.json"], &[]);
    assert_eq!(stdout(&o), "(1, 16)\n");
}

#[test]
fn malformed_file_is_a_parse_error() {
    let dir = std::env::temp_dir().join(format!("hint-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"kind\": \"interval\",\n  \"lo\": 0 0}").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_hint"))
        .arg("eval")
        .arg(&bad)
        .arg(scenario("constant-one.json"))
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bad.json:2:"), "{}", stderr(&o));
    let missing = hint(&["eval", "/nonexistent/space.json", "/nonexistent/f.json"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn unsupported_function_exits_3() {
    // a piecewise function on an atom space
    let o = hint_files("eval", &["two-atoms.json", "constant-one.json"], &[]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn laws_runs() {
    let o = hint(&["laws", "--trials", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let o = hint(&["laws", "--trials", "50", "--seed", "9", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["reports"][0]["first_seed"], 9);
}

#[test]
fn defi_commands() {
    let o = hint_files("defi", &[], &[]);
    assert_eq!(o.status.code(), Some(2));
    let run = |kind: &str, file: &str| hint(&["defi", kind, scenario(file).to_str().unwrap()]);
    assert_eq!(stdout(&run("convexity", "convexity-two-points.json")), "(1, 2)\n");
    assert_eq!(stdout(&run("continuity", "continuity-no-jumps.json")), "(0, 0)\n");
    assert_eq!(stdout(&run("continuity", "continuity-dirichlet.json")), "(1, inf)\n");
    let line = stdout(&run("lineness", "lineness-line-and-point.json"));
    assert!(line.starts_with("(0, 1)\nbest candidate: line through (0, 0) and (1, 0)"), "{line}");
    assert_eq!(run("lineness", "convexity-two-points.json").status.code(), Some(2));
}

#[test]
fn demos() {
    for name in ["monotone-failure", "no-approx", "distributivity"] {
        let o = hint(&["demo", name]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stderr(&o));
    }
    let text = stdout(&hint(&["demo", "monotone-failure"]));
    assert_eq!(text.matches("= (2, 0)").count(), 3, "{text}");
    assert!(text.contains("integral = (2, 1)"));
    assert!(stdout(&hint(&["demo", "no-approx"])).contains("witness x = 1/4"));
}
