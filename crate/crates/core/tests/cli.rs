use std::path::PathBuf;
use std::process::Command;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn run(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_cdim2"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap(),
    )
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("cdim2-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn check_reports_sq_witness() {
    let f = fixture("notsuf.geom");
    let (out, _, code) = run(&["check", f.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("2Ex: holds"));
    assert!(out.contains("Ex(X'\\b) = {a, c}"), "{out}");
    assert!(out.contains("cdim <= 2: no"));
}

#[test]
fn represent_prints_chains_and_table() {
    let f = fixture("un.geom");
    let (out, _, code) = run(&["represent", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "(d c b a ∇ c b d a)");
    assert_eq!(lines[2], "a -1 4");
    assert_eq!(lines.len(), 6);
}

#[test]
fn both_builders_agree() {
    let f = fixture("seven.geom");
    let (a, _, _) = run(&["--builder", "paper", "represent", f.to_str().unwrap()]);
    let (b, _, _) = run(&["--builder", "backtrack", "represent", f.to_str().unwrap()]);
    assert_eq!(a, b);
}

#[test]
fn unique_lists_blocks_and_count() {
    let f = fixture("switch.geom");
    let (out, _, code) = run(&["unique", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("representations: 2"));
    assert_eq!(out.matches("switchable yes").count(), 2);
    assert_eq!(out.lines().filter(|l| l.starts_with('(')).count(), 2);
}

#[test]
fn closure_command() {
    let f = fixture("un.geom");
    let (out, _, code) = run(&["closure", f.to_str().unwrap(), "d"]);
    assert_eq!(code, 0);
    assert_eq!(out, "closure: {b, c, d}\nextreme points: {d}\n");
}

#[test]
fn oracle_agrees_on_fixtures() {
    for name in [
        "notsuf",
        "un",
        "switch",
        "unique",
        "seven",
        "triangle",
        "five_point",
        "chain",
    ] {
        let f = fixture(&format!("{name}.geom"));
        let (out, _, _) = run(&["oracle", f.to_str().unwrap()]);
        assert!(out.trim_end().ends_with("agree"), "{name}: {out}");
    }
}

#[test]
fn parse_error_exits_2() {
    let f = scratch("bad.geom", "elements a\nimp a -> z\n");
    let (out, err, code) = run(&["check", f.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(out.is_empty());
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn guard_exits_3_and_names_flag() {
    let labels: Vec<String> = (0..9).map(|i| format!("e{i}")).collect();
    let f = scratch("nine.geom", &format!("elements {}\n", labels.join(" ")));
    let (_, err, code) = run(&["oracle", f.to_str().unwrap()]);
    assert_eq!(code, 3);
    assert!(err.contains("--max-n"), "{err}");
    let (_, _, code) = run(&["--max-n", "9", "oracle", f.to_str().unwrap()]);
    // agreement, not the decision, sets the oracle's exit code
    assert_eq!(code, 0);
}

#[test]
fn json_is_deterministic() {
    let f = fixture("unique.geom");
    let (a, _, code) = run(&["--json", "represent", f.to_str().unwrap()]);
    let (b, _, _) = run(&["--json", "represent", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["command"], "represent");
    assert_eq!(v["exit_code"], 0);
    assert_eq!(v["input_sha256"].as_str().unwrap().len(), 64);
    assert!(v.get("elapsed_ms").is_none());
}

#[test]
fn svg_render() {
    let f = fixture("un.geom");
    let (out, _, code) = run(&["render", "--format", "svg", f.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.starts_with("<?xml"));
    assert!(out.trim_end().ends_with("</svg>"));
    assert_eq!(out.matches("stroke-width=\"3\"").count(), 4);
}
