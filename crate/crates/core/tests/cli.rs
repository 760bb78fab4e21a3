use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fockwave"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fockwave-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn malformed_scenario_exits_2_without_output() {
    let file = scratch("broken.toml");
    std::fs::write(&file, "name = \"x\"\nchannels = 2\n[[input]]\nphotons = [1, 0]\n").unwrap();
    let out = scratch("broken.csv");
    let status = bin().arg("run").arg(&file).arg("--out").arg(&out).output().unwrap();
    assert_eq!(status.status.code(), Some(2));
    assert!(!out.exists());
    assert!(!status.stderr.is_empty());
}

#[test]
fn unknown_field_and_missing_file_exit_2() {
    let file = scratch("extra.toml");
    std::fs::write(&file, "name = \"x\"\nchannels = 2\nbogus = 3\n").unwrap();
    assert_eq!(bin().arg("run").arg(&file).output().unwrap().status.code(), Some(2));
    assert_eq!(
        bin()
            .args(["run", "/nonexistent/file.toml"])
            .output()
            .unwrap()
            .status
            .code(),
        Some(2)
    );
    assert_eq!(bin().args(["builtin", "nope"]).output().unwrap().status.code(), Some(2));
}

#[test]
fn builtin_hom_writes_csv() {
    let out = scratch("hom.csv");
    let status = bin().args(["builtin", "hom", "--out"]).arg(&out).status().unwrap();
    assert!(status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("dt,label,probability"));
    let first: Vec<&str> = text.lines().filter(|l| l.starts_with("0,")).collect();
    // Perfect bunching at zero delay: no coincidence row.
    assert!(first.iter().all(|l| !l.contains("| 1, 1 >")), "{first:?}");
    assert!(first.iter().any(|l| l.contains("| 2, 0 >")));
}

#[test]
fn printed_scenario_runs_like_the_builtin() {
    let file = scratch("swap.toml");
    let printed = bin().args(["builtin", "swap", "--print-scenario"]).output().unwrap();
    assert!(printed.status.success());
    std::fs::write(&file, &printed.stdout).unwrap();
    let from_file = bin().arg("run").arg(&file).args(["--format", "json"]).output().unwrap();
    let direct = bin()
        .args(["builtin", "swap", "--format", "json", "--core", "direct"])
        .output()
        .unwrap();
    assert!(from_file.status.success() && direct.status.success());
    let a: serde_json::Value = serde_json::from_slice(&from_file.stdout).unwrap();
    let b: serde_json::Value = serde_json::from_slice(&direct.stdout).unwrap();
    let re = |v: &serde_json::Value| v["points"][0]["density"]["re"].clone();
    assert_eq!(re(&a).as_array().unwrap().len(), 2);
    let close = re(&a)
        .as_array()
        .unwrap()
        .iter()
        .flat_map(|r| r.as_array().unwrap().clone())
        .zip(
            re(&b)
                .as_array()
                .unwrap()
                .iter()
                .flat_map(|r| r.as_array().unwrap().clone()),
        )
        .all(|(x, y)| (x.as_f64().unwrap() - y.as_f64().unwrap()).abs() < 1e-10);
    assert!(close);
}
