use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use minkowski_wqed::config::{load_config, Command as RunCommand};

fn configs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn mwqed(args: &[&str], env: &[(&str, &Path)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_mwqed"));
    cmd.args(args).env_remove("MWQED_OUT_DIR");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn shipped_configs_parse() {
    for (name, cmd) in [
        ("fig2", RunCommand::Sweep),
        ("fig3", RunCommand::Disorder),
        ("fig4", RunCommand::Sweep),
        ("fig6", RunCommand::Sweep),
    ] {
        let cfg = load_config(&configs().join(format!("{name}.toml")), &[]).unwrap();
        assert_eq!(cfg.command, cmd, "{name}");
        assert_eq!(cfg.sweep.as_ref().unwrap().points, 1000, "{name}");
    }
}

#[test]
fn sweep_run_writes_csv_and_manifest_and_reruns_from_it() {
    let dir = tempfile::tempdir().unwrap();
    let fig2 = configs().join("fig2.toml");
    let out = mwqed(
        &["--config", s(&fig2), "--out", s(dir.path()), "--override", "sweep.points=50", "--format", "csv"],
        &[],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.path().join("fig2.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 50 * 4);
    assert!(csv.starts_with("sweep_value,mode_rank,re_omega,im_omega\n"));

    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("fig2.json")).unwrap()).unwrap();
    assert!(manifest["tool"].as_str().unwrap().starts_with("mwqed "));
    assert_eq!(manifest["config"]["sweep"]["points"], 50);
    assert_eq!(manifest["config"]["units"], "phase");
    assert!(manifest.get("data").is_none());
    assert!(!manifest["summary"]["resonances"].as_array().unwrap().is_empty());

    let again = tempfile::tempdir().unwrap();
    let out = mwqed(
        &["--config", s(&dir.path().join("fig2.json")), "--out", s(again.path())],
        &[],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(std::fs::read(again.path().join("fig2.csv")).unwrap(), csv.as_bytes());
}

#[test]
fn json_only_format_and_env_output_dir() {
    let dir = tempfile::tempdir().unwrap();
    let fig4 = configs().join("fig4.toml");
    let out = mwqed(
        &["--config", s(&fig4), "--override", "sweep.points=20", "--override", "output.format=\"json\"", "--threads", "2"],
        &[("MWQED_OUT_DIR", dir.path())],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(!dir.path().join("fig4.csv").exists());
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("fig4.json")).unwrap()).unwrap();
    assert_eq!(manifest["data"]["sweep_value"].as_array().unwrap().len(), 20);
    assert_eq!(manifest["summary"]["profiles"].as_array().unwrap().len(), 4);
}

#[test]
fn config_errors_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(configs().join("fig2.toml"))
        .unwrap()
        .replace("units = \"phase\"", "");
    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, text).unwrap();
    let out = mwqed(&["--config", s(&bad), "--out", s(dir.path())], &[]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("units"));

    let out = mwqed(&["--config", s(&dir.path().join("missing.toml"))], &[]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing.toml"));

    let fig2 = configs().join("fig2.toml");
    let out = mwqed(&["--config", s(&fig2), "--override", "sweep.colour=1"], &[]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("sweep.colour"));
}

#[test]
fn validate_and_spectrum_commands() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("v.toml");
    std::fs::write(
        &cfg,
        r#"command = "validate"
units = "lambda0"

[[seeds]]
kind = "periodic"
count = 5
spacing = 0.2

[[seeds]]
kind = "explicit"
positions = [0.0, 0.65]
"#,
    )
    .unwrap();
    let out = mwqed(&["--config", s(&cfg), "--out", s(dir.path())], &[]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let m: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("validate.json")).unwrap()).unwrap();
    let r = &m["summary"]["residuals"];
    for key in ["reassembly", "eigenbasis", "congruence"] {
        assert!(r[key].as_f64().unwrap() <= 1e-10, "{key}: {r}");
    }

    let out = mwqed(
        &["--config", s(&cfg), "--out", s(dir.path()), "--override", "command=\"spectrum\""],
        &[],
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.path().join("spectrum.csv")).unwrap();
    assert_eq!(csv.lines().count(), 11);
}
