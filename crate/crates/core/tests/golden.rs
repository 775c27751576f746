//! Byte-exact comparison of the binary's output against checked-in cases.
//!
//! Each directory under `tests/golden/` holds `cmd` (arguments), an optional
//! `input.json`, `expected.stdout` and, for nonzero exits, `expected.code`.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn run_case(dir: &Path) -> Result<(), String> {
    let args = fs::read_to_string(dir.join("cmd")).unwrap();
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_semistab"));
    cmd.args(args.split_whitespace()).env("NO_COLOR", "1");
    let input = dir.join("input.json");
    if input.exists() {
        cmd.arg("--input").arg(&input);
    }
    let out = cmd.output().unwrap();
    let expected = fs::read(dir.join("expected.stdout")).unwrap();
    let code: i32 = fs::read_to_string(dir.join("expected.code"))
        .map(|s| s.trim().parse().unwrap())
        .unwrap_or(0);
    if out.status.code() != Some(code) {
        return Err(format!("exit {:?}, expected {code}", out.status.code()));
    }
    if out.stdout != expected {
        return Err(format!(
            "stdout differs:\n  got      {}\n  expected {}",
            String::from_utf8_lossy(&out.stdout).trim_end(),
            String::from_utf8_lossy(&expected).trim_end()
        ));
    }
    if code == 2 && !String::from_utf8_lossy(&out.stderr).starts_with("error: ") {
        return Err("missing diagnostic on stderr".into());
    }
    Ok(())
}

#[test]
fn golden_files() {
    let mut dirs: Vec<PathBuf> = fs::read_dir(golden_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.is_dir())
        .collect();
    dirs.sort();
    assert!(dirs.len() >= 40);
    let failures: Vec<String> = dirs
        .iter()
        .filter_map(|d| run_case(d).err().map(|e| format!("{}: {e}", d.display())))
        .collect();
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn output_is_deterministic() {
    let dir = golden_dir().join("form_rank_one_symmetric");
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_semistab"))
            .args(["form-check", "--input"])
            .arg(dir.join("input.json"))
            .output()
            .unwrap()
            .stdout
    };
    assert_eq!(run(), run());
}

#[test]
fn destabilizer_round_trips_into_mu() {
    let dir = golden_dir().join("destabilize_single_weight");
    let tmp = std::env::temp_dir().join(format!("semistab-lambda-{}.json", std::process::id()));
    let out = Command::new(env!("CARGO_BIN_EXE_semistab"))
        .args(["destabilize", "--input"])
        .arg(dir.join("input.json"))
        .output()
        .unwrap();
    fs::write(&tmp, &out.stdout).unwrap();
    let mu = Command::new(env!("CARGO_BIN_EXE_semistab"))
        .args(["mu", "--fail-on-unstable", "--input"])
        .arg(dir.join("input.json"))
        .arg("--lambda-from")
        .arg(&tmp)
        .output()
        .unwrap();
    fs::remove_file(&tmp).ok();
    assert_eq!(String::from_utf8(mu.stdout).unwrap(), "{\"mu\":\"-1\"}\n");
    assert_eq!(mu.status.code(), Some(1));
}

#[test]
fn reads_standard_input() {
    use std::io::Write;
    use std::process::Stdio;
    let input = fs::read(golden_dir().join("mu_symplectic/input.json")).unwrap();
    let mut child = Command::new(env!("CARGO_BIN_EXE_semistab"))
        .arg("mu")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(&input).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.stdout, b"{\"mu\":\"0\"}\n");
}

#[test]
fn pretty_output_parses_to_the_same_value() {
    let dir = golden_dir().join("dualize_rank4");
    let pretty = Command::new(env!("CARGO_BIN_EXE_semistab"))
        .args(["dualize", "--pretty", "--input"])
        .arg(dir.join("input.json"))
        .output()
        .unwrap();
    let a: serde_json::Value = serde_json::from_slice(&pretty.stdout).unwrap();
    let b: serde_json::Value =
        serde_json::from_slice(&fs::read(dir.join("expected.stdout")).unwrap()).unwrap();
    assert_eq!(a, b);
}
