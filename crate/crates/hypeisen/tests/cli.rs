//! Process-level contract tests for the `hypeisen` binary: exit codes
//! (0 success / 1 non-convergence / 2 config error), determinism across
//! thread counts, config validation, output schemas, and the output
//! directory resolution order (--out, then HYPEISEN_OUT, then [output]).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_hypeisen"));
    // Isolate from the ambient environment: only explicit flags and the
    // env vars a test sets itself may influence the run.
    c.env_remove("HYPEISEN_OUT");
    c
}

fn write_config(dir: &Path, body: &str) -> PathBuf {
    let path = dir.join("job.toml");
    fs::write(&path, body).unwrap();
    path
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

/// Fast, convergent eval job: fixed 6-shell truncation on the Schottky
/// torus, 3×2 grid.
const EVAL_JOB: &str = r#"
[group]
preset = "schottky_torus"
params = ["4.0", "4.0"]

[eval]
family = "hyperbolic_omega"
c_gen = 0
s = "1.0"
format = "csv"

[eval.grid]
x0 = "0.05"
y0 = "0.7"
h = "0.1"
nx = 3
ny = 2

[trunc]
fixed = true
max_len = 6
"#;

#[test]
fn eval_is_byte_identical_across_thread_counts() {
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(tmp.path(), EVAL_JOB);
    let mut outputs = Vec::new();
    for threads in ["1", "4"] {
        let out_dir = tmp.path().join(format!("t{threads}"));
        let out = bin()
            .args(["eval", "--config"])
            .arg(&config)
            .arg("--out")
            .arg(&out_dir)
            .args(["--threads", threads])
            .output()
            .unwrap();
        assert!(out.status.success(), "eval --threads {threads} failed: {}", stderr_of(&out));
        outputs.push(fs::read(out_dir.join("eval.csv")).unwrap());
    }
    assert_eq!(outputs[0], outputs[1], "eval.csv differs between --threads 1 and --threads 4");
}

#[test]
fn eval_csv_has_pinned_schema_header_and_row_count() {
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(tmp.path(), EVAL_JOB);
    let out = bin()
        .args(["eval", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(tmp.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr_of(&out));
    let csv = fs::read_to_string(tmp.path().join("eval.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "# hypeisen.grid.v1");
    assert_eq!(lines[1], "x,y,re_f,im_f,re_g,im_g,word_len,tail");
    assert_eq!(lines.len(), 2 + 3 * 2, "one data row per grid node");
}

#[test]
fn eval_json_round_trips_with_schema() {
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(tmp.path(), &EVAL_JOB.replace("format = \"csv\"", "format = \"json\""));
    let out = bin()
        .args(["eval", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(tmp.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr_of(&out));
    let doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(tmp.path().join("eval.json")).unwrap()).unwrap();
    assert_eq!(doc["schema"], "hypeisen.grid.v1");
    assert_eq!(doc["rows"].as_array().unwrap().len(), 6);
}

#[test]
fn group_writes_versioned_report() {
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(tmp.path(), EVAL_JOB);
    let out = bin()
        .args(["group", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(tmp.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr_of(&out));
    let doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(tmp.path().join("group_report.json")).unwrap())
            .unwrap();
    assert_eq!(doc["schema"], "hypeisen.report.v1");
    assert_eq!(doc["rank"], 2);
}

#[test]
fn non_convergent_eval_exits_one() {
    // Parabolic family terms decay polynomially; six shells cannot reach
    // the default 1e-10 absolute goal, so the evaluator must refuse.
    let job = r#"
[group]
preset = "parabolic_pair"
params = ["3"]

[eval]
family = "parabolic_e"
cusp = 0
q = 1
s = "2.0"
format = "csv"

[eval.grid]
x0 = "0.1"
y0 = "0.8"
h = "0.05"
nx = 1
ny = 1

[trunc]
max_len = 6
"#;
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(tmp.path(), job);
    let out = bin()
        .args(["eval", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(tmp.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1), "stderr: {}", stderr_of(&out));
    assert!(stderr_of(&out).contains("did not converge"), "stderr: {}", stderr_of(&out));
    assert!(!tmp.path().join("eval.csv").exists(), "no output on failure");
}

#[test]
fn unknown_config_key_exits_two() {
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(tmp.path(), &format!("{EVAL_JOB}\n[nonsense]\nkey = 1\n"));
    let out = bin()
        .args(["eval", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(tmp.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "stderr: {}", stderr_of(&out));
    assert!(stderr_of(&out).contains("unknown field"), "stderr: {}", stderr_of(&out));
}

#[test]
fn missing_config_file_exits_two() {
    let out = bin()
        .args(["group", "--config", "/definitely/not/a/real/path.toml"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "stderr: {}", stderr_of(&out));
}

#[test]
fn grid_outside_upper_half_plane_exits_two() {
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(tmp.path(), &EVAL_JOB.replace("y0 = \"0.7\"", "y0 = \"-0.1\""));
    let out = bin()
        .args(["eval", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(tmp.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "stderr: {}", stderr_of(&out));
}

#[test]
fn degenerate_rejects_non_decreasing_l_grid() {
    let job = r#"
[group]
preset = "cyclic_parabolic"

[degenerate]
q = [1]
s = "2.0"
l_grid = ["0.2", "0.4"]

[degenerate.grid]
x0 = "0.0"
y0 = "0.5"
h = "0.1"
nx = 5
ny = 3
"#;
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(tmp.path(), job);
    let out = bin()
        .args(["degenerate", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(tmp.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "stderr: {}", stderr_of(&out));
    assert!(stderr_of(&out).contains("strictly decreasing"), "stderr: {}", stderr_of(&out));
}

#[test]
fn degenerate_writes_per_q_tables() {
    let job = r#"
[group]
preset = "cyclic_parabolic"

[degenerate]
q = [1]
s = "2.0"
l_grid = ["0.4", "0.2"]

[degenerate.grid]
x0 = "0.0"
y0 = "0.5"
h = "0.1"
nx = 5
ny = 3
"#;
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(tmp.path(), job);
    let out = bin()
        .args(["degenerate", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(tmp.path())
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr_of(&out));
    let table = fs::read_to_string(tmp.path().join("degenerate_q1.csv")).unwrap();
    let lines: Vec<&str> = table.lines().collect();
    assert_eq!(lines[0], "# hypeisen.grid.v1");
    assert_eq!(lines[1], "l,sup_error,closed_form_sup_error");
    assert_eq!(lines.len(), 2 + 2, "one row per l");
    let doc: serde_json::Value = serde_json::from_str(
        &fs::read_to_string(tmp.path().join("degenerate_report.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(doc["schema"], "hypeisen.report.v1");
}

#[test]
fn out_dir_resolution_order_is_flag_env_config() {
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(tmp.path(), EVAL_JOB);
    let env_dir = tmp.path().join("from_env");
    let flag_dir = tmp.path().join("from_flag");

    // HYPEISEN_OUT alone directs the output.
    let out = bin()
        .args(["eval", "--config"])
        .arg(&config)
        .env("HYPEISEN_OUT", &env_dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr_of(&out));
    assert!(env_dir.join("eval.csv").exists());

    // --out beats the environment.
    let out = bin()
        .args(["eval", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(&flag_dir)
        .env("HYPEISEN_OUT", tmp.path().join("ignored"))
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", stderr_of(&out));
    assert!(flag_dir.join("eval.csv").exists());
    assert!(!tmp.path().join("ignored").join("eval.csv").exists());
}

#[test]
fn verify_single_check_writes_versioned_report() {
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(tmp.path(), EVAL_JOB);
    let out = bin()
        .args(["verify", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(tmp.path())
        .args(["--check", "special-functions"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(tmp.path().join("verify_report.json")).unwrap())
            .unwrap();
    assert_eq!(doc["schema"], "hypeisen.report.v1");
    let checks = doc["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 1);
    assert_eq!(checks[0]["name"], "special-functions");
    assert_eq!(checks[0]["status"], "passed");
}

#[test]
fn verify_tolerance_below_resolution_floor_is_inconclusive() {
    let job = format!(
        "{EVAL_JOB}\n[verify]\nchecks = [\"special-functions\"]\ntolerance = \"1e-13\"\n"
    );
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(tmp.path(), &job);
    let out = bin()
        .args(["verify", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(tmp.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_of(&out));
    let doc: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(tmp.path().join("verify_report.json")).unwrap())
            .unwrap();
    assert_eq!(doc["checks"][0]["status"], "inconclusive");
    let text = String::from_utf8_lossy(&out.stdout).into_owned();
    assert!(text.contains("INCONCLUSIVE"), "stdout: {text}");
}

#[test]
fn unknown_check_name_exits_two() {
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(tmp.path(), EVAL_JOB);
    let out = bin()
        .args(["verify", "--config"])
        .arg(&config)
        .arg("--out")
        .arg(tmp.path())
        .args(["--check", "no-such-check"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2), "stderr: {}", stderr_of(&out));
    assert!(stderr_of(&out).contains("unknown check"), "stderr: {}", stderr_of(&out));
}

#[test]
fn missing_required_config_flag_is_a_usage_error() {
    let out = bin().arg("eval").output().unwrap();
    assert_eq!(out.status.code(), Some(2), "clap maps usage errors to exit 2");
}
