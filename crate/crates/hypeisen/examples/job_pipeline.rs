//! Drive the whole config → evaluate → verify pipeline through the library,
//! exactly as the `hypeisen` binary does: parse a TOML job config, build the
//! group it describes, evaluate a family on a grid into CSV/JSON documents,
//! and run a named verification check.
//!
//! Run with `cargo run --release --example job_pipeline`.

use hypeisen::checks::run_check;
use hypeisen::cli::{cmd_eval, cmd_group, JobConfig};
use hypeisen::Result;

// The [trunc] override matters here: along cusp directions the terms decay
// only polynomially in the word length, so the default 1e-10 absolute goal
// is out of reach at max_len 16 and the evaluator would (correctly) refuse
// with a NonConvergence error instead of returning an under-resolved grid.
const JOB: &str = r#"
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
nx = 4
ny = 3

[trunc]
abs_tol = "1e-6"
"#;

fn main() -> Result<()> {
    // --- Parse, round-trip, build. ---
    let config = JobConfig::from_toml(JOB)?;
    let round_tripped = JobConfig::from_toml(&config.to_toml()?)?;
    println!("config parsed; TOML round-trip stable: {}",
        config.to_toml()? == round_tripped.to_toml()?);
    let group = config.build_group()?;
    println!("group: rank {}, {} cusps, certificate verified", group.rank(),
        group.cusps().len());
    println!();

    // --- Evaluate into an output directory. ---
    let out = std::env::temp_dir().join("hypeisen_job_pipeline");
    std::fs::create_dir_all(&out)
        .map_err(|e| hypeisen::Error::Io(std::io::Error::new(e.kind(), format!("{e}"))))?;
    // cmd_group / cmd_eval print their own "wrote <path>" lines.
    let _group_report = cmd_group(&config, &out)?;
    let eval_path = cmd_eval(&config, &out)?;
    let doc = std::fs::read_to_string(&eval_path)
        .map_err(|e| hypeisen::Error::Io(std::io::Error::new(e.kind(), format!("{e}"))))?;
    println!("eval.csv starts:");
    for line in doc.lines().take(5) {
        println!("   {line}");
    }
    println!();

    // --- Run one verification check programmatically. ---
    println!("running the 'special-functions' check:");
    let outcome = run_check("special-functions", None)?;
    println!("   status: {:?} (tolerance {:.0e})", outcome.status, outcome.tolerance);
    for line in outcome.lines.iter().take(3) {
        println!("   {line}");
    }
    println!("   ... ({} evidence lines total)", outcome.lines.len());
    Ok(())
}
