//! Config-driven command-line front end.
//!
//! Subcommands: `group` (build + validate + δ estimate), `eval` (series
//! family over a grid → CSV/JSON), `verify` (named checks), `degenerate`
//! (per-l error tables). All jobs are described by a single TOML config;
//! unknown keys are rejected, and every real-valued parameter is written as
//! a decimal string so it is parsed exactly once, in one place.
//!
//! Exit codes: 0 success (for `verify`: all selected checks passed or were
//! inconclusive), 1 numerical non-convergence or a failed check, 2 config
//! or usage error.
//!
//! Outputs are schema-versioned: CSV files open with a `# hypeisen.grid.v1`
//! comment line, JSON reports carry a top-level `"schema"` field. With a
//! fixed config, outputs are byte-identical regardless of `--threads`: grid
//! points are evaluated in parallel but collected in index order and
//! serialized sequentially.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{degeneration_diagnostic, DegenerationReport, GridSpec};
use crate::checks::{self, CheckOutcome, CheckStatus};
use crate::error::{Error, Result};
use crate::group::{DeltaEstimate, FuchsianGroup, Preset};
use crate::hypgeom::{Boundary, Matrix2};
use crate::series::{evaluate_family, Family, FormSeries, Truncation};
use crate::specfun::C;

/// Schema tag of grid outputs (CSV comment line / JSON field).
pub const GRID_SCHEMA: &str = "hypeisen.grid.v1";
/// Schema tag of report outputs (JSON field).
pub const REPORT_SCHEMA: &str = "hypeisen.report.v1";
/// The only environment override: the output directory.
pub const OUT_DIR_ENV: &str = "HYPEISEN_OUT";

// ---------------------------------------------------------------------------
// Config file model
// ---------------------------------------------------------------------------

/// Top-level job configuration (TOML). Round-trip stable; unknown keys are
/// rejected. Real-valued parameters are decimal strings; counts are
/// integers.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub group: GroupSection,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eval: Option<EvalSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trunc: Option<TruncSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verify: Option<VerifySection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degenerate: Option<DegenerateSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputSection>,
}

/// `[group]`: a preset name with parameters, or explicit generators.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSection {
    /// Preset name (`cyclic_hyperbolic`, `cyclic_parabolic`,
    /// `schottky_torus`, `parabolic_pair`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    /// Preset parameters as decimal strings.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub params: Vec<String>,
    /// Explicit generators, each `[a, b, c, d]` as decimal strings
    /// (certified via isometric circles; mutually exclusive with `preset`).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<[String; 4]>,
}

/// `[eval]`: one series family over one grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvalSection {
    /// Family name: `hyperbolic_omega`, `weight_a`, `weight_xi`,
    /// `parabolic_e`, `patterson`, `theta`, `eta_hat`.
    pub family: String,
    /// Geodesic generator index (omega / weight families).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c_gen: Option<usize>,
    /// Differential weight q (weight / parabolic families).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u32>,
    /// Cusp index (parabolic family).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cusp: Option<usize>,
    /// Boundary point (patterson family): a decimal string or `"inf"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<String>,
    /// Cocycle power k (patterson family).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<i32>,
    /// Spectral parameter: real part (decimal string).
    pub s: String,
    /// Spectral parameter: imaginary part (decimal string, default "0").
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s_im: Option<String>,
    pub grid: GridSection,
    /// `csv` (default) or `json`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
}

/// Rectangular evaluation grid; `x0`/`y0` is the bottom-left node.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub x0: String,
    pub y0: String,
    pub h: String,
    pub nx: usize,
    pub ny: usize,
}

/// `[trunc]`: overrides of the shell-truncation policy.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TruncSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub abs_tol: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rel_tol: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_len: Option<u32>,
    /// Sum every shell up to `max_len` (matched-truncation mode).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixed: Option<bool>,
}

/// `[verify]`: which checks to run and an optional tolerance override.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifySection {
    /// Check names (default: the full suite).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<String>>,
    /// Tolerance override (decimal string). Below a check's resolution
    /// floor the check reports `inconclusive` rather than pass/fail.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<String>,
}

/// `[degenerate]`: pinch-parameter sweep of the elementary family.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegenerateSection {
    /// Weights to sweep (one error table per q).
    pub q: Vec<u32>,
    pub s: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s_im: Option<String>,
    /// Strictly decreasing geodesic lengths (decimal strings).
    pub l_grid: Vec<String>,
    pub grid: GridSection,
}

/// `[output]`: output directory (overridden by `--out`, then the
/// `HYPEISEN_OUT` environment variable).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dir: Option<String>,
}

fn parse_real(name: &str, text: &str) -> Result<f64> {
    let v: f64 = text
        .trim()
        .parse()
        .map_err(|_| Error::config(format!("{name}: '{text}' is not a decimal number")))?;
    if !v.is_finite() {
        return Err(Error::config(format!("{name}: '{text}' is not finite")));
    }
    Ok(v)
}

impl JobConfig {
    /// Parse a TOML config file, rejecting unknown keys.
    pub fn from_path(path: &Path) -> Result<JobConfig> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    /// Parse a TOML config string, rejecting unknown keys.
    pub fn from_toml(text: &str) -> Result<JobConfig> {
        toml::from_str(text).map_err(|e| Error::config(format!("config: {e}")))
    }

    /// Serialize back to TOML (round-trip stable).
    pub fn to_toml(&self) -> Result<String> {
        toml::to_string_pretty(self).map_err(|e| Error::config(format!("config: {e}")))
    }

    /// Build the group described by `[group]`.
    pub fn build_group(&self) -> Result<FuchsianGroup> {
        let g = &self.group;
        match (&g.preset, g.generators.is_empty()) {
            (Some(_), false) => Err(Error::config(
                "[group] must give either a preset or explicit generators, not both",
            )),
            (Some(name), true) => {
                let params = g
                    .params
                    .iter()
                    .map(|p| parse_real("group.params", p))
                    .collect::<Result<Vec<f64>>>()?;
                FuchsianGroup::build_preset(name, &params)
            }
            (None, false) => {
                let mats = g
                    .generators
                    .iter()
                    .map(|[a, b, c, d]| {
                        Matrix2::from_unnormalized(
                            parse_real("group.generators", a)?,
                            parse_real("group.generators", b)?,
                            parse_real("group.generators", c)?,
                            parse_real("group.generators", d)?,
                        )
                    })
                    .collect::<Result<Vec<Matrix2>>>()?;
                FuchsianGroup::from_generators(mats)
            }
            (None, true) => Err(Error::config("[group] needs a preset or explicit generators")),
        }
    }

    /// Resolve the truncation policy (defaults plus `[trunc]` overrides).
    pub fn truncation(&self) -> Result<Truncation> {
        let mut t = Truncation::default();
        if let Some(sec) = &self.trunc {
            if let Some(a) = &sec.abs_tol {
                t.abs_tol = parse_real("trunc.abs_tol", a)?;
            }
            if let Some(r) = &sec.rel_tol {
                t.rel_tol = parse_real("trunc.rel_tol", r)?;
            }
            if let Some(m) = sec.max_len {
                t.max_len = m;
            }
            if let Some(f) = sec.fixed {
                t.fixed = f;
            }
        }
        Ok(t)
    }
}

impl GridSection {
    pub fn resolve(&self) -> Result<GridSpec> {
        let spec = GridSpec {
            x0: parse_real("grid.x0", &self.x0)?,
            y0: parse_real("grid.y0", &self.y0)?,
            h: parse_real("grid.h", &self.h)?,
            nx: self.nx,
            ny: self.ny,
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl EvalSection {
    fn s_value(&self) -> Result<C> {
        let re = parse_real("eval.s", &self.s)?;
        let im = match &self.s_im {
            Some(t) => parse_real("eval.s_im", t)?,
            None => 0.0,
        };
        Ok(C::new(re, im))
    }

    /// Resolve the family selector from the flat keys.
    pub fn family(&self) -> Result<Family> {
        let need = |opt: Option<usize>, key: &str| {
            opt.ok_or_else(|| Error::config(format!("eval.{key} is required for family '{}'", self.family)))
        };
        match self.family.as_str() {
            "hyperbolic_omega" => Ok(Family::HyperbolicOmega { c_gen: need(self.c_gen, "c_gen")? }),
            "weight_a" => Ok(Family::WeightA {
                c_gen: need(self.c_gen, "c_gen")?,
                q: self.q.ok_or_else(|| Error::config("eval.q is required for family 'weight_a'"))?,
            }),
            "weight_xi" => Ok(Family::WeightXi {
                c_gen: need(self.c_gen, "c_gen")?,
                q: self.q.ok_or_else(|| Error::config("eval.q is required for family 'weight_xi'"))?,
            }),
            "parabolic_e" => Ok(Family::ParabolicE {
                cusp: self
                    .cusp
                    .ok_or_else(|| Error::config("eval.cusp is required for family 'parabolic_e'"))?,
                q: self.q.unwrap_or(0),
            }),
            "patterson" => {
                let btext = self
                    .b
                    .as_ref()
                    .ok_or_else(|| Error::config("eval.b is required for family 'patterson'"))?;
                let b = if btext.trim() == "inf" {
                    Boundary::Infinity
                } else {
                    Boundary::Real(parse_real("eval.b", btext)?)
                };
                Ok(Family::Patterson { b, k: self.k.unwrap_or(0) })
            }
            "theta" => Ok(Family::Theta),
            "eta_hat" => Ok(Family::EtaHat),
            other => Err(Error::config(format!(
                "unknown family '{other}'; expected hyperbolic_omega, weight_a, weight_xi, \
                 parabolic_e, patterson, theta, or eta_hat"
            ))),
        }
    }
}

// ---------------------------------------------------------------------------
// Grid rendering (shared by cmd_eval and the determinism check)
// ---------------------------------------------------------------------------

fn eval_grid(
    group: &FuchsianGroup,
    family: Family,
    s: C,
    spec: GridSpec,
    trunc: &Truncation,
) -> Result<Vec<(C, FormSeries)>> {
    spec.validate()?;
    let nx = spec.nx;
    (0..spec.len())
        .into_par_iter()
        .map(|idx| {
            let z = spec.node(idx % nx, idx / nx);
            evaluate_family(group, family, s, z, trunc).map(|fs| (z, fs))
        })
        .collect()
}

/// Render a family over a grid as the canonical CSV document: a schema
/// comment line, the fixed header `x,y,re_f,im_f,re_g,im_g,word_len,tail`,
/// then one row per node in row-major order. Byte-identical across thread
/// counts.
pub fn grid_csv_document(
    group: &FuchsianGroup,
    family: Family,
    s: C,
    spec: GridSpec,
    trunc: &Truncation,
) -> Result<String> {
    let rows = eval_grid(group, family, s, spec, trunc)?;
    let mut out = String::with_capacity(rows.len() * 64 + 64);
    out.push_str("# ");
    out.push_str(GRID_SCHEMA);
    out.push('\n');
    out.push_str("x,y,re_f,im_f,re_g,im_g,word_len,tail\n");
    for (z, fs) in &rows {
        let f = fs.form.dz_coeff;
        let g = fs.form.dzbar_coeff;
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            z.re, z.im, f.re, f.im, g.re, g.im, fs.eval.word_len, fs.eval.tail_estimate
        )
        .expect("writing to a String cannot fail");
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct GridRowJson {
    x: f64,
    y: f64,
    re_f: f64,
    im_f: f64,
    re_g: f64,
    im_g: f64,
    word_len: u32,
    tail: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct GridDocument {
    schema: String,
    family: Family,
    s: [f64; 2],
    grid: GridSpec,
    rows: Vec<GridRowJson>,
}

/// Render a family over a grid as the canonical JSON document.
pub fn grid_json_document(
    group: &FuchsianGroup,
    family: Family,
    s: C,
    spec: GridSpec,
    trunc: &Truncation,
) -> Result<String> {
    let rows = eval_grid(group, family, s, spec, trunc)?;
    let doc = GridDocument {
        schema: GRID_SCHEMA.to_string(),
        family,
        s: [s.re, s.im],
        grid: spec,
        rows: rows
            .iter()
            .map(|(z, fs)| GridRowJson {
                x: z.re,
                y: z.im,
                re_f: fs.form.dz_coeff.re,
                im_f: fs.form.dz_coeff.im,
                re_g: fs.form.dzbar_coeff.re,
                im_g: fs.form.dzbar_coeff.im,
                word_len: fs.eval.word_len,
                tail: fs.eval.tail_estimate,
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).map_err(|e| Error::config(format!("serialize: {e}")))
}

// ---------------------------------------------------------------------------
// Command implementations
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
struct GroupReport {
    schema: &'static str,
    preset: Preset,
    rank: usize,
    certificate_regions: usize,
    delta_estimate: DeltaEstimate,
    /// Counting-bound partial sums `Σ u(γz)^2` by word length.
    counting_partials: Vec<f64>,
}

fn delta_radii(preset: Preset) -> Vec<f64> {
    match preset {
        Preset::CyclicHyperbolic { .. } => vec![2.0, 4.0, 6.0, 8.0, 10.0, 12.0],
        Preset::CyclicParabolic => vec![4.0, 6.0, 8.0, 10.0, 12.0],
        Preset::ParabolicPair { .. } => vec![2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0],
        Preset::SchottkyTorus { .. } | Preset::Custom => vec![2.0, 4.0, 6.0, 8.0, 10.0],
    }
}

/// `group`: build + certify the group, estimate δ, tabulate the counting
/// bound. Returns the report path.
pub fn cmd_group(config: &JobConfig, out_dir: &Path) -> Result<PathBuf> {
    let group = config.build_group()?;
    let base = C::new(0.0, 1.0);
    let delta = group.estimate_delta(base, &delta_radii(group.preset()))?;
    let partials = group.counting_bound_partials(2.0, base, 10)?;
    let report = GroupReport {
        schema: REPORT_SCHEMA,
        preset: group.preset(),
        rank: group.rank(),
        certificate_regions: group.certificate().pairs.len() * 2,
        delta_estimate: delta,
        counting_partials: partials,
    };
    let path = out_dir.join("group_report.json");
    write_file(
        &path,
        &serde_json::to_string_pretty(&report)
            .map_err(|e| Error::config(format!("serialize: {e}")))?,
    )?;
    println!(
        "group: rank {} certified ({} ping-pong regions), δ̂ = {:.4}",
        report.rank, report.certificate_regions, report.delta_estimate.delta
    );
    println!("wrote {}", path.display());
    Ok(path)
}

/// `eval`: evaluate the configured family over the grid. Returns the output
/// path.
pub fn cmd_eval(config: &JobConfig, out_dir: &Path) -> Result<PathBuf> {
    let eval = config
        .eval
        .as_ref()
        .ok_or_else(|| Error::config("eval requires an [eval] section"))?;
    let group = config.build_group()?;
    let family = eval.family()?;
    let s = eval.s_value()?;
    let spec = eval.grid.resolve()?;
    let trunc = config.truncation()?;
    let format = eval.format.as_deref().unwrap_or("csv");
    let (name, body) = match format {
        "csv" => ("eval.csv", grid_csv_document(&group, family, s, spec, &trunc)?),
        "json" => ("eval.json", grid_json_document(&group, family, s, spec, &trunc)?),
        other => {
            return Err(Error::config(format!(
                "unknown eval.format '{other}' (expected csv or json)"
            )))
        }
    };
    let path = out_dir.join(name);
    write_file(&path, &body)?;
    println!("wrote {} ({} nodes)", path.display(), spec.len());
    Ok(path)
}

#[derive(Debug, Serialize)]
struct VerifyReport {
    schema: &'static str,
    checks: Vec<CheckOutcome>,
}

/// `verify`: run the selected checks (CLI `--check` wins over the config
/// list, which defaults to the full suite). Returns the outcomes; the
/// caller maps any failure to exit code 1.
pub fn cmd_verify(
    config: &JobConfig,
    out_dir: &Path,
    single: Option<&str>,
) -> Result<Vec<CheckOutcome>> {
    let tolerance = match config.verify.as_ref().and_then(|v| v.tolerance.as_ref()) {
        Some(t) => Some(parse_real("verify.tolerance", t)?),
        None => None,
    };
    let names: Vec<String> = match single {
        Some(name) => vec![name.to_string()],
        None => match config.verify.as_ref().and_then(|v| v.checks.clone()) {
            Some(list) if !list.is_empty() => list,
            _ => checks::check_names().iter().map(|s| s.to_string()).collect(),
        },
    };
    let mut outcomes = Vec::with_capacity(names.len());
    for name in &names {
        let outcome = checks::run_check(name, tolerance)?;
        let tag = match outcome.status {
            CheckStatus::Passed => "PASS",
            CheckStatus::Failed => "FAIL",
            CheckStatus::Inconclusive => "INCONCLUSIVE",
        };
        println!("check {name}: {tag}");
        for line in &outcome.lines {
            println!("    {line}");
        }
        outcomes.push(outcome);
    }
    let report = VerifyReport { schema: REPORT_SCHEMA, checks: outcomes.clone() };
    let path = out_dir.join("verify_report.json");
    write_file(
        &path,
        &serde_json::to_string_pretty(&report)
            .map_err(|e| Error::config(format!("serialize: {e}")))?,
    )?;
    println!("wrote {}", path.display());
    Ok(outcomes)
}

#[derive(Debug, Serialize)]
struct DegenerateReportDoc {
    schema: &'static str,
    reports: Vec<DegenerationReport>,
}

/// `degenerate`: sweep the elementary family toward the cusp limit, one
/// error table per configured q. Returns the written table paths.
pub fn cmd_degenerate(config: &JobConfig, out_dir: &Path) -> Result<Vec<PathBuf>> {
    let sec = config
        .degenerate
        .as_ref()
        .ok_or_else(|| Error::config("degenerate requires a [degenerate] section"))?;
    let group = config.build_group()?;
    let s = C::new(
        parse_real("degenerate.s", &sec.s)?,
        match &sec.s_im {
            Some(t) => parse_real("degenerate.s_im", t)?,
            None => 0.0,
        },
    );
    let l_grid = sec
        .l_grid
        .iter()
        .map(|t| parse_real("degenerate.l_grid", t))
        .collect::<Result<Vec<f64>>>()?;
    let grid = sec.grid.resolve()?;

    let mut paths = Vec::new();
    let mut reports = Vec::new();
    for &q in &sec.q {
        let report = degeneration_diagnostic(q, s, &l_grid, &group, grid)?;
        let mut csv = String::new();
        csv.push_str("# ");
        csv.push_str(GRID_SCHEMA);
        csv.push('\n');
        csv.push_str("l,sup_error,closed_form_sup_error\n");
        for row in &report.rows {
            writeln!(csv, "{},{},{}", row.l, row.sup_error, row.closed_form_sup_error)
                .expect("writing to a String cannot fail");
        }
        let path = out_dir.join(format!("degenerate_q{q}.csv"));
        write_file(&path, &csv)?;
        println!(
            "q={q}: sup error {:.3e} at l={}, monotone: {}; wrote {}",
            report.rows.last().map(|r| r.sup_error).unwrap_or(f64::NAN),
            report.rows.last().map(|r| r.l).unwrap_or(f64::NAN),
            report.monotone,
            path.display()
        );
        paths.push(path);
        reports.push(report);
    }
    let doc = DegenerateReportDoc { schema: REPORT_SCHEMA, reports };
    let path = out_dir.join("degenerate_report.json");
    write_file(
        &path,
        &serde_json::to_string_pretty(&doc).map_err(|e| Error::config(format!("serialize: {e}")))?,
    )?;
    println!("wrote {}", path.display());
    paths.push(path);
    Ok(paths)
}

fn write_file(path: &Path, body: &str) -> Result<()> {
    fs::write(path, body).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("cannot write {}: {e}", path.display()),
        ))
    })
}

// ---------------------------------------------------------------------------
// Argument parsing and dispatch
// ---------------------------------------------------------------------------

/// Command-line interface.
#[derive(Debug, Parser)]
#[command(
    name = "hypeisen",
    version,
    about = "Eisenstein-series families and resolvent kernels on Fuchsian groups of the second kind"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Path to the TOML job config.
    #[arg(long)]
    pub config: PathBuf,
    /// Output directory (wins over HYPEISEN_OUT and [output].dir).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker thread count (default: one per core). Outputs are identical
    /// for any value.
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the configured group, verify its ping-pong certificate, and
    /// report the δ estimate and counting-bound partial sums.
    Group(CommonArgs),
    /// Evaluate the configured series family over a grid (CSV/JSON).
    Eval(CommonArgs),
    /// Run verification checks and write an aggregated report.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        /// Run a single named check instead of the configured list.
        #[arg(long)]
        check: Option<String>,
    },
    /// Sweep the elementary degenerating family and write per-l error
    /// tables.
    Degenerate(CommonArgs),
}

fn resolve_out_dir(cli_out: Option<&Path>, config: &JobConfig) -> Result<PathBuf> {
    let dir = if let Some(d) = cli_out {
        d.to_path_buf()
    } else if let Ok(d) = std::env::var(OUT_DIR_ENV) {
        PathBuf::from(d)
    } else if let Some(d) = config.output.as_ref().and_then(|o| o.dir.as_ref()) {
        PathBuf::from(d)
    } else {
        PathBuf::from(".")
    };
    fs::create_dir_all(&dir).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("cannot create {}: {e}", dir.display()),
        ))
    })?;
    Ok(dir)
}

fn install_threads(threads: Option<usize>) -> Result<()> {
    if let Some(n) = threads {
        if n == 0 {
            return Err(Error::config("--threads must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::config(format!("thread pool: {e}")))?;
    }
    Ok(())
}

/// Run a parsed command; returns the process exit code.
pub fn dispatch(cli: Cli) -> Result<i32> {
    let (common, single_check) = match &cli.command {
        Command::Group(c) | Command::Eval(c) | Command::Degenerate(c) => (c, None),
        Command::Verify { common, check } => (common, check.as_deref()),
    };
    install_threads(common.threads)?;
    let config = JobConfig::from_path(&common.config)?;
    let out_dir = resolve_out_dir(common.out.as_deref(), &config)?;
    match &cli.command {
        Command::Group(_) => {
            cmd_group(&config, &out_dir)?;
            Ok(0)
        }
        Command::Eval(_) => {
            cmd_eval(&config, &out_dir)?;
            Ok(0)
        }
        Command::Verify { .. } => {
            let outcomes = cmd_verify(&config, &out_dir, single_check)?;
            let failed = outcomes.iter().any(|o| o.status == CheckStatus::Failed);
            Ok(if failed { 1 } else { 0 })
        }
        Command::Degenerate(_) => {
            cmd_degenerate(&config, &out_dir)?;
            Ok(0)
        }
    }
}

/// Entry point for the binary: parse arguments, dispatch, map errors to
/// exit codes (clap usage errors exit 2 on their own).
pub fn run_cli() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
