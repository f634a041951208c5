//! Command implementations behind the `legsurg` binary.
//!
//! Every command returns its full stdout text and exit code so it can be
//! driven from tests without spawning a process.
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | success |
//! | 1 | I/O failure |
//! | 2 | parse or validation error |
//! | 3 | a certificate clause failed |

mod args;
mod schema;

pub use args::{run, Cli, Command};
pub use schema::{ComponentEntry, DiagramFile, KnotEntry, Options, ResultFile, FORMAT_VERSION};

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::json;

use crate::arith::{boundary_slope, neg_cf_expand, ArithError, ParseRationalError, Rational};
use crate::fronts::{ComponentInvariants, FrontError};
use crate::surgery::{
    conversion_count, convert, enumerate_conversions, minimal_twist, twisted_coefficient, verify,
    Branch, ContactDiagram, DiagramComponent, KnotSpec, ParsePolicyError, PmOneDiagram, Policy,
    SurgeryError, VerifyReport,
};
use crate::topology::{first_homology, generalized_linking_matrix, TopologyError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_CERTIFICATE: i32 = 3;

/// Enumeration refuses to materialize more diagrams than this.
pub const MAX_CONVERSIONS: u64 = 100_000;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{source_name}:{line}:{column}: {message}")]
    Parse {
        source_name: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported format version {0} (expected {FORMAT_VERSION})")]
    UnsupportedVersion(u32),
    #[error("component {id:?}: {message}")]
    Schema { id: String, message: String },
    #[error("component {id:?}: {source}")]
    Front { id: String, source: FrontError },
    #[error(transparent)]
    Surgery(#[from] SurgeryError),
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Rational(#[from] ParseRationalError),
    #[error(transparent)]
    Policy(#[from] ParsePolicyError),
    #[error("coefficient {0} has no (-1)-chain")]
    NoChain(Rational),
    #[error("{count} conversions exceed the limit of {limit}")]
    TooManyConversions { count: u64, limit: u64 },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => EXIT_IO,
            _ => EXIT_INVALID,
        }
    }
}

/// Text for stdout plus the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CmdOutput {
    pub stdout: String,
    pub code: i32,
}

impl CmdOutput {
    fn ok(stdout: String) -> Self {
        CmdOutput {
            stdout,
            code: EXIT_OK,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads and validates a diagram file.
pub fn load_diagram(path: &Path) -> Result<(ContactDiagram, Options), CliError> {
    let file = DiagramFile::parse(&read(path)?, &path.display().to_string())?;
    Ok((file.to_diagram()?, file.options))
}

pub fn load_result(path: &Path) -> Result<ResultFile, CliError> {
    ResultFile::parse(&read(path)?, &path.display().to_string())
}

fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct InvariantRow {
    id: String,
    source: &'static str,
    #[serde(rename = "type")]
    knot_type: String,
    tb: i64,
    rot: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    front: Option<ComponentInvariants>,
}

fn invariant_rows(d: &ContactDiagram) -> Result<Vec<InvariantRow>, CliError> {
    d.components
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let data = d.knot_data(i)?;
            let front_err = |source| CliError::Front {
                id: c.id.clone(),
                source,
            };
            let (source, front) = match &c.knot {
                KnotSpec::Front(f) => ("front", Some(f.invariants(0).map_err(front_err)?)),
                KnotSpec::LinkComponent(k) => {
                    let f = d.link_front.as_ref().expect("validated diagram");
                    ("link", Some(f.invariants(*k).map_err(front_err)?))
                }
                KnotSpec::Abstract(_) => ("abstract", None),
            };
            Ok(InvariantRow {
                id: c.id.clone(),
                source,
                knot_type: data.knot_type,
                tb: data.tb,
                rot: data.rot,
                front,
            })
        })
        .collect()
}

/// Classical invariants of every component, after validation.
pub fn cmd_invariants(path: &Path, json: bool) -> Result<CmdOutput, CliError> {
    let (d, _) = load_diagram(path)?;
    let rows = invariant_rows(&d)?;
    if json {
        return Ok(CmdOutput::ok(pretty(&json!({ "components": rows }))));
    }
    let width = rows.iter().map(|r| r.id.len()).max().unwrap_or(0).max(2);
    let mut out = format!(
        "{:<width$}  {:<8}  {:<7}  {:>5}  {:>5}  {:>6}  {:>6}  {:>6}\n",
        "id", "source", "type", "tb", "rot", "writhe", "left", "right"
    );
    for r in &rows {
        let cell = |f: fn(&ComponentInvariants) -> i64| {
            r.front
                .as_ref()
                .map_or("-".to_string(), |inv| f(inv).to_string())
        };
        let _ = writeln!(
            out,
            "{:<width$}  {:<8}  {:<7}  {:>5}  {:>5}  {:>6}  {:>6}  {:>6}",
            r.id,
            r.source,
            r.knot_type,
            r.tb,
            r.rot,
            cell(|i| i.writhe),
            cell(|i| i.left_cusps as i64),
            cell(|i| i.right_cusps as i64),
        );
    }
    Ok(CmdOutput::ok(out))
}

#[derive(Debug, Clone, Default)]
pub struct ConvertOptions {
    /// Overrides the file's policy.
    pub policy: Option<Policy>,
    /// Enumerates all conversions; also enabled by the file's options.
    pub enumerate: bool,
    /// JSON Lines output, one result file per line.
    pub json: bool,
    /// Writes one result file per conversion into this directory.
    pub out: Option<PathBuf>,
}

fn branch_name(b: Branch) -> String {
    serde_json::to_value(b)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

fn render_conversion(
    out: &mut String,
    index: usize,
    total: usize,
    pm: &PmOneDiagram,
    report: &VerifyReport,
) {
    let _ = writeln!(
        out,
        "# conversion {}/{}  policy {}",
        index + 1,
        total,
        pm.policy
    );
    let width = pm
        .components
        .iter()
        .map(|c| c.id.len())
        .max()
        .unwrap_or(0)
        .max("parent".len());
    let _ = writeln!(
        out,
        "{:<width$}  {:>5}  {:>4}  {:>5}  {:>5}  provenance",
        "parent", "level", "sign", "tb", "rot"
    );
    for c in &pm.components {
        if c.instructions.is_empty() {
            let _ = writeln!(
                out,
                "{:<width$}  ({}, coefficient {})",
                c.id,
                branch_name(c.branch),
                c.coefficient
            );
        }
        for i in &c.instructions {
            let _ = writeln!(
                out,
                "{:<width$}  {:>5}  {:>4}  {:>5}  {:>5}  {}",
                i.parent,
                i.level,
                format!("{:+}", i.coefficient.value()),
                i.tb_local,
                i.rot_choice,
                i.provenance
            );
        }
    }
    if report.all_passed() {
        let _ = writeln!(out, "certificate: {} clauses pass", report.entries.len());
    } else {
        let failed = VerifyReport {
            entries: report.failures().cloned().collect(),
        };
        let _ = write!(out, "certificate FAILED\n{failed}");
    }
}

/// Converts a diagram to (±1)-surgeries and re-verifies every certificate.
pub fn cmd_convert(path: &Path, opts: &ConvertOptions) -> Result<CmdOutput, CliError> {
    let (d, file_opts) = load_diagram(path)?;
    let policy = opts.policy.clone().unwrap_or(file_opts.policy);
    let results: Vec<PmOneDiagram> = if opts.enumerate || file_opts.enumerate {
        let conversions = enumerate_conversions(&d)?;
        if conversions.remaining() > MAX_CONVERSIONS {
            return Err(CliError::TooManyConversions {
                count: conversions.remaining(),
                limit: MAX_CONVERSIONS,
            });
        }
        conversions.collect()
    } else {
        vec![convert(&d, &policy)?]
    };
    let reports: Vec<VerifyReport> = results.iter().map(verify).collect();
    let code = if reports.iter().all(VerifyReport::all_passed) {
        EXIT_OK
    } else {
        EXIT_CERTIFICATE
    };

    let mut out = String::new();
    if let Some(dir) = &opts.out {
        fs::create_dir_all(dir).map_err(|source| CliError::Io {
            path: dir.clone(),
            source,
        })?;
        for (i, pm) in results.iter().enumerate() {
            let file = dir.join(format!("conversion-{:04}.json", i + 1));
            let mut text = ResultFile::new(pm.clone()).to_json();
            text.push('\n');
            write(&file, &text)?;
            if !opts.json {
                let _ = writeln!(out, "{}", file.display());
            }
        }
    }
    if opts.json {
        for pm in &results {
            out.push_str(&ResultFile::new(pm.clone()).to_json_line());
            out.push('\n');
        }
    } else if opts.out.is_none() {
        for (i, (pm, report)) in results.iter().zip(&reports).enumerate() {
            if i > 0 {
                out.push('\n');
            }
            render_conversion(&mut out, i, results.len(), pm, report);
        }
    }
    Ok(CmdOutput { stdout: out, code })
}

/// Surgery coefficients of the (-1)-chain a coefficient is sent to.
pub fn chain_coefficients(r: Rational) -> Result<Vec<i64>, CliError> {
    if r.is_negative() {
        return Ok(neg_cf_expand(r)?.surgery_coefficients());
    }
    if r.is_finite() && r.is_positive() && r != Rational::ONE {
        let chain_target = twisted_coefficient(r, minimal_twist(r)?)?;
        return Ok(neg_cf_expand(chain_target)?.surgery_coefficients());
    }
    Err(CliError::NoChain(r))
}

fn parse_rational(s: &str) -> Result<Rational, CliError> {
    Ok(s.parse()?)
}

/// Canonical negative continued fraction of a negative coefficient.
pub fn cmd_cf(r: &str) -> Result<CmdOutput, CliError> {
    let r = parse_rational(r)?;
    Ok(CmdOutput::ok(format!("{}\n", neg_cf_expand(r)?)))
}

/// Boundary slope of the chain the coefficient is converted through.
pub fn cmd_slope(r: &str) -> Result<CmdOutput, CliError> {
    let rs = chain_coefficients(parse_rational(r)?)?;
    Ok(CmdOutput::ok(format!("{}\n", boundary_slope(&rs)?)))
}

/// Number of (±1)-presentations of a single contact r-surgery.
pub fn cmd_count(r: &str) -> Result<CmdOutput, CliError> {
    let r = parse_rational(r)?;
    let d = ContactDiagram::new(vec![DiagramComponent::abstract_unknot("K", -1, 0, r)]);
    Ok(CmdOutput::ok(format!("{}\n", conversion_count(&d)?)))
}

/// First homology of the surgered manifold.
pub fn cmd_homology(path: &Path, json: bool) -> Result<CmdOutput, CliError> {
    let (d, _) = load_diagram(path)?;
    let group = first_homology(&d)?;
    if json {
        let lm = generalized_linking_matrix(&d)?;
        let value = json!({
            "group": group.to_string(),
            "free_rank": group.free_rank,
            "torsion": group.torsion,
            "order": group.order().map(|o| o.to_string()),
            "ids": lm.ids,
            "matrix": lm.matrix.to_rows(),
        });
        return Ok(CmdOutput::ok(pretty(&value)));
    }
    Ok(CmdOutput::ok(format!("{group}\n")))
}

/// Re-derives every certificate clause of a result file.
pub fn cmd_verify(path: &Path, json: bool) -> Result<CmdOutput, CliError> {
    let file = load_result(path)?;
    let report = verify(&file.diagram);
    let code = if report.all_passed() {
        EXIT_OK
    } else {
        EXIT_CERTIFICATE
    };
    let stdout = if json {
        pretty(&report)
    } else {
        report.to_string()
    };
    Ok(CmdOutput { stdout, code })
}
