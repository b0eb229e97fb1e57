//! The scan driver: prescreen, full limit, matching, recheck, JSONL output.
//!
//! Files written next to the output path `out`:
//!
//! * `out`: a header line with the configuration and start time, then one
//!   match per line in candidate order;
//! * `out.resume`: the index of the last completed candidate, removed once
//!   the scan finishes;
//! * `out.summary.json`: running counts, with `complete` set at the end.

use std::fs::{self, File, OpenOptions};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::library::ConstantTable;
use super::matching::{match_with_table, MatchResult};
use super::prescreen::{prescreen, Prescreen};
use super::{candidates, Candidate, ScanConfig, ScanError, RESIDUAL_SLACK};
use crate::bignum::BigFloat;
use crate::cf::{estimate_limit, pq_convergents};

/// Candidates evaluated between two checkpoints.
const CHUNK: usize = 4096;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub candidates: usize,
    pub converged: usize,
    /// Candidates with at least one verified constant match.
    pub matched: usize,
    /// Lines written after the header.
    pub records: usize,
    /// Converged candidates whose limit is a small rational.
    pub rational: usize,
    /// Matches dropped because the doubled-precision residual did not shrink.
    pub spurious: usize,
    pub last_completed: Option<usize>,
    pub bytes_written: u64,
    pub complete: bool,
}

struct Outcome {
    converged: bool,
    rational: bool,
    spurious: usize,
    lines: Vec<String>,
}

struct Tables {
    table: ConstantTable,
    precision: u32,
    max_terms: usize,
}

fn side_path(out: &Path, suffix: &str) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

pub fn resume_path(out: &Path) -> PathBuf {
    side_path(out, ".resume")
}

pub fn summary_path(out: &Path) -> PathBuf {
    side_path(out, ".summary.json")
}

fn record(c: &Candidate, m: &MatchResult, limit: &BigFloat, terms_used: usize) -> String {
    json!({
        "a": c.a,
        "b": c.b,
        "constant": m.constant_name,
        "mobius": m.coefficients,
        "limit": limit.to_decimal_string(m.limit_digits),
        "residual_exp": m.residual_exp(),
        "terms_used": terms_used,
    })
    .to_string()
}

fn evaluate(c: &Candidate, t: &Tables) -> Outcome {
    let mut out = Outcome {
        converged: false,
        rational: false,
        spurious: 0,
        lines: Vec::new(),
    };
    let pre = prescreen(c);
    if let Prescreen::Terminating { depth } = pre {
        if let Ok(pq) = pq_convergents(&c.spec(), depth - 1) {
            if pq[depth - 1].value().is_some() {
                out.converged = true;
                out.rational = true;
            }
        }
        return out;
    }
    out.converged = pre.converged();
    let Some((v, tol)) = pre.estimate() else {
        return out;
    };
    if t.table.near(v, tol * v.abs().max(1.0)).is_empty() {
        return out;
    }
    let spec = c.spec();
    let Ok(est) = estimate_limit(&spec, t.precision, t.max_terms) else {
        return out;
    };
    let found = match_with_table(&est.value, est.achieved_digits, &t.table);
    out.rational = !found.rational.is_empty();
    if found.constant.is_empty() {
        return out;
    }
    let recheck = estimate_limit(&spec, 2 * t.precision, 2 * t.max_terms).ok();
    // Lowest height per constant; quadratic irrationals match many tuples.
    let mut seen = Vec::new();
    for m in &found.constant {
        if seen.contains(&m.constant_name) {
            continue;
        }
        let verified = recheck.as_ref().is_some_and(|r| {
            let entry = super::library::Entry {
                value: 0.0,
                constant: t.table.names.iter().position(|n| *n == m.constant_name),
                coeffs: m.coefficients,
            };
            let wp = r.achieved_digits + 10;
            let res2 = (r.value.with_precision(wp) - t.table.eval(&entry, wp)).abs();
            let scale = r.value.to_f64().abs().max(1.0).log10();
            let below =
                res2.is_zero() || res2.log10_abs() < scale - (r.achieved_digits.saturating_sub(RESIDUAL_SLACK)) as f64;
            below && r.achieved_digits > m.limit_digits && (m.residual.is_zero() || res2 < m.residual)
        });
        if verified {
            seen.push(m.constant_name.clone());
            out.lines.push(record(c, m, &est.value, est.terms_used));
        } else {
            out.spurious += 1;
        }
    }
    out
}

fn io_err(summary: &ScanSummary) -> impl Fn(io::Error) -> ScanError + '_ {
    move |source| ScanError::Io {
        last_completed: summary.last_completed,
        source,
    }
}

fn write_summary(path: &Path, s: &ScanSummary) -> io::Result<()> {
    fs::write(
        path,
        serde_json::to_string_pretty(s).expect("summary serializes") + "\n",
    )
}

/// Runs candidates from `start` on, writing records to `out` and a checkpoint
/// after every chunk.
fn scan_into(
    config: &ScanConfig,
    out: &mut dyn Write,
    marker: &Path,
    summary_file: &Path,
    start: usize,
    summary: &mut ScanSummary,
) -> Result<(), ScanError> {
    let tables = Tables {
        table: ConstantTable::new(&config.constants, config.moebius_bound, 2 * config.precision + 20)
            .ok_or_else(|| ScanError::Config("unknown constant".into()))?,
        precision: config.precision,
        max_terms: config.max_terms,
    };
    let all: Vec<Candidate> = candidates(config).skip(start).collect();
    for chunk in all.chunks(CHUNK) {
        let outcomes: Vec<Outcome> = chunk.par_iter().map(|c| evaluate(c, &tables)).collect();
        for o in &outcomes {
            summary.candidates += 1;
            summary.converged += o.converged as usize;
            summary.rational += o.rational as usize;
            summary.spurious += o.spurious;
            summary.matched += !o.lines.is_empty() as usize;
            for line in &o.lines {
                out.write_all(line.as_bytes()).map_err(io_err(summary))?;
                out.write_all(b"\n").map_err(io_err(summary))?;
                summary.records += 1;
                summary.bytes_written += line.len() as u64 + 1;
            }
        }
        out.flush().map_err(io_err(summary))?;
        summary.last_completed = chunk.last().map(|c| c.index);
        fs::write(marker, format!("{}\n", summary.last_completed.unwrap())).map_err(io_err(summary))?;
        write_summary(summary_file, summary).map_err(io_err(summary))?;
    }
    summary.complete = true;
    write_summary(summary_file, summary).map_err(io_err(summary))?;
    if marker.exists() {
        fs::remove_file(marker).map_err(io_err(summary))?;
    }
    Ok(())
}

fn header(config: &ScanConfig) -> String {
    let started = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    json!({ "header": { "config": config, "started_unix": started } }).to_string() + "\n"
}

/// Scans every candidate of `config`, replacing any previous output.
pub fn scan(config: &ScanConfig, output: &Path) -> Result<ScanSummary, ScanError> {
    config.validate()?;
    let mut summary = ScanSummary::default();
    let file = File::create(output).map_err(io_err(&summary))?;
    let mut w = BufWriter::new(file);
    let h = header(config);
    w.write_all(h.as_bytes()).map_err(io_err(&summary))?;
    summary.bytes_written = h.len() as u64;
    scan_into(
        config,
        &mut w,
        &resume_path(output),
        &summary_path(output),
        0,
        &mut summary,
    )?;
    Ok(summary)
}

/// Continues an interrupted scan after the candidate named in the resume
/// marker, dropping anything written past the last checkpoint.
pub fn scan_resume(config: &ScanConfig, output: &Path) -> Result<ScanSummary, ScanError> {
    config.validate()?;
    let marker = resume_path(output);
    let sfile = summary_path(output);
    let fresh = ScanSummary::default();
    let text = fs::read_to_string(&marker).map_err(io_err(&fresh))?;
    let last: usize = text
        .trim()
        .parse()
        .map_err(|_| ScanError::Config(format!("bad resume marker {text:?}")))?;
    let mut summary: ScanSummary = fs::read_to_string(&sfile)
        .ok()
        .and_then(|s| serde_json::from_str(&s).ok())
        .filter(|s: &ScanSummary| s.last_completed == Some(last))
        .ok_or_else(|| ScanError::Config("summary does not match the resume marker".into()))?;
    let file = OpenOptions::new().write(true).open(output).map_err(io_err(&summary))?;
    file.set_len(summary.bytes_written).map_err(io_err(&summary))?;
    let mut w = BufWriter::new(file);
    io::Seek::seek(&mut w, io::SeekFrom::End(0)).map_err(io_err(&summary))?;
    scan_into(config, &mut w, &marker, &sfile, last + 1, &mut summary)?;
    Ok(summary)
}
