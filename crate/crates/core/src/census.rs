//! Census ingestion and verification: named signed Gauss codes, per-entry
//! invariant/bound reports, and replay of the built-in unknotting sequences
//! for the eight four-crossing knots whose forbidden numbers they settle.
//!
//! Census files are UTF-8 text with one `name<TAB>code` entry per line; `#`
//! starts a comment. Expected-value files carry `name<TAB>ow<TAB>f` rows
//! where `f` is an exact value (`2`) or an interval (`1-2`).

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use thiserror::Error;

use crate::bounds::{best_bounds, BoundReport};
use crate::diagram::GaussDiagram;
use crate::moves::MoveSequence;
use crate::search::{verify_sequence, VerifyOutcome};

#[derive(Debug, Error)]
pub enum CensusError {
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
}

/// A named census knot with its signed Gauss code.
#[derive(Clone, Debug)]
pub struct CensusEntry {
    pub name: String,
    pub code: String,
    pub diagram: GaussDiagram,
}

/// Published values to compare a census run against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpectedRow {
    pub name: String,
    /// Lower bound from the odd writhe polynomial.
    pub expected_ow_lb: u64,
    /// Forbidden number, exact when the two ends coincide.
    pub expected_f: (u64, u64),
}

/// Loads a census file: one `name<TAB>code` per nonempty non-comment line.
pub fn load_census(path: &Path) -> Result<Vec<CensusEntry>, CensusError> {
    let text = std::fs::read_to_string(path)?;
    let mut entries = Vec::new();
    let mut names = std::collections::BTreeSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (name, code) = trimmed.split_once('\t').ok_or(CensusError::Malformed {
            line,
            reason: "expected name<TAB>code".to_string(),
        })?;
        let name = name.trim();
        let code = code.trim();
        if name.is_empty() {
            return Err(CensusError::Malformed {
                line,
                reason: "empty name".to_string(),
            });
        }
        if !names.insert(name.to_string()) {
            return Err(CensusError::Malformed {
                line,
                reason: format!("duplicate name {name:?}"),
            });
        }
        let diagram = GaussDiagram::parse(code).map_err(|e| CensusError::Malformed {
            line,
            reason: format!("bad code: {e}"),
        })?;
        entries.push(CensusEntry {
            name: name.to_string(),
            code: code.to_string(),
            diagram,
        });
    }
    Ok(entries)
}

/// Loads expected rows: `name<TAB>ow<TAB>f`, `f` either `x` or `lo-hi`.
pub fn load_expected(path: &Path) -> Result<Vec<ExpectedRow>, CensusError> {
    let text = std::fs::read_to_string(path)?;
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split('\t').map(str::trim).collect();
        if fields.len() != 3 {
            return Err(CensusError::Malformed {
                line,
                reason: "expected name<TAB>ow<TAB>f".to_string(),
            });
        }
        let bad = |what: &str| CensusError::Malformed {
            line,
            reason: format!("bad {what} field"),
        };
        let expected_ow_lb: u64 = fields[1].parse().map_err(|_| bad("ow"))?;
        let expected_f = match fields[2].split_once('-') {
            Some((lo, hi)) => (
                lo.parse().map_err(|_| bad("f"))?,
                hi.parse().map_err(|_| bad("f"))?,
            ),
            None => {
                let v: u64 = fields[2].parse().map_err(|_| bad("f"))?;
                (v, v)
            }
        };
        if expected_f.0 > expected_f.1 {
            return Err(bad("f interval"));
        }
        rows.push(ExpectedRow {
            name: fields[0].to_string(),
            expected_ow_lb,
            expected_f,
        });
    }
    Ok(rows)
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportRow {
    pub name: String,
    pub crossings: usize,
    pub odd_writhe: i64,
    pub owp: String,
    pub ow_lb: u64,
    pub lower: u64,
    pub upper: u64,
    pub exact: Option<u64>,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    pub rows: Vec<ReportRow>,
    /// One line per expected-row mismatch; empty when everything agrees.
    pub diffs: Vec<String>,
    /// Expected names with no census entry.
    pub missing: Vec<String>,
    pub summary: String,
}

fn owp_bound(report: &BoundReport) -> u64 {
    report.owp.abs_coeff_sum().div_ceil(2)
}

/// Computes one row per entry (in input order) and, when expected rows are
/// supplied, a diff section. Output generation is deterministic.
pub fn report(entries: &[CensusEntry], expected: Option<&[ExpectedRow]>) -> CensusReport {
    let mut rows = Vec::with_capacity(entries.len());
    for entry in entries {
        let b = best_bounds(&entry.diagram);
        rows.push(ReportRow {
            name: entry.name.clone(),
            crossings: b.crossings,
            odd_writhe: b.odd_writhe,
            owp: b.owp.to_string(),
            ow_lb: owp_bound(&b),
            lower: b.lower,
            upper: b.upper,
            exact: b.exact,
            warnings: b.warnings.clone(),
        });
    }
    let mut diffs = Vec::new();
    let mut missing = Vec::new();
    let mut matched = 0usize;
    if let Some(expected) = expected {
        for exp in expected {
            let Some(row) = rows.iter().find(|r| r.name == exp.name) else {
                missing.push(exp.name.clone());
                continue;
            };
            let mut bad = Vec::new();
            if row.ow_lb != exp.expected_ow_lb {
                bad.push(format!(
                    "OW bound {} != expected {}",
                    row.ow_lb, exp.expected_ow_lb
                ));
            }
            // the computed interval must be consistent with the published one
            if exp.expected_f.1 < row.lower || exp.expected_f.0 > row.upper {
                bad.push(format!(
                    "F interval [{}, {}] incompatible with expected [{}, {}]",
                    row.lower, row.upper, exp.expected_f.0, exp.expected_f.1
                ));
            }
            if bad.is_empty() {
                matched += 1;
            } else {
                diffs.push(format!("{}: {}", exp.name, bad.join("; ")));
            }
        }
    }
    let summary = match expected {
        Some(expected) => format!(
            "{} entries; {} expected rows: {} matched, {} mismatched, {} missing",
            rows.len(),
            expected.len(),
            matched,
            diffs.len(),
            missing.len()
        ),
        None => format!("{} entries", rows.len()),
    };
    CensusReport {
        rows,
        diffs,
        missing,
        summary,
    }
}

impl CensusReport {
    /// Aligned-text table: name, crossing count, odd writhe, polynomial, the
    /// polynomial lower bound, and the forbidden-number interval in
    /// `lower-upper` format (a single value when exact).
    pub fn text(&self) -> String {
        let headers = ["K", "c", "w_o", "W_K(t)", "OW", "F(K)"];
        let mut cells: Vec<[String; 6]> = Vec::with_capacity(self.rows.len());
        for r in &self.rows {
            let f = match r.exact {
                Some(v) => v.to_string(),
                None => format!("{}-{}", r.lower, r.upper),
            };
            cells.push([
                r.name.clone(),
                r.crossings.to_string(),
                r.odd_writhe.to_string(),
                r.owp.clone(),
                r.ow_lb.to_string(),
                f,
            ]);
        }
        let mut widths = headers.map(str::len);
        for row in &cells {
            for (w, cell) in widths.iter_mut().zip(row.iter()) {
                *w = (*w).max(cell.len());
            }
        }
        let mut out = String::new();
        let fmt_row = |out: &mut String, row: &[String; 6]| {
            for (i, (cell, w)) in row.iter().zip(widths.iter()).enumerate() {
                if i > 0 {
                    out.push_str("  ");
                }
                let _ = write!(out, "{cell:<w$}");
            }
            while out.ends_with(' ') {
                out.pop();
            }
            out.push('\n');
        };
        fmt_row(&mut out, &headers.map(str::to_string));
        for row in &cells {
            fmt_row(&mut out, row);
        }
        for r in &self.rows {
            for w in &r.warnings {
                let _ = writeln!(out, "warning [{}]: {}", r.name, w);
            }
        }
        if !self.diffs.is_empty() {
            out.push_str("\ndiffs:\n");
            for d in &self.diffs {
                let _ = writeln!(out, "  {d}");
            }
        }
        if !self.missing.is_empty() {
            let _ = writeln!(out, "missing entries: {}", self.missing.join(", "));
        }
        out.push('\n');
        out.push_str(&self.summary);
        out.push('\n');
        out
    }

    /// One JSON object per row, then a summary object.
    pub fn json_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            let _ = writeln!(out, "{}", serde_json::to_string(r).unwrap());
        }
        let tail = serde_json::json!({
            "summary": self.summary,
            "diffs": self.diffs,
            "missing": self.missing,
        });
        let _ = writeln!(out, "{tail}");
        out
    }

    pub fn is_clean(&self) -> bool {
        self.diffs.is_empty() && self.missing.is_empty()
    }
}

/// The built-in unknotting sequences for the eight four-crossing census
/// knots, with the forbidden cost each realizes.
pub fn builtin_sequences() -> Vec<(&'static str, MoveSequence, u32)> {
    const SEQ_426: &str = "FO(1,2), FU(2,4), R1(1), R1(4), R2(2,3)";
    const SEQ_441: &str = "FO(1,2), R1(1), R2(2,4), R1(3)";
    const SEQ_455: &str = "FO(1,2), R1(1), R1(2), R2(3,4)";
    const SEQ_459: &str = "FU(2,3), R2(1,2), R2(3,4)";
    let table = [
        ("4.26", SEQ_426, 2),
        ("4.41", SEQ_441, 1),
        ("4.55", SEQ_455, 1),
        ("4.56", SEQ_455, 1),
        ("4.58", SEQ_441, 1),
        ("4.59", SEQ_459, 1),
        ("4.76", SEQ_455, 1),
        ("4.77", SEQ_455, 1),
    ];
    table
        .into_iter()
        .map(|(name, seq, cost)| (name, seq.parse().expect("built-in notation parses"), cost))
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct SequenceVerdict {
    pub name: String,
    pub valid: bool,
    pub forbidden_cost: u32,
    pub expected_cost: u32,
    pub failed_at: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Table3Report {
    pub verdicts: Vec<SequenceVerdict>,
    /// Names of the eight knots absent from the census.
    pub missing: Vec<String>,
}

impl Table3Report {
    pub fn all_valid(&self) -> bool {
        self.missing.is_empty()
            && self
                .verdicts
                .iter()
                .all(|v| v.valid && v.forbidden_cost == v.expected_cost)
    }
}

/// Replays each built-in sequence against its census entry.
pub fn verify_table3(entries: &[CensusEntry]) -> Table3Report {
    let mut verdicts = Vec::new();
    let mut missing = Vec::new();
    for (name, seq, expected_cost) in builtin_sequences() {
        let Some(entry) = entries.iter().find(|e| e.name == name) else {
            missing.push(name.to_string());
            continue;
        };
        let VerifyOutcome {
            valid_unknotting,
            forbidden_cost,
            failed_at,
            ..
        } = verify_sequence(&entry.diagram, &seq);
        verdicts.push(SequenceVerdict {
            name: name.to_string(),
            valid: valid_unknotting,
            forbidden_cost,
            expected_cost,
            failed_at,
        });
    }
    Table3Report { verdicts, missing }
}
