//! Verification of published values against fresh computations.
//!
//! Expected values live in an embedded data file and are never derived from
//! the engine. Each row is computed exactly within a time budget; a row that
//! runs out of time falls back to a Monte Carlo estimate and passes if the
//! interval contains the expected value.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::Deserialize;

use crate::catalog::{build_aut_pair, AlmostSimplePair, GroupSpec};
use crate::error::{Error, Result};
use crate::fraction::ExactFraction;
use crate::nu::{self, Budget, Estimate, OuterQuotient, TauEntry};
use crate::perm;

const EXPECTED: &str = include_str!("../data/expected_values.toml");

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableId {
    /// `ν̃(S)` for the sporadic family of simple groups.
    One,
    /// `τ(T, PSL(3,4))` for the nilpotent extensions.
    Two,
    /// `ν̃(Alt(n))` for `5 ≤ n ≤ 9`.
    Alternating,
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableId::One => "1",
            TableId::Two => "2",
            TableId::Alternating => "alt",
        })
    }
}

impl FromStr for TableId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1" => Ok(TableId::One),
            "2" => Ok(TableId::Two),
            "alt" | "alternating" => Ok(TableId::Alternating),
            _ => Err(Error::Parse(format!("unknown table {s:?}; expected 1, 2 or alt"))),
        }
    }
}

/// One published value.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedRow {
    pub label: String,
    pub spec: String,
    pub expected: String,
    #[serde(default)]
    pub approx: Option<String>,
    pub location: String,
    #[serde(default)]
    pub remark: Option<String>,
    #[serde(default)]
    pub quotient_order: Option<u64>,
    #[serde(default)]
    pub involution_centralizer: Option<u64>,
}

impl ExpectedRow {
    pub fn expected_value(&self) -> Result<ExactFraction> {
        self.expected.parse()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ExpectedFile {
    #[allow(dead_code)]
    version: u32,
    table1: Vec<ExpectedRow>,
    table2: Vec<ExpectedRow>,
    alternating: Vec<ExpectedRow>,
}

/// The embedded rows of a table.
pub fn expected_rows(table: TableId) -> Result<Vec<ExpectedRow>> {
    let file: ExpectedFile =
        toml::from_str(EXPECTED).map_err(|e| Error::Parse(format!("expected values: {e}")))?;
    Ok(match table {
        TableId::One => file.table1,
        TableId::Two => file.table2,
        TableId::Alternating => file.alternating,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowStatus {
    ExactMatch,
    CiConsistent,
    Mismatch,
    SkippedBudget,
    MissingAsset,
}

impl fmt::Display for RowStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RowStatus::ExactMatch => "exact-match",
            RowStatus::CiConsistent => "ci-consistent",
            RowStatus::Mismatch => "mismatch",
            RowStatus::SkippedBudget => "skipped-budget",
            RowStatus::MissingAsset => "missing-asset",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Computed {
    Exact(ExactFraction),
    Estimated(Estimate),
    Unavailable,
}

#[derive(Clone, Debug)]
pub struct RowVerdict {
    pub label: String,
    pub spec: String,
    pub location: String,
    pub expected: ExactFraction,
    pub computed: Computed,
    pub status: RowStatus,
    pub witness: Option<String>,
    pub note: Option<String>,
    pub elapsed: Duration,
}

#[derive(Clone, Debug)]
pub struct TableVerdict {
    pub table: TableId,
    pub rows: Vec<RowVerdict>,
    /// Computed contexts that no published row covers, and summary lines.
    pub notes: Vec<String>,
}

impl TableVerdict {
    pub fn has_mismatch(&self) -> bool {
        self.rows.iter().any(|r| r.status == RowStatus::Mismatch)
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Time allowed for the exact computation of one row.
    pub row_budget: Duration,
    pub max_pairs: u64,
    /// Monte Carlo samples for rows over budget; 0 disables the fallback.
    pub fallback_samples: u64,
    pub fallback_confidence: f64,
    pub seed: u64,
    /// Restrict to rows whose label is listed.
    pub only: Option<Vec<String>>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            row_budget: Duration::from_secs(60),
            max_pairs: nu::DEFAULT_PAIR_BUDGET,
            fallback_samples: 1_000_000,
            fallback_confidence: 0.99,
            seed: 0,
            only: None,
        }
    }
}

impl VerifyOptions {
    fn budget(&self) -> Budget {
        Budget {
            max_pairs: self.max_pairs,
            deadline: None,
        }
        .with_time_limit(self.row_budget)
    }

    fn selected(&self, row: &ExpectedRow) -> bool {
        self.only.as_ref().is_none_or(|labels| labels.contains(&row.label))
    }
}

fn exact_status(expected: &ExactFraction, computed: &ExactFraction) -> RowStatus {
    if expected == computed {
        RowStatus::ExactMatch
    } else {
        RowStatus::Mismatch
    }
}

fn load_pair(spec: &str) -> Result<AlmostSimplePair> {
    build_aut_pair(&spec.parse::<GroupSpec>()?)
}

/// Recomputes every selected row of a table.
pub fn verify_table(table: TableId, opts: &VerifyOptions) -> Result<TableVerdict> {
    let rows = expected_rows(table)?;
    match table {
        TableId::One | TableId::Alternating => {
            let verdicts = rows
                .iter()
                .filter(|r| opts.selected(r))
                .map(|r| verify_nu_tilde_row(r, opts))
                .collect::<Result<Vec<_>>>()?;
            Ok(TableVerdict {
                table,
                rows: verdicts,
                notes: Vec::new(),
            })
        }
        TableId::Two => verify_extension_rows(&rows, opts),
    }
}

fn verify_nu_tilde_row(row: &ExpectedRow, opts: &VerifyOptions) -> Result<RowVerdict> {
    let start = Instant::now();
    let expected = row.expected_value()?;
    let mut verdict = RowVerdict {
        label: row.label.clone(),
        spec: row.spec.clone(),
        location: row.location.clone(),
        expected: expected.clone(),
        computed: Computed::Unavailable,
        status: RowStatus::SkippedBudget,
        witness: None,
        note: row.remark.clone(),
        elapsed: Duration::ZERO,
    };
    let pair = match load_pair(&row.spec) {
        Ok(p) => p,
        Err(e @ Error::Io { .. }) => {
            verdict.status = RowStatus::MissingAsset;
            verdict.note = Some(e.to_string());
            return Ok(verdict);
        }
        Err(e) => return Err(e),
    };
    match nu::nu_tilde(&pair, &opts.budget()) {
        Ok(report) => {
            verdict.status = exact_status(&expected, &report.value);
            verdict.computed = Computed::Exact(report.value);
            verdict.witness = Some(report.witness.describe());
        }
        Err(Error::BudgetExceeded(why)) => {
            verdict.note = Some(format!("exact computation stopped: {why}"));
            if opts.fallback_samples > 0 {
                let (estimate, witness) = nu::nu_tilde_monte_carlo(
                    &pair,
                    opts.fallback_samples,
                    opts.seed,
                    opts.fallback_confidence,
                )?;
                verdict.status = if estimate.contains(expected.to_f64()) {
                    RowStatus::CiConsistent
                } else {
                    RowStatus::Mismatch
                };
                verdict.computed = Computed::Estimated(estimate);
                verdict.witness = Some(witness);
            }
        }
        Err(e) => return Err(e),
    }
    verdict.elapsed = start.elapsed();
    Ok(verdict)
}

/// Order of the centralizer in `S` of an involution in the coset `S·g`,
/// if the coset contains one.
pub fn coset_involution_centralizer(pair: &AlmostSimplePair, g: &perm::Permutation) -> Result<Option<u64>> {
    let socle = pair.socle.elements()?;
    let mut t = vec![0u8; g.degree()];
    for s in socle.iter() {
        perm::compose_into(s, g.images(), &mut t);
        if !perm::is_identity(&t) && perm::order_of(&t) == 2 {
            let count = socle.iter().filter(|y| perm::commute(y, &t)).count();
            return Ok(Some(count as u64));
        }
    }
    Ok(None)
}

fn extension_signature(outer: &OuterQuotient<'_>, pair: &AlmostSimplePair, entry: &TauEntry) -> Result<(u64, Option<u64>)> {
    let order = entry.report.quotient_order;
    if order != 2 {
        return Ok((order, None));
    }
    let g = outer.map().lift(&entry.quotient_generators.1);
    Ok((order, coset_involution_centralizer(pair, &g)?))
}

fn verify_extension_rows(rows: &[ExpectedRow], opts: &VerifyOptions) -> Result<TableVerdict> {
    let start = Instant::now();
    let selected: Vec<&ExpectedRow> = rows.iter().filter(|r| opts.selected(r)).collect();
    let mut verdicts = Vec::new();
    let Some(first) = selected.first() else {
        return Ok(TableVerdict {
            table: TableId::Two,
            rows: verdicts,
            notes: Vec::new(),
        });
    };
    let blank = |row: &ExpectedRow, status, note: Option<String>| -> Result<RowVerdict> {
        Ok(RowVerdict {
            label: row.label.clone(),
            spec: row.spec.clone(),
            location: row.location.clone(),
            expected: row.expected_value()?,
            computed: Computed::Unavailable,
            status,
            witness: None,
            note,
            elapsed: Duration::ZERO,
        })
    };
    let pair = match load_pair(&first.spec) {
        Ok(p) => p,
        Err(e @ Error::Io { .. }) => {
            for row in &selected {
                verdicts.push(blank(row, RowStatus::MissingAsset, Some(e.to_string()))?);
            }
            return Ok(TableVerdict {
                table: TableId::Two,
                rows: verdicts,
                notes: Vec::new(),
            });
        }
        Err(e) => return Err(e),
    };
    let report = match nu::nu_tilde(&pair, &opts.budget()) {
        Ok(r) => r,
        Err(Error::BudgetExceeded(why)) => {
            for row in &selected {
                verdicts.push(blank(row, RowStatus::SkippedBudget, Some(why.clone()))?);
            }
            return Ok(TableVerdict {
                table: TableId::Two,
                rows: verdicts,
                notes: Vec::new(),
            });
        }
        Err(e) => return Err(e),
    };
    let outer = OuterQuotient::new(&pair)?;
    let mut signatures = Vec::new();
    for entry in &report.entries {
        signatures.push(extension_signature(&outer, &pair, entry)?);
    }
    let mut used = vec![false; report.entries.len()];
    for row in &selected {
        let wanted = (row.quotient_order.unwrap_or(1), row.involution_centralizer);
        let found = signatures.iter().position(|s| *s == wanted);
        let verdict = match found {
            Some(i) => {
                used[i] = true;
                let entry = &report.entries[i];
                let expected = row.expected_value()?;
                RowVerdict {
                    status: exact_status(&expected, &entry.report.value),
                    computed: Computed::Exact(entry.report.value.clone()),
                    witness: Some(entry.describe()),
                    elapsed: start.elapsed(),
                    ..blank(row, RowStatus::Mismatch, row.remark.clone())?
                }
            }
            None => blank(
                row,
                RowStatus::Mismatch,
                Some("no computed context has this signature".into()),
            )?,
        };
        verdicts.push(verdict);
    }
    let mut notes: Vec<String> = report
        .entries
        .iter()
        .zip(&used)
        .filter(|(_, &u)| !u)
        .map(|(e, _)| format!("unlisted context: {} gives {}", e.describe(), e.report.value))
        .collect();
    notes.push(format!(
        "maximum over all contexts: {} ({})",
        report.value,
        report.witness.describe()
    ));
    if report.skipped_non_nilpotent > 0 {
        notes.push(format!(
            "{} classes with non-nilpotent T/S skipped (they contribute 0)",
            report.skipped_non_nilpotent
        ));
    }
    Ok(TableVerdict {
        table: TableId::Two,
        rows: verdicts,
        notes,
    })
}
