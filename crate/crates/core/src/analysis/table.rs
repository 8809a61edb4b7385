//! Weld tables of the six crossing knots.

use std::fmt::{self, Write as _};

use rayon::prelude::*;
use serde::Serialize;

use super::reference::{compare_with_reference, ReferenceComparison};
use super::{subsets, triviality_verdict, AnalysisError, BudgetPolicy, TrivialityVerdict};
use crate::families::CatalogEntry;
use crate::gaussdiag::CrossingLabel;
use crate::grouppres::{tietze_simplify, wirtinger, GroupFingerprint};

pub const SIX_CROSSING_KNOTS: [&str; 3] = ["6_1", "6_2", "6_3"];

/// What is certified about the knot group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GroupClass {
    #[serde(rename = "Z")]
    Z,
    #[serde(rename = "not Z")]
    NotZ,
    #[serde(rename = "unknown")]
    Unknown,
}

impl fmt::Display for GroupClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupClass::Z => "Z",
            GroupClass::NotZ => "not Z",
            GroupClass::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub welded: Vec<u32>,
    pub class: GroupClass,
    pub verdict: TrivialityVerdict,
    /// Tietze-simplified Wirtinger presentation.
    pub presentation: String,
    pub fingerprint: GroupFingerprint,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SizeSummary {
    pub z_certified: usize,
    pub non_z_certified: usize,
    pub unknown: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SizeTable {
    pub size: usize,
    pub rows: Vec<TableRow>,
    pub summary: SizeSummary,
}

impl SizeTable {
    pub fn row(&self, welded: &[u32]) -> Option<&TableRow> {
        self.rows.iter().find(|r| r.welded == welded)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KnotTable {
    pub name: String,
    pub sizes: Vec<SizeTable>,
}

impl KnotTable {
    pub fn size(&self, k: usize) -> Option<&SizeTable> {
        self.sizes.iter().find(|s| s.size == k)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WeldTableReport {
    pub knots: Vec<KnotTable>,
    pub reference: Vec<ReferenceComparison>,
}

impl WeldTableReport {
    pub fn knot(&self, name: &str) -> Option<&KnotTable> {
        self.knots.iter().find(|k| k.name == name)
    }
}

fn row(entry: &CatalogEntry, welded: &[CrossingLabel], policy: &BudgetPolicy, budget: usize) -> Result<TableRow, AnalysisError> {
    let d = entry.diagram.weld_set(welded).expect("subset of the crossings");
    let verdict = triviality_verdict(&d, budget)?;
    let simplified = tietze_simplify(&wirtinger(&d), policy.tietze_steps);
    let proved = simplified.generators.len() == 1 && simplified.relators.is_empty();
    let class = match (&verdict, proved) {
        (TrivialityVerdict::Knotted { certificate }, true) => {
            return Err(AnalysisError::InternalInconsistency(format!(
                "weld {welded:?} of {}: group reduces to Z but {certificate:?}",
                entry.name
            )))
        }
        (TrivialityVerdict::Knotted { .. }, false) => GroupClass::NotZ,
        (TrivialityVerdict::Unknot { .. }, _) | (_, true) => GroupClass::Z,
        _ => GroupClass::Unknown,
    };
    Ok(TableRow {
        welded: welded.iter().map(|c| c.0).collect(),
        class,
        verdict,
        presentation: simplified.to_string(),
        fingerprint: GroupFingerprint::of_diagram(&d),
    })
}

/// Every weld subset of the requested sizes of 6_1, 6_2 and 6_3, with the
/// comparison against the published tables.
pub fn table_6crossings(catalog: &[CatalogEntry], sizes: &[usize], budget: usize) -> Result<WeldTableReport, AnalysisError> {
    let policy = BudgetPolicy::from_budget(budget);
    let mut knots = Vec::new();
    for name in SIX_CROSSING_KNOTS {
        let entry = catalog
            .iter()
            .find(|e| e.name == name)
            .ok_or_else(|| AnalysisError::CatalogMissing(name.to_string()))?;
        let crossings = entry.diagram.crossings();
        let mut tables = Vec::new();
        for &k in sizes {
            let rows: Vec<TableRow> = subsets(&crossings, k)
                .par_iter()
                .map(|s| row(entry, s, &policy, budget))
                .collect::<Result<_, _>>()?;
            let mut summary = SizeSummary::default();
            for r in &rows {
                match r.class {
                    GroupClass::Z => summary.z_certified += 1,
                    GroupClass::NotZ => summary.non_z_certified += 1,
                    GroupClass::Unknown => summary.unknown += 1,
                }
            }
            tables.push(SizeTable { size: k, rows, summary });
        }
        knots.push(KnotTable { name: name.to_string(), sizes: tables });
    }
    let reference = knots.iter().map(compare_with_reference).collect();
    Ok(WeldTableReport { knots, reference })
}

impl WeldTableReport {
    /// Aligned plain text, one block per knot and weld count.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for k in &self.knots {
            for s in &k.sizes {
                let _ = writeln!(out, "{} with {} weld{}", k.name, s.size, if s.size == 1 { "" } else { "s" });
                let cells: Vec<[String; 5]> = s
                    .rows
                    .iter()
                    .map(|r| {
                        let set: Vec<String> = r.welded.iter().map(u32::to_string).collect();
                        [
                            format!("{{{}}}", set.join(",")),
                            r.class.to_string(),
                            r.verdict.to_string(),
                            r.fingerprint.summary(),
                            r.presentation.clone(),
                        ]
                    })
                    .collect();
                let head = ["welded", "group", "verdict", "fingerprint", "presentation"].map(String::from);
                write_aligned(&mut out, &head, &cells);
                let _ = writeln!(
                    out,
                    "  Z: {}, not Z: {}, unknown: {}\n",
                    s.summary.z_certified, s.summary.non_z_certified, s.summary.unknown
                );
            }
        }
        for c in &self.reference {
            out.push_str(&c.to_text());
        }
        out
    }
}

pub(crate) fn write_aligned<const N: usize>(out: &mut String, head: &[String; N], rows: &[[String; N]]) {
    let mut widths: [usize; N] = std::array::from_fn(|i| head[i].len());
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    for r in std::iter::once(head).chain(rows) {
        let mut line = String::from(" ");
        for (i, c) in r.iter().enumerate() {
            if i + 1 == N {
                let _ = write!(line, " {c}");
            } else {
                let _ = write!(line, " {c:<w$}", w = widths[i]);
            }
        }
        let _ = writeln!(out, "{}", line.trim_end());
    }
}
