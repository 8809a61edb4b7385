//! Warping degrees, triviality verdicts, welded unknotting bounds and the
//! weld tables of the six crossing knots.

mod reference;
mod table;

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::gaussdiag::{Basepoint, CrossingLabel, Orientation, Role, WeldedDiagram};
use crate::grouppres::{alexander_polynomial, coloring_count, dihedral_nontriviality, wirtinger, LaurentPolynomial};
use crate::moves::{replay, simplify, MoveInstance};

pub use reference::{compare_with_reference, reference_table, ReferenceClaim, ReferenceComparison, ReferenceRow, RowStatus};
pub use table::{table_6crossings, GroupClass, KnotTable, SizeSummary, SizeTable, TableRow, WeldTableReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("catalog has no entry `{0}`")]
    CatalogMissing(String),
}

/// Number of crossings first met at their Under pass when walking from `b`.
/// Forward visits `code[b], code[b+1], ...`; Reversed visits
/// `code[b-1], code[b-2], ...`.
pub fn warping_degree_at(d: &WeldedDiagram, b: Basepoint, orientation: Orientation) -> usize {
    let n = d.len();
    if n == 0 {
        return 0;
    }
    let mut seen = HashSet::new();
    let mut degree = 0;
    for i in 0..n {
        let p = match orientation {
            Orientation::Forward => d.at(b.0 + i),
            Orientation::Reversed => d.at(b.0 + 2 * n - 1 - i),
        };
        if seen.insert(p.crossing) && p.role == Role::Under {
            degree += 1;
        }
    }
    degree
}

/// Warping degree at every basepoint `0..len`.
pub fn warping_profile(d: &WeldedDiagram, orientation: Orientation) -> Vec<usize> {
    (0..d.len().max(1)).map(|b| warping_degree_at(d, Basepoint(b), orientation)).collect()
}

/// `(d(D), d(-D))`: minimal warping degree over basepoints in each
/// orientation. This is a property of the diagram, not of the welded knot.
pub fn warping_degree_diagram(d: &WeldedDiagram) -> (usize, usize) {
    let min = |o| warping_profile(d, o).into_iter().min().unwrap_or(0);
    (min(Orientation::Forward), min(Orientation::Reversed))
}

fn warping_zero(d: &WeldedDiagram) -> Option<(Basepoint, Orientation)> {
    [Orientation::Forward, Orientation::Reversed].into_iter().find_map(|o| {
        (0..d.len().max(1)).map(Basepoint).find(|&b| warping_degree_at(d, b, o) == 0).map(|b| (b, o))
    })
}

/// Searches the single welds of `d` for one whose diagram has the given
/// `(d(D), d(-D))`, lowest label first.
pub fn find_single_weld(d: &WeldedDiagram, target: (usize, usize)) -> Option<(CrossingLabel, WeldedDiagram)> {
    d.crossings().into_iter().find_map(|c| {
        let w = d.weld(c).expect("crossing taken from the diagram");
        (warping_degree_diagram(&w) == target).then_some((c, w))
    })
}

/// How one budget scalar is divided between the move search and the group
/// computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BudgetPolicy {
    pub simplify_states: usize,
    pub tietze_steps: usize,
    pub m_max: u64,
}

impl BudgetPolicy {
    pub fn from_budget(budget: usize) -> BudgetPolicy {
        let budget = budget.max(1);
        BudgetPolicy {
            simplify_states: (budget / 10 * 7 + budget % 10 * 7 / 10).max(1),
            tietze_steps: (budget / 10 * 3 + budget % 10 * 3 / 10).max(1),
            m_max: 21,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum UnknotWitness {
    WarpingZero { basepoint: Basepoint, orientation: Orientation },
    SimplifiedToEmpty { trace: Vec<MoveInstance> },
    SimplifiedThenWarpingZero { trace: Vec<MoveInstance>, basepoint: Basepoint, orientation: Orientation },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum KnotCertificate {
    Dihedral { modulus: u64 },
    AlexanderNontrivial { polynomial: LaurentPolynomial },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status")]
pub enum TrivialityVerdict {
    Unknot { witness: UnknotWitness },
    Knotted { certificate: KnotCertificate },
    Unknown { states_explored: usize, budget_exhausted: bool },
}

impl TrivialityVerdict {
    pub fn is_unknot(&self) -> bool {
        matches!(self, TrivialityVerdict::Unknot { .. })
    }

    pub fn is_knotted(&self) -> bool {
        matches!(self, TrivialityVerdict::Knotted { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, TrivialityVerdict::Unknown { .. })
    }

    /// Recomputes the evidence against `d`. Unknown verdicts carry none and
    /// always check.
    pub fn verify(&self, d: &WeldedDiagram) -> bool {
        let zero_at = |r: &WeldedDiagram, b: &Basepoint, o: &Orientation| {
            b.0 < r.len().max(1) && warping_degree_at(r, *b, *o) == 0
        };
        match self {
            TrivialityVerdict::Unknot { witness } => match witness {
                UnknotWitness::WarpingZero { basepoint, orientation } => zero_at(d, basepoint, orientation),
                UnknotWitness::SimplifiedToEmpty { trace } => replay(d, trace).is_ok_and(|r| r.is_empty()),
                UnknotWitness::SimplifiedThenWarpingZero { trace, basepoint, orientation } => {
                    replay(d, trace).is_ok_and(|r| zero_at(&r, basepoint, orientation))
                }
            },
            TrivialityVerdict::Knotted { certificate } => match certificate {
                KnotCertificate::Dihedral { modulus } => {
                    *modulus % 2 == 1 && coloring_count(d, *modulus).is_ok_and(|r| r.nontrivial_exists)
                }
                KnotCertificate::AlexanderNontrivial { polynomial } => alexander_polynomial(&wirtinger(d))
                    .is_ok_and(|a| !a.is_one() && a == *polynomial),
            },
            TrivialityVerdict::Unknown { .. } => true,
        }
    }
}

impl fmt::Display for TrivialityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let orient = |o: &Orientation| match o {
            Orientation::Forward => "forward",
            Orientation::Reversed => "reversed",
        };
        match self {
            TrivialityVerdict::Unknot { witness } => match witness {
                UnknotWitness::WarpingZero { basepoint, orientation } => {
                    write!(f, "Unknot(WarpingZero(basepoint {}, {}))", basepoint.0, orient(orientation))
                }
                UnknotWitness::SimplifiedToEmpty { trace } => {
                    write!(f, "Unknot(SimplifiedToEmpty({} moves))", trace.len())
                }
                UnknotWitness::SimplifiedThenWarpingZero { trace, basepoint, orientation } => write!(
                    f,
                    "Unknot(SimplifiedThenWarpingZero({} moves, basepoint {}, {}))",
                    trace.len(),
                    basepoint.0,
                    orient(orientation)
                ),
            },
            TrivialityVerdict::Knotted { certificate } => match certificate {
                KnotCertificate::Dihedral { modulus } => write!(f, "Knotted(Dihedral({modulus}))"),
                KnotCertificate::AlexanderNontrivial { polynomial } => {
                    write!(f, "Knotted(AlexanderNontrivial({polynomial}))")
                }
            },
            TrivialityVerdict::Unknown { states_explored, budget_exhausted } => {
                let why = if *budget_exhausted { "budget exhausted" } else { "search space exhausted" };
                write!(f, "Unknown({states_explored} states, {why})")
            }
        }
    }
}

fn knot_certificate(d: &WeldedDiagram, m_max: u64) -> Option<KnotCertificate> {
    if let Some(modulus) = dihedral_nontriviality(d, m_max) {
        return Some(KnotCertificate::Dihedral { modulus });
    }
    match alexander_polynomial(&wirtinger(d)) {
        Ok(a) if !a.is_one() => Some(KnotCertificate::AlexanderNontrivial { polynomial: a }),
        _ => None,
    }
}

/// Combines the warping degree, the move search and the group certificates.
/// The move search is skipped once a nontriviality certificate exists.
pub fn triviality_verdict(d: &WeldedDiagram, budget: usize) -> Result<TrivialityVerdict, AnalysisError> {
    let policy = BudgetPolicy::from_budget(budget);
    let cert = knot_certificate(d, policy.m_max);
    if let Some((basepoint, orientation)) = warping_zero(d) {
        if let Some(c) = cert {
            return Err(AnalysisError::InternalInconsistency(format!(
                "diagram `{d}` has warping degree 0 and certificate {c:?}"
            )));
        }
        return Ok(TrivialityVerdict::Unknot { witness: UnknotWitness::WarpingZero { basepoint, orientation } });
    }
    if let Some(certificate) = cert {
        return Ok(TrivialityVerdict::Knotted { certificate });
    }
    let report = simplify(d, policy.simplify_states);
    if report.result.is_empty() {
        return Ok(TrivialityVerdict::Unknot { witness: UnknotWitness::SimplifiedToEmpty { trace: report.trace } });
    }
    if let Some((basepoint, orientation)) = warping_zero(&report.result) {
        return Ok(TrivialityVerdict::Unknot {
            witness: UnknotWitness::SimplifiedThenWarpingZero { trace: report.trace, basepoint, orientation },
        });
    }
    Ok(TrivialityVerdict::Unknown { states_explored: report.states_explored, budget_exhausted: report.budget_exhausted })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct UnknottingBounds {
    pub lower: usize,
    pub upper: usize,
    pub unresolved_subsets: usize,
}

/// All `k`-subsets of `items`, lexicographic.
pub(crate) fn subsets<T: Copy>(items: &[T], k: usize) -> Vec<Vec<T>> {
    fn go<T: Copy>(items: &[T], k: usize, start: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            go(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(items, k, 0, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Bounds on the number of welds needed to reach the unknot, by weld
/// subsets of increasing size. Each subset gets the full `budget`.
pub fn welded_unknotting_bounds(d: &WeldedDiagram, budget: usize) -> Result<UnknottingBounds, AnalysisError> {
    let crossings = d.crossings();
    let mut lower = None;
    let mut unresolved = 0;
    for k in 0..=crossings.len() {
        let verdicts: Vec<TrivialityVerdict> = subsets(&crossings, k)
            .par_iter()
            .map(|s| triviality_verdict(&d.weld_set(s).expect("subset of the crossings"), budget))
            .collect::<Result<_, _>>()?;
        unresolved += verdicts.iter().filter(|v| v.is_unknown()).count();
        if lower.is_none() && verdicts.iter().any(|v| !v.is_knotted()) {
            lower = Some(k);
        }
        if verdicts.iter().any(TrivialityVerdict::is_unknot) {
            return Ok(UnknottingBounds { lower: lower.unwrap_or(k), upper: k, unresolved_subsets: unresolved });
        }
    }
    Err(AnalysisError::InternalInconsistency("welding every crossing did not give the unknot".into()))
}
