//! The published weld tables of 6_1, 6_2 and 6_3, and their comparison with
//! computed tables.
//!
//! The published crossing numbering cannot be recovered from the drawings,
//! so every relabeling of the six crossings is tried and the one agreeing
//! with most rows is kept (ties go to the lexicographically least).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;

use super::table::{write_aligned, GroupClass, KnotTable};
use super::{subsets, TrivialityVerdict};
use crate::grouppres::{GroupFingerprint, Presentation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ReferenceClaim {
    /// The group is infinite cyclic.
    InfiniteCyclic,
    /// The welded knot is trivial.
    WeldedUnknot,
    /// A presentation of a group that is not infinite cyclic.
    Presentation(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReferenceRow {
    pub knot: &'static str,
    pub welded: Vec<u32>,
    pub claim: ReferenceClaim,
}

const BRAID: &str = "< a, b | a b a B A B >";

/// The published rows. Rows claiming every subset of a size are expanded.
/// Rows appear in publication order, repeats included.
pub fn reference_table() -> Vec<ReferenceRow> {
    use ReferenceClaim::*;
    let p = |s: &str| Presentation(s.to_string());
    let all = |k: usize| subsets(&[1u32, 2, 3, 4, 5, 6], k);
    let mut rows = Vec::new();
    let mut push = |knot: &'static str, sets: Vec<Vec<u32>>, claim: ReferenceClaim| {
        for welded in sets {
            rows.push(ReferenceRow { knot, welded, claim: claim.clone() });
        }
    };
    for knot in ["6_1", "6_2", "6_3"] {
        push(knot, all(1), InfiniteCyclic);
    }
    let v = |s: &[&[u32]]| s.iter().map(|x| x.to_vec()).collect::<Vec<_>>();

    push(
        "6_1",
        v(&[&[1, 3], &[1, 4], &[1, 5], &[1, 6], &[2, 3], &[2, 4], &[2, 5], &[2, 6], &[3, 5], &[4, 6], &[5, 6]]),
        InfiniteCyclic,
    );
    push("6_1", v(&[&[1, 2]]), WeldedUnknot);
    push("6_1", v(&[&[3, 4], &[4, 5], &[5, 6]]), p("< a, b | A b a B a b A B a B >"));
    push("6_1", v(&[&[3, 6]]), p("< a, b | B a b A b A >"));
    push("6_1", all(3), InfiniteCyclic);

    push(
        "6_2",
        v(&[&[1, 3], &[1, 4], &[1, 5], &[2, 3], &[2, 5], &[2, 6], &[3, 4], &[3, 5], &[3, 6], &[4, 6]]),
        InfiniteCyclic,
    );
    push("6_2", v(&[&[2, 4]]), p("< a, b | a a B B, B a b A b A >"));
    push("6_2", v(&[&[4, 5], &[5, 6]]), p("< a, b | A b A B a b A b a B >"));
    push("6_2", v(&[&[2, 4]]), p("< a, b | b b A A, A b a B a B >"));
    push("6_2", v(&[&[5, 6]]), p(BRAID));
    push(
        "6_2",
        v(&[
            &[1, 3, 4], &[1, 3, 5], &[1, 3, 6], &[1, 4, 5], &[1, 4, 6], &[1, 5, 6],
            &[1, 2, 4], &[2, 3, 5], &[2, 3, 6], &[2, 4, 5], &[2, 5, 6], &[3, 4, 5], &[3, 4, 6], &[4, 5, 6],
        ]),
        InfiniteCyclic,
    );
    push("6_2", v(&[&[1, 2, 3], &[1, 2, 5], &[1, 2, 6]]), p(BRAID));
    push("6_2", v(&[&[2, 3, 4]]), p("< a, b | a a B B, A b a B a B >"));
    push("6_2", v(&[&[2, 4, 6]]), p("< a, b | b a B a B A >"));

    push(
        "6_3",
        v(&[
            &[1, 3], &[1, 4], &[1, 5], &[1, 6], &[2, 3], &[2, 5], &[2, 6],
            &[3, 4], &[3, 5], &[3, 6], &[4, 5], &[4, 6],
        ]),
        InfiniteCyclic,
    );
    push("6_3", v(&[&[1, 2]]), p("< a, b | a b A B A b >"));
    push("6_3", v(&[&[2, 4]]), p("< a, b | b b A A, A b a B a B >"));
    push("6_3", v(&[&[5, 6]]), p(BRAID));
    push("6_3", v(&[&[1, 2, 6], &[2, 3, 5], &[2, 3, 6], &[3, 4, 6]]), InfiniteCyclic);
    push("6_3", v(&[&[1, 2, 3], &[1, 2, 4], &[1, 2, 5], &[4, 5, 6]]), p(BRAID));
    push("6_3", v(&[&[2, 3, 4]]), p("< a, b | a a B B, a B a B A b >"));
    push("6_3", v(&[&[3, 4, 5]]), p("< a, b | a a B B, a B a B a B >"));
    rows
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RowStatus {
    /// Same class, and for presentations the same fingerprint.
    Agrees,
    /// Both not infinite cyclic, with different fingerprints.
    FingerprintDiffers,
    /// One side certifies Z, the other not Z.
    Disagrees,
    /// Nothing is certified for the computed row.
    Undecided,
    /// The subset is not in the published table.
    Unlisted,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComparedRow {
    /// Published crossing numbers; empty for unlisted rows.
    pub reference_welded: Vec<u32>,
    /// Catalog crossing numbers after relabeling.
    pub welded: Vec<u32>,
    pub claim: Option<ReferenceClaim>,
    pub class: GroupClass,
    pub status: RowStatus,
    /// The subset is listed more than once.
    pub repeated: bool,
}

impl ComparedRow {
    pub fn flagged(&self) -> bool {
        self.status != RowStatus::Agrees || self.repeated
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SizeComparison {
    pub size: usize,
    /// Distinct published subsets claimed not infinite cyclic.
    pub reference_non_z: usize,
    pub computed_non_z: usize,
    pub flagged: usize,
    pub rows: Vec<ComparedRow>,
}

impl SizeComparison {
    /// Counts agree, or every difference is accounted for by flagged rows.
    pub fn consistent(&self) -> bool {
        self.reference_non_z == self.computed_non_z || self.flagged >= self.reference_non_z.abs_diff(self.computed_non_z)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReferenceComparison {
    pub knot: String,
    /// `relabeling[i - 1]` is the catalog crossing playing published crossing `i`.
    pub relabeling: Vec<u32>,
    pub sizes: Vec<SizeComparison>,
}

struct Computed<'a> {
    class: GroupClass,
    verdict: &'a TrivialityVerdict,
    fingerprint: &'a GroupFingerprint,
}

fn status(claim: &ReferenceClaim, c: &Computed, claim_fp: Option<&GroupFingerprint>) -> RowStatus {
    match (claim, c.class) {
        (_, GroupClass::Unknown) => RowStatus::Undecided,
        (ReferenceClaim::InfiniteCyclic, GroupClass::Z) => RowStatus::Agrees,
        (ReferenceClaim::WeldedUnknot, GroupClass::Z) => {
            if c.verdict.is_unknot() {
                RowStatus::Agrees
            } else {
                RowStatus::Undecided
            }
        }
        (ReferenceClaim::Presentation(_), GroupClass::NotZ) => {
            if claim_fp == Some(c.fingerprint) {
                RowStatus::Agrees
            } else {
                RowStatus::FingerprintDiffers
            }
        }
        _ => RowStatus::Disagrees,
    }
}

fn permutations(n: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur: Vec<u32> = (1..=n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..cur.len().saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..cur.len()).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
}

fn fingerprint_of(claim: &ReferenceClaim) -> Option<GroupFingerprint> {
    match claim {
        ReferenceClaim::Presentation(s) => {
            let p: Presentation = s.parse().expect("reference presentations parse");
            GroupFingerprint::of_presentation(&p).ok()
        }
        _ => None,
    }
}

/// Matches a computed knot table against the published rows for the same
/// knot and the sizes present in the table.
pub fn compare_with_reference(table: &KnotTable) -> ReferenceComparison {
    let reference: Vec<ReferenceRow> = reference_table()
        .into_iter()
        .filter(|r| r.knot == table.name && table.size(r.welded.len()).is_some())
        .collect();
    let fps: Vec<Option<GroupFingerprint>> = reference.iter().map(|r| fingerprint_of(&r.claim)).collect();
    let mut computed: BTreeMap<Vec<u32>, Computed> = BTreeMap::new();
    for s in &table.sizes {
        for r in &s.rows {
            computed.insert(r.welded.clone(), Computed { class: r.class, verdict: &r.verdict, fingerprint: &r.fingerprint });
        }
    }
    let labels: BTreeSet<u32> = table.sizes.iter().flat_map(|s| s.rows.iter().flat_map(|r| r.welded.iter().copied())).collect();
    let relabel = |sigma: &[u32], set: &[u32]| {
        let mut v: Vec<u32> = set.iter().map(|&i| sigma[i as usize - 1]).collect();
        v.sort_unstable();
        v
    };
    let n = labels.len().max(6) as u32;
    let mut best: Option<((usize, usize), Vec<u32>)> = None;
    for sigma in permutations(n) {
        let mut score = (0, 0);
        for (r, fp) in reference.iter().zip(&fps) {
            if let Some(c) = computed.get(&relabel(&sigma, &r.welded)) {
                match status(&r.claim, c, fp.as_ref()) {
                    RowStatus::Agrees => score = (score.0 + 1, score.1 + 1),
                    RowStatus::FingerprintDiffers => score.0 += 1,
                    _ => {}
                }
            }
        }
        if best.as_ref().map_or(true, |(b, _)| score > *b) {
            best = Some((score, sigma));
        }
    }
    let sigma = best.map(|(_, s)| s).unwrap_or_default();
    let mut counts: BTreeMap<&[u32], usize> = BTreeMap::new();
    for r in &reference {
        *counts.entry(&r.welded).or_default() += 1;
    }
    let mut sizes = Vec::new();
    for s in &table.sizes {
        let mut rows = Vec::new();
        let mut listed = BTreeSet::new();
        let mut reference_non_z = BTreeSet::new();
        for (r, fp) in reference.iter().zip(&fps).filter(|(r, _)| r.welded.len() == s.size) {
            let welded = relabel(&sigma, &r.welded);
            let Some(c) = computed.get(&welded) else { continue };
            if matches!(r.claim, ReferenceClaim::Presentation(_)) {
                reference_non_z.insert(welded.clone());
            }
            listed.insert(welded.clone());
            rows.push(ComparedRow {
                reference_welded: r.welded.clone(),
                welded,
                claim: Some(r.claim.clone()),
                class: c.class,
                status: status(&r.claim, c, fp.as_ref()),
                repeated: counts[r.welded.as_slice()] > 1,
            });
        }
        for r in &s.rows {
            if !listed.contains(&r.welded) {
                rows.push(ComparedRow {
                    reference_welded: Vec::new(),
                    welded: r.welded.clone(),
                    claim: None,
                    class: r.class,
                    status: RowStatus::Unlisted,
                    repeated: false,
                });
            }
        }
        sizes.push(SizeComparison {
            size: s.size,
            reference_non_z: reference_non_z.len(),
            computed_non_z: s.summary.non_z_certified,
            flagged: rows.iter().filter(|r| r.flagged()).count(),
            rows,
        });
    }
    ReferenceComparison { knot: table.name.clone(), relabeling: sigma, sizes }
}

impl ReferenceComparison {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let map: Vec<String> = self.relabeling.iter().enumerate().map(|(i, c)| format!("c{}->{}", i + 1, c)).collect();
        let _ = writeln!(out, "{} against the published table ({})", self.knot, map.join(" "));
        let set = |v: &[u32]| format!("{{{}}}", v.iter().map(u32::to_string).collect::<Vec<_>>().join(","));
        for s in &self.sizes {
            let _ = writeln!(
                out,
                "  {} weld{}: published not Z {}, computed not Z {}, flagged {}",
                s.size,
                if s.size == 1 { "" } else { "s" },
                s.reference_non_z,
                s.computed_non_z,
                s.flagged
            );
            let cells: Vec<[String; 5]> = s
                .rows
                .iter()
                .filter(|r| r.flagged())
                .map(|r| {
                    let claim = match &r.claim {
                        None => "-".to_string(),
                        Some(ReferenceClaim::InfiniteCyclic) => "Z".to_string(),
                        Some(ReferenceClaim::WeldedUnknot) => "welded unknot".to_string(),
                        Some(ReferenceClaim::Presentation(p)) => p.clone(),
                    };
                    let published = if r.reference_welded.is_empty() { "-".to_string() } else { set(&r.reference_welded) };
                    let status = format!("{:?}{}", r.status, if r.repeated { ", repeated" } else { "" });
                    [published, set(&r.welded), r.class.to_string(), status, claim]
                })
                .collect();
            if !cells.is_empty() {
                let head = ["published", "catalog", "computed", "status", "published group"].map(String::from);
                let mut block = String::new();
                write_aligned(&mut block, &head, &cells);
                for line in block.lines() {
                    let _ = writeln!(out, "  {line}");
                }
            }
        }
        out.push('\n');
        out
    }
}
