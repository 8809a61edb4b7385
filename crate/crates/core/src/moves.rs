//! Welded moves on Gauss codes and a bounded simplification search.
//!
//! Positions refer to the code as stored. A pair "at position `p`" is the
//! cyclically adjacent pair `(p, p + 1)`. Insertion gaps are numbered like
//! basepoints: gap `g` lies before `code[g]`.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis::warping_degree_at;
use crate::gaussdiag::{Basepoint, CrossingLabel, Orientation, Pass, Role, Sign, WeldedDiagram};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MoveKind {
    #[serde(rename = "R1_delete")]
    R1Delete,
    #[serde(rename = "R1_insert")]
    R1Insert,
    #[serde(rename = "R2_delete")]
    R2Delete,
    #[serde(rename = "R2_insert")]
    R2Insert,
    #[serde(rename = "R3")]
    R3,
    #[serde(rename = "FO_swap")]
    FoSwap,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "location")]
pub enum MoveInstance {
    /// The pair at `position` holds both passes of one crossing.
    #[serde(rename = "R1_delete")]
    R1Delete { position: usize },
    /// Over pair at `over`, Under pair of the same two crossings at `under`.
    #[serde(rename = "R2_delete")]
    R2Delete { over: usize, under: usize },
    /// Exchange of two adjacent Over passes.
    #[serde(rename = "FO_swap")]
    FoSwap { position: usize },
    /// Pairs of a triangle: `top` holds two Over passes, `bottom` two Under
    /// passes, `middle` one of each.
    #[serde(rename = "R3")]
    R3 { top: usize, middle: usize, bottom: usize },
    #[serde(rename = "R1_insert")]
    R1Insert { gap: usize, over_first: bool, sign: Sign },
    /// Inserts crossings `a`, `b` (fresh labels) with signs `sign`, `-sign`:
    /// `O_a O_b` at `over_gap` and `U_a U_b` (or `U_b U_a` when
    /// `antiparallel`) at `under_gap`.
    #[serde(rename = "R2_insert")]
    R2Insert { over_gap: usize, under_gap: usize, antiparallel: bool, unders_first: bool, sign: Sign },
}

impl MoveInstance {
    pub fn kind(&self) -> MoveKind {
        match self {
            MoveInstance::R1Delete { .. } => MoveKind::R1Delete,
            MoveInstance::R2Delete { .. } => MoveKind::R2Delete,
            MoveInstance::FoSwap { .. } => MoveKind::FoSwap,
            MoveInstance::R3 { .. } => MoveKind::R3,
            MoveInstance::R1Insert { .. } => MoveKind::R1Insert,
            MoveInstance::R2Insert { .. } => MoveKind::R2Insert,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("move {0:?} does not apply to this diagram")]
    InapplicableMove(MoveInstance),
}

fn next(p: usize, n: usize) -> usize {
    (p + 1) % n
}

/// Whether three pairs form an R3 triangle in one of its sixteen valid
/// configurations. With `O_x O_y` the top pair, `U_x` meeting `O_z` in the
/// middle pair and `U_y U_z` the bottom pair, each pair may appear in either
/// order; the orders and the signs must agree as checked at the end.
fn is_r3_triangle(d: &WeldedDiagram, top: usize, middle: usize, bottom: usize) -> bool {
    r3_check(d, top, middle, bottom).is_some()
}

fn r3_check(d: &WeldedDiagram, top: usize, middle: usize, bottom: usize) -> Option<()> {
    let n = d.len();
    if n < 6 || top >= n || middle >= n || bottom >= n {
        return None;
    }
    let (t0, t1) = (d.at(top), d.at(next(top, n)));
    let (m0, m1) = (d.at(middle), d.at(next(middle, n)));
    let (b0, b1) = (d.at(bottom), d.at(next(bottom, n)));
    if t0.role != Role::Over || t1.role != Role::Over || t0.crossing == t1.crossing {
        return None;
    }
    if b0.role != Role::Under || b1.role != Role::Under {
        return None;
    }
    let (ux, oz, p_m) = match (m0.role, m1.role) {
        (Role::Under, Role::Over) => (m0.crossing, m1.crossing, 0),
        (Role::Over, Role::Under) => (m1.crossing, m0.crossing, 1),
        _ => return None,
    };
    let (x, y, p_t) = if t0.crossing == ux {
        (t0.crossing, t1.crossing, 0)
    } else if t1.crossing == ux {
        (t1.crossing, t0.crossing, 1)
    } else {
        return None;
    };
    let z = oz;
    if z == x || z == y {
        return None;
    }
    let p_b = if (b0.crossing, b1.crossing) == (y, z) {
        0
    } else if (b0.crossing, b1.crossing) == (z, y) {
        1
    } else {
        return None;
    };
    let mut pos = [top, next(top, n), middle, next(middle, n), bottom, next(bottom, n)];
    pos.sort_unstable();
    if pos.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    let s = |c: CrossingLabel| d.sign(c).unwrap().value();
    let parity = |k: i32| if k % 2 == 0 { 1 } else { -1 };
    (s(x) * s(y) == parity(p_m + p_b) && s(x) * s(z) == parity(p_t + p_b)).then_some(())
}

/// Every applicable deletion, over-forbidden swap and R3 move.
pub fn applicable_moves(d: &WeldedDiagram) -> Vec<MoveInstance> {
    let n = d.len();
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    for p in 0..n {
        let (a, b) = (d.at(p), d.at(p + 1));
        if a.crossing == b.crossing && !(n == 2 && p == 1) {
            out.push(MoveInstance::R1Delete { position: p });
        }
    }
    for p in 0..n {
        let (a, b) = (d.at(p), d.at(p + 1));
        if a.role != Role::Over || b.role != Role::Over || a.crossing == b.crossing {
            continue;
        }
        if d.sign(a.crossing) != d.sign(b.crossing) {
            for q in 0..n {
                let (c, e) = (d.at(q), d.at(q + 1));
                if c.role == Role::Under
                    && e.role == Role::Under
                    && ((c.crossing, e.crossing) == (a.crossing, b.crossing)
                        || (c.crossing, e.crossing) == (b.crossing, a.crossing))
                {
                    out.push(MoveInstance::R2Delete { over: p, under: q });
                }
            }
        }
    }
    for p in 0..n {
        let (a, b) = (d.at(p), d.at(p + 1));
        if a.role == Role::Over && b.role == Role::Over && a.crossing != b.crossing {
            out.push(MoveInstance::FoSwap { position: p });
        }
    }
    if n >= 6 {
        let tops: Vec<usize> = (0..n)
            .filter(|&p| d.at(p).role == Role::Over && d.at(p + 1).role == Role::Over)
            .collect();
        let mids: Vec<usize> = (0..n).filter(|&p| d.at(p).role != d.at(p + 1).role).collect();
        let bots: Vec<usize> = (0..n)
            .filter(|&p| d.at(p).role == Role::Under && d.at(p + 1).role == Role::Under)
            .collect();
        for &t in &tops {
            for &m in &mids {
                for &b in &bots {
                    if is_r3_triangle(d, t, m, b) {
                        out.push(MoveInstance::R3 { top: t, middle: m, bottom: b });
                    }
                }
            }
        }
    }
    out
}

/// All R1 insertions with the given sign.
pub fn r1_insertions(d: &WeldedDiagram, sign: Sign) -> Vec<MoveInstance> {
    let gaps = d.len().max(1);
    (0..gaps)
        .flat_map(|gap| [true, false].map(|over_first| MoveInstance::R1Insert { gap, over_first, sign }))
        .collect()
}

/// All R2 insertions whose first new crossing has the given sign.
pub fn r2_insertions(d: &WeldedDiagram, sign: Sign) -> Vec<MoveInstance> {
    let gaps = d.len().max(1);
    let mut out = Vec::new();
    for over_gap in 0..gaps {
        for under_gap in 0..gaps {
            for antiparallel in [false, true] {
                let orders: &[bool] = if over_gap == under_gap { &[false, true] } else { &[false] };
                for &unders_first in orders {
                    out.push(MoveInstance::R2Insert { over_gap, under_gap, antiparallel, unders_first, sign });
                }
            }
        }
    }
    out
}

fn without(d: &WeldedDiagram, labels: &[CrossingLabel]) -> WeldedDiagram {
    let code = d.code().iter().copied().filter(|p| !labels.contains(&p.crossing)).collect();
    let mut signs = d.signs().clone();
    signs.retain(|k, _| !labels.contains(k));
    WeldedDiagram::from_parts_unchecked(code, signs, d.welded_history().to_vec())
}

fn with_swaps(d: &WeldedDiagram, pairs: &[usize]) -> WeldedDiagram {
    let n = d.len();
    let mut code = d.code().to_vec();
    for &p in pairs {
        code.swap(p, next(p, n));
    }
    WeldedDiagram::from_parts_unchecked(code, d.signs().clone(), d.welded_history().to_vec())
}

fn with_inserts(d: &WeldedDiagram, inserts: Vec<(usize, Vec<Pass>)>, new_signs: &[(u32, Sign)]) -> WeldedDiagram {
    let mut code = Vec::with_capacity(d.len() + 4);
    for g in 0..=d.len() {
        for (gap, passes) in &inserts {
            if *gap == g {
                code.extend_from_slice(passes);
            }
        }
        if g < d.len() {
            code.push(d.code()[g]);
        }
    }
    let mut signs = d.signs().clone();
    for &(k, s) in new_signs {
        signs.insert(CrossingLabel(k), s);
    }
    WeldedDiagram::from_parts_unchecked(code, signs, d.welded_history().to_vec())
}

pub fn apply(d: &WeldedDiagram, m: &MoveInstance) -> Result<WeldedDiagram, MoveError> {
    let n = d.len();
    let fail = || MoveError::InapplicableMove(m.clone());
    match *m {
        MoveInstance::R1Delete { position } => {
            if position >= n || n < 2 {
                return Err(fail());
            }
            let (a, b) = (d.at(position), d.at(position + 1));
            if a.crossing != b.crossing {
                return Err(fail());
            }
            Ok(without(d, &[a.crossing]))
        }
        MoveInstance::FoSwap { position } => {
            if position >= n {
                return Err(fail());
            }
            let (a, b) = (d.at(position), d.at(position + 1));
            if a.role != Role::Over || b.role != Role::Over || a.crossing == b.crossing {
                return Err(fail());
            }
            Ok(with_swaps(d, &[position]))
        }
        MoveInstance::R2Delete { over, under } => {
            if over >= n || under >= n {
                return Err(fail());
            }
            let (a, b) = (d.at(over), d.at(over + 1));
            let (c, e) = (d.at(under), d.at(under + 1));
            let ok = a.role == Role::Over
                && b.role == Role::Over
                && c.role == Role::Under
                && e.role == Role::Under
                && a.crossing != b.crossing
                && ((c.crossing, e.crossing) == (a.crossing, b.crossing)
                    || (c.crossing, e.crossing) == (b.crossing, a.crossing))
                && d.sign(a.crossing) != d.sign(b.crossing);
            if !ok {
                return Err(fail());
            }
            Ok(without(d, &[a.crossing, b.crossing]))
        }
        MoveInstance::R3 { top, middle, bottom } => {
            if !is_r3_triangle(d, top, middle, bottom) {
                return Err(fail());
            }
            Ok(with_swaps(d, &[top, middle, bottom]))
        }
        MoveInstance::R1Insert { gap, over_first, sign } => {
            if gap >= n.max(1) {
                return Err(fail());
            }
            let k = d.max_label() + 1;
            let pair = if over_first {
                vec![Pass::over(k), Pass::under(k)]
            } else {
                vec![Pass::under(k), Pass::over(k)]
            };
            Ok(with_inserts(d, vec![(gap, pair)], &[(k, sign)]))
        }
        MoveInstance::R2Insert { over_gap, under_gap, antiparallel, unders_first, sign } => {
            if over_gap >= n.max(1) || under_gap >= n.max(1) || (unders_first && over_gap != under_gap) {
                return Err(fail());
            }
            let a = d.max_label() + 1;
            let b = a + 1;
            let overs = vec![Pass::over(a), Pass::over(b)];
            let unders = if antiparallel {
                vec![Pass::under(b), Pass::under(a)]
            } else {
                vec![Pass::under(a), Pass::under(b)]
            };
            let inserts = if unders_first {
                vec![(under_gap, unders), (over_gap, overs)]
            } else {
                vec![(over_gap, overs), (under_gap, unders)]
            };
            Ok(with_inserts(d, inserts, &[(a, sign), (b, sign.flip())]))
        }
    }
}

/// Replays a simplification trace; every move acts on the canonical form of
/// the previous diagram.
pub fn replay(d: &WeldedDiagram, trace: &[MoveInstance]) -> Result<WeldedDiagram, MoveError> {
    let mut cur = d.canonicalize();
    for m in trace {
        cur = apply(&cur, m)?.canonicalize();
    }
    Ok(cur)
}

#[derive(Clone, Debug, Serialize)]
pub struct SimplifyReport {
    pub result: WeldedDiagram,
    pub trace: Vec<MoveInstance>,
    pub states_explored: usize,
    pub budget_exhausted: bool,
}

struct Node {
    diagram: WeldedDiagram,
    parent: usize,
    mv: Option<MoveInstance>,
}

/// Best-first search over canonical forms using deletions, over-forbidden
/// swaps and R3, fewest crossings first. Stops on reaching the empty code or
/// after expanding `budget` states.
pub fn simplify(d: &WeldedDiagram, budget: usize) -> SimplifyReport {
    let budget = budget.max(1);
    let start = d.canonicalize();
    let mut visited: HashSet<_> = HashSet::new();
    visited.insert(start.canonical_key());
    let mut nodes = vec![Node { diagram: start, parent: 0, mv: None }];
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((nodes[0].diagram.crossing_count(), 0usize)));
    let mut best = 0;
    let mut explored = 0;
    let mut exhausted = false;
    'search: while let Some(Reverse((_, id))) = heap.pop() {
        if nodes[best].diagram.is_empty() {
            break;
        }
        if explored >= budget {
            exhausted = true;
            break;
        }
        explored += 1;
        let cur = nodes[id].diagram.clone();
        for m in applicable_moves(&cur) {
            let nd = apply(&cur, &m).expect("enumerated moves apply").canonicalize();
            if !visited.insert(nd.canonical_key()) {
                continue;
            }
            let count = nd.crossing_count();
            nodes.push(Node { diagram: nd, parent: id, mv: Some(m) });
            let nid = nodes.len() - 1;
            if count < nodes[best].diagram.crossing_count() {
                best = nid;
            }
            if count == 0 {
                break 'search;
            }
            heap.push(Reverse((count, nid)));
        }
    }
    let mut trace = Vec::new();
    let mut cur = best;
    while let Some(m) = &nodes[cur].mv {
        trace.push(m.clone());
        cur = nodes[cur].parent;
    }
    trace.reverse();
    SimplifyReport { result: nodes[best].diagram.clone(), trace, states_explored: explored, budget_exhausted: exhausted }
}

/// A basepoint from which every crossing is first met at its Over pass.
pub fn is_descending(d: &WeldedDiagram) -> Option<Basepoint> {
    (0..d.len().max(1))
        .map(Basepoint)
        .find(|&b| warping_degree_at(d, b, Orientation::Forward) == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> WeldedDiagram {
        s.parse().unwrap()
    }

    const TREFOIL: &str = "O1+ U2+ O3+ U1+ O2+ U3+";

    #[test]
    fn enumeration_examples() {
        assert!(applicable_moves(&d("O1+ U1+")).contains(&MoveInstance::R1Delete { position: 0 }));
        assert_eq!(applicable_moves(&d("O1+ U1+")).len(), 1);
        assert!(applicable_moves(&d("O1+ O3+ U1+ U3+")).contains(&MoveInstance::FoSwap { position: 0 }));
        assert!(applicable_moves(&d(TREFOIL)).is_empty());
        let r2 = applicable_moves(&d("O1+ O2- U2- U1+"));
        assert!(r2.contains(&MoveInstance::R2Delete { over: 0, under: 2 }));
    }

    #[test]
    fn application_examples() {
        assert!(apply(&d("O1+ U1+"), &MoveInstance::R1Delete { position: 0 }).unwrap().is_empty());
        let s = apply(&d("O1+ O3+ U1+ U3+"), &MoveInstance::FoSwap { position: 0 }).unwrap();
        assert_eq!(s.to_string(), "O3+ O1+ U1+ U3+");
        let s = apply(&s, &MoveInstance::R1Delete { position: 1 }).unwrap();
        assert_eq!(s.to_string(), "O3+ U3+");
        assert!(apply(&s, &MoveInstance::R1Delete { position: 0 }).unwrap().is_empty());
        assert!(apply(&d(TREFOIL), &MoveInstance::FoSwap { position: 0 }).is_err());
        assert!(apply(&d("O1+ O2+ U2+ U1+"), &MoveInstance::R2Delete { over: 0, under: 2 }).is_err());
    }

    #[test]
    fn inserts_invert_deletes() {
        let t = d(TREFOIL);
        let i = apply(&t, &MoveInstance::R1Insert { gap: 2, over_first: false, sign: Sign::Neg }).unwrap();
        assert_eq!(i.to_string(), "O1+ U2+ U4- O4- O3+ U1+ O2+ U3+");
        assert_eq!(apply(&i, &MoveInstance::R1Delete { position: 2 }).unwrap(), t);
        let m = MoveInstance::R2Insert { over_gap: 1, under_gap: 4, antiparallel: true, unders_first: false, sign: Sign::Pos };
        let i = apply(&t, &m).unwrap();
        assert_eq!(i.to_string(), "O1+ O4+ O5- U2+ O3+ U1+ U5- U4+ O2+ U3+");
        assert_eq!(apply(&i, &MoveInstance::R2Delete { over: 1, under: 6 }).unwrap(), t);
        let e = apply(&WeldedDiagram::empty(), &MoveInstance::R1Insert { gap: 0, over_first: true, sign: Sign::Pos });
        assert_eq!(e.unwrap().to_string(), "O1+ U1+");
    }

    #[test]
    fn r3_configuration() {
        // x = 1, y = 2, z = 3 with all pairs in their first order
        let t = d("O1+ O2+ U1+ O3+ U2+ U3+");
        let moves = applicable_moves(&t);
        assert!(moves.contains(&MoveInstance::R3 { top: 0, middle: 2, bottom: 4 }));
        let r = apply(&t, &MoveInstance::R3 { top: 0, middle: 2, bottom: 4 }).unwrap();
        assert_eq!(r.to_string(), "O2+ O1+ O3+ U1+ U3+ U2+");
        let bad = d("O1+ O2+ U1+ O3- U2+ U3-");
        assert!(apply(&bad, &MoveInstance::R3 { top: 0, middle: 2, bottom: 4 }).is_err());
    }

    #[test]
    fn simplify_examples() {
        let w = d("O1+ O3+ U1+ U3+");
        let r = simplify(&w, 10_000);
        assert!(r.result.is_empty());
        assert!(!r.budget_exhausted);
        assert_eq!(replay(&w, &r.trace).unwrap(), r.result);
        let r = simplify(&d(TREFOIL), 1_000_000);
        assert_eq!(r.result.crossing_count(), 3);
        assert!(r.trace.is_empty());
        let j = serde_json::to_value(&simplify(&d("O1+ U1+"), 10)).unwrap();
        assert_eq!(j["result"], "");
        assert_eq!(j["trace"][0]["kind"], "R1_delete");
        assert_eq!(j["trace"][0]["location"]["position"], 0);
    }

    #[test]
    fn descending_witness() {
        assert_eq!(is_descending(&d("O1+ O3+ O5+ U1+ U3+ U5+")), Some(Basepoint(0)));
        assert_eq!(is_descending(&d(TREFOIL)), None);
        assert_eq!(is_descending(&WeldedDiagram::empty()), Some(Basepoint(0)));
    }
}
