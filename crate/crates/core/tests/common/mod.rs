//! Generators and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;
use weldkit::gaussdiag::{CrossingLabel, Pass, Role, Sign, WeldedDiagram};
use weldkit::grouppres::{abelianization, alexander_polynomial, coloring_count, wirtinger, LaurentPolynomial};
use weldkit::moves::MoveInstance;

fn sign(b: bool) -> Sign {
    if b {
        Sign::Pos
    } else {
        Sign::Neg
    }
}

fn build(c: usize, over_first: &[bool], signs: &[bool], slots: &[usize]) -> WeldedDiagram {
    let mut code = vec![Pass::over(0); 2 * c];
    for k in 0..c {
        let (a, b) = (slots[2 * k], slots[2 * k + 1]);
        let label = k as u32 + 1;
        let (first, second) = if over_first[k] { (Pass::over(label), Pass::under(label)) } else { (Pass::under(label), Pass::over(label)) };
        code[a.min(b)] = first;
        code[a.max(b)] = second;
    }
    let signs = (0..c).map(|k| (CrossingLabel(k as u32 + 1), sign(signs[k]))).collect();
    WeldedDiagram::from_parts(code, signs).expect("generated codes are valid")
}

/// Any signed Gauss code with `lo..=hi` crossings.
pub fn diagram(lo: usize, hi: usize) -> impl Strategy<Value = WeldedDiagram> {
    (lo..=hi).prop_flat_map(|c| {
        (
            prop::collection::vec(any::<bool>(), c),
            prop::collection::vec(any::<bool>(), c),
            Just((0..2 * c).collect::<Vec<usize>>()).prop_shuffle(),
        )
            .prop_map(move |(o, s, slots)| build(c, &o, &s, &slots))
    })
}

/// A diagram with a basepoint from which every Over pass comes first,
/// rotated arbitrarily.
pub fn descending(hi: usize) -> impl Strategy<Value = WeldedDiagram> {
    (0..=hi).prop_flat_map(|c| {
        (
            prop::collection::vec(any::<bool>(), c),
            Just((0..2 * c).collect::<Vec<usize>>()).prop_shuffle(),
            0..2 * c + 1,
        )
            .prop_map(move |(s, slots, rot)| build(c, &vec![true; c], &s, &slots).rotate(rot))
    })
}

/// Three fresh crossings spliced in as an R3 triangle: top `O_x O_y`,
/// middle `U_x O_z`, bottom `U_y U_z`, each pair in either order, signs
/// chosen so the triangle is valid, blocks placed at arbitrary gaps.
pub fn with_triangle(d: &WeldedDiagram, orders: [bool; 3], sx: bool, gaps: [usize; 3], perm: usize) -> WeldedDiagram {
    let base = d.max_label();
    let (x, y, z) = (base + 1, base + 2, base + 3);
    let [pt, pm, pb] = orders;
    let top = if pt { vec![Pass::over(y), Pass::over(x)] } else { vec![Pass::over(x), Pass::over(y)] };
    let mid = if pm { vec![Pass::over(z), Pass::under(x)] } else { vec![Pass::under(x), Pass::over(z)] };
    let bot = if pb { vec![Pass::under(z), Pass::under(y)] } else { vec![Pass::under(y), Pass::under(z)] };
    let sx = sign(sx);
    let flip = |s: Sign, odd: bool| if odd { s.flip() } else { s };
    let sy = flip(sx, pm ^ pb);
    let sz = flip(sx, pt ^ pb);
    let mut blocks = [top, mid, bot];
    blocks.rotate_left(perm % 3);
    if perm >= 3 {
        blocks.swap(1, 2);
    }
    let n = d.len().max(1);
    let mut gaps = gaps.map(|g| g % n);
    gaps.sort_unstable();
    let mut code = Vec::new();
    for g in 0..=d.len() {
        for (i, &gg) in gaps.iter().enumerate() {
            if gg == g {
                code.extend_from_slice(&blocks[i]);
            }
        }
        if g < d.len() {
            code.push(d.code()[g]);
        }
    }
    let mut signs = d.signs().clone();
    signs.insert(CrossingLabel(x), sx);
    signs.insert(CrossingLabel(y), sy);
    signs.insert(CrossingLabel(z), sz);
    WeldedDiagram::from_parts(code, signs).expect("triangle splice is valid")
}

pub fn r1_insert() -> impl Strategy<Value = MoveInstance> {
    (0..64usize, any::<bool>(), any::<bool>()).prop_map(|(gap, over_first, s)| MoveInstance::R1Insert { gap, over_first, sign: sign(s) })
}

pub fn r2_insert() -> impl Strategy<Value = MoveInstance> {
    (0..64usize, 0..64usize, any::<bool>(), any::<bool>(), any::<bool>()).prop_map(|(a, b, anti, first, s)| MoveInstance::R2Insert {
        over_gap: a,
        under_gap: b,
        antiparallel: anti,
        unders_first: first,
        sign: sign(s),
    })
}

/// Clamps the gaps of an insert to the diagram.
pub fn fit(m: &MoveInstance, d: &WeldedDiagram) -> MoveInstance {
    let n = d.len().max(1);
    match *m {
        MoveInstance::R1Insert { gap, over_first, sign } => MoveInstance::R1Insert { gap: gap % n, over_first, sign },
        MoveInstance::R2Insert { over_gap, under_gap, antiparallel, unders_first, sign } => {
            let (a, b) = (over_gap % n, under_gap % n);
            MoveInstance::R2Insert { over_gap: a, under_gap: b, antiparallel, unders_first: unders_first && a == b, sign }
        }
        ref other => other.clone(),
    }
}

/// Fox colorings mod `m` by enumerating every assignment of colors to arcs.
/// Arc `i` runs from after the `i`-th Under pass to the next one.
pub fn brute_force_colorings(d: &WeldedDiagram, m: u64) -> u64 {
    let code = d.code();
    let unders: Vec<usize> = (0..code.len()).filter(|&i| code[i].role == Role::Under).collect();
    let k = unders.len();
    if k == 0 {
        return m;
    }
    // arc containing position i: number of Under passes strictly before i, mod k
    let arc = |i: usize| unders.iter().filter(|&&u| u < i).count() % k;
    let rows: Vec<(usize, usize, usize)> = unders
        .iter()
        .map(|&u| {
            let c = code[u].crossing;
            let o = (0..code.len()).find(|&i| code[i].crossing == c && code[i].role == Role::Over).unwrap();
            (arc(u), arc(o), (arc(u) + 1) % k)
        })
        .collect();
    let mut colors = vec![0u64; k];
    let mut count = 0;
    loop {
        if rows.iter().all(|&(inc, over, out)| (colors[out] + colors[inc]) % m == (2 * colors[over]) % m) {
            count += 1;
        }
        let mut i = 0;
        while i < k {
            colors[i] += 1;
            if colors[i] < m {
                break;
            }
            colors[i] = 0;
            i += 1;
        }
        if i == k {
            return count;
        }
    }
}

#[derive(Debug, PartialEq, Eq)]
pub struct Invariants {
    pub colorings: Vec<BigUint>,
    pub abelian: Vec<BigInt>,
    pub alexander: Option<LaurentPolynomial>,
}

pub fn invariants(d: &WeldedDiagram) -> Invariants {
    let p = wirtinger(d);
    let mut abelian = abelianization(&p);
    // the number of generators changes under R1 and R2; compare nontrivial divisors
    abelian.retain(|x| *x != BigInt::from(1));
    Invariants {
        colorings: [3, 5, 7, 9].iter().map(|&m| coloring_count(d, m).unwrap().total_count).collect(),
        abelian,
        alexander: alexander_polynomial(&p).ok().map(|a| a.normalize()),
    }
}

/// Position of the pair holding both given passes in either order.
pub fn pair_at(d: &WeldedDiagram, a: Pass, b: Pass) -> Option<usize> {
    (0..d.len()).find(|&p| {
        let (x, y) = (d.at(p), d.at(p + 1));
        (x, y) == (a, b) || (x, y) == (b, a)
    })
}

pub fn relabeling(d: &WeldedDiagram, offset: u32, reverse: bool) -> BTreeMap<CrossingLabel, CrossingLabel> {
    let labels = d.crossings();
    let n = labels.len() as u32;
    labels
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let i = i as u32;
            let j = if reverse { n - 1 - i } else { i };
            (c, CrossingLabel(offset + 3 * j + 1))
        })
        .collect()
}

#[derive(Debug, Default)]
pub struct SuiteResult {
    pub pairs: usize,
    pub r3_pairs: usize,
    pub violations: Vec<String>,
}

/// Random diagrams of at most eight crossings, built from a random code of
/// up to three crossings, an optional R3 triangle and one insert move. Every
/// applicable move of the result, and the insert itself, must preserve the
/// coloring counts, the abelianization and the Alexander polynomial.
pub fn move_invariance_suite(cases: u32) -> SuiteResult {
    use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
    use weldkit::moves::{applicable_moves, apply};

    let strategy = (
        diagram(0, 3),
        any::<bool>(),
        any::<[bool; 3]>(),
        any::<bool>(),
        any::<[usize; 3]>(),
        0usize..6,
        prop_oneof![r1_insert(), r2_insert()],
    );
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    let result = std::cell::RefCell::new(SuiteResult::default());
    let _ = runner.run(&strategy, |(base, triangle, orders, sx, gaps, perm, insert)| {
        let mut res = result.borrow_mut();
        let base = if triangle { with_triangle(&base, orders, sx, gaps, perm) } else { base };
        let insert = fit(&insert, &base);
        let d = apply(&base, &insert).expect("fitted inserts apply");
        let inv = invariants(&d);
        let mut check = |from: &WeldedDiagram, m: &MoveInstance, to: &WeldedDiagram, inv_to: &Invariants| {
            res.pairs += 1;
            if matches!(m, MoveInstance::R3 { .. }) {
                res.r3_pairs += 1;
            }
            if invariants(from) != *inv_to {
                res.violations.push(format!("{m:?} on {from} gives {to}"));
            }
        };
        check(&base, &insert, &d, &inv);
        for m in applicable_moves(&d) {
            let e = apply(&d, &m).expect("enumerated moves apply");
            check(&d, &m, &e, &invariants(&e));
        }
        Ok(())
    });
    result.into_inner()
}

/// Every diagram with at most `max` crossings, up to canonical form.
pub fn small_diagrams(max: u32) -> Vec<WeldedDiagram> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = vec![WeldedDiagram::empty()];
    for c in 1..=max {
        // sequences of labels in order of first appearance, each label twice
        fn words(c: u32, cur: &mut Vec<u32>, used: &mut [u8], next: u32, out: &mut Vec<Vec<u32>>) {
            if cur.len() == 2 * c as usize {
                out.push(cur.clone());
                return;
            }
            for k in 1..=next.min(c) {
                if used[k as usize] < 2 {
                    used[k as usize] += 1;
                    cur.push(k);
                    words(c, cur, used, if k == next { next + 1 } else { next }, out);
                    cur.pop();
                    used[k as usize] -= 1;
                }
            }
        }
        let mut ws = Vec::new();
        words(c, &mut Vec::new(), &mut vec![0; c as usize + 1], 1, &mut ws);
        for w in ws {
            for roles in 0..1u32 << c {
                for signs in 0..1u32 << c {
                    let mut met = vec![false; c as usize + 1];
                    let code: Vec<Pass> = w
                        .iter()
                        .map(|&k| {
                            let first = !met[k as usize];
                            met[k as usize] = true;
                            let over_first = roles >> (k - 1) & 1 == 1;
                            if first == over_first { Pass::over(k) } else { Pass::under(k) }
                        })
                        .collect();
                    let s: BTreeMap<_, _> = (1..=c)
                        .map(|k| {
                            let pos = signs >> (k - 1) & 1 == 1;
                            (CrossingLabel(k), if pos { Sign::Pos } else { Sign::Neg })
                        })
                        .collect();
                    let d = WeldedDiagram::from_parts(code, s).unwrap();
                    if seen.insert(d.canonical_key()) {
                        out.push(d);
                    }
                }
            }
        }
    }
    out
}
