//! Torus knots `K(2, 2n+1)`, twist knots and their welded variants, plus the
//! catalog of prime knots up to six crossings.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gaussdiag::{CrossingLabel, Pass, Sign, WeldedDiagram};
use crate::grouppres::{alexander_polynomial, coloring_count, wirtinger};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("parameter n = {n} is below the minimum {min}")]
    BadParameter { n: u32, min: u32 },
    #[error("gap m1 = {m1} is outside 0..={max}")]
    BadGap { m1: u32, max: u32 },
}

fn diagram(code: Vec<Pass>, signs: BTreeMap<CrossingLabel, Sign>) -> WeldedDiagram {
    WeldedDiagram::from_parts(code, signs).expect("family codes are valid")
}

fn labels(ks: &[u32]) -> Vec<CrossingLabel> {
    ks.iter().map(|&k| CrossingLabel(k)).collect()
}

/// `O1 U2 O3 U4 ... O(2n+1) U1 O2 U3 ... O(2n) U(2n+1)`, all signs positive.
pub fn torus_2q(n: u32) -> Result<WeldedDiagram, FamilyError> {
    if n < 1 {
        return Err(FamilyError::BadParameter { n, min: 1 });
    }
    let c = 2 * n + 1;
    let code = (0..2 * c)
        .map(|t| if t % 2 == 0 { Pass::over(t % c + 1) } else { Pass::under(t % c + 1) })
        .collect();
    let signs = (1..=c).map(|k| (CrossingLabel(k), Sign::Pos)).collect();
    Ok(diagram(code, signs))
}

/// `K(2, 2n+1)` with its last crossing welded.
pub fn torus_welded_one(n: u32) -> Result<WeldedDiagram, FamilyError> {
    let d = torus_2q(n)?;
    Ok(d.weld(CrossingLabel(2 * n + 1)).expect("label exists"))
}

/// `K(2, 2n+1)` with crossings `1` and `m1 + 2` welded, leaving `m1`
/// crossings between them on one side and `2n - 1 - m1` on the other.
pub fn torus_welded_two(n: u32, m1: u32) -> Result<WeldedDiagram, FamilyError> {
    if n < 2 {
        return Err(FamilyError::BadParameter { n, min: 2 });
    }
    if m1 > n - 1 {
        return Err(FamilyError::BadGap { m1, max: n - 1 });
    }
    Ok(torus_2q(n)?.weld_set(&labels(&[1, m1 + 2])).expect("labels exist"))
}

/// Twist knot with `n` half twists. The twist region is the ladder of
/// crossings `1..=n`, the clasp is `n+1, n+2`. The strand runs down the
/// ladder, around the bottom of the clasp, back up the ladder and over the
/// top of the clasp.
pub fn twist(n: u32) -> Result<WeldedDiagram, FamilyError> {
    if n < 1 {
        return Err(FamilyError::BadParameter { n, min: 1 });
    }
    let down: Vec<Pass> = (1..=n).map(|i| if i % 2 == 1 { Pass::over(i) } else { Pass::under(i) }).collect();
    let bottom = if n % 2 == 1 {
        [Pass::under(n + 1), Pass::over(n + 2)]
    } else {
        [Pass::over(n + 2), Pass::under(n + 1)]
    };
    let up = down.iter().rev().map(|p| Pass { crossing: p.crossing, role: p.role.opposite() });
    let mut code = down.clone();
    code.extend(bottom);
    code.extend(up);
    code.extend([Pass::over(n + 1), Pass::under(n + 2)]);
    let clasp = if n % 2 == 1 { Sign::Pos } else { Sign::Neg };
    let mut signs: BTreeMap<CrossingLabel, Sign> = (1..=n).map(|k| (CrossingLabel(k), Sign::Pos)).collect();
    signs.insert(CrossingLabel(n + 1), clasp);
    signs.insert(CrossingLabel(n + 2), clasp);
    Ok(diagram(code, signs))
}

/// Twist knot with the first clasp crossing welded.
pub fn twist_welded_one(n: u32) -> Result<WeldedDiagram, FamilyError> {
    let d = twist(n)?;
    Ok(d.weld(CrossingLabel(n + 1)).expect("label exists"))
}

/// Twist knot with ladder crossings 1 and 3 welded, one ladder crossing
/// left between them.
pub fn twist_welded_two(n: u32) -> Result<WeldedDiagram, FamilyError> {
    if n < 4 {
        return Err(FamilyError::BadParameter { n, min: 4 });
    }
    Ok(twist(n)?.weld_set(&labels(&[1, 3])).expect("labels exist"))
}

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed catalog: {0}")]
    Schema(String),
    #[error("stored fingerprint of `{0}` does not match the diagram")]
    FingerprintMismatch(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogFingerprint {
    /// Total coloring counts keyed by modulus.
    pub colorings: BTreeMap<String, u64>,
    /// Alexander polynomial coefficients, lowest degree first.
    pub alexander: Vec<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    name: String,
    gauss_code: String,
    unknotting_number: Option<u32>,
    fingerprint: CatalogFingerprint,
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub diagram: WeldedDiagram,
    pub known_unknotting_number: Option<u32>,
    pub fingerprint: CatalogFingerprint,
}

impl CatalogEntry {
    /// Whether the stored fingerprint agrees with the diagram. The Alexander
    /// polynomial is compared up to `t <-> t^-1`.
    pub fn fingerprint_matches(&self) -> bool {
        for (m, &stored) in &self.fingerprint.colorings {
            let Ok(m) = m.parse::<u64>() else {
                return false;
            };
            match coloring_count(&self.diagram, m) {
                Ok(r) if r.total_count == stored.into() => {}
                _ => return false,
            }
        }
        let Ok(a) = alexander_polynomial(&wirtinger(&self.diagram)) else {
            return false;
        };
        let stored = crate::grouppres::LaurentPolynomial::from_i64s(0, &self.fingerprint.alexander).normalize();
        a.normalize() == stored || a.invert_variable().normalize() == stored
    }
}

/// Parses and checks a catalog document.
pub fn catalog_parse(text: &str) -> Result<Vec<CatalogEntry>, CatalogError> {
    let raw: Vec<RawEntry> = serde_json::from_str(text).map_err(|e| CatalogError::Schema(e.to_string()))?;
    let mut out = Vec::with_capacity(raw.len());
    for r in raw {
        let diagram = WeldedDiagram::parse(&r.gauss_code)
            .map_err(|e| CatalogError::Schema(format!("entry `{}`: {e}", r.name)))?;
        let entry = CatalogEntry {
            name: r.name,
            diagram,
            known_unknotting_number: r.unknotting_number,
            fingerprint: r.fingerprint,
        };
        if !entry.fingerprint_matches() {
            return Err(CatalogError::FingerprintMismatch(entry.name));
        }
        out.push(entry);
    }
    Ok(out)
}

pub fn catalog_load(path: impl AsRef<Path>) -> Result<Vec<CatalogEntry>, CatalogError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|source| CatalogError::Io { path: path.display().to_string(), source })?;
    catalog_parse(&text)
}

const BUNDLED: &str = include_str!("../../../data/rolfsen.json");

/// The catalog shipped with the library: 3_1 through 6_3.
pub fn bundled_catalog() -> Vec<CatalogEntry> {
    catalog_parse(BUNDLED).expect("bundled catalog is valid")
}
