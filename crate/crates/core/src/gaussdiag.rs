//! Signed Gauss codes of welded knot diagrams.
//!
//! Only classical crossings are stored. A welded crossing imposes no relation
//! and does not cut arcs, so welding a crossing simply deletes its two passes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CrossingLabel(pub u32);

impl fmt::Display for CrossingLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Pos,
    #[serde(rename = "-")]
    Neg,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Pos => '+',
            Sign::Neg => '-',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Role {
    Over,
    Under,
}

impl Role {
    pub fn opposite(self) -> Role {
        match self {
            Role::Over => Role::Under,
            Role::Under => Role::Over,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Role::Over => 'O',
            Role::Under => 'U',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pass {
    pub crossing: CrossingLabel,
    pub role: Role,
}

impl Pass {
    pub fn over(k: u32) -> Pass {
        Pass { crossing: CrossingLabel(k), role: Role::Over }
    }

    pub fn under(k: u32) -> Pass {
        Pass { crossing: CrossingLabel(k), role: Role::Under }
    }
}

/// The gap before `code[position]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Basepoint(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Forward,
    Reversed,
}

/// Positions `start..=end` (cyclically) of one arc. The arc ends at an Under
/// pass. The empty diagram has the single closed arc `0..=0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arc {
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("malformed token `{0}`")]
    MalformedToken(String),
    #[error("crossing {0} does not appear exactly twice")]
    CrossingCountNotTwo(u32),
    #[error("crossing {0} has two passes with the same role")]
    DuplicateRole(u32),
    #[error("crossing {0} carries different signs on its two passes")]
    SignMismatch(u32),
    #[error("crossing {0} is not in the diagram")]
    UnknownCrossing(u32),
}

/// One token of a canonical code: role, relabeled crossing, sign.
pub type CanonicalToken = (Role, u32, Sign);

#[derive(Clone, Debug)]
pub struct WeldedDiagram {
    code: Vec<Pass>,
    signs: BTreeMap<CrossingLabel, Sign>,
    welded_history: Vec<CrossingLabel>,
}

impl WeldedDiagram {
    pub fn empty() -> WeldedDiagram {
        WeldedDiagram { code: Vec::new(), signs: BTreeMap::new(), welded_history: Vec::new() }
    }

    pub fn parse(text: &str) -> Result<WeldedDiagram, DiagramError> {
        let mut code = Vec::new();
        let mut signs = Vec::new();
        for tok in text.split_whitespace() {
            let (pass, sign) = parse_token(tok)?;
            code.push(pass);
            signs.push(sign);
        }
        let mut seen: BTreeMap<CrossingLabel, (Role, Sign)> = BTreeMap::new();
        let mut complete = BTreeSet::new();
        for (p, &s) in code.iter().zip(&signs) {
            match seen.get(&p.crossing) {
                None => {
                    seen.insert(p.crossing, (p.role, s));
                }
                Some(&(role, sign)) => {
                    if complete.contains(&p.crossing) {
                        return Err(DiagramError::CrossingCountNotTwo(p.crossing.0));
                    }
                    if role == p.role {
                        return Err(DiagramError::DuplicateRole(p.crossing.0));
                    }
                    if sign != s {
                        return Err(DiagramError::SignMismatch(p.crossing.0));
                    }
                    complete.insert(p.crossing);
                }
            }
        }
        if let Some(k) = seen.keys().find(|k| !complete.contains(k)) {
            return Err(DiagramError::CrossingCountNotTwo(k.0));
        }
        let signs = seen.into_iter().map(|(k, (_, s))| (k, s)).collect();
        Ok(WeldedDiagram { code, signs, welded_history: Vec::new() })
    }

    /// Builds a diagram from passes and signs, checking every invariant.
    pub fn from_parts(
        code: Vec<Pass>,
        signs: BTreeMap<CrossingLabel, Sign>,
    ) -> Result<WeldedDiagram, DiagramError> {
        let mut roles: BTreeMap<CrossingLabel, Vec<Role>> = BTreeMap::new();
        for p in &code {
            let r = roles.entry(p.crossing).or_default();
            if r.contains(&p.role) {
                return Err(DiagramError::DuplicateRole(p.crossing.0));
            }
            r.push(p.role);
        }
        for (k, r) in &roles {
            if r.len() != 2 {
                return Err(DiagramError::CrossingCountNotTwo(k.0));
            }
            if !signs.contains_key(k) {
                return Err(DiagramError::CrossingCountNotTwo(k.0));
            }
        }
        if let Some(k) = signs.keys().find(|k| !roles.contains_key(k)) {
            return Err(DiagramError::UnknownCrossing(k.0));
        }
        Ok(WeldedDiagram { code, signs, welded_history: Vec::new() })
    }

    pub(crate) fn from_parts_unchecked(
        code: Vec<Pass>,
        signs: BTreeMap<CrossingLabel, Sign>,
        welded_history: Vec<CrossingLabel>,
    ) -> WeldedDiagram {
        WeldedDiagram { code, signs, welded_history }
    }

    pub fn code(&self) -> &[Pass] {
        &self.code
    }

    pub fn signs(&self) -> &BTreeMap<CrossingLabel, Sign> {
        &self.signs
    }

    pub fn welded_history(&self) -> &[CrossingLabel] {
        &self.welded_history
    }

    pub fn len(&self) -> usize {
        self.code.len()
    }

    pub fn is_empty(&self) -> bool {
        self.code.is_empty()
    }

    pub fn crossing_count(&self) -> usize {
        self.signs.len()
    }

    pub fn crossings(&self) -> Vec<CrossingLabel> {
        self.signs.keys().copied().collect()
    }

    pub fn contains(&self, c: CrossingLabel) -> bool {
        self.signs.contains_key(&c)
    }

    pub fn sign(&self, c: CrossingLabel) -> Option<Sign> {
        self.signs.get(&c).copied()
    }

    pub fn max_label(&self) -> u32 {
        self.signs.keys().next_back().map_or(0, |k| k.0)
    }

    pub fn position(&self, c: CrossingLabel, role: Role) -> Option<usize> {
        self.code.iter().position(|p| p.crossing == c && p.role == role)
    }

    /// Pass at cyclic index `i`.
    pub fn at(&self, i: usize) -> Pass {
        self.code[i % self.code.len()]
    }

    /// Canonical token sequence: the least rotation after relabeling
    /// crossings 1, 2, ... by first appearance.
    pub fn canonical_key(&self) -> Vec<CanonicalToken> {
        let n = self.code.len();
        let mut best: Option<Vec<CanonicalToken>> = None;
        let mut relabel: BTreeMap<CrossingLabel, u32> = BTreeMap::new();
        let mut cand = Vec::with_capacity(n);
        for start in 0..n {
            if self.code[start].role != Role::Over {
                continue;
            }
            relabel.clear();
            cand.clear();
            let mut worse = false;
            let mut decided = false;
            for i in 0..n {
                let p = self.code[(start + i) % n];
                let next = relabel.len() as u32 + 1;
                let k = *relabel.entry(p.crossing).or_insert(next);
                let tok = (p.role, k, self.signs[&p.crossing]);
                if !decided {
                    if let Some(b) = &best {
                        match tok.cmp(&b[i]) {
                            std::cmp::Ordering::Less => decided = true,
                            std::cmp::Ordering::Greater => {
                                worse = true;
                                break;
                            }
                            std::cmp::Ordering::Equal => {}
                        }
                    }
                }
                cand.push(tok);
            }
            if !worse && (decided || best.is_none()) {
                best = Some(cand.clone());
            }
        }
        best.unwrap_or_default()
    }

    pub fn canonicalize(&self) -> WeldedDiagram {
        let key = self.canonical_key();
        let code = key
            .iter()
            .map(|&(role, k, _)| Pass { crossing: CrossingLabel(k), role })
            .collect();
        let signs = key.iter().map(|&(_, k, s)| (CrossingLabel(k), s)).collect();
        WeldedDiagram { code, signs, welded_history: self.welded_history.clone() }
    }

    /// Canonical text form.
    pub fn serialize(&self) -> String {
        self.canonicalize().to_string()
    }

    pub fn reverse(&self) -> WeldedDiagram {
        let mut d = self.clone();
        d.code.reverse();
        d
    }

    /// Rotates the cyclic code so that it starts at `code[k]`.
    pub fn rotate(&self, k: usize) -> WeldedDiagram {
        let mut d = self.clone();
        if !d.code.is_empty() {
            let k = k % d.code.len();
            d.code.rotate_left(k);
        }
        d
    }

    /// Renames crossings; `map` must be injective on the diagram's labels.
    pub fn relabel(&self, map: &BTreeMap<CrossingLabel, CrossingLabel>) -> WeldedDiagram {
        let f = |c: CrossingLabel| map.get(&c).copied().unwrap_or(c);
        WeldedDiagram {
            code: self.code.iter().map(|p| Pass { crossing: f(p.crossing), role: p.role }).collect(),
            signs: self.signs.iter().map(|(&k, &s)| (f(k), s)).collect(),
            welded_history: self.welded_history.clone(),
        }
    }

    pub fn weld(&self, c: CrossingLabel) -> Result<WeldedDiagram, DiagramError> {
        if !self.contains(c) {
            return Err(DiagramError::UnknownCrossing(c.0));
        }
        let mut d = self.clone();
        d.code.retain(|p| p.crossing != c);
        d.signs.remove(&c);
        d.welded_history.push(c);
        Ok(d)
    }

    pub fn weld_set(&self, set: &[CrossingLabel]) -> Result<WeldedDiagram, DiagramError> {
        let set: BTreeSet<CrossingLabel> = set.iter().copied().collect();
        if let Some(c) = set.iter().find(|c| !self.contains(**c)) {
            return Err(DiagramError::UnknownCrossing(c.0));
        }
        let mut d = self.clone();
        d.code.retain(|p| !set.contains(&p.crossing));
        d.signs.retain(|k, _| !set.contains(k));
        d.welded_history.extend(set.iter().copied());
        Ok(d)
    }

    /// Arcs in traversal order; arc 0 is the one containing position 0.
    pub fn arcs(&self) -> Vec<Arc> {
        let n = self.code.len();
        let unders: Vec<usize> = (0..n).filter(|&i| self.code[i].role == Role::Under).collect();
        if unders.is_empty() {
            return vec![Arc { start: 0, end: n.saturating_sub(1) }];
        }
        let m = unders.len();
        (0..m)
            .map(|j| {
                let prev = unders[(j + m - 1) % m];
                Arc { start: (prev + 1) % n, end: unders[j] }
            })
            .collect()
    }

    /// For each position, the index of the arc it lies on. An Under pass
    /// belongs to the arc it terminates.
    pub fn arc_of_positions(&self) -> Vec<usize> {
        let n = self.code.len();
        let unders: Vec<usize> = (0..n).filter(|&i| self.code[i].role == Role::Under).collect();
        let mut out = vec![0; n];
        if unders.is_empty() {
            return out;
        }
        let mut j = 0;
        for (p, slot) in out.iter_mut().enumerate() {
            while j < unders.len() && unders[j] < p {
                j += 1;
            }
            *slot = if j == unders.len() { 0 } else { j };
        }
        out
    }

    /// Number of Wirtinger generators: one per arc.
    pub fn arc_count(&self) -> usize {
        self.crossing_count().max(1)
    }
}

fn parse_token(tok: &str) -> Result<(Pass, Sign), DiagramError> {
    let bad = || DiagramError::MalformedToken(tok.to_string());
    let mut chars = tok.chars();
    let role = match chars.next() {
        Some('O') => Role::Over,
        Some('U') => Role::Under,
        _ => return Err(bad()),
    };
    let sign = match chars.next_back() {
        Some('+') => Sign::Pos,
        Some('-') => Sign::Neg,
        _ => return Err(bad()),
    };
    let digits = chars.as_str();
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let k: u32 = digits.parse().map_err(|_| bad())?;
    if k == 0 {
        return Err(bad());
    }
    Ok((Pass { crossing: CrossingLabel(k), role }, sign))
}

impl PartialEq for WeldedDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.code.len() == other.code.len() && self.canonical_key() == other.canonical_key()
    }
}

impl Eq for WeldedDiagram {}

/// Prints the code as stored: original labels and rotation.
impl fmt::Display for WeldedDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.code.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}{}{}", p.role.symbol(), p.crossing.0, self.signs[&p.crossing].symbol())?;
        }
        Ok(())
    }
}

impl FromStr for WeldedDiagram {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        WeldedDiagram::parse(s)
    }
}

impl Serialize for WeldedDiagram {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for WeldedDiagram {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        WeldedDiagram::parse(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "O1+ U2+ O3+ U1+ O2+ U3+";

    fn d(s: &str) -> WeldedDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_serialize() {
        assert_eq!(d(TREFOIL).crossing_count(), 3);
        assert_eq!(d(TREFOIL).serialize(), TREFOIL);
        assert!(d("").is_empty());
        assert_eq!(d("").serialize(), "");
        assert_eq!(d("O1+ U1+").serialize(), "O1+ U1+");
        assert_eq!(d("U1+ O1+").serialize(), "O1+ U1+");
        assert_eq!(d("  O1+\tU1+\n").serialize(), "O1+ U1+");
    }

    #[test]
    fn parse_errors() {
        assert_eq!(WeldedDiagram::parse("O1+ O1+"), Err(DiagramError::DuplicateRole(1)));
        assert_eq!(WeldedDiagram::parse("O1+ U1+ O1+"), Err(DiagramError::CrossingCountNotTwo(1)));
        assert_eq!(WeldedDiagram::parse("O1+ U2+ U1+"), Err(DiagramError::CrossingCountNotTwo(2)));
        assert_eq!(WeldedDiagram::parse("O1+ U1-"), Err(DiagramError::SignMismatch(1)));
        for bad in ["X1+", "O1", "O+", "O0+", "Oa+", "O-1+", "O1*"] {
            assert!(matches!(WeldedDiagram::parse(bad), Err(DiagramError::MalformedToken(_))), "{bad}");
        }
    }

    #[test]
    fn canonical_form_invariances() {
        let t = d(TREFOIL);
        assert_eq!(t.rotate(2).serialize(), TREFOIL);
        let map = [(1, 7), (2, 9), (3, 8)]
            .into_iter()
            .map(|(a, b)| (CrossingLabel(a), CrossingLabel(b)))
            .collect();
        assert_eq!(t.relabel(&map).serialize(), TREFOIL);
        assert_ne!(d("O1+ U2+ O3- U1+ O2+ U3-"), t);
        assert_eq!(d("O5- O9+ U5- U9+").serialize(), "O1+ U2- U1+ O2-");
    }

    #[test]
    fn reverse_is_involution() {
        assert_eq!(d("").reverse(), d(""));
        assert_eq!(d("O1+ U1+").reverse().to_string(), "U1+ O1+");
        assert_eq!(d("O1+ U1+").reverse(), d("O1+ U1+"));
        let t = d("O1+ U2- O3+ U1+ O2- U3+");
        assert_eq!(t.reverse().reverse().to_string(), t.to_string());
    }

    #[test]
    fn welding() {
        let t = d(TREFOIL);
        let w = t.weld(CrossingLabel(2)).unwrap();
        assert_eq!(w.to_string(), "O1+ O3+ U1+ U3+");
        assert_eq!(w.welded_history(), &[CrossingLabel(2)]);
        assert!(d("O1+ U1+").weld(CrossingLabel(1)).unwrap().is_empty());
        assert_eq!(t.weld(CrossingLabel(5)), Err(DiagramError::UnknownCrossing(5)));
        let all: Vec<_> = (1..=3).map(CrossingLabel).collect();
        assert!(t.weld_set(&all).unwrap().is_empty());
        assert_eq!(t.weld_set(&[]).unwrap().to_string(), TREFOIL);
    }

    #[test]
    fn arcs_follow_unders() {
        assert_eq!(d(TREFOIL).arcs().len(), 3);
        assert_eq!(d("").arcs(), vec![Arc { start: 0, end: 0 }]);
        let w = d("O1+ O3+ U1+ U3+");
        assert_eq!(w.arcs(), vec![Arc { start: 0, end: 2 }, Arc { start: 3, end: 3 }]);
        assert_eq!(w.arc_of_positions(), vec![0, 0, 0, 1]);
        let t = d(TREFOIL);
        assert_eq!(t.arcs()[0], Arc { start: 0, end: 1 });
        assert_eq!(t.arc_of_positions(), vec![0, 0, 1, 1, 2, 2]);
    }
}
