//! Knot group presentations and the certificates built on them.

mod alexander;
mod coloring;
mod laurent;
mod snf;
mod tietze;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gaussdiag::{Role, WeldedDiagram};

pub use alexander::{abelian_weights, alexander_polynomial};
pub use coloring::{
    coloring_count, coloring_divisors, coloring_matrix, count_from_divisors, dihedral_nontriviality,
    reflection_count, ColoringReport, GroupFingerprint, FINGERPRINT_MODULI,
};
pub use laurent::LaurentPolynomial;
pub use snf::{determinant, smith_normal_form, IntMatrix};
pub use tietze::{is_infinite_cyclic_certificate, tietze_simplify, Certificate};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("modulus {0} is below 2")]
    BadModulus(u64),
    #[error("abelianization has free rank {0}, expected 1")]
    NotRankOne(usize),
    #[error("generator index {0} out of range")]
    BadGenerator(usize),
    #[error("cannot parse presentation: {0}")]
    Parse(String),
}

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "(usize, i8)", into = "(usize, i8)")]
pub struct Letter {
    pub generator: usize,
    pub exponent: i8,
}

impl Letter {
    pub fn new(generator: usize, exponent: i8) -> Letter {
        debug_assert!(exponent == 1 || exponent == -1);
        Letter { generator, exponent }
    }

    pub fn inverse(self) -> Letter {
        Letter { generator: self.generator, exponent: -self.exponent }
    }
}

impl From<(usize, i8)> for Letter {
    fn from((generator, exponent): (usize, i8)) -> Letter {
        Letter { generator, exponent: if exponent < 0 { -1 } else { 1 } }
    }
}

impl From<Letter> for (usize, i8) {
    fn from(l: Letter) -> (usize, i8) {
        (l.generator, l.exponent)
    }
}

pub type Word = Vec<Letter>;

pub fn free_reduce(w: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &x in w {
        if out.last() == Some(&x.inverse()) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

pub fn cyclic_reduce(w: &[Letter]) -> Word {
    let w = free_reduce(w);
    let mut lo = 0;
    let mut hi = w.len();
    while hi - lo >= 2 && w[lo] == w[hi - 1].inverse() {
        lo += 1;
        hi -= 1;
    }
    w[lo..hi].to_vec()
}

pub fn invert_word(w: &[Letter]) -> Word {
    w.iter().rev().map(|l| l.inverse()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
}

impl Presentation {
    /// Checks generator indices and freely reduces every relator.
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Presentation, GroupError> {
        for l in relators.iter().flatten() {
            if l.generator >= generators.len() {
                return Err(GroupError::BadGenerator(l.generator));
            }
        }
        let relators = relators.iter().map(|r| free_reduce(r)).collect();
        Ok(Presentation { generators, relators })
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn total_length(&self) -> usize {
        self.relators.iter().map(Vec::len).sum()
    }

    /// Relators x generators matrix of exponent sums.
    pub fn exponent_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.relators.len(), self.generators.len());
        for (i, r) in self.relators.iter().enumerate() {
            for l in r {
                *m.get_mut(i, l.generator) += l.exponent as i64;
            }
        }
        m
    }

    pub fn word_string(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.iter()
            .map(|l| {
                let name = &self.generators[l.generator];
                if l.exponent > 0 {
                    name.clone()
                } else {
                    name.to_uppercase()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Generator names: `a`..`z` when they suffice, `x1`, `x2`, ... otherwise.
pub fn generator_names(n: usize) -> Vec<String> {
    if n <= 26 {
        (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

/// Elementary divisors of the abelianization, one per generator; the zeros
/// at the end count the free rank.
pub fn abelianization(p: &Presentation) -> Vec<BigInt> {
    let mut d = smith_normal_form(&p.exponent_matrix());
    d.resize(p.generators.len(), BigInt::zero());
    d
}

pub fn free_rank(divisors: &[BigInt]) -> usize {
    divisors.iter().filter(|d| d.is_zero()).count()
}

/// Wirtinger presentation: one generator per arc, one relator per crossing.
/// With over arc `a`, incoming under arc `b` and outgoing under arc `c`, the
/// relator is `c (a b a^-1)^-1` for a positive crossing and
/// `c (a^-1 b a)^-1` for a negative one.
pub fn wirtinger(d: &WeldedDiagram) -> Presentation {
    let arcs = d.arc_count();
    let generators = generator_names(arcs);
    if d.is_empty() {
        return Presentation { generators, relators: Vec::new() };
    }
    let arc_of = d.arc_of_positions();
    let code = d.code();
    let mut relators = Vec::with_capacity(arcs);
    let mut j = 0;
    for (pos, p) in code.iter().enumerate() {
        if p.role != Role::Under {
            continue;
        }
        let over = d.position(p.crossing, Role::Over).expect("valid diagram");
        let a = arc_of[over];
        let b = j;
        let c = (j + 1) % arcs;
        debug_assert_eq!(arc_of[pos], b);
        let e = d.sign(p.crossing).expect("valid diagram").value() as i8;
        let r = [Letter::new(c, 1), Letter::new(a, e), Letter::new(b, -1), Letter::new(a, -e)];
        relators.push(free_reduce(&r));
        j += 1;
    }
    Presentation { generators, relators }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "< {} |", self.generators.join(", "))?;
        if self.relators.is_empty() {
            return f.write_str(" >");
        }
        let rels: Vec<String> = self.relators.iter().map(|r| self.word_string(r)).collect();
        write!(f, " {} >", rels.join(", "))
    }
}

impl FromStr for Presentation {
    type Err = GroupError;

    /// Parses `< a, b | a b A B, b b >`; an uppercase name is an inverse.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |m: &str| GroupError::Parse(m.to_string());
        let body = s
            .trim()
            .strip_prefix('<')
            .and_then(|r| r.strip_suffix('>'))
            .ok_or_else(|| bad("expected `< ... >`"))?;
        let (gens, rels) = body.split_once('|').ok_or_else(|| bad("missing `|`"))?;
        let generators: Vec<String> = gens
            .split(',')
            .map(str::trim)
            .filter(|g| !g.is_empty())
            .map(str::to_string)
            .collect();
        for g in &generators {
            if !g.starts_with(|c: char| c.is_ascii_lowercase()) {
                return Err(bad(&format!("generator `{g}` must start with a lowercase letter")));
            }
        }
        let mut relators = Vec::new();
        for r in rels.split(',') {
            let r = r.trim();
            if r.is_empty() {
                continue;
            }
            let mut w = Vec::new();
            for tok in r.split_whitespace() {
                if tok == "1" {
                    continue;
                }
                let (name, e) = if tok.starts_with(|c: char| c.is_ascii_uppercase()) {
                    (tok.to_lowercase(), -1)
                } else {
                    (tok.to_string(), 1)
                };
                let g = generators
                    .iter()
                    .position(|x| *x == name)
                    .ok_or_else(|| bad(&format!("unknown generator `{tok}`")))?;
                w.push(Letter::new(g, e));
            }
            relators.push(w);
        }
        Presentation::new(generators, relators)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(s: &str) -> Presentation {
        s.parse().unwrap()
    }

    #[test]
    fn text_round_trip() {
        let p = pres("< a, b | a b a B A B >");
        assert_eq!(p.relators[0].len(), 6);
        assert_eq!(p.to_string(), "< a, b | a b a B A B >");
        assert_eq!(pres("< a | >").to_string(), "< a | >");
        assert_eq!(pres("< a, b | a A b >").relators[0], vec![Letter::new(1, 1)]);
        assert!("< a | b >".parse::<Presentation>().is_err());
    }

    #[test]
    fn json_uses_index_exponent_pairs() {
        let p = pres("< a, b | b A >");
        let j = serde_json::to_string(&p).unwrap();
        assert_eq!(j, r#"{"generators":["a","b"],"relators":[[[1,1],[0,-1]]]}"#);
        assert_eq!(serde_json::from_str::<Presentation>(&j).unwrap(), p);
    }

    #[test]
    fn reductions() {
        let w = vec![Letter::new(0, 1), Letter::new(1, 1), Letter::new(1, -1), Letter::new(2, 1), Letter::new(0, -1)];
        assert_eq!(free_reduce(&w), vec![Letter::new(0, 1), Letter::new(2, 1), Letter::new(0, -1)]);
        assert_eq!(cyclic_reduce(&w), vec![Letter::new(2, 1)]);
    }

    #[test]
    fn wirtinger_shapes() {
        let e = wirtinger(&WeldedDiagram::empty());
        assert_eq!((e.generators.len(), e.relators.len()), (1, 0));
        let t = wirtinger(&"O1+ U2+ O3+ U1+ O2+ U3+".parse().unwrap());
        assert_eq!((t.generators.len(), t.relators.len()), (3, 3));
        let ab = abelianization(&t);
        assert_eq!(ab, vec![BigInt::from(1), BigInt::from(1), BigInt::zero()]);
    }

    #[test]
    fn abelianization_examples() {
        let d = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(abelianization(&pres("< a, b | a a B B >")), d(&[2, 0]));
        assert_eq!(abelianization(&pres("< a | >")), d(&[0]));
    }
}
