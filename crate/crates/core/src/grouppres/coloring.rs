//! Fox colorings, dihedral quotients and group fingerprints.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::{alexander_polynomial, smith_normal_form, GroupError, IntMatrix, LaurentPolynomial, Presentation};
use crate::gaussdiag::{Role, WeldedDiagram};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColoringReport {
    pub modulus: u64,
    #[serde(serialize_with = "crate::bigjson::uint")]
    pub total_count: BigUint,
    pub nontrivial_exists: bool,
}

/// Rows are crossings in traversal order of their Under passes, columns are
/// arcs; each row encodes `out - 2 over + in`.
pub fn coloring_matrix(d: &WeldedDiagram) -> IntMatrix {
    let arcs = d.arc_count();
    let mut m = IntMatrix::zeros(d.crossing_count(), arcs);
    if d.is_empty() {
        return m;
    }
    let arc_of = d.arc_of_positions();
    let mut j = 0;
    for p in d.code() {
        if p.role != Role::Under {
            continue;
        }
        let a = arc_of[d.position(p.crossing, Role::Over).unwrap()];
        *m.get_mut(j, (j + 1) % arcs) += 1;
        *m.get_mut(j, a) -= 2;
        *m.get_mut(j, j) += 1;
        j += 1;
    }
    m
}

/// SNF divisors of the coloring matrix padded with zeros to one per arc.
pub fn coloring_divisors(d: &WeldedDiagram) -> Vec<BigInt> {
    let mut divs = smith_normal_form(&coloring_matrix(d));
    divs.resize(d.arc_count(), BigInt::zero());
    divs
}

/// Solutions of the diagonal system mod `m`: one factor `gcd(d, m)` per
/// divisor, a zero divisor contributing `m`.
pub fn count_from_divisors(divisors: &[BigInt], m: u64) -> BigUint {
    let mb = BigInt::from(m);
    divisors
        .iter()
        .map(|d| d.gcd(&mb).to_biguint().unwrap())
        .fold(BigUint::one(), |a, b| a * b)
}

pub fn coloring_count(d: &WeldedDiagram, m: u64) -> Result<ColoringReport, GroupError> {
    if m < 2 {
        return Err(GroupError::BadModulus(m));
    }
    let total = count_from_divisors(&coloring_divisors(d), m);
    Ok(ColoringReport { modulus: m, nontrivial_exists: total > BigUint::from(m), total_count: total })
}

/// Smallest odd `m` in `3..=m_max` with a nontrivial `m`-coloring.
pub fn dihedral_nontriviality(d: &WeldedDiagram, m_max: u64) -> Option<u64> {
    let divs = coloring_divisors(d);
    (3..=m_max).step_by(2).find(|&m| count_from_divisors(&divs, m) > BigUint::from(m))
}

/// Number of homomorphisms to the dihedral group of order `2m`, `m` odd,
/// sending every generator to a reflection, by enumeration. The reflection
/// with centre `c` is `x -> 2c - x`. For a Wirtinger presentation this is the
/// Fox coloring count. Cost grows as `m^generators`.
pub fn reflection_count(p: &Presentation, m: u64) -> Result<BigUint, GroupError> {
    if m < 3 || m % 2 == 0 {
        return Err(GroupError::BadModulus(m));
    }
    let g = p.generators.len();
    let m = m as i64;
    let mut colors = vec![0i64; g];
    let mut count = BigUint::zero();
    loop {
        let ok = p.relators.iter().all(|r| {
            // affine map x -> e x + c, composed right to left
            let (mut e, mut c) = (1i64, 0i64);
            // reflections are involutions, so exponents do not matter
            for l in r.iter().rev() {
                c = (2 * colors[l.generator] - c).rem_euclid(m);
                e = -e;
            }
            e == 1 && c == 0
        });
        if ok {
            count += 1u32;
        }
        let mut i = 0;
        while i < g {
            colors[i] += 1;
            if colors[i] < m {
                break;
            }
            colors[i] = 0;
            i += 1;
        }
        if i == g {
            break;
        }
    }
    Ok(count)
}

pub const FINGERPRINT_MODULI: [u64; 10] = [3, 5, 7, 9, 11, 13, 15, 17, 19, 21];

/// Coloring counts for odd moduli up to 21 and the Alexander polynomial up to
/// units and `t <-> t^-1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct GroupFingerprint {
    #[serde(serialize_with = "ser_counts")]
    pub colorings: BTreeMap<u64, BigUint>,
    pub alexander: Option<LaurentPolynomial>,
}

fn ser_counts<S: serde::Serializer>(v: &BTreeMap<u64, BigUint>, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(v.len()))?;
    for (k, c) in v {
        map.serialize_entry(&k.to_string(), &c.to_u64())?;
    }
    map.end()
}

impl GroupFingerprint {
    pub fn of_diagram(d: &WeldedDiagram) -> GroupFingerprint {
        let divs = coloring_divisors(d);
        let colorings = FINGERPRINT_MODULI.iter().map(|&m| (m, count_from_divisors(&divs, m))).collect();
        let alexander = alexander_polynomial(&super::wirtinger(d)).ok().map(|a| a.symmetric_normal_form());
        GroupFingerprint { colorings, alexander }
    }

    pub fn of_presentation(p: &Presentation) -> Result<GroupFingerprint, GroupError> {
        let mut colorings = BTreeMap::new();
        for &m in &FINGERPRINT_MODULI {
            colorings.insert(m, reflection_count(p, m)?);
        }
        let alexander = alexander_polynomial(p).ok().map(|a| a.symmetric_normal_form());
        Ok(GroupFingerprint { colorings, alexander })
    }

    /// Fingerprint of the infinite cyclic group.
    pub fn infinite_cyclic() -> GroupFingerprint {
        GroupFingerprint {
            colorings: FINGERPRINT_MODULI.iter().map(|&m| (m, BigUint::from(m))).collect(),
            alexander: Some(LaurentPolynomial::one()),
        }
    }

    pub fn is_infinite_cyclic_like(&self) -> bool {
        *self == GroupFingerprint::infinite_cyclic()
    }

    pub fn summary(&self) -> String {
        let cols: Vec<String> = self
            .colorings
            .iter()
            .filter(|(&m, c)| **c > BigUint::from(m))
            .map(|(m, c)| format!("{m}:{c}"))
            .collect();
        let alex = self.alexander.as_ref().map_or("-".to_string(), |a| a.to_string());
        let cols = if cols.is_empty() { "-".to_string() } else { cols.join(",") };
        format!("col {cols}; alex {alex}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grouppres::wirtinger;

    const TREFOIL: &str = "O1+ U2+ O3+ U1+ O2+ U3+";

    #[test]
    fn trefoil_and_unknot() {
        let t: WeldedDiagram = TREFOIL.parse().unwrap();
        let r = coloring_count(&t, 3).unwrap();
        assert_eq!(r.total_count, BigUint::from(9u32));
        assert!(r.nontrivial_exists);
        let e = coloring_count(&WeldedDiagram::empty(), 5).unwrap();
        assert_eq!(e.total_count, BigUint::from(5u32));
        assert!(!e.nontrivial_exists);
        assert_eq!(coloring_count(&t, 1), Err(GroupError::BadModulus(1)));
        assert_eq!(dihedral_nontriviality(&t, 21), Some(3));
        assert_eq!(dihedral_nontriviality(&WeldedDiagram::empty(), 21), None);
    }

    #[test]
    fn reflections_match_fox_colorings() {
        let t: WeldedDiagram = TREFOIL.parse().unwrap();
        let p = wirtinger(&t);
        for m in [3, 5, 7, 9] {
            assert_eq!(reflection_count(&p, m).unwrap(), coloring_count(&t, m).unwrap().total_count);
        }
        assert_eq!(GroupFingerprint::of_presentation(&p).unwrap(), GroupFingerprint::of_diagram(&t));
        assert!(GroupFingerprint::of_diagram(&WeldedDiagram::empty()).is_infinite_cyclic_like());
    }
}
