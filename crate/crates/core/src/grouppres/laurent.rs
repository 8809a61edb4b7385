//! Integer Laurent polynomials in one variable `t`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// `coeffs[i]` is the coefficient of `t^(low + i)`. Neither end of `coeffs`
/// is zero; the zero polynomial has no coefficients and `low == 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LaurentPolynomial {
    low: i64,
    #[serde(rename = "coefficients", serialize_with = "crate::bigjson::ints")]
    coeffs: Vec<BigInt>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        LaurentPolynomial { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    pub fn monomial(c: BigInt, degree: i64) -> Self {
        Self::from_coeffs(degree, vec![c])
    }

    /// Coefficients listed from degree `low` upward.
    pub fn from_coeffs(low: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = LaurentPolynomial { low, coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(low: i64, coeffs: &[i64]) -> Self {
        Self::from_coeffs(low, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_terms(terms: &BTreeMap<i64, BigInt>) -> Self {
        let Some((&lo, _)) = terms.iter().next() else {
            return Self::zero();
        };
        let hi = *terms.keys().next_back().unwrap();
        let mut coeffs = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (&k, c) in terms {
            coeffs[(k - lo) as usize] += c;
        }
        Self::from_coeffs(lo, coeffs)
    }

    pub fn terms(&self) -> BTreeMap<i64, BigInt> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.low + i as i64, c.clone()))
            .collect()
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// True for `±t^k`.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].abs().is_one()
    }

    pub fn low_degree(&self) -> i64 {
        self.low
    }

    pub fn high_degree(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPolynomial { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    /// Lowest degree 0 and positive leading coefficient.
    pub fn normalize(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = self.coeffs.clone();
        if coeffs.last().unwrap().is_negative() {
            for c in &mut coeffs {
                *c = -&*c;
            }
        }
        LaurentPolynomial { low: 0, coeffs }
    }

    /// `p(t^-1)`.
    pub fn invert_variable(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        LaurentPolynomial { low: -self.high_degree(), coeffs }
    }

    /// Normal form up to units and `t <-> t^-1`: the smaller of the two
    /// normalizations. Welded knot invariants need not be symmetric.
    pub fn symmetric_normal_form(&self) -> Self {
        let a = self.normalize();
        let b = self.invert_variable().normalize();
        if a.coeffs <= b.coeffs {
            a
        } else {
            b
        }
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Greatest common divisor up to units, normalized.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.normalize();
        }
        if other.is_zero() {
            return self.normalize();
        }
        let g = poly::gcd(&self.normalize().coeffs, &other.normalize().coeffs);
        LaurentPolynomial::from_coeffs(0, g).normalize()
    }

    /// Exact quotient, if `other` divides `self` in `Z[t, t^-1]`.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let q = poly::div_exact(&self.coeffs, &other.coeffs)?;
        Some(LaurentPolynomial::from_coeffs(self.low - other.low, q))
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.high_degree().max(rhs.high_degree());
        let mut coeffs = vec![BigInt::zero(); (high - low + 1) as usize];
        for p in [self, rhs] {
            for (i, c) in p.coeffs.iter().enumerate() {
                coeffs[(p.low - low) as usize + i] += c;
            }
        }
        LaurentPolynomial::from_coeffs(low, coeffs)
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;

    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPolynomial::zero();
        }
        LaurentPolynomial::from_coeffs(self.low + rhs.low, poly::mul(&self.coeffs, &rhs.coeffs))
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let k = self.low + i as i64;
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}

/// Dense polynomials over the integers, lowest degree first, no trailing zeros.
pub(crate) mod poly {
    use super::*;

    pub fn trim(p: &mut Vec<BigInt>) {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
    }

    pub fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(&mut out);
        out
    }

    pub fn sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); a.len().max(b.len())];
        for (i, x) in a.iter().enumerate() {
            out[i] += x;
        }
        for (i, y) in b.iter().enumerate() {
            out[i] -= y;
        }
        trim(&mut out);
        out
    }

    pub fn scale(a: &[BigInt], c: &BigInt) -> Vec<BigInt> {
        let mut out: Vec<BigInt> = a.iter().map(|x| x * c).collect();
        trim(&mut out);
        out
    }

    /// Quotient of an exact division; `None` when a remainder is left.
    pub fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
        if b.is_empty() {
            return None;
        }
        if a.is_empty() {
            return Some(Vec::new());
        }
        if a.len() < b.len() {
            return None;
        }
        let mut r = a.to_vec();
        let lb = b.last().unwrap();
        let mut q = vec![BigInt::zero(); a.len() - b.len() + 1];
        for k in (0..q.len()).rev() {
            let top = &r[k + b.len() - 1];
            if top.is_zero() {
                continue;
            }
            let (qk, rem) = top.div_rem(lb);
            if !rem.is_zero() {
                return None;
            }
            for (j, y) in b.iter().enumerate() {
                r[k + j] -= &qk * y;
            }
            q[k] = qk;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        trim(&mut q);
        Some(q)
    }

    fn content(a: &[BigInt]) -> BigInt {
        a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    fn primitive(a: &[BigInt]) -> Vec<BigInt> {
        let c = content(a);
        if c.is_zero() {
            return Vec::new();
        }
        a.iter().map(|x| x / &c).collect()
    }

    /// Pseudo-remainder of `a` by `b`, `deg a >= deg b`.
    fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut r = a.to_vec();
        let lb = b.last().unwrap().clone();
        while r.len() >= b.len() && !r.is_empty() {
            let lr = r.last().unwrap().clone();
            let shift = r.len() - b.len();
            for x in r.iter_mut() {
                *x *= &lb;
            }
            for (j, y) in b.iter().enumerate() {
                r[shift + j] -= &lr * y;
            }
            trim(&mut r);
        }
        r
    }

    pub fn gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let c = content(a).gcd(&content(b));
        let mut x = primitive(a);
        let mut y = primitive(b);
        if x.len() < y.len() {
            std::mem::swap(&mut x, &mut y);
        }
        while !y.is_empty() {
            let r = pseudo_rem(&x, &y);
            x = y;
            y = primitive(&r);
        }
        let mut g = scale(&primitive(&x), &c);
        if g.last().is_some_and(|l| l.is_negative()) {
            g = g.iter().map(|v| -v).collect();
        }
        g
    }

    /// Bareiss fraction-free determinant over `Z[t]`.
    pub fn det(mut m: Vec<Vec<Vec<BigInt>>>) -> Vec<BigInt> {
        let n = m.len();
        if n == 0 {
            return vec![BigInt::one()];
        }
        let mut negate = false;
        let mut prev: Vec<BigInt> = vec![BigInt::one()];
        for k in 0..n {
            if m[k][k].is_empty() {
                let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_empty()) else {
                    return Vec::new();
                };
                m.swap(k, p);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = sub(&mul(&m[k][k], &m[i][j]), &mul(&m[i][k], &m[k][j]));
                    m[i][j] = div_exact(&num, &prev).expect("Bareiss division is exact");
                }
                m[i][k] = Vec::new();
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        if negate {
            d.iter().map(|v| -v).collect()
        } else {
            d
        }
    }
}

impl PartialOrd for LaurentPolynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LaurentPolynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.low, &self.coeffs).cmp(&(other.low, &other.coeffs))
    }
}
