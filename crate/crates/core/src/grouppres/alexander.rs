//! Alexander polynomial from Fox derivatives.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::laurent::{poly, LaurentPolynomial};
use super::{abelianization, determinant, free_rank, GroupError, Presentation};

/// The map onto the free part of the abelianization, as the power of `t`
/// assigned to each generator. Normalized so the first nonzero weight is
/// positive.
pub fn abelian_weights(p: &Presentation) -> Result<Vec<i64>, GroupError> {
    let rank = free_rank(&abelianization(p));
    if rank != 1 {
        return Err(GroupError::NotRankOne(rank));
    }
    let g = p.generators.len();
    let e = p.exponent_matrix();
    let rows: Vec<Vec<BigInt>> = (0..e.rows()).map(|i| e.row(i).to_vec()).collect();
    let basis = echelon(rows, g);
    debug_assert_eq!(basis.len() + 1, g);
    // generalized cross product of the g-1 independent rows
    let mut v: Vec<BigInt> = (0..g)
        .map(|j| {
            let minor: Vec<Vec<BigInt>> = basis
                .iter()
                .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
                .collect();
            let d = determinant(&minor);
            if j % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect();
    let gcd = v.iter().fold(BigInt::zero(), |a, x| a.gcd(x));
    for x in &mut v {
        *x /= &gcd;
    }
    if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in &mut v {
            *x = -&*x;
        }
    }
    Ok(v.iter().map(|x| x.to_i64().expect("weight fits in i64")).collect())
}

/// Fraction-free row echelon form; returns the nonzero rows.
fn echelon(mut rows: Vec<Vec<BigInt>>, cols: usize) -> Vec<Vec<BigInt>> {
    let mut out = Vec::new();
    for c in 0..cols {
        let Some(p) = rows.iter().position(|r| !r[c].is_zero()) else {
            continue;
        };
        let piv = rows.swap_remove(p);
        for r in rows.iter_mut() {
            if r[c].is_zero() {
                continue;
            }
            let f = r[c].clone();
            for k in 0..cols {
                r[k] = &piv[c] * &r[k] - &f * &piv[k];
            }
            let content = r.iter().fold(BigInt::zero(), |a, x| a.gcd(x));
            if !content.is_zero() {
                for x in r.iter_mut() {
                    *x /= &content;
                }
            }
        }
        out.push(piv);
    }
    out
}

/// Abelianized Fox Jacobian: relators x generators.
fn fox_matrix(p: &Presentation, weights: &[i64]) -> Vec<Vec<LaurentPolynomial>> {
    p.relators
        .iter()
        .map(|r| {
            let mut row = vec![LaurentPolynomial::zero(); p.generators.len()];
            let mut s = 0i64;
            for l in r {
                let w = weights[l.generator];
                if l.exponent > 0 {
                    row[l.generator] = &row[l.generator] + &LaurentPolynomial::monomial(BigInt::one(), s);
                    s += w;
                } else {
                    s -= w;
                    row[l.generator] = &row[l.generator] - &LaurentPolynomial::monomial(BigInt::one(), s);
                }
            }
            row
        })
        .collect()
}

fn laurent_det(rows: &[Vec<LaurentPolynomial>]) -> LaurentPolynomial {
    // clear negative powers row by row, which only changes the result by a unit
    let m: Vec<Vec<Vec<BigInt>>> = rows
        .iter()
        .map(|r| {
            let low = r.iter().filter(|x| !x.is_zero()).map(|x| x.low_degree()).min().unwrap_or(0);
            r.iter()
                .map(|x| {
                    if x.is_zero() {
                        return Vec::new();
                    }
                    let s = x.shift(-low);
                    let mut v = vec![BigInt::zero(); s.low_degree() as usize];
                    v.extend(s.coefficients().iter().cloned());
                    v
                })
                .collect()
        })
        .collect();
    LaurentPolynomial::from_coeffs(0, poly::det(m))
}

/// Alexander polynomial of a group whose abelianization has free rank one:
/// the gcd of the maximal minors of the Fox Jacobian with one column
/// removed, corrected for the weight of that column, normalized.
pub fn alexander_polynomial(p: &Presentation) -> Result<LaurentPolynomial, GroupError> {
    let weights = abelian_weights(p)?;
    let g = p.generators.len();
    if g == 1 {
        return Ok(LaurentPolynomial::one());
    }
    let fox = fox_matrix(p, &weights);
    let j0 = (0..g)
        .filter(|&j| weights[j] != 0)
        .min_by_key(|&j| weights[j].abs())
        .expect("a rank one weight vector is nonzero");
    let reduced: Vec<Vec<LaurentPolynomial>> = fox
        .iter()
        .map(|r| r.iter().enumerate().filter(|(j, _)| *j != j0).map(|(_, x)| x.clone()).collect())
        .collect();
    let k = g - 1;
    let mut acc = LaurentPolynomial::zero();
    for rows in combinations(reduced.len(), k) {
        let sub: Vec<Vec<LaurentPolynomial>> = rows.iter().map(|&i| reduced[i].clone()).collect();
        let d = laurent_det(&sub);
        acc = acc.gcd(&d);
        if acc.is_unit() {
            break;
        }
    }
    let w = weights[j0].unsigned_abs() as usize;
    if w > 1 && !acc.is_zero() {
        let cyclotomic = LaurentPolynomial::from_coeffs(0, vec![BigInt::one(); w]);
        acc = acc.div_exact(&cyclotomic).expect("column weight factor divides every minor");
    }
    Ok(acc.normalize())
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
