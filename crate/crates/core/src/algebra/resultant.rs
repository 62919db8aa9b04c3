use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::laurent::LaurentPolynomial;
use crate::error::{Error, Result};

/// Largest Sylvester matrix handled by the subset expansion.
const MAX_SYLVESTER: usize = 20;

/// Resultant with respect to variable `var`, as a polynomial in the
/// remaining variables (the `var` slot of every exponent is 0).
///
/// An input with negative powers of `var` is first multiplied by the power
/// of `var` that makes its lowest exponent zero, so both inputs are
/// ordinary polynomials in `var`. The value is the Sylvester determinant.
pub fn resultant_univariate(
    a: &LaurentPolynomial,
    b: &LaurentPolynomial,
    var: usize,
) -> Result<LaurentPolynomial> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput);
    }
    assert_eq!(a.rank(), b.rank());
    let rank = a.rank();
    let ca = dense_coefficients(a, var);
    let cb = dense_coefficients(b, var);
    let (m, n) = (ca.len() - 1, cb.len() - 1);
    let size = m + n;
    if size == 0 {
        return Ok(LaurentPolynomial::constant(rank, 1));
    }
    if size > MAX_SYLVESTER {
        return Err(Error::TooLarge {
            points: size as u64,
            bound: MAX_SYLVESTER as u64,
        });
    }
    // rows 0..n: shifted copies of a; rows n..n+m: shifted copies of b.
    // Coefficients are placed highest degree first.
    let mut matrix = vec![vec![LaurentPolynomial::zero(rank); size]; size];
    for r in 0..n {
        for (k, c) in ca.iter().rev().enumerate() {
            matrix[r][r + k] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in cb.iter().rev().enumerate() {
            matrix[n + r][r + k] = c.clone();
        }
    }
    let constant = matrix.iter().flatten().all(|e| e.is_zero() || is_constant(e));
    if constant {
        let ints: Vec<Vec<BigInt>> = matrix
            .iter()
            .map(|row| row.iter().map(|e| e.coefficient(&vec![0; rank])).collect())
            .collect();
        return Ok(LaurentPolynomial::constant(rank, bareiss_det(ints)));
    }
    Ok(subset_det(&matrix, rank))
}

fn is_constant(p: &LaurentPolynomial) -> bool {
    p.support().all(|e| e.iter().all(|&v| v == 0))
}

/// Coefficients `c_0..c_d` of powers of `var` after clearing negative powers.
fn dense_coefficients(p: &LaurentPolynomial, var: usize) -> Vec<LaurentPolynomial> {
    let by_power = p.coefficients_in(var);
    let lo = (*by_power.keys().next().expect("nonzero")).min(0);
    let hi = *by_power.keys().next_back().expect("nonzero");
    (lo..=hi)
        .map(|k| by_power.get(&k).cloned().unwrap_or_else(|| LaurentPolynomial::zero(p.rank())))
        .collect()
}

/// Resultant of two nonzero dense integer polynomials (ascending
/// coefficients, trimmed).
pub fn z_resultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    if size == 0 {
        return BigInt::one();
    }
    let mut matrix = vec![vec![BigInt::zero(); size]; size];
    for r in 0..n {
        for (k, c) in a.iter().rev().enumerate() {
            matrix[r][r + k] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in b.iter().rev().enumerate() {
            matrix[n + r][r + k] = c.clone();
        }
    }
    bareiss_det(matrix)
}

/// Fraction-free Gaussian elimination on an integer matrix.
fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                None => return BigInt::zero(),
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Determinant by expansion over column subsets, row by row.
fn subset_det(m: &[Vec<LaurentPolynomial>], rank: usize) -> LaurentPolynomial {
    let n = m.len();
    let mut layer: HashMap<u32, LaurentPolynomial> = HashMap::new();
    layer.insert(0, LaurentPolynomial::constant(rank, 1));
    for row in m {
        let mut next: HashMap<u32, LaurentPolynomial> = HashMap::new();
        for (mask, acc) in &layer {
            for (c, entry) in row.iter().enumerate() {
                if entry.is_zero() || mask & (1 << c) != 0 {
                    continue;
                }
                let above = (mask >> (c + 1)).count_ones();
                let mut term = acc * entry;
                if above % 2 == 1 {
                    term = -term;
                }
                let slot = next
                    .entry(mask | (1 << c))
                    .or_insert_with(|| LaurentPolynomial::zero(rank));
                *slot = &*slot + &term;
            }
        }
        next.retain(|_, v| !v.is_zero());
        layer = next;
    }
    layer
        .remove(&((1u32 << n) - 1))
        .unwrap_or_else(|| LaurentPolynomial::zero(rank))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(rank: usize, terms: &[(&[i64], i64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(rank, terms.iter().map(|(e, c)| (e.to_vec(), *c))).unwrap()
    }

    #[test]
    fn linear_substitution() {
        // variables (x, U, V); Res_x(U - x, V - x - 1) = ±(V - U - 1)
        let a = lp(3, &[(&[0, 1, 0], 1), (&[1, 0, 0], -1)]);
        let b = lp(3, &[(&[0, 0, 1], 1), (&[1, 0, 0], -1), (&[0, 0, 0], -1)]);
        let r = resultant_univariate(&a, &b, 0).unwrap();
        let expected = lp(3, &[(&[0, 0, 1], 1), (&[0, 1, 0], -1), (&[0, 0, 0], -1)]);
        assert!(r == expected || r == -&expected, "{r}");
    }

    #[test]
    fn integer_case() {
        let a = lp(1, &[(&[1], 1)]);
        let b = lp(1, &[(&[1], 1), (&[0], 2)]);
        let r = resultant_univariate(&a, &b, 0).unwrap();
        assert!(r == lp(1, &[(&[0], 2)]) || r == lp(1, &[(&[0], -2)]));
        assert_eq!(
            resultant_univariate(&LaurentPolynomial::zero(1), &b, 0),
            Err(Error::ZeroInput)
        );
    }

    #[test]
    fn bareiss_matches_expansion() {
        let m: Vec<Vec<i64>> = vec![vec![2, -1, 0, 3], vec![1, 4, -2, 0], vec![0, 5, 1, 1], vec![-3, 0, 2, 2]];
        let ints: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
        let polys: Vec<Vec<LaurentPolynomial>> = m
            .iter()
            .map(|r| r.iter().map(|&v| LaurentPolynomial::constant(1, v)).collect())
            .collect();
        let d = bareiss_det(ints);
        assert_eq!(subset_det(&polys, 1), LaurentPolynomial::constant(1, d));
    }
}
