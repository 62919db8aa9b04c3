use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::FieldElement;
use super::series::FractionalSeries;
use crate::algebra::{LaurentPolynomial, Rational};
use crate::error::{Error, Result};

/// Monomials `U^a V^b` with `a + b <= d`, highest total degree first and
/// higher `V`-degree first within a degree.
fn monomials(d: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for total in (0..=d).rev() {
        for b in (0..=total).rev() {
            out.push((total - b, b));
        }
    }
    out
}

/// Smallest `d` with `d * r` integral for every exponent.
fn common_denominator<'a>(values: impl Iterator<Item = &'a Rational>) -> BigInt {
    values.fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Minimal-degree integer relation `R(U, V)` with `R(u, v) = 0` to the
/// available precision, or `None` when no relation of total degree at
/// most `degree_bound` exists.
///
/// The result is primitive, and its leading monomial (highest total
/// degree, then highest `V`-degree) has a positive coefficient.
pub fn find_integer_relation(
    u: &FractionalSeries,
    v: &FractionalSeries,
    degree_bound: u32,
) -> Result<Option<LaurentPolynomial>> {
    if degree_bound == 0 {
        return Err(Error::InvalidArgument("degree bound must be positive".into()));
    }
    if !u.field().is_rational() && !v.field().is_rational() && u.field() != v.field() {
        return Err(Error::InvalidArgument("series over different extensions".into()));
    }
    let field = if u.field().is_rational() { v.field().clone() } else { u.field().clone() };
    let (u, v) = (u.with_field(&field), v.with_field(&field));

    let d = degree_bound;
    let mut upow = vec![FractionalSeries::monomial(field.clone(), FieldElement::one(), BigRational::zero())];
    let mut vpow = upow.clone();
    for _ in 0..d {
        upow.push(upow.last().unwrap().mul(&u));
        vpow.push(vpow.last().unwrap().mul(&v));
    }
    let products: Vec<((u32, u32), FractionalSeries)> = monomials(d)
        .into_iter()
        .map(|(a, b)| ((a, b), upow[a as usize].mul(&vpow[b as usize])))
        .collect();

    check_precision(&u, &v, &products, d)?;

    for dd in 1..=d {
        let cols: Vec<&((u32, u32), FractionalSeries)> =
            products.iter().filter(|((a, b), _)| a + b <= dd).collect();
        let frontier = cols.iter().filter_map(|(_, s)| s.precision()).min().cloned();
        let exps: BTreeSet<Rational> = cols
            .iter()
            .flat_map(|(_, s)| s.terms().map(|(e, _)| e.clone()))
            .filter(|e| frontier.as_ref().is_none_or(|n| e < n))
            .collect();
        let mut rows = Vec::new();
        for e in &exps {
            for k in 0..field.degree() {
                let row: Vec<Rational> = cols.iter().map(|(_, s)| s.coefficient(e).coordinate(k)).collect();
                if row.iter().any(|c| !c.is_zero()) {
                    rows.push(row);
                }
            }
        }
        if let Some(kernel) = kernel_vector(rows, cols.len()) {
            let terms = normalize(&kernel);
            let poly = LaurentPolynomial::from_terms(
                2,
                cols.iter()
                    .zip(terms)
                    .map(|(((a, b), _), c)| (vec![*a as i64, *b as i64], c)),
            )?;
            return Ok(Some(poly));
        }
    }
    Ok(None)
}

/// Requires `(D+1)^2 + D * span` coefficient slots below the common
/// precision, where `span` is the largest `|valuation|` of the inputs,
/// both measured in steps of the common exponent denominator.
fn check_precision(
    u: &FractionalSeries,
    v: &FractionalSeries,
    products: &[((u32, u32), FractionalSeries)],
    d: u32,
) -> Result<()> {
    let Some(frontier) = products.iter().filter_map(|(_, s)| s.precision()).min().cloned() else {
        return Ok(());
    };
    let denom = common_denominator(
        products
            .iter()
            .flat_map(|(_, s)| s.terms().map(|(e, _)| e).chain(s.precision()))
            .chain(u.valuation())
            .chain(v.valuation()),
    );
    let scale = BigRational::from_integer(denom);
    let low = products
        .iter()
        .filter_map(|(_, s)| s.valuation().or(s.precision()))
        .min()
        .cloned()
        .unwrap_or_else(|| frontier.clone());
    let available = ((&frontier - &low) * &scale).ceil().to_integer().to_usize().unwrap_or(0);
    let span = [u.valuation(), v.valuation()]
        .into_iter()
        .flatten()
        .map(|e| (e.abs() * &scale).ceil().to_integer().to_usize().unwrap_or(usize::MAX))
        .max()
        .unwrap_or(0);
    let d = d as usize;
    let needed = (d + 1) * (d + 1) + d * span;
    if available < needed {
        return Err(Error::InsufficientPrecision { needed, available });
    }
    Ok(())
}

const MODULUS: u64 = (1 << 61) - 1;

fn mod_p(n: &BigInt) -> u64 {
    n.mod_floor(&BigInt::from(MODULUS)).to_u64().expect("reduced")
}

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MODULUS as u128) as u64
}

fn inv_mod(a: u64) -> u64 {
    let (mut base, mut e, mut acc) = (a, MODULUS - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        e >>= 1;
    }
    acc
}

/// Elimination modulo a large prime on the rows scaled to integers.
/// Returns the first column that gets no pivot, with the rows that
/// carry the pivots of the earlier columns. `None` means full column
/// rank mod p, hence over `Q`.
fn modular_free_column(rows: &[Vec<BigInt>], ncols: usize) -> Option<(usize, Vec<usize>)> {
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(mod_p).collect()).collect();
    let mut origin: Vec<usize> = (0..m.len()).collect();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| m[i][col] != 0) else {
            return Some((col, origin[..r].to_vec()));
        };
        m.swap(r, p);
        origin.swap(r, p);
        let inv = inv_mod(m[r][col]);
        for i in r + 1..m.len() {
            if m[i][col] != 0 {
                let factor = mul_mod(m[i][col], inv);
                for c in col..ncols {
                    let sub = mul_mod(factor, m[r][c]);
                    m[i][c] = (m[i][c] + MODULUS - sub) % MODULUS;
                }
            }
        }
        r += 1;
    }
    None
}

/// Kernel vector attached to the first free column (see
/// [`first_kernel_vector`]), located modulo a prime and then solved
/// exactly on the pivot rows only. Falls back to full exact elimination
/// when the modular candidate does not verify over `Q`.
fn kernel_vector(rows: Vec<Vec<Rational>>, ncols: usize) -> Option<Vec<Rational>> {
    let ints: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let l = BigRational::from_integer(common_denominator(row.iter()));
            row.iter().map(|c| (c * &l).to_integer()).collect()
        })
        .collect();
    let (free, pivot_rows) = modular_free_column(&ints, ncols)?;
    // columns before `free` are independent mod p, so independent over Q
    let k = pivot_rows.len();
    let square: Vec<Vec<Rational>> = pivot_rows
        .iter()
        .map(|&i| {
            let mut row: Vec<Rational> = ints[i][..k].iter().cloned().map(BigRational::from_integer).collect();
            row.push(BigRational::from_integer(-ints[i][free].clone()));
            row
        })
        .collect();
    let mut x = vec![BigRational::zero(); ncols];
    x[free] = BigRational::one();
    for (j, v) in solve_square(square).into_iter().enumerate() {
        x[j] = v;
    }
    let verified = ints.iter().all(|row| {
        row.iter()
            .zip(&x)
            .filter(|(_, v)| !v.is_zero())
            .fold(BigRational::zero(), |acc, (c, v)| acc + v * BigRational::from_integer(c.clone()))
            .is_zero()
    });
    if verified {
        Some(x)
    } else {
        first_kernel_vector(rows, ncols)
    }
}

/// Solves a nonsingular `k x k` system given as augmented rows.
fn solve_square(mut m: Vec<Vec<Rational>>) -> Vec<Rational> {
    let k = m.len();
    for col in 0..k {
        let p = (col..k).find(|&i| !m[i][col].is_zero()).expect("nonsingular");
        m.swap(col, p);
        let inv = m[col][col].recip();
        for c in m[col].iter_mut() {
            *c = &*c * &inv;
        }
        let pivot = m[col].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != col && !row[col].is_zero() {
                let factor = row[col].clone();
                for (c, pc) in row.iter_mut().zip(&pivot).skip(col) {
                    *c = &*c - &factor * pc;
                }
            }
        }
    }
    m.into_iter().map(|row| row[k].clone()).collect()
}

/// Reduced row echelon form over `Q`; returns the kernel vector attached
/// to the first free column, if any.
fn first_kernel_vector(mut rows: Vec<Vec<Rational>>, ncols: usize) -> Option<Vec<Rational>> {
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for c in rows[r].iter_mut() {
            *c = &*c * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let factor = rows[i][col].clone();
                let pivot_row = rows[r].clone();
                for (c, pc) in rows[i].iter_mut().zip(&pivot_row) {
                    *c = &*c - &factor * pc;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let free = (0..ncols).find(|c| !pivots.contains(c))?;
    let mut x = vec![BigRational::zero(); ncols];
    x[free] = BigRational::one();
    for (i, &pc) in pivots.iter().enumerate() {
        x[pc] = -rows[i][free].clone();
    }
    Some(x)
}

fn normalize(x: &[Rational]) -> Vec<BigInt> {
    let l = x.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let scaled: Vec<BigInt> = x.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = scaled.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let lead_negative = scaled.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative());
    scaled
        .into_iter()
        .map(|c| {
            let c = c / &g;
            if lead_negative {
                -c
            } else {
                c
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, resultant_univariate};

    fn series(terms: &[(i64, i64)]) -> FractionalSeries {
        FractionalSeries::from_rational(&terms.iter().map(|&(e, c)| (rat(e), rat(c))).collect::<Vec<_>>(), None)
    }

    fn poly(terms: &[([i64; 2], i64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(2, terms.iter().map(|(e, c)| (e.to_vec(), *c))).unwrap()
    }

    #[test]
    fn line_relation() {
        let r = find_integer_relation(&series(&[(1, 1)]), &series(&[(0, 1), (1, 1)]), 1).unwrap();
        assert_eq!(r, Some(poly(&[([0, 1], 1), ([1, 0], -1), ([0, 0], -1)])));
        let r = find_integer_relation(&series(&[(1, 1)]), &series(&[(1, 1)]), 1).unwrap();
        assert_eq!(r, Some(poly(&[([0, 1], 1), ([1, 0], -1)])));
    }

    #[test]
    fn squared_line_matches_resultant() {
        let u = series(&[(2, 1)]);
        let v = series(&[(0, 1), (1, 2), (2, 1)]);
        let r = find_integer_relation(&u, &v, 2).unwrap().unwrap();
        // Res_x(U - x^2, V - (x+1)^2) in variables (x, U, V)
        let a = LaurentPolynomial::from_terms(3, [(vec![0, 1, 0], 1), (vec![2, 0, 0], -1)]).unwrap();
        let b = LaurentPolynomial::from_terms(
            3,
            [(vec![0, 0, 1], 1), (vec![2, 0, 0], -1), (vec![1, 0, 0], -2), (vec![0, 0, 0], -1)],
        )
        .unwrap();
        let res = resultant_univariate(&a, &b, 0).unwrap();
        let res2 = res.map_exponents(2, |e| vec![e[1], e[2]]);
        assert!(r == res2 || r == -res2);
        let expected = &(poly(&[([0, 1], 1), ([1, 0], -1), ([0, 0], -1)]).pow(2)) - &poly(&[([1, 0], 4)]);
        assert_eq!(r, expected);
    }

    fn exp_series(n: i64) -> FractionalSeries {
        let mut fact = BigInt::one();
        let mut terms = Vec::new();
        for k in 0..n {
            if k > 0 {
                fact *= k;
            }
            terms.push((rat(k), BigRational::new(BigInt::one(), fact.clone())));
        }
        FractionalSeries::from_rational(&terms, Some(rat(n)))
    }

    #[test]
    fn no_relation_and_precision() {
        // t and e^t share no low-degree relation; truncated data is too short
        let u = series(&[(1, 1)]);
        let exp = exp_series(6);
        assert!(matches!(find_integer_relation(&u, &exp, 2), Err(Error::InsufficientPrecision { .. })));
        let exp = exp_series(30);
        assert_eq!(find_integer_relation(&u, &exp, 2).unwrap(), None);
    }

    #[test]
    fn modular_shortcut_matches_exact_elimination() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        for _ in 0..60 {
            let ncols = rng.gen_range(2..7);
            let nrows = rng.gen_range(1..9);
            let mut rows: Vec<Vec<Rational>> = (0..nrows)
                .map(|_| (0..ncols).map(|_| q(rng.gen_range(-9..=9), rng.gen_range(1..=4))).collect())
                .collect();
            if rng.gen_bool(0.5) {
                // plant a dependency: column j = a * column 0 + b * column 1
                let (a, b, j) = (q(rng.gen_range(-3..=3), 2), q(rng.gen_range(-3..=3), 3), ncols - 1);
                for row in rows.iter_mut() {
                    row[j] = &a * &row[0] + &b * &row[1];
                }
            }
            assert_eq!(kernel_vector(rows.clone(), ncols), first_kernel_vector(rows, ncols));
        }
    }
}
