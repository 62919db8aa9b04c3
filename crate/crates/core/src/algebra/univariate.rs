//! Dense univariate polynomials over `Z`, `Q` and `F_p`, coefficients in
//! ascending degree order.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::integer::{gcd_all, inv_mod, mul_mod, prime_divisors};

pub type QPoly = Vec<BigRational>;
pub type ZPoly = Vec<BigInt>;
pub type FpPoly = Vec<u64>;

/// Work limit on Kronecker interpolation candidates.
const KRONECKER_BUDGET: u64 = 2_000_000;

pub fn trim<T: Zero>(mut p: Vec<T>) -> Vec<T> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

/// Degree, or `None` for the zero polynomial.
pub fn degree<T: Zero>(p: &[T]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn to_q(p: &[BigInt]) -> QPoly {
    p.iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

pub fn q_add(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    trim((0..n)
        .map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z))
        .collect())
}

pub fn q_sub(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    trim((0..n)
        .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
        .collect())
}

pub fn q_mul(a: &[BigRational], b: &[BigRational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn q_scale(a: &[BigRational], c: &BigRational) -> QPoly {
    trim(a.iter().map(|x| x * c).collect())
}

/// Quotient and remainder. Panics on division by zero.
pub fn q_divrem(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly) {
    let db = degree(b).expect("division by zero polynomial");
    let lead = b[db].clone();
    let mut rem = trim(a.to_vec());
    let mut quot = vec![BigRational::zero(); rem.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let c = &rem[dr] / &lead;
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate().take(db + 1) {
            rem[i + shift] -= &c * bc;
        }
        quot[shift] = c;
        rem = trim(rem);
    }
    (trim(quot), rem)
}

pub fn q_monic(a: &[BigRational]) -> QPoly {
    match degree(a) {
        None => Vec::new(),
        Some(d) => {
            let inv = a[d].recip();
            q_scale(a, &inv)
        }
    }
}

/// Monic gcd over `Q`.
pub fn q_gcd(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let (_, r) = q_divrem(&a, &b);
        a = b;
        b = r;
    }
    q_monic(&a)
}

/// Extended Euclid: returns `(g, s, t)` with `s*a + t*b = g`, `g` monic.
pub fn q_xgcd(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly, QPoly) {
    let one = vec![BigRational::one()];
    let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
    let (mut s0, mut s1) = (one.clone(), Vec::new());
    let (mut t0, mut t1) = (Vec::new(), one);
    while !r1.is_empty() {
        let (q, r) = q_divrem(&r0, &r1);
        let s = q_sub(&s0, &q_mul(&q, &s1));
        let t = q_sub(&t0, &q_mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    match degree(&r0) {
        None => (r0, s0, t0),
        Some(d) => {
            let inv = r0[d].recip();
            (q_scale(&r0, &inv), q_scale(&s0, &inv), q_scale(&t0, &inv))
        }
    }
}

pub fn q_eval(a: &[BigRational], x: &BigRational) -> BigRational {
    a.iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// Clears denominators and content; leading coefficient positive.
pub fn q_to_primitive_z(a: &[BigRational]) -> ZPoly {
    let a = trim(a.to_vec());
    if a.is_empty() {
        return Vec::new();
    }
    let l = a.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let z: ZPoly = a.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
    z_primitive(&z)
}

pub fn z_content(a: &[BigInt]) -> BigInt {
    gcd_all(a.iter())
}

/// Primitive part with positive leading coefficient.
pub fn z_primitive(a: &[BigInt]) -> ZPoly {
    let a = trim(a.to_vec());
    if a.is_empty() {
        return a;
    }
    let c = z_content(&a);
    let sign = if a.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
    a.iter().map(|x| x / &c * &sign).collect()
}

pub fn z_mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Exact quotient over `Z`, or `None`.
pub fn z_div_exact(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let (q, r) = q_divrem(&to_q(a), &to_q(b));
    if !r.is_empty() || q.iter().any(|c| !c.is_integer()) {
        return None;
    }
    Some(q.iter().map(|c| c.to_integer()).collect())
}

pub fn z_eval(a: &[BigInt], x: &BigInt) -> BigInt {
    a.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// All positive divisors of a nonzero integer, or `None` if it cannot be
/// factored.
pub fn positive_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs();
    let primes = prime_divisors(&n).ok()?;
    let mut divs = vec![BigInt::one()];
    for p in primes {
        let p = BigInt::from(p);
        let mut m = n.clone();
        let mut k = 0;
        while (&m % &p).is_zero() {
            m /= &p;
            k += 1;
        }
        let mut next = Vec::with_capacity(divs.len() * (k + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=k {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    Some(divs)
}

/// Rational roots with multiplicities (ascending).
pub fn rational_roots(a: &[BigInt]) -> Option<Vec<(BigRational, u32)>> {
    let mut f = z_primitive(a);
    let mut out = Vec::new();
    if f.is_empty() {
        return Some(out);
    }
    let mut zero_mult = 0;
    while f.len() > 1 && f[0].is_zero() {
        f.remove(0);
        zero_mult += 1;
    }
    if zero_mult > 0 {
        out.push((BigRational::zero(), zero_mult));
    }
    if f.len() <= 1 {
        return Some(out);
    }
    let nums = positive_divisors(&f[0])?;
    let dens = positive_divisors(f.last().unwrap())?;
    let mut candidates = Vec::new();
    for p in &nums {
        for q in &dens {
            let r = BigRational::new(p.clone(), q.clone());
            candidates.push(r.clone());
            candidates.push(-r);
        }
    }
    candidates.sort();
    candidates.dedup();
    for r in candidates {
        let mut m = 0;
        loop {
            let fq = to_q(&f);
            if f.len() <= 1 || !q_eval(&fq, &r).is_zero() {
                break;
            }
            let lin = vec![-r.clone(), BigRational::one()];
            let (q, _) = q_divrem(&fq, &lin);
            f = q_to_primitive_z(&q);
            m += 1;
        }
        if m > 0 {
            out.push((r, m));
        }
    }
    out.sort();
    Some(out)
}

/// Complete factorization over `Z` into primitive irreducibles with
/// multiplicities, by Kronecker's method. The content is dropped.
/// Returns `None` when the candidate budget is exhausted.
pub fn z_factor(a: &[BigInt]) -> Option<Vec<(ZPoly, u32)>> {
    let f = z_primitive(a);
    let mut irreducible: Vec<ZPoly> = Vec::new();
    let mut stack = vec![f];
    while let Some(g) = stack.pop() {
        let Some(d) = degree(&g) else { continue };
        if d == 0 {
            continue;
        }
        match kronecker_split(&g)? {
            None => irreducible.push(g),
            Some((u, v)) => {
                stack.push(u);
                stack.push(v);
            }
        }
    }
    irreducible.sort();
    let mut out: Vec<(ZPoly, u32)> = Vec::new();
    for g in irreducible {
        match out.last_mut() {
            Some((h, m)) if *h == g => *m += 1,
            _ => out.push((g, 1)),
        }
    }
    Some(out)
}

pub fn z_is_irreducible(a: &[BigInt]) -> Option<bool> {
    let f = z_primitive(a);
    match degree(&f) {
        None | Some(0) => Some(false),
        Some(_) => Some(kronecker_split(&f)?.is_none()),
    }
}

/// Finds a nontrivial factorization `g = u*v` (both primitive, positive
/// leading coefficients), `Some(None)` if irreducible.
fn kronecker_split(g: &[BigInt]) -> Option<Option<(ZPoly, ZPoly)>> {
    let n = degree(g)?;
    if n <= 1 {
        return Some(None);
    }
    if g[0].is_zero() {
        let x = vec![BigInt::zero(), BigInt::one()];
        return Some(Some((x.clone(), z_div_exact(g, &x)?)));
    }
    for d in 1..=n / 2 {
        // sample points 0, 1, -1, 2, -2, ... with g(a) != 0
        let mut points = Vec::new();
        let mut k: i64 = 0;
        while points.len() < d + 1 {
            let a = BigInt::from(if k % 2 == 1 { (k + 1) / 2 } else { -k / 2 });
            k += 1;
            let v = z_eval(g, &a);
            if !v.is_zero() {
                points.push((a, v));
            }
        }
        let mut choices: Vec<Vec<BigInt>> = Vec::new();
        let mut budget: u64 = 1;
        for (i, (_, v)) in points.iter().enumerate() {
            let divs = positive_divisors(v)?;
            let mut c = divs.clone();
            if i > 0 {
                c.extend(divs.iter().map(|x| -x));
            }
            budget = budget.saturating_mul(c.len() as u64);
            choices.push(c);
        }
        if budget > KRONECKER_BUDGET {
            return None;
        }
        let xs: Vec<BigRational> = points.iter().map(|(a, _)| BigRational::from_integer(a.clone())).collect();
        let mut idx = vec![0usize; d + 1];
        loop {
            let ys: Vec<BigRational> = idx
                .iter()
                .enumerate()
                .map(|(i, &j)| BigRational::from_integer(choices[i][j].clone()))
                .collect();
            let cand = interpolate(&xs, &ys);
            if degree(&cand) == Some(d) && cand.iter().all(|c| c.is_integer()) {
                let u: ZPoly = cand.iter().map(|c| c.to_integer()).collect();
                let u = z_primitive(&u);
                if let Some(v) = z_div_exact(g, &u) {
                    return Some(Some((u, z_primitive(&v))));
                }
            }
            // odometer
            let mut pos = 0;
            loop {
                if pos == idx.len() {
                    break;
                }
                idx[pos] += 1;
                if idx[pos] < choices[pos].len() {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == idx.len() {
                break;
            }
        }
    }
    Some(None)
}

/// Lagrange interpolation through distinct nodes.
pub fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> QPoly {
    let mut out: QPoly = Vec::new();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        if yi.is_zero() {
            continue;
        }
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                basis = q_mul(&basis, &[-xj.clone(), BigRational::one()]);
                denom *= xi - xj;
            }
        }
        out = q_add(&out, &q_scale(&basis, &(yi / denom)));
    }
    out
}

pub fn fp_trim(p: FpPoly) -> FpPoly {
    trim(p)
}

pub fn fp_divrem(a: &[u64], b: &[u64], p: u64) -> (FpPoly, FpPoly) {
    let db = degree(b).expect("division by zero polynomial");
    let inv = inv_mod(b[db], p);
    let mut rem = trim(a.to_vec());
    let mut quot = vec![0u64; rem.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let c = mul_mod(rem[dr], inv, p);
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate().take(db + 1) {
            rem[i + shift] = (rem[i + shift] + p - mul_mod(c, *bc, p)) % p;
        }
        quot[shift] = c;
        rem = trim(rem);
    }
    (trim(quot), rem)
}

/// Monic gcd over `F_p`.
pub fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let (_, r) = fp_divrem(&a, &b, p);
        a = b;
        b = r;
    }
    match degree(&a) {
        None => a,
        Some(d) => {
            let inv = inv_mod(a[d], p);
            a.iter().map(|c| mul_mod(*c, inv, p)).collect()
        }
    }
}
