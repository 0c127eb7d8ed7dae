//! Galois groups of small-Galois quartics (D4 / C4 / V4), a mod-p Frobenius
//! oracle, and type 1 / type 2 of reducible stabilized forms.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::factor::{factor_quartic, is_irreducible_quartic};
use crate::forms::{BinaryForm, QuadForm, QuarticForm};
use crate::resolvent::stabilizer_quadratics;
use crate::scalar::{int, is_square, is_square_ratio, IntScalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum GaloisClass {
    NotIrreducible,
    NotSmall,
    D4,
    C4,
    V4,
}

impl fmt::Display for GaloisClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GaloisClass::NotIrreducible => "reducible",
            GaloisClass::NotSmall => "not-small",
            GaloisClass::D4 => "D4",
            GaloisClass::C4 => "C4",
            GaloisClass::V4 => "V4",
        };
        f.write_str(s)
    }
}

/// The class of an irreducible `F` stabilized by `f`, from `(L, K)`:
/// V4 iff `L^2 + 4K` is a square, C4 iff `(L^2+4K)(2L^2-K)/Delta(f)` is a
/// rational square.
pub fn classify_lk<T: IntScalar>(l: &T, k: &T, disc_f: &T) -> GaloisClass {
    let l2 = l.clone() * l.clone();
    let p = l2.clone() + int::<T>(4) * k.clone();
    if is_square(&p) {
        return GaloisClass::V4;
    }
    let q = int::<T>(2) * l2 - k.clone();
    let r = Ratio::new(p * q, disc_f.clone());
    if is_square_ratio(&r) {
        GaloisClass::C4
    } else {
        GaloisClass::D4
    }
}

pub fn classify<T: IntScalar>(f: &QuarticForm<T>) -> Result<GaloisClass> {
    if f.disc().is_zero() {
        return Err(Error::Degenerate);
    }
    if !is_irreducible_quartic(f) {
        return Ok(GaloisClass::NotIrreducible);
    }
    let stabs = stabilizer_quadratics(f)?;
    let Some((w, g)) = stabs.first() else {
        return Ok(GaloisClass::NotSmall);
    };
    let k = int::<T>(3) * f.invariant_i() - w.clone() * w.clone();
    Ok(classify_lk(w, &k, &g.disc()))
}

/// The class computed from every stabilizer pair (they must agree).
pub fn classify_all_pairs<T: IntScalar>(f: &QuarticForm<T>) -> Result<Vec<GaloisClass>> {
    let i3 = int::<T>(3) * f.invariant_i();
    Ok(stabilizer_quadratics(f)?
        .iter()
        .map(|(w, g)| classify_lk(w, &(i3.clone() - w.clone() * w.clone()), &g.disc()))
        .collect())
}

// ---------- polynomials mod p ----------

/// Coefficients low to high, trimmed.
type Poly = Vec<u64>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let e = (a as i128).extended_gcd(&(p as i128));
    e.x.rem_euclid(p as i128) as u64
}

fn poly_sub(a: &Poly, b: &Poly, p: u64) -> Poly {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out[i] = (x + p - y) % p;
    }
    trim(out)
}

fn poly_mul(a: &Poly, b: &Poly, p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    trim(out)
}

/// `(quotient, remainder)` of `a / b`, `b` nonzero.
fn poly_divrem(a: &Poly, b: &Poly, p: u64) -> (Poly, Poly) {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p);
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut q = vec![0u64; r.len() - db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let c = mulmod(r[dr], lead_inv, p);
        q[dr - db] = c;
        for i in 0..=db {
            let s = mulmod(c, b[i], p);
            r[dr - db + i] = (r[dr - db + i] + p - s) % p;
        }
        r = trim(r);
    }
    (trim(q), r)
}

fn poly_gcd(a: &Poly, b: &Poly, p: u64) -> Poly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let (_, r) = poly_divrem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn poly_powmod(base: &Poly, mut e: u64, m: &Poly, p: u64) -> Poly {
    let mut result: Poly = vec![1];
    let mut b = poly_divrem(base, m, p).1;
    while e > 0 {
        if e & 1 == 1 {
            result = poly_divrem(&poly_mul(&result, &b, p), m, p).1;
        }
        b = poly_divrem(&poly_mul(&b, &b, p), m, p).1;
        e >>= 1;
    }
    result
}

/// Degrees of the irreducible factors of a squarefree `f` mod `p`, sorted.
fn ddf_degrees(f: &Poly, p: u64) -> Vec<usize> {
    let mut f = f.clone();
    let x: Poly = vec![0, 1];
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut k = 1;
    while f.len() > 1 && 2 * k < f.len() {
        h = poly_powmod(&h, p, &f, p);
        let g = poly_gcd(&poly_sub(&h, &x, p), &f, p);
        let dg = g.len().saturating_sub(1);
        if dg > 0 {
            for _ in 0..dg / k {
                out.push(k);
            }
            f = poly_divrem(&f, &g, p).0;
            h = poly_divrem(&h, &f, p).1;
        }
        k += 1;
    }
    if f.len() > 1 {
        out.push(f.len() - 1);
    }
    out.sort_unstable();
    out
}

fn reduce_coeffs(c: &[BigInt; 5], p: u64) -> Poly {
    let pb = BigInt::from(p);
    // F(x, 1) = a4 x^4 + ... + a0, stored low to high
    trim(c.iter().rev().map(|a| a.mod_floor(&pb).to_u64().unwrap()).collect())
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Factorization pattern of `F(x, 1)` mod `p` (e.g. "112"), `None` when `p`
/// divides `a4 disc(F)`.
pub fn pattern_mod_p(f: &QuarticForm<BigInt>, p: u64) -> Option<String> {
    let pb = BigInt::from(p);
    let bad = &f.a4 * f.disc();
    if (bad % &pb).is_zero() {
        return None;
    }
    let poly = reduce_coeffs(&f.coeffs(), p);
    let degs = ddf_degrees(&poly, p);
    Some(degs.iter().map(|d| d.to_string()).collect())
}

/// Whether `F(x, 1)` is irreducible of degree 4 mod some prime in `primes`
/// (a certificate of irreducibility over Q). Machine-word coefficients.
pub fn quartic_irreducible_mod_some_p(c: &[i64; 5], primes: &[u64]) -> bool {
    for &p in primes {
        let pi = p as i64;
        if c[0].rem_euclid(pi) == 0 {
            continue;
        }
        let poly: Poly = trim(c.iter().rev().map(|a| a.rem_euclid(pi) as u64).collect());
        // x^(p^k) = x for k = 1, 2 would detect factors of degree 1 or 2
        let x: Poly = vec![0, 1];
        let h1 = poly_powmod(&x, p, &poly, p);
        if poly_gcd(&poly_sub(&h1, &x, p), &poly, p).len() > 1 {
            continue;
        }
        let h2 = poly_powmod(&h1, p, &poly, p);
        let g2 = poly_gcd(&poly_sub(&h2, &x, p), &poly, p);
        if g2.len() == 1 {
            // no factor of degree <= 2; squarefreeness is implied by
            // x^(p^4) = x below
            let h3 = poly_powmod(&h2, p, &poly, p);
            let h4 = poly_powmod(&h3, p, &poly, p);
            if h4 == x {
                return true;
            }
        }
    }
    false
}

pub const SMALL_PRIMES: [u64; 24] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

/// Primes with a precomputed table of monic irreducible quartics.
const TABLE_PRIMES: [u64; 15] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

struct IrrTable {
    p: u64,
    /// bit `c0 + c1 p + c2 p^2 + c3 p^3` set iff `x^4 + c3 x^3 + ... + c0` is irreducible
    bits: Vec<u64>,
}

impl IrrTable {
    fn build(p: u64) -> IrrTable {
        let n = (p * p * p * p) as usize;
        let mut reducible = vec![false; n];
        let pu = p as usize;
        let idx = |c: &[usize]| c[0] + pu * (c[1] + pu * (c[2] + pu * c[3]));
        // monic (x + r) * cubic
        for r in 0..pu {
            for cub in 0..pu * pu * pu {
                let (b0, b1, b2) = (cub % pu, cub / pu % pu, cub / (pu * pu));
                let c = [r * b0 % pu, (b0 + r * b1) % pu, (b1 + r * b2) % pu, (b2 + r) % pu];
                reducible[idx(&c)] = true;
            }
        }
        // quadratic * quadratic
        for q1 in 0..pu * pu {
            let (a0, a1) = (q1 % pu, q1 / pu);
            for q2 in 0..pu * pu {
                let (b0, b1) = (q2 % pu, q2 / pu);
                let c = [
                    a0 * b0 % pu,
                    (a0 * b1 + a1 * b0) % pu,
                    (a0 + b0 + a1 * b1) % pu,
                    (a1 + b1) % pu,
                ];
                reducible[idx(&c)] = true;
            }
        }
        let mut bits = vec![0u64; n.div_ceil(64)];
        for (i, r) in reducible.iter().enumerate() {
            if !r {
                bits[i / 64] |= 1 << (i % 64);
            }
        }
        IrrTable { p, bits }
    }

    fn irreducible(&self, c: &[i128; 5]) -> Option<bool> {
        let p = self.p as i128;
        let a4 = c[0].rem_euclid(p);
        if a4 == 0 {
            return None;
        }
        let inv = inv_mod(a4 as u64, self.p) as i128;
        // coefficient of x^k is c[4 - k]
        let m = |k: usize| (c[4 - k].rem_euclid(p) * inv % p) as usize;
        let pu = self.p as usize;
        let i = m(0) + pu * (m(1) + pu * (m(2) + pu * m(3)));
        Some(self.bits[i / 64] >> (i % 64) & 1 == 1)
    }
}

fn tables() -> &'static [IrrTable] {
    static T: OnceLock<Vec<IrrTable>> = OnceLock::new();
    T.get_or_init(|| TABLE_PRIMES.iter().map(|&p| IrrTable::build(p)).collect())
}

/// Whether `F(x, 1)` is irreducible of degree 4 modulo one of the table
/// primes. `true` proves irreducibility over Q; `false` proves nothing.
pub fn irreducible_by_tables(c: &[i128; 5]) -> bool {
    tables().iter().any(|t| t.irreducible(c) == Some(true))
}

/// Irreducibility over Q: the mod-p tables first, then exact factoring.
pub fn is_irreducible_fast(c: &[i128; 5]) -> bool {
    if irreducible_by_tables(c) {
        return true;
    }
    let small: Vec<i64> = c.iter().filter_map(|x| i64::try_from(*x).ok()).collect();
    if small.len() == 5 && quartic_irreducible_mod_some_p(&[small[0], small[1], small[2], small[3], small[4]], &SMALL_PRIMES[13..]) {
        return true;
    }
    is_irreducible_quartic(&QuarticForm::from_coeffs(*c))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ProbableClass {
    D4,
    C4,
    V4,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrobeniusReport {
    /// pattern -> number of primes
    pub patterns: BTreeMap<String, usize>,
    pub primes: Vec<u64>,
    pub probable: ProbableClass,
}

/// Factorization patterns of `F(x, 1)` modulo the first `budget` primes not
/// dividing `a4 disc(F)`.
pub fn frobenius_oracle(f: &QuarticForm<BigInt>, budget: usize) -> Result<FrobeniusReport> {
    if f.disc().is_zero() {
        return Err(Error::Degenerate);
    }
    if !is_irreducible_quartic(f) {
        return Err(Error::Reducible);
    }
    let bad = &f.a4 * f.disc();
    let mut primes = Vec::new();
    let mut p = 1u64;
    while primes.len() < budget {
        p += 1;
        if is_prime(p) && !(&bad % BigInt::from(p)).is_zero() {
            primes.push(p);
        }
    }
    let pats: Vec<String> = primes.par_iter().map(|&p| pattern_mod_p(f, p).unwrap()).collect();
    let mut patterns = BTreeMap::new();
    for pat in pats {
        *patterns.entry(pat).or_insert(0) += 1;
    }
    let has4 = patterns.contains_key("4");
    let has112 = patterns.contains_key("112");
    let probable = if patterns.keys().all(|k| k == "1111" || k == "22") {
        ProbableClass::V4
    } else if has4 && has112 {
        ProbableClass::D4
    } else if has4 {
        ProbableClass::C4
    } else {
        ProbableClass::Inconclusive
    };
    Ok(FrobeniusReport { patterns, primes, probable })
}

// ---------- reducible forms ----------

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReducibilityType {
    /// `F = m p p_{M_f}`
    Type1 { m: Ratio<BigInt>, p: QuadForm<Ratio<BigInt>> },
    /// `F = p q` with `p_{M_f} = -p`, `q_{M_f} = -q`
    Type2 { p: QuadForm<BigInt>, q: QuadForm<BigInt> },
}

impl ReducibilityType {
    pub fn index(&self) -> u8 {
        match self {
            ReducibilityType::Type1 { .. } => 1,
            ReducibilityType::Type2 { .. } => 2,
        }
    }
}

/// Every way of grouping the factors into two quadratics `(P, Q)` with
/// `content * P * Q = F`.
fn quadratic_splits(fac: &crate::factor::Factorization<BigInt>) -> Vec<(BinaryForm<BigInt>, BinaryForm<BigInt>)> {
    let n = fac.factors.len();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let deg: usize = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| fac.factors[i].degree()).sum();
        if deg != 2 {
            continue;
        }
        let mut p = BinaryForm::new(vec![BigInt::one()]);
        let mut q = BinaryForm::new(vec![fac.content.clone()]);
        for (i, g) in fac.factors.iter().enumerate() {
            if mask >> i & 1 == 1 {
                p = p.mul(g);
            } else {
                q = q.mul(g);
            }
        }
        out.push((p, q));
    }
    out
}

fn to_quad(b: &BinaryForm<BigInt>) -> QuadForm<Ratio<BigInt>> {
    QuadForm::from_binary(&b.map(|x| Ratio::from_integer(x.clone())))
}

pub fn reducibility_type(f: &QuadForm<BigInt>, big: &QuarticForm<BigInt>) -> Result<ReducibilityType> {
    if big.disc().is_zero() {
        return Err(Error::Degenerate);
    }
    if !crate::forms::is_stabilized_by(big, f) {
        return Err(Error::NotStabilized);
    }
    let fac = factor_quartic(big);
    if fac.factors.len() == 1 && fac.factors[0].degree() == 4 {
        return Err(Error::Irreducible);
    }
    let m = f.to_ratio_form().m_matrix();
    let splits = quadratic_splits(&fac);
    for (p, q) in &splits {
        let (pq, qq) = (to_quad(p), to_quad(q));
        let pm = pq.twisted_act(&m)?;
        let qm = qq.twisted_act(&m)?;
        if pm == pq.neg() && qm == qq.neg() {
            return Ok(ReducibilityType::Type2 {
                p: QuadForm::from_binary(p),
                q: QuadForm::from_binary(q),
            });
        }
    }
    for (p, q) in &splits {
        let pq = to_quad(p);
        let pm = pq.twisted_act(&m)?;
        let qq = to_quad(q);
        // q = lambda p_M
        let lam = [(&qq.a, &pm.a), (&qq.b, &pm.b), (&qq.c, &pm.c)]
            .iter()
            .find(|(_, d)| !d.is_zero())
            .map(|(n, d)| (*n).clone() / (*d).clone());
        if let Some(lam) = lam {
            if pm.scale(&lam) == qq {
                return Ok(ReducibilityType::Type1 { m: lam, p: pq });
            }
        }
    }
    Err(Error::Invalid(format!("{big} is neither type 1 nor type 2 for {f}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qz(c: [i64; 5]) -> QuarticForm<BigInt> {
        QuarticForm::from_i64(c)
    }

    #[test]
    fn examples() {
        assert_eq!(classify(&qz([1, 0, 0, 0, 1])).unwrap(), GaloisClass::V4);
        assert_eq!(classify(&qz([1, 1, 1, 1, 1])).unwrap(), GaloisClass::C4);
        assert_eq!(classify(&qz([1, 0, 0, 0, -2])).unwrap(), GaloisClass::D4);
        assert_eq!(classify(&qz([1, 0, 0, 1, 1])).unwrap(), GaloisClass::NotSmall);
        assert_eq!(
            classify(&qz([1, 0, -1, 0, 0])).unwrap_err(),
            Error::Degenerate
        );
        assert_eq!(
            classify(&qz([1, 0, -5, 0, 4])).unwrap(),
            GaloisClass::NotIrreducible
        );
    }

    #[test]
    fn oracle_examples() {
        let r = frobenius_oracle(&qz([1, 0, 0, 0, 1]), 25).unwrap();
        assert_eq!(r.probable, ProbableClass::V4);
        let r = frobenius_oracle(&qz([1, 0, 0, 0, -2]), 25).unwrap();
        assert_eq!(r.probable, ProbableClass::D4);
        let r = frobenius_oracle(&qz([1, 1, 1, 1, 1]), 25).unwrap();
        assert_eq!(r.probable, ProbableClass::C4);
    }

    #[test]
    fn mod_p_certificate() {
        assert!(quartic_irreducible_mod_some_p(&[1, 0, 0, 0, -2], &SMALL_PRIMES));
        assert!(!quartic_irreducible_mod_some_p(&[1, 0, 0, 0, 1], &SMALL_PRIMES));
        assert!(!quartic_irreducible_mod_some_p(&[1, 0, -5, 0, 4], &SMALL_PRIMES));
    }

    #[test]
    fn tables_agree_with_factoring() {
        let mut seed = 7u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 33) % 21) as i128 - 10
        };
        for _ in 0..3000 {
            let c = [next(), next(), next(), next(), next()];
            if c[0] == 0 {
                continue;
            }
            let exact = is_irreducible_quartic(&QuarticForm::from_coeffs(c));
            if irreducible_by_tables(&c) {
                assert!(exact, "{c:?}");
            }
            assert_eq!(is_irreducible_fast(&c), exact, "{c:?}");
        }
    }

    #[test]
    fn reducibility_examples() {
        let f = QuadForm::<BigInt>::from_i64(1, 0, 1);
        let t = reducibility_type(&f, &qz([2, 0, 5, 0, 2])).unwrap();
        assert_eq!(t.index(), 1);
        if let ReducibilityType::Type1 { m, p } = t {
            // F = m p p_M, and {p, p_M} = {x^2+2y^2, 2x^2+y^2} up to scaling
            let pm = p.twisted_act(&f.to_ratio_form().m_matrix()).unwrap();
            let prod = p.to_binary().mul(&pm.to_binary()).scale(&m);
            assert_eq!(prod, qz([2, 0, 5, 0, 2]).to_ratio().to_binary());
            let two = Ratio::from_integer(BigInt::from(2));
            assert!(p.b.is_zero() && (&p.a * &two == p.c || &p.c * &two == p.a));
        }
        let t = reducibility_type(&f, &qz([0, 1, 0, -1, 0])).unwrap();
        assert_eq!(t.index(), 2);
        assert_eq!(reducibility_type(&f, &qz([1, 0, 0, 0, 1])).unwrap_err(), Error::Irreducible);
    }
}
