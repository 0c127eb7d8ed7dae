//! Factorization of integral binary forms over Q: rational roots first, then
//! a search for a pair of quadratic factors.


use crate::forms::{BinaryForm, QuarticForm};
use crate::scalar::{sqrt_exact, IntScalar};

/// `content * prod(factors) == F`; every factor is primitive with a
/// positive first nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization<T> {
    pub content: T,
    pub factors: Vec<BinaryForm<T>>,
}

impl<T: IntScalar> Factorization<T> {
    pub fn degrees(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.degree()).collect()
    }

    pub fn product(&self) -> BinaryForm<T> {
        let mut acc = BinaryForm::new(vec![self.content.clone()]);
        for f in &self.factors {
            acc = acc.mul(f);
        }
        acc
    }
}

/// Positive divisors of `|n|`, `n != 0`, in increasing order.
pub fn divisors<T: IntScalar>(n: &T) -> Vec<T> {
    let n = n.abs();
    assert!(!n.is_zero(), "divisors of zero");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = T::one();
    while d.clone() * d.clone() <= n {
        if (n.clone() % d.clone()).is_zero() {
            let q = n.clone() / d.clone();
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d = d + T::one();
    }
    large.reverse();
    small.extend(large);
    small
}

/// One rational root `(u : w)` of `F`, returned as the primitive linear
/// factor `w x - u y`.
pub fn find_linear_factor<T: IntScalar>(f: &BinaryForm<T>) -> Option<BinaryForm<T>> {
    let n = f.degree();
    if n == 0 || f.is_zero() {
        return None;
    }
    let lead = &f.coeffs[0];
    let last = &f.coeffs[n];
    if lead.is_zero() {
        return Some(BinaryForm::new(vec![T::zero(), T::one()]));
    }
    if last.is_zero() {
        return Some(BinaryForm::new(vec![T::one(), T::zero()]));
    }
    let ws = divisors(lead);
    let us = divisors(last);
    for w in &ws {
        for u in &us {
            for u in [u.clone(), -u.clone()] {
                if !u.gcd(w).is_one() {
                    continue;
                }
                if f.eval(&u, w).is_zero() {
                    return Some(BinaryForm::new(vec![w.clone(), -u]));
                }
            }
        }
    }
    None
}

/// Split a degree-4 form without rational roots into two integral
/// quadratics, if possible.
pub fn find_quadratic_pair<T: IntScalar>(
    g: &BinaryForm<T>,
) -> Option<(BinaryForm<T>, BinaryForm<T>)> {
    assert_eq!(g.degree(), 4);
    let c = &g.coeffs;
    if c[0].is_zero() || c[4].is_zero() {
        return None;
    }
    let two = T::one() + T::one();
    let four = two.clone() + two.clone();
    let p2s = divisors(&c[0]);
    let p0s = divisors(&c[4]);
    let check = |p: [T; 3], q: [T; 3]| -> Option<(BinaryForm<T>, BinaryForm<T>)> {
        let pf = BinaryForm::new(p.to_vec());
        let qf = BinaryForm::new(q.to_vec());
        (pf.mul(&qf) == *g).then_some((pf, qf))
    };
    for p2 in &p2s {
        let q2 = c[0].clone() / p2.clone();
        for p0a in &p0s {
            for p0 in [p0a.clone(), -p0a.clone()] {
                let q0 = c[4].clone() / p0.clone();
                let det = q2.clone() * p0.clone() - p2.clone() * q0.clone();
                if !det.is_zero() {
                    let n1 = c[1].clone() * p0.clone() - p2.clone() * c[3].clone();
                    let n2 = q2.clone() * c[3].clone() - q0.clone() * c[1].clone();
                    let (Some(p1), Some(q1)) = (n1.div_exact(&det), n2.div_exact(&det)) else {
                        continue;
                    };
                    if let Some(r) = check(
                        [p2.clone(), p1, p0.clone()],
                        [q2.clone(), q1, q0.clone()],
                    ) {
                        return Some(r);
                    }
                } else {
                    // q2 p1^2 - c1 p1 + p2 (c2 - 2 q2 p0) = 0
                    let qa = q2.clone();
                    let qb = -c[1].clone();
                    let qc = p2.clone() * (c[2].clone() - two.clone() * q2.clone() * p0.clone());
                    let disc = qb.clone() * qb.clone() - four.clone() * qa.clone() * qc;
                    let Some(s) = sqrt_exact(&disc) else { continue };
                    for num in [-qb.clone() + s.clone(), -qb.clone() - s.clone()] {
                        let Some(p1) = num.div_exact(&(two.clone() * qa.clone())) else {
                            continue;
                        };
                        let Some(q1) = (c[1].clone() - q2.clone() * p1.clone()).div_exact(p2)
                        else {
                            continue;
                        };
                        if let Some(r) = check(
                            [p2.clone(), p1, p0.clone()],
                            [q2.clone(), q1, q0.clone()],
                        ) {
                            return Some(r);
                        }
                    }
                }
            }
        }
    }
    None
}

/// Complete factorization over Q of a nonzero integral binary form of degree
/// at most 4.
pub fn factor_form<T: IntScalar>(f: &BinaryForm<T>) -> Factorization<T> {
    assert!(!f.is_zero(), "factoring the zero form");
    assert!(f.degree() <= 4, "degree above 4");
    let content = {
        let g = f.content();
        let first_neg = f.coeffs.iter().find(|c| !c.is_zero()).unwrap().is_negative();
        if first_neg {
            -g
        } else {
            g
        }
    };
    let mut rest = f.map(|c| c.clone() / content.clone());
    let mut factors = Vec::new();
    while rest.degree() > 0 {
        match find_linear_factor(&rest) {
            Some(l) => {
                rest = rest.div_exact(&l).expect("linear factor divides");
                factors.push(l);
            }
            None => break,
        }
    }
    // absorb a possible unit sign left over
    let sign_fix = |r: &mut BinaryForm<T>, content: &mut T| {
        if let Some(c) = r.coeffs.iter().find(|c| !c.is_zero()) {
            if c.is_negative() {
                *r = r.neg();
                *content = -content.clone();
            }
        }
    };
    let mut content = content;
    sign_fix(&mut rest, &mut content);
    match rest.degree() {
        0 => {
            content = content * rest.coeffs[0].clone();
        }
        4 => match find_quadratic_pair(&rest) {
            Some((p, q)) => {
                let (mut p, mut q) = (p, q);
                sign_fix(&mut p, &mut content);
                sign_fix(&mut q, &mut content);
                factors.push(p);
                factors.push(q);
            }
            None => factors.push(rest),
        },
        _ => factors.push(rest),
    }
    factors.sort_by(|a, b| a.degree().cmp(&b.degree()).then(a.coeffs.cmp(&b.coeffs)));
    Factorization { content, factors }
}

pub fn factor_quartic<T: IntScalar>(f: &QuarticForm<T>) -> Factorization<T> {
    factor_form(&f.to_binary())
}

pub fn is_irreducible_quartic<T: IntScalar>(f: &QuarticForm<T>) -> bool {
    let fac = factor_quartic(f);
    fac.factors.len() == 1 && fac.factors[0].degree() == 4
}
