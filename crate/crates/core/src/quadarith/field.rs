//! Elements `a + b sqrt(d)` of a real quadratic extension, with exact signs.

use std::cmp::Ordering;
use std::fmt;

use crate::scalar::{FieldScalar, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadFieldElem<T> {
    pub a: T,
    pub b: T,
    /// The radicand, `d >= 0`.
    pub d: T,
}

fn sign_of<T: Scalar>(x: &T) -> Ordering {
    if x.is_positive() {
        Ordering::Greater
    } else if x.is_negative() {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

impl<T: Scalar> QuadFieldElem<T> {
    pub fn new(a: T, b: T, d: T) -> Self {
        assert!(!d.is_negative(), "negative radicand");
        QuadFieldElem { a, b, d }
    }

    pub fn rational(a: T, d: T) -> Self {
        QuadFieldElem::new(a, T::zero(), d)
    }

    pub fn is_zero(&self) -> bool {
        self.sign() == Ordering::Equal
    }

    fn check(&self, o: &Self) {
        debug_assert!(self.d == o.d, "mixing radicands");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        QuadFieldElem::new(
            self.a.clone() + o.a.clone(),
            self.b.clone() + o.b.clone(),
            self.d.clone(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        QuadFieldElem::new(-self.a.clone(), -self.b.clone(), self.d.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        QuadFieldElem::new(
            self.a.clone() * o.a.clone() + self.b.clone() * o.b.clone() * self.d.clone(),
            self.a.clone() * o.b.clone() + self.b.clone() * o.a.clone(),
            self.d.clone(),
        )
    }

    pub fn scale(&self, k: &T) -> Self {
        QuadFieldElem::new(self.a.clone() * k.clone(), self.b.clone() * k.clone(), self.d.clone())
    }

    pub fn conj(&self) -> Self {
        QuadFieldElem::new(self.a.clone(), -self.b.clone(), self.d.clone())
    }

    /// `a^2 - d b^2`.
    pub fn norm(&self) -> T {
        self.a.clone() * self.a.clone() - self.d.clone() * self.b.clone() * self.b.clone()
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = QuadFieldElem::rational(T::one(), self.d.clone());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact sign of the real number `a + b sqrt(d)`.
    pub fn sign(&self) -> Ordering {
        let sa = sign_of(&self.a);
        let sb = if self.d.is_zero() {
            Ordering::Equal
        } else {
            sign_of(&self.b)
        };
        if sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal || sa == sb {
            return sb;
        }
        let a2 = self.a.clone() * self.a.clone();
        let b2d = self.b.clone() * self.b.clone() * self.d.clone();
        match a2.partial_cmp(&b2d).expect("ordered scalar") {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn cmp_exact(&self, o: &Self) -> Ordering {
        self.sub(o).sign()
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64() + self.b.to_f64() * self.d.to_f64().sqrt()
    }

    pub fn map<U: Scalar, F: Fn(&T) -> U>(&self, f: F) -> QuadFieldElem<U> {
        QuadFieldElem::new(f(&self.a), f(&self.b), f(&self.d))
    }
}

impl<T: FieldScalar> QuadFieldElem<T> {
    pub fn inv(&self) -> Self {
        let n = self.norm();
        assert!(!n.is_zero(), "inverting zero");
        QuadFieldElem::new(self.a.clone() / n.clone(), -self.b.clone() / n, self.d.clone())
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }
}

/// Exact sign of `x + y sqrt(s)` with `x, y` in `Q(sqrt d)` and `s >= 0`.
pub fn sign_with_sqrt<T: Scalar>(x: &QuadFieldElem<T>, y: &QuadFieldElem<T>, s: &T) -> Ordering {
    let sx = x.sign();
    let sy = if s.is_zero() {
        Ordering::Equal
    } else {
        y.sign()
    };
    if sy == Ordering::Equal {
        return sx;
    }
    if sx == Ordering::Equal || sx == sy {
        return sy;
    }
    let diff = x.mul(x).sub(&y.mul(y).scale(s));
    match diff.sign() {
        Ordering::Greater => sx,
        Ordering::Less => sy,
        Ordering::Equal => Ordering::Equal,
    }
}

impl<T: Scalar> fmt::Display for QuadFieldElem<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signs() {
        let e = |a: i64, b: i64| QuadFieldElem::new(a, b, 2);
        assert_eq!(e(1, 1).sign(), Ordering::Greater);
        assert_eq!(e(-1, 1).sign(), Ordering::Greater);
        assert_eq!(e(-2, 1).sign(), Ordering::Less);
        assert_eq!(e(3, -2).sign(), Ordering::Greater);
        assert_eq!(e(0, 0).sign(), Ordering::Equal);
        let sq = QuadFieldElem::new(-2i64, 1, 4);
        assert_eq!(sq.sign(), Ordering::Equal);
    }

    #[test]
    fn nested_sign() {
        // sqrt(2) + sqrt(3) - 3 > 0, sqrt(2) + sqrt(3) - 3.2 < 0
        let x = QuadFieldElem::new(-3i64, 1, 2);
        let y = QuadFieldElem::new(1i64, 0, 2);
        assert_eq!(sign_with_sqrt(&x, &y, &3), Ordering::Greater);
        let x = QuadFieldElem::new(-16i64, 5, 2);
        let y = QuadFieldElem::new(5i64, 0, 2);
        assert_eq!(sign_with_sqrt(&x, &y, &3), Ordering::Less);
    }
}
