//! Binary quadratic and quartic forms, 2x2 matrices and the twisted action.

use std::fmt;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::scalar::{int, IntScalar, Scalar};

/// `[[t1, t2], [t3, t4]]`, acting by `(x, y) -> (t1 x + t2 y, t3 x + t4 y)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat2<T> {
    pub t1: T,
    pub t2: T,
    pub t3: T,
    pub t4: T,
}

impl<T: Scalar> Mat2<T> {
    pub fn new(t1: T, t2: T, t3: T, t4: T) -> Self {
        Mat2 { t1, t2, t3, t4 }
    }

    pub fn from_i64(t: [i64; 4]) -> Self {
        Mat2::new(int(t[0]), int(t[1]), int(t[2]), int(t[3]))
    }

    pub fn identity() -> Self {
        Mat2::new(T::one(), T::zero(), T::zero(), T::one())
    }

    pub fn det(&self) -> T {
        self.t1.clone() * self.t4.clone() - self.t2.clone() * self.t3.clone()
    }

    pub fn trace(&self) -> T {
        self.t1.clone() + self.t4.clone()
    }

    pub fn mul(&self, o: &Mat2<T>) -> Mat2<T> {
        Mat2::new(
            self.t1.clone() * o.t1.clone() + self.t2.clone() * o.t3.clone(),
            self.t1.clone() * o.t2.clone() + self.t2.clone() * o.t4.clone(),
            self.t3.clone() * o.t1.clone() + self.t4.clone() * o.t3.clone(),
            self.t3.clone() * o.t2.clone() + self.t4.clone() * o.t4.clone(),
        )
    }

    pub fn neg(&self) -> Mat2<T> {
        Mat2::new(
            -self.t1.clone(),
            -self.t2.clone(),
            -self.t3.clone(),
            -self.t4.clone(),
        )
    }

    pub fn scale(&self, k: &T) -> Mat2<T> {
        Mat2::new(
            self.t1.clone() * k.clone(),
            self.t2.clone() * k.clone(),
            self.t3.clone() * k.clone(),
            self.t4.clone() * k.clone(),
        )
    }

    pub fn adjugate(&self) -> Mat2<T> {
        Mat2::new(
            self.t4.clone(),
            -self.t2.clone(),
            -self.t3.clone(),
            self.t1.clone(),
        )
    }

    /// Inverse, provided it exists over the coefficient ring.
    pub fn inverse(&self) -> Result<Mat2<T>> {
        let d = self.det();
        if d.is_zero() {
            return Err(Error::Singular);
        }
        let a = self.adjugate();
        let f = |x: &T| x.div_exact(&d).ok_or(Error::NotExact);
        Ok(Mat2::new(f(&a.t1)?, f(&a.t2)?, f(&a.t3)?, f(&a.t4)?))
    }

    /// `self^n`; negative powers need an exact inverse.
    pub fn pow(&self, n: i64) -> Result<Mat2<T>> {
        let base = if n < 0 { self.inverse()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Mat2::identity();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn is_pm_identity(&self) -> bool {
        self.t2.is_zero()
            && self.t3.is_zero()
            && self.t1 == self.t4
            && (self.t1.is_one() || (-self.t1.clone()).is_one())
    }

    pub fn map<U, F: Fn(&T) -> U>(&self, f: F) -> Mat2<U> {
        Mat2 {
            t1: f(&self.t1),
            t2: f(&self.t2),
            t3: f(&self.t3),
            t4: f(&self.t4),
        }
    }

    pub fn entries(&self) -> [T; 4] {
        [
            self.t1.clone(),
            self.t2.clone(),
            self.t3.clone(),
            self.t4.clone(),
        ]
    }

    pub fn max_abs(&self) -> T {
        let mut m = T::zero();
        for e in self.entries() {
            if e.abs() > m {
                m = e.abs();
            }
        }
        m
    }
}

impl<T: Scalar> fmt::Display for Mat2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.t1, self.t2, self.t3, self.t4)
    }
}

/// A binary form of arbitrary degree, coefficients from `x^d` down to `y^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryForm<T> {
    pub coeffs: Vec<T>,
}

impl<T: Scalar> BinaryForm<T> {
    pub fn new(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty());
        BinaryForm { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn eval(&self, x: &T, y: &T) -> T {
        let d = self.degree();
        let mut acc = T::zero();
        let mut ypow = vec![T::one(); d + 1];
        for k in 1..=d {
            ypow[k] = ypow[k - 1].clone() * y.clone();
        }
        for (k, c) in self.coeffs.iter().enumerate() {
            // term c x^(d-k) y^k, Horner in x
            acc = acc * x.clone() + c.clone() * ypow[k].clone();
        }
        acc
    }

    pub fn mul(&self, o: &BinaryForm<T>) -> BinaryForm<T> {
        let mut out = vec![T::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        BinaryForm::new(out)
    }

    pub fn scale(&self, k: &T) -> BinaryForm<T> {
        BinaryForm::new(self.coeffs.iter().map(|c| c.clone() * k.clone()).collect())
    }

    pub fn neg(&self) -> BinaryForm<T> {
        BinaryForm::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    /// `self(t1 x + t2 y, t3 x + t4 y)` without the determinant twist.
    pub fn substitute(&self, t: &Mat2<T>) -> BinaryForm<T> {
        let d = self.degree();
        let u = BinaryForm::new(vec![t.t1.clone(), t.t2.clone()]);
        let v = BinaryForm::new(vec![t.t3.clone(), t.t4.clone()]);
        let mut upow = vec![BinaryForm::new(vec![T::one()])];
        let mut vpow = vec![BinaryForm::new(vec![T::one()])];
        for k in 1..=d {
            upow.push(upow[k - 1].mul(&u));
            vpow.push(vpow[k - 1].mul(&v));
        }
        let mut out = vec![T::zero(); d + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = upow[d - k].mul(&vpow[k]);
            for (i, t) in term.coeffs.iter().enumerate() {
                out[i] = out[i].clone() + c.clone() * t.clone();
            }
        }
        BinaryForm::new(out)
    }

    /// Twisted action: `self(T(x, y)) / det(T)^(deg/2)`; degree must be even.
    pub fn twisted_act(&self, t: &Mat2<T>) -> Result<BinaryForm<T>> {
        let det = t.det();
        if det.is_zero() {
            return Err(Error::Singular);
        }
        let mut scale = T::one();
        for _ in 0..self.degree() / 2 {
            scale = scale * det.clone();
        }
        let s = self.substitute(t);
        let coeffs = s
            .coeffs
            .iter()
            .map(|c| c.div_exact(&scale).ok_or(Error::NotExact))
            .collect::<Result<Vec<_>>>()?;
        Ok(BinaryForm::new(coeffs))
    }

    /// Exact quotient by another form, if it divides.
    pub fn div_exact(&self, o: &BinaryForm<T>) -> Option<BinaryForm<T>> {
        // long division on the x-leading coefficients, padding for y factors
        let n = self.degree();
        let m = o.degree();
        if m > n {
            return None;
        }
        let lead = o.coeffs.iter().position(|c| !c.is_zero())?;
        let mut rem = self.coeffs.clone();
        let mut q = vec![T::zero(); n - m + 1];
        // o = y^lead * o', with o' having nonzero x-leading term
        for i in 0..=(n - m) {
            let pos = i + lead;
            if rem[pos].is_zero() {
                continue;
            }
            let c = rem[pos].div_exact(&o.coeffs[lead])?;
            for (j, oc) in o.coeffs.iter().enumerate() {
                let idx = i + j;
                rem[idx] = rem[idx].clone() - c.clone() * oc.clone();
            }
            q[i] = c;
        }
        rem.iter().all(|r| r.is_zero()).then(|| BinaryForm::new(q))
    }

    pub fn map<U: Scalar, F: Fn(&T) -> U>(&self, f: F) -> BinaryForm<U> {
        BinaryForm::new(self.coeffs.iter().map(f).collect())
    }
}

impl<T: IntScalar> BinaryForm<T> {
    pub fn content(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |g, c| g.gcd(c))
    }

    /// Primitive part with a positive first nonzero coefficient.
    pub fn primitive_part(&self) -> BinaryForm<T> {
        let g = self.content();
        if g.is_zero() {
            return self.clone();
        }
        let lead_neg = self
            .coeffs
            .iter()
            .find(|c| !c.is_zero())
            .map(|c| c.is_negative())
            .unwrap_or(false);
        let g = if lead_neg { -g } else { g };
        BinaryForm::new(self.coeffs.iter().map(|c| c.clone() / g.clone()).collect())
    }
}

impl<T: Scalar> fmt::Display for BinaryForm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// `a x^2 + b xy + c y^2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadForm<T> {
    pub a: T,
    pub b: T,
    pub c: T,
}

impl<T: Scalar> QuadForm<T> {
    pub fn new(a: T, b: T, c: T) -> Self {
        QuadForm { a, b, c }
    }

    pub fn from_i64(a: i64, b: i64, c: i64) -> Self {
        QuadForm::new(int(a), int(b), int(c))
    }

    pub fn disc(&self) -> T {
        self.b.clone() * self.b.clone() - int::<T>(4) * self.a.clone() * self.c.clone()
    }

    pub fn eval(&self, x: &T, y: &T) -> T {
        self.a.clone() * x.clone() * x.clone()
            + self.b.clone() * x.clone() * y.clone()
            + self.c.clone() * y.clone() * y.clone()
    }

    /// `[[b, 2c], [-2a, -b]]`, whose square is `disc * I`.
    pub fn m_matrix(&self) -> Mat2<T> {
        Mat2::new(
            self.b.clone(),
            int::<T>(2) * self.c.clone(),
            int::<T>(-2) * self.a.clone(),
            -self.b.clone(),
        )
    }

    pub fn neg(&self) -> QuadForm<T> {
        QuadForm::new(-self.a.clone(), -self.b.clone(), -self.c.clone())
    }

    pub fn scale(&self, k: &T) -> QuadForm<T> {
        QuadForm::new(
            self.a.clone() * k.clone(),
            self.b.clone() * k.clone(),
            self.c.clone() * k.clone(),
        )
    }

    pub fn to_binary(&self) -> BinaryForm<T> {
        BinaryForm::new(vec![self.a.clone(), self.b.clone(), self.c.clone()])
    }

    pub fn from_binary(b: &BinaryForm<T>) -> Self {
        assert_eq!(b.degree(), 2);
        QuadForm::new(b.coeffs[0].clone(), b.coeffs[1].clone(), b.coeffs[2].clone())
    }

    /// `f(T(x, y))`.
    pub fn substitute(&self, t: &Mat2<T>) -> QuadForm<T> {
        let (t1, t2, t3, t4) = (&t.t1, &t.t2, &t.t3, &t.t4);
        let two = int::<T>(2);
        let a = self.eval(t1, t3);
        let c = self.eval(t2, t4);
        let b = two.clone() * self.a.clone() * t1.clone() * t2.clone()
            + self.b.clone() * (t1.clone() * t4.clone() + t2.clone() * t3.clone())
            + two * self.c.clone() * t3.clone() * t4.clone();
        QuadForm::new(a, b, c)
    }

    /// `f(T(x, y)) / det T`.
    pub fn twisted_act(&self, t: &Mat2<T>) -> Result<QuadForm<T>> {
        let d = t.det();
        if d.is_zero() {
            return Err(Error::Singular);
        }
        let s = self.substitute(t);
        let f = |x: &T| x.div_exact(&d).ok_or(Error::NotExact);
        Ok(QuadForm::new(f(&s.a)?, f(&s.b)?, f(&s.c)?))
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }

    pub fn map<U: Scalar, F: Fn(&T) -> U>(&self, f: F) -> QuadForm<U> {
        QuadForm::new(f(&self.a), f(&self.b), f(&self.c))
    }

    /// `Some(s)` with `self = s * other`, `s = +-1`.
    pub fn sign_relative_to(&self, other: &QuadForm<T>) -> Option<i32> {
        if self == other {
            Some(1)
        } else if *self == other.neg() {
            Some(-1)
        } else {
            None
        }
    }
}

impl<T: IntScalar> QuadForm<T> {
    pub fn to_ratio_form(&self) -> QuadForm<Ratio<T>> {
        self.map(|x| Ratio::from_integer(x.clone()))
    }

    pub fn content(&self) -> T {
        self.a.gcd(&self.b).gcd(&self.c)
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    /// Primitive, first nonzero coefficient positive.
    pub fn normalized(&self) -> QuadForm<T> {
        QuadForm::from_binary(&self.to_binary().primitive_part())
    }
}

impl<T: Scalar> fmt::Display for QuadForm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{}]", self.a, self.b, self.c)
    }
}

/// `a4 x^4 + a3 x^3 y + a2 x^2 y^2 + a1 x y^3 + a0 y^4`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuarticForm<T> {
    pub a4: T,
    pub a3: T,
    pub a2: T,
    pub a1: T,
    pub a0: T,
}

/// The invariants `I`, `J` and the discriminant `(4 I^3 - J^2) / 27`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants<T> {
    pub i: T,
    pub j: T,
    pub disc: T,
}

impl<T: Scalar> QuarticForm<T> {
    pub fn new(a4: T, a3: T, a2: T, a1: T, a0: T) -> Self {
        QuarticForm { a4, a3, a2, a1, a0 }
    }

    pub fn from_i64(c: [i64; 5]) -> Self {
        QuarticForm::new(int(c[0]), int(c[1]), int(c[2]), int(c[3]), int(c[4]))
    }

    pub fn from_coeffs(c: [T; 5]) -> Self {
        let [a4, a3, a2, a1, a0] = c;
        QuarticForm { a4, a3, a2, a1, a0 }
    }

    pub fn coeffs(&self) -> [T; 5] {
        [
            self.a4.clone(),
            self.a3.clone(),
            self.a2.clone(),
            self.a1.clone(),
            self.a0.clone(),
        ]
    }

    pub fn to_binary(&self) -> BinaryForm<T> {
        BinaryForm::new(self.coeffs().to_vec())
    }

    pub fn from_binary(b: &BinaryForm<T>) -> Self {
        assert_eq!(b.degree(), 4);
        QuarticForm::from_coeffs([
            b.coeffs[0].clone(),
            b.coeffs[1].clone(),
            b.coeffs[2].clone(),
            b.coeffs[3].clone(),
            b.coeffs[4].clone(),
        ])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs().iter().all(|c| c.is_zero())
    }

    pub fn eval(&self, x: &T, y: &T) -> T {
        self.to_binary().eval(x, y)
    }

    pub fn invariant_i(&self) -> T {
        int::<T>(12) * self.a4.clone() * self.a0.clone()
            - int::<T>(3) * self.a3.clone() * self.a1.clone()
            + self.a2.clone() * self.a2.clone()
    }

    pub fn invariant_j(&self) -> T {
        let (a4, a3, a2, a1, a0) = (&self.a4, &self.a3, &self.a2, &self.a1, &self.a0);
        int::<T>(72) * a4.clone() * a2.clone() * a0.clone()
            + int::<T>(9) * a3.clone() * a2.clone() * a1.clone()
            - int::<T>(27) * a4.clone() * a1.clone() * a1.clone()
            - int::<T>(27) * a3.clone() * a3.clone() * a0.clone()
            - int::<T>(2) * a2.clone() * a2.clone() * a2.clone()
    }

    pub fn invariants(&self) -> Invariants<T> {
        let i = self.invariant_i();
        let j = self.invariant_j();
        let num = int::<T>(4) * i.clone() * i.clone() * i.clone() - j.clone() * j.clone();
        let disc = num
            .div_exact(&int(27))
            .unwrap_or_else(|| num.clone() / int::<T>(27));
        Invariants { i, j, disc }
    }

    pub fn disc(&self) -> T {
        self.invariants().disc
    }

    /// Quartic covariant `F4`, equal to `-1/3` of the Hessian determinant
    /// `F_xx F_yy - F_xy^2`.
    pub fn hessian(&self) -> QuarticForm<T> {
        let (a4, a3, a2, a1, a0) = (&self.a4, &self.a3, &self.a2, &self.a1, &self.a0);
        let i = int::<T>;
        QuarticForm::new(
            i(3) * a3.clone() * a3.clone() - i(8) * a4.clone() * a2.clone(),
            i(4) * (a3.clone() * a2.clone() - i(6) * a4.clone() * a1.clone()),
            i(2)
                * (i(2) * a2.clone() * a2.clone()
                    - i(24) * a4.clone() * a0.clone()
                    - i(3) * a3.clone() * a1.clone()),
            i(4) * (a2.clone() * a1.clone() - i(6) * a3.clone() * a0.clone()),
            i(3) * a1.clone() * a1.clone() - i(8) * a2.clone() * a0.clone(),
        )
    }

    pub fn substitute(&self, t: &Mat2<T>) -> QuarticForm<T> {
        QuarticForm::from_binary(&self.to_binary().substitute(t))
    }

    /// `F(T(x, y)) / det(T)^2`.
    pub fn twisted_act(&self, t: &Mat2<T>) -> Result<QuarticForm<T>> {
        Ok(QuarticForm::from_binary(&self.to_binary().twisted_act(t)?))
    }

    pub fn add(&self, o: &QuarticForm<T>) -> QuarticForm<T> {
        QuarticForm::new(
            self.a4.clone() + o.a4.clone(),
            self.a3.clone() + o.a3.clone(),
            self.a2.clone() + o.a2.clone(),
            self.a1.clone() + o.a1.clone(),
            self.a0.clone() + o.a0.clone(),
        )
    }

    pub fn scale(&self, k: &T) -> QuarticForm<T> {
        let c = self.coeffs().map(|x| x * k.clone());
        QuarticForm::from_coeffs(c)
    }

    pub fn map<U: Scalar, F: Fn(&T) -> U>(&self, f: F) -> QuarticForm<U> {
        QuarticForm::new(f(&self.a4), f(&self.a3), f(&self.a2), f(&self.a1), f(&self.a0))
    }

    pub fn max_abs(&self) -> T {
        let mut m = T::zero();
        for c in self.coeffs() {
            if c.abs() > m {
                m = c.abs();
            }
        }
        m
    }
}

impl<T: crate::scalar::FieldScalar> QuarticForm<T> {
    /// `max(|I|^3, J^2 / 4)`.
    pub fn bs_height(&self) -> T {
        let inv = self.invariants();
        let i3 = inv.i.abs() * inv.i.abs() * inv.i.abs();
        let j2 = inv.j.clone() * inv.j.clone() / int::<T>(4);
        if i3 > j2 {
            i3
        } else {
            j2
        }
    }
}

impl<T: IntScalar> QuarticForm<T> {
    pub fn to_ratio(&self) -> QuarticForm<Ratio<T>> {
        self.map(|c| Ratio::from_integer(c.clone()))
    }

    pub fn content(&self) -> T {
        self.to_binary().content()
    }

    /// `4 * max(|I|^3, J^2/4)` as an integer.
    pub fn bs_height_times4(&self) -> T {
        let inv = self.invariants();
        let i3 = int::<T>(4) * inv.i.abs() * inv.i.abs() * inv.i.abs();
        let j2 = inv.j.clone() * inv.j;
        i3.max(j2)
    }
}

impl<T: IntScalar> QuarticForm<Ratio<T>> {
    pub fn is_integral(&self) -> bool {
        self.coeffs().iter().all(|c| c.is_integer())
    }

    pub fn to_integral(&self) -> Result<QuarticForm<T>> {
        if !self.is_integral() {
            return Err(Error::NotIntegral);
        }
        Ok(self.map(|c| c.to_integer()))
    }
}

impl<T: Scalar> fmt::Display for QuarticForm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{},{},{},{},{}]",
            self.a4, self.a3, self.a2, self.a1, self.a0
        )
    }
}

/// Disc of `a x^2 + b xy + c y^2` for plain integer coordinates.
pub fn disc_quad<T: Scalar>(a: &T, b: &T, c: &T) -> T {
    QuadForm::new(a.clone(), b.clone(), c.clone()).disc()
}

/// Does `F_{M_f} = F` hold? Checked without division.
pub fn is_stabilized_by<T: Scalar>(quartic: &QuarticForm<T>, f: &QuadForm<T>) -> bool {
    let m = f.m_matrix();
    let d = m.det();
    let lhs = quartic.substitute(&m);
    lhs == quartic.scale(&(d.clone() * d))
}

/// Whether `F` has integral coefficients in a rational representation.
pub fn integral_part<T: IntScalar>(q: &QuarticForm<Ratio<T>>) -> Option<QuarticForm<T>> {
    q.to_integral().ok()
}

impl<T: Scalar> Default for QuadForm<T> {
    fn default() -> Self {
        QuadForm::new(T::zero(), T::zero(), T::zero())
    }
}

/// Greatest common divisor of a slice of integers.
pub fn gcd_all<T: IntScalar>(xs: &[T]) -> T {
    xs.iter().fold(T::zero(), |g, x| g.gcd(x))
}

/// Sign of a nonzero integer as `+-1` in the same type.
pub fn signum<T: Scalar>(x: &T) -> T {
    x.signum()
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = QuarticForm<i64>;

    #[test]
    fn quad_disc_examples() {
        assert_eq!(QuadForm::<i64>::from_i64(1, 0, 1).disc(), -4);
        assert_eq!(QuadForm::<i64>::from_i64(1, 1, 0).disc(), 1);
        assert_eq!(QuadForm::<i64>::from_i64(1, 1, 1).disc(), -3);
    }

    #[test]
    fn m_matrix_squares_to_disc() {
        let f = QuadForm::<i64>::from_i64(1, 0, 1);
        assert_eq!(f.m_matrix(), Mat2::from_i64([0, 2, -2, 0]));
        for (a, b, c) in [(1, 0, 1), (2, 3, -5), (1, 1, 0), (-3, 7, 2)] {
            let f = QuadForm::<i64>::from_i64(a, b, c);
            let m = f.m_matrix();
            let d = f.disc();
            assert_eq!(m.mul(&m), Mat2::new(d, 0, 0, d));
        }
    }

    #[test]
    fn twisted_action_on_quadratics() {
        let g = QuadForm::<i64>::from_i64(1, 0, -1);
        let m = QuadForm::<i64>::from_i64(1, 0, 1).m_matrix();
        let r = g.to_ratio_form().twisted_act(&m.map(|x| num_rational::Ratio::from_integer(*x)));
        assert_eq!(r.unwrap(), g.neg().to_ratio_form());
    }

    #[test]
    fn invariants_examples() {
        let inv = Q::from_i64([1, 0, 0, 0, 1]).invariants();
        assert_eq!((inv.i, inv.j, inv.disc), (12, 0, 256));
        let inv = Q::from_i64([1, 0, 0, 0, -2]).invariants();
        assert_eq!((inv.i, inv.j, inv.disc), (-24, 0, -2048));
        let inv = Q::from_i64([1, 1, 1, 1, 1]).invariants();
        assert_eq!((inv.i, inv.j, inv.disc), (10, 25, 125));
    }

    #[test]
    fn hessian_examples() {
        assert_eq!(Q::from_i64([1, 0, 0, 0, 1]).hessian(), Q::from_i64([0, 0, -48, 0, 0]));
        assert_eq!(Q::from_i64([0, 0, 1, 0, 0]).hessian(), Q::from_i64([0, 0, 4, 0, 0]));
    }

    #[test]
    fn bs_height_examples() {
        assert_eq!(Q::from_i64([1, 0, 0, 0, 1]).bs_height_times4(), 4 * 1728);
        assert_eq!(Q::from_i64([1, 0, 0, 0, -2]).bs_height_times4(), 4 * 13824);
    }

    #[test]
    fn matrix_inverse_and_powers() {
        let t = Mat2::<i64>::from_i64([2, 1, 1, 1]);
        assert_eq!(t.mul(&t.inverse().unwrap()), Mat2::identity());
        assert_eq!(t.pow(-2).unwrap().mul(&t.pow(2).unwrap()), Mat2::identity());
        assert_eq!(Mat2::<i64>::from_i64([2, 0, 0, 1]).inverse(), Err(Error::NotExact));
    }

    #[test]
    fn binary_division() {
        let p = BinaryForm::new(vec![1i64, 2, 3]);
        let q = BinaryForm::new(vec![0i64, 1, -1]);
        let pq = p.mul(&q);
        assert_eq!(pq.div_exact(&q), Some(p.clone()));
        assert_eq!(pq.div_exact(&p), Some(q));
        assert_eq!(p.div_exact(&BinaryForm::new(vec![1, 1])), None);
    }
}
