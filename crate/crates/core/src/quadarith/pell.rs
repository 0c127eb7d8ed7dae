//! Least solutions of `u^2 - D v^2 = +-4` and powers of the fundamental unit.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::QuadFieldElem;
use crate::error::{Error, Result};
use crate::scalar::{is_square, isqrt};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PellSolution {
    pub u: BigInt,
    pub v: BigInt,
    /// `u^2 - D v^2`, either 4 or -4.
    pub sign: i32,
}

fn check_d(d: &BigInt) -> Result<()> {
    if !d.is_positive() || is_square(d) {
        return Err(Error::SquareDiscriminant);
    }
    Ok(())
}

/// Continued fraction of `xi = (b + sqrt D)/2` with `b` the largest integer
/// below `sqrt D` of the same parity as `D`. The expansion is purely periodic
/// and the last convergent of the first period gives the unit. For
/// `D = 2, 3 mod 4` every solution has `u, v` even, so `4D` is solved instead.
pub fn pell_least(d: &BigInt) -> Result<PellSolution> {
    check_d(d)?;
    let r = d.mod_floor(&BigInt::from(4));
    if r == BigInt::from(2) || r == BigInt::from(3) {
        let s = pell_least(&(d * 4))?;
        return Ok(PellSolution { u: s.u, v: s.v * 2, sign: s.sign });
    }
    let s = isqrt(d);
    let b = if (&s - d).is_even() { s.clone() } else { &s - 1 };
    let (p0, q0) = (b.clone(), BigInt::from(2));
    let (mut p, mut q) = (p0.clone(), q0.clone());
    // q_{k-1}, q_{k-2}
    let (mut q1, mut q2) = (BigInt::zero(), BigInt::one());
    let mut len = 0usize;
    loop {
        let a = (&p + &s).div_floor(&q);
        let qn = &a * &q1 + &q2;
        q2 = std::mem::replace(&mut q1, qn);
        len += 1;
        let pn = &a * &q - &p;
        let qn = (d - &pn * &pn) / &q;
        p = pn;
        q = qn;
        if p == p0 && q == q0 {
            break;
        }
    }
    let u = &q1 * &b + BigInt::from(2) * &q2;
    let v = q1;
    let sign = if len % 2 == 0 { 4 } else { -4 };
    debug_assert_eq!(&u * &u - d * &v * &v, BigInt::from(sign));
    Ok(PellSolution { u, v, sign })
}

/// Exhaustive search over `1 <= v <= vmax`; the `-4` solution wins a tie.
pub fn pell_bruteforce(d: u64, vmax: u64) -> Option<(u128, u128, i32)> {
    for v in 1..=vmax as u128 {
        let dv2 = d as u128 * v * v;
        if dv2 >= 4 {
            let t = dv2 - 4;
            let r = Roots::sqrt(&t);
            if r * r == t {
                return Some((r, v, -4));
            }
        }
        let t = dv2 + 4;
        let r = Roots::sqrt(&t);
        if r * r == t {
            return Some((r, v, 4));
        }
    }
    None
}

/// `((u + v sqrt D)/2)^n` exactly; negative `n` uses the conjugate.
pub fn unit_power(d: &BigInt, n: i64) -> Result<QuadFieldElem<BigRational>> {
    let sol = pell_least(d)?;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let dd = BigRational::from_integer(d.clone());
    let eps = QuadFieldElem::new(
        BigRational::from_integer(sol.u) * &half,
        BigRational::from_integer(sol.v) * &half,
        dd,
    );
    let base = if n >= 0 { eps } else { eps.inv() };
    Ok(base.pow(n.unsigned_abs() as u32))
}

/// Natural log of a positive BigInt, accurate for arbitrary size.
fn ln_big(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits < 1000 {
        return x.to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    let top: BigInt = x >> shift;
    top.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

/// `log((u + v sqrt D)/2)`.
pub fn fundamental_t(d: &BigInt) -> Result<f64> {
    let sol = pell_least(d)?;
    let df = d.to_f64().unwrap();
    let t = match (sol.u.to_f64(), sol.v.to_f64()) {
        (Some(u), Some(v)) if u < 1e150 && v < 1e150 => ((u + v * df.sqrt()) / 2.0).ln(),
        _ => {
            // v sqrt D agrees with u to relative order 1/u^2, so eps ~ u
            ln_big(&sol.u)
        }
    };
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn examples() {
        let s = pell_least(&big(5)).unwrap();
        assert_eq!((s.u, s.v, s.sign), (big(1), big(1), -4));
        let s = pell_least(&big(8)).unwrap();
        assert_eq!((s.u, s.v, s.sign), (big(2), big(1), -4));
        let s = pell_least(&big(12)).unwrap();
        assert_eq!((s.u, s.v, s.sign), (big(4), big(1), 4));
        let s = pell_least(&big(2)).unwrap();
        assert_eq!((s.u, s.v, s.sign), (big(2), big(2), -4));
        let s = pell_least(&big(7)).unwrap();
        assert_eq!((s.u, s.v, s.sign), (big(16), big(6), 4));
        assert!(pell_least(&big(9)).is_err());
        assert!(pell_least(&big(0)).is_err());
    }

    #[test]
    fn t_values() {
        assert!((fundamental_t(&big(5)).unwrap() - 0.481212).abs() < 1e-5);
        assert!((fundamental_t(&big(8)).unwrap() - 0.881374).abs() < 1e-5);
        assert!((fundamental_t(&big(12)).unwrap() - 1.316958).abs() < 1e-5);
    }

    #[test]
    fn powers() {
        let r = |n: i64, d: i64| BigRational::new(big(n), big(d));
        let e8 = unit_power(&big(5), 8).unwrap();
        assert_eq!((e8.a, e8.b), (r(47, 2), r(21, 2)));
        let e2 = unit_power(&big(8), 2).unwrap();
        // 3 + 2 sqrt 2 = 3 + sqrt 8
        assert_eq!((e2.a, e2.b), (r(3, 1), r(1, 1)));
        let one = unit_power(&big(5), 3).unwrap().mul(&unit_power(&big(5), -3).unwrap());
        assert_eq!((one.a, one.b), (r(1, 1), r(0, 1)));
    }
}
