//! The cubic resolvent `x^3 - 3 I x + J`, its integer roots, and the
//! quadratic covariants they determine.
//!
//! For a root `w` the quartic covariant `(F4 + 4 w F) / 3` is a constant
//! multiple of the square of a quadratic form `g`; when `w` is an integer
//! `g` can be taken integral and `F` is stabilized by `M_g`.

use std::collections::BTreeSet;

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::forms::{is_stabilized_by, QuadForm, QuarticForm};
use crate::scalar::{int, isqrt, isqrt_ceil, IntScalar};

/// Coefficients `[1, 0, -3I, J]` of the resolvent.
pub fn cubic_resolvent<T: IntScalar>(f: &QuarticForm<T>) -> [T; 4] {
    let inv = f.invariants();
    [T::one(), T::zero(), int::<T>(-3) * inv.i, inv.j]
}

fn eval_cubic<T: IntScalar>(p: &T, q: &T, x: &T) -> T {
    x.clone() * x.clone() * x.clone() + p.clone() * x.clone() + q.clone()
}

/// Integer zero of a monotone cubic on `[lo, hi]`.
fn bisect<T: IntScalar>(p: &T, q: &T, lo: T, hi: T) -> Option<T> {
    if lo > hi {
        return None;
    }
    let flo = eval_cubic(p, q, &lo);
    let fhi = eval_cubic(p, q, &hi);
    if flo.is_zero() {
        return Some(lo);
    }
    if fhi.is_zero() {
        return Some(hi);
    }
    if flo.signum() == fhi.signum() {
        return None;
    }
    let (mut lo, mut hi) = (lo, hi);
    let rising = flo.is_negative();
    let two = int::<T>(2);
    while hi.clone() - lo.clone() > T::one() {
        let mid = (lo.clone() + hi.clone()).div_floor(&two);
        let fm = eval_cubic(p, q, &mid);
        if fm.is_zero() {
            return Some(mid);
        }
        if fm.is_negative() == rising {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    None
}



/// Distinct integer roots of `x^3 + p x + q`, ascending.
pub fn cubic_integer_roots<T: IntScalar>(p: &T, q: &T) -> Vec<T> {
    // Fujiwara: |x| <= 2 max(|p|^(1/2), |q|^(1/3))
    let two = int::<T>(2);
    let bound = two.clone() * (p.abs().sqrt() + T::one()) + two * (q.abs().cbrt() + T::one());
    let mut roots = BTreeSet::new();
    if !p.is_negative() {
        if let Some(r) = bisect(p, q, -bound.clone(), bound) {
            roots.insert(r);
        }
    } else {
        // critical points at +-sqrt(-p/3)
        let c2 = -p.clone();
        let lo_c = isqrt(&(c2.clone() / int::<T>(3)));
        let hi_c = isqrt_ceil(&(c2.clone().div_ceil(&int::<T>(3))));
        // monotone pieces: (-inf, -hi_c], [-lo_c, lo_c], [hi_c, inf); the
        // integers strictly between lo_c and hi_c are tested directly
        let pieces = [
            (-bound.clone(), -hi_c.clone()),
            (-lo_c.clone(), lo_c.clone()),
            (hi_c.clone(), bound.clone()),
        ];
        for (a, b) in pieces {
            if let Some(r) = bisect(p, q, a, b) {
                roots.insert(r);
            }
        }
        let mut x = lo_c.clone();
        while x <= hi_c {
            for s in [x.clone(), -x.clone()] {
                if eval_cubic(p, q, &s).is_zero() {
                    roots.insert(s);
                }
            }
            x = x + T::one();
        }
    }
    roots.into_iter().collect()
}

/// Distinct integer roots of the cubic resolvent, ascending.
pub fn integer_roots<T: IntScalar>(f: &QuarticForm<T>) -> Vec<T> {
    let inv = f.invariants();
    cubic_integer_roots(&(int::<T>(-3) * inv.i), &inv.j)
}

/// Integer roots by divisor search on the constant term; slow but simple.
pub fn integer_roots_by_divisors<T: IntScalar>(f: &QuarticForm<T>) -> Vec<T> {
    let inv = f.invariants();
    let p = int::<T>(-3) * inv.i;
    let q = inv.j;
    let mut out = BTreeSet::new();
    if q.is_zero() {
        out.insert(T::zero());
        // remaining roots solve x^2 + p = 0
        if let Some(s) = crate::scalar::sqrt_exact(&(-p.clone())) {
            out.insert(s.clone());
            out.insert(-s);
        }
    } else {
        for d in crate::factor::divisors(&q) {
            for x in [d.clone(), -d] {
                if eval_cubic(&p, &q, &x).is_zero() {
                    out.insert(x);
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Primitive integral `g` (first nonzero coefficient positive) with
/// `F4 + 4 w F` proportional to `g^2`.
pub fn covariant_from_root<T: IntScalar>(f: &QuarticForm<T>, w: &T) -> Result<QuadForm<T>> {
    let g4 = f.hessian().add(&f.scale(&(int::<T>(4) * w.clone())));
    sqrt_of_quartic(&g4)
}

/// Writes `G = c * g^2` with `g` primitive integral; fails if impossible.
pub fn sqrt_of_quartic<T: IntScalar>(g4: &QuarticForm<T>) -> Result<QuadForm<T>> {
    if g4.is_zero() {
        return Err(Error::Degenerate);
    }
    let r = |x: &T| Ratio::from_integer(x.clone());
    let [c4, c3, c2, c1, c0] = g4.coeffs().map(|x| r(&x));
    let two = r(&int(2));
    let (p, q, rr, c) = if !c4.is_zero() {
        let c = c4;
        let q = c3 / (two.clone() * c.clone());
        let rr = (c2 / c.clone() - q.clone() * q.clone()) / two.clone();
        (Ratio::one(), q, rr, c)
    } else if !c2.is_zero() {
        let c = c2;
        let rr = c1 / (two * c.clone());
        (Ratio::zero(), Ratio::one(), rr, c)
    } else {
        (Ratio::zero(), Ratio::zero(), Ratio::one(), c0)
    };
    let g = QuadForm::new(p, q, rr);
    let sq = g.to_binary().mul(&g.to_binary()).scale(&c);
    if sq != g4.to_ratio().to_binary() {
        return Err(Error::NotStabilized);
    }
    Ok(clear_denominators(&g))
}

/// Scale a rational quadratic to a primitive integral one.
pub fn clear_denominators<T: IntScalar>(g: &QuadForm<Ratio<T>>) -> QuadForm<T> {
    let l = g.a.denom().lcm(g.b.denom()).lcm(g.c.denom());
    let gi = g.map(|x| (x.clone() * Ratio::from_integer(l.clone())).to_integer());
    gi.normalized()
}

/// All `(w, g)` with `w` an integer root and `M_g` stabilizing `F`,
/// ascending in `w`.
pub fn stabilizer_quadratics<T: IntScalar>(f: &QuarticForm<T>) -> Result<Vec<(T, QuadForm<T>)>> {
    if f.disc().is_zero() {
        return Err(Error::Degenerate);
    }
    integer_roots(f)
        .into_iter()
        .map(|w| covariant_from_root(f, &w).map(|g| (w, g)))
        .collect()
}

/// `(L, K)` of a stabilized pair: `L` is the root attached to `f` and
/// `K = 3I - L^2`.
pub fn lk_invariants<T: IntScalar>(f: &QuadForm<T>, quartic: &QuarticForm<T>) -> Result<(T, T)> {
    if f.is_zero() || f.disc().is_zero() {
        return Err(Error::Degenerate);
    }
    if !is_stabilized_by(quartic, f) {
        return Err(Error::NotStabilized);
    }
    let target = f.normalized();
    for (w, g) in stabilizer_quadratics(quartic)? {
        if g == target {
            let k = int::<T>(3) * quartic.invariant_i() - w.clone() * w.clone();
            return Ok((w, k));
        }
    }
    Err(Error::NotStabilized)
}

/// `H_f(F) = max(L^2, |K|)`.
pub fn height<T: IntScalar>(l: &T, k: &T) -> T {
    (l.clone() * l.clone()).max(k.abs())
}

/// `Delta(F) = ((L^2 + 4K)/9) * ((2L^2 - K)/9)^2` as an exact rational.
pub fn disc_from_lk<T: IntScalar>(l: &T, k: &T) -> Ratio<T> {
    let l2 = l.clone() * l.clone();
    let a = Ratio::new(l2.clone() + int::<T>(4) * k.clone(), int(9));
    let b = Ratio::new(int::<T>(2) * l2 - k.clone(), int(9));
    a * b.clone() * b
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = QuarticForm<i64>;

    fn q(a: i64, b: i64, c: i64) -> QuadForm<i64> {
        QuadForm::from_i64(a, b, c)
    }

    #[test]
    fn resolvent_of_x4_plus_y4() {
        assert_eq!(cubic_resolvent(&Q::from_i64([1, 0, 0, 0, 1])), [1, 0, -36, 0]);
    }

    #[test]
    fn integer_root_examples() {
        assert_eq!(integer_roots(&Q::from_i64([1, 0, 0, 0, 1])), vec![-6, 0, 6]);
        assert_eq!(integer_roots(&Q::from_i64([1, 0, 0, 0, -2])), vec![0]);
        assert_eq!(integer_roots(&Q::from_i64([1, 1, 1, 1, 1])), vec![5]);
    }

    #[test]
    fn integer_roots_agree_with_divisor_search() {
        let mut n = 0;
        for a4 in -3..=3i64 {
            for a3 in -3..=3 {
                for a2 in -3..=3 {
                    for a1 in -2..=2 {
                        for a0 in -3..=3 {
                            let f = Q::from_i64([a4, a3, a2, a1, a0]);
                            if f.is_zero() {
                                continue;
                            }
                            let inv = f.invariants();
                            if inv.i == 0 && inv.j == 0 {
                                continue;
                            }
                            assert_eq!(integer_roots(&f), integer_roots_by_divisors(&f), "{f}");
                            n += 1;
                        }
                    }
                }
            }
        }
        assert!(n > 10_000);
    }

    #[test]
    fn covariant_examples() {
        let f = Q::from_i64([1, 0, 0, 0, 1]);
        assert_eq!(covariant_from_root(&f, &-6).unwrap(), q(1, 0, 1));
        assert_eq!(covariant_from_root(&f, &0).unwrap(), q(0, 1, 0));
        let g = Q::from_i64([1, 0, 0, 0, -2]);
        assert_eq!(covariant_from_root(&g, &0).unwrap(), q(0, 1, 0));
    }

    #[test]
    fn stabilizers_of_x4_plus_y4() {
        let s = stabilizer_quadratics(&Q::from_i64([1, 0, 0, 0, 1])).unwrap();
        assert_eq!(s, vec![(-6, q(1, 0, 1)), (0, q(0, 1, 0)), (6, q(1, 0, -1))]);
        for (_, g) in &s {
            assert!(is_stabilized_by(&Q::from_i64([1, 0, 0, 0, 1]), g));
        }
    }

    #[test]
    fn lk_examples() {
        let f4 = Q::from_i64([1, 0, 0, 0, 1]);
        let g4 = Q::from_i64([1, 0, 0, 0, -2]);
        assert_eq!(lk_invariants(&q(1, 0, 1), &f4).unwrap(), (-6, 0));
        assert_eq!(lk_invariants(&q(0, 1, 0), &f4).unwrap(), (0, 36));
        assert_eq!(lk_invariants(&q(0, 1, 0), &g4).unwrap(), (0, -72));
        assert_eq!(height(&-6i64, &0), 36);
        assert_eq!(height(&0i64, &-72), 72);
        assert_eq!(height(&0i64, &36), 36);
        assert_eq!(lk_invariants(&q(1, 1, 1), &f4), Err(Error::NotStabilized));
    }

    #[test]
    fn disc_from_lk_matches() {
        let f4 = Q::from_i64([1, 0, 0, 0, 1]);
        let (l, k) = lk_invariants(&q(0, 1, 0), &f4).unwrap();
        assert_eq!(disc_from_lk(&l, &k), Ratio::from_integer(256));
    }
}
