//! Canonical representatives of binary quadratic forms up to `f -> +-f_T`,
//! `T` in `GL_2(Z)`.
//!
//! Definite forms: Gauss reduction with `0 <= b <= a <= c`.
//! Indefinite, nonsquare discriminant: the least `(a, b, c)` with `a > 0` on
//! the reduction cycles of `f`, `-f` and their mirror images.
//! Square discriminant: `alpha x^2 + beta x y` with `0 < alpha <= beta`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::forms::{Mat2, QuadForm};
use crate::scalar::{isqrt, sqrt_exact};

type Q = QuadForm<BigInt>;
type M = Mat2<BigInt>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadKind {
    PositiveDefinite,
    NegativeDefinite,
    Indefinite,
    Reducible,
}

pub fn quad_kind(f: &Q) -> Result<QuadKind> {
    let d = f.disc();
    if d.is_zero() {
        return Err(Error::Degenerate);
    }
    Ok(if d.is_negative() {
        if f.a.is_positive() {
            QuadKind::PositiveDefinite
        } else {
            QuadKind::NegativeDefinite
        }
    } else if sqrt_exact(&d).is_some() {
        QuadKind::Reducible
    } else {
        QuadKind::Indefinite
    })
}

/// `f_T = sign * form` with `T = transform` in `GL_2(Z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub form: Q,
    pub transform: M,
    pub sign: i32,
}

fn m(t1: i64, t2: i64, t3: i64, t4: i64) -> M {
    Mat2::from_i64([t1, t2, t3, t4])
}

fn shear_x(k: &BigInt) -> M {
    // x -> x + k y
    Mat2::new(BigInt::one(), k.clone(), BigInt::zero(), BigInt::one())
}

fn finish(f: &Q, form: Q, transform: M) -> Result<Reduction> {
    let ft = f.twisted_act(&transform)?;
    let sign = ft.sign_relative_to(&form).ok_or_else(|| {
        Error::Invalid(format!("reduction of {f} did not land on {form}"))
    })?;
    Ok(Reduction { form, transform, sign })
}

fn check_input(f: &Q) -> Result<()> {
    if f.disc().is_zero() {
        return Err(Error::Degenerate);
    }
    if !f.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    Ok(())
}

/// Canonical representative and a transformation reaching it.
pub fn reduce_quad(f: &Q) -> Result<Reduction> {
    check_input(f)?;
    match quad_kind(f)? {
        QuadKind::PositiveDefinite | QuadKind::NegativeDefinite => reduce_definite(f),
        QuadKind::Indefinite => reduce_indefinite(f),
        QuadKind::Reducible => reduce_square(f),
    }
}

// ---------- definite ----------

fn reduce_definite(f: &Q) -> Result<Reduction> {
    let mut g = if f.a.is_negative() { f.neg() } else { f.clone() };
    let mut t = M::identity();
    loop {
        // bring b into (-a, a]
        let k = (&g.a - &g.b).div_floor(&(BigInt::from(2) * &g.a));
        if !k.is_zero() {
            let s = shear_x(&k);
            g = g.substitute(&s);
            t = t.mul(&s);
        }
        if g.c < g.a {
            let s = m(0, -1, 1, 0);
            g = g.substitute(&s);
            t = t.mul(&s);
            continue;
        }
        break;
    }
    if g.b.is_negative() {
        let j = m(1, 0, 0, -1);
        g = g.substitute(&j);
        t = t.mul(&j);
    }
    finish(f, g, t)
}

// ---------- indefinite ----------

/// `rho` step: `f o [[0,-1],[1,k]] = (c, -b + 2ck, a - bk + ck^2)` with the
/// new middle coefficient normalised against `s = floor(sqrt D)`.
fn rho(g: &Q, s: &BigInt) -> (Q, M) {
    let c2 = BigInt::from(2) * g.c.abs();
    let nb = if g.c.abs() > *s {
        // b' = -b mod 2|c| in (-|c|, |c|]
        let mut r = (-&g.b).mod_floor(&c2);
        if r > g.c.abs() {
            r -= &c2;
        }
        r
    } else {
        s - (s + &g.b).mod_floor(&c2)
    };
    let k = (&nb + &g.b) / (BigInt::from(2) * &g.c);
    let t = Mat2::new(BigInt::zero(), -BigInt::one(), BigInt::one(), k.clone());
    let h = QuadForm::new(g.c.clone(), nb, &g.a - &g.b * &k + &g.c * &k * &k);
    debug_assert_eq!(g.substitute(&t), h);
    (h, t)
}

pub(crate) fn is_reduced_indefinite(g: &Q, s: &BigInt) -> bool {
    let a2 = BigInt::from(2) * g.a.abs();
    g.b.is_positive() && g.b <= *s && s - &g.b < a2 && a2 <= s + &g.b
}

/// Reduced forms on the cycle of `g`, with `g o T_i = h_i`.
pub(crate) fn indefinite_cycle(g: &Q) -> Vec<(Q, M)> {
    let s = isqrt(&g.disc());
    let mut h = g.clone();
    let mut t = M::identity();
    let mut steps = 0usize;
    while !is_reduced_indefinite(&h, &s) {
        let (h2, r) = rho(&h, &s);
        h = h2;
        t = t.mul(&r);
        steps += 1;
        assert!(steps < 100_000, "reduction of {g} did not terminate");
    }
    let start = h.clone();
    let mut out = vec![(h.clone(), t.clone())];
    loop {
        let (h2, r) = rho(&h, &s);
        h = h2;
        t = t.mul(&r);
        if h == start {
            break;
        }
        out.push((h.clone(), t.clone()));
    }
    out
}

fn key(q: &Q) -> (BigInt, BigInt, BigInt) {
    (q.a.clone(), q.b.clone(), q.c.clone())
}

fn reduce_indefinite(f: &Q) -> Result<Reduction> {
    let mirror = m(1, 0, 0, -1);
    let mut best: Option<(Q, M)> = None;
    for (start, t0) in [
        (f.clone(), M::identity()),
        (f.neg(), M::identity()),
        (f.substitute(&mirror), mirror.clone()),
        (f.substitute(&mirror).neg(), mirror.clone()),
    ] {
        for (h, t) in indefinite_cycle(&start) {
            if !h.a.is_positive() {
                continue;
            }
            if best.as_ref().is_none_or(|(b, _)| key(&h) < key(b)) {
                best = Some((h, t0.mul(&t)));
            }
        }
    }
    let (g, t) = best.expect("every cycle has forms with a > 0");
    finish(f, g, t)
}

// ---------- square discriminant ----------

/// Extended gcd: `(x, y)` with `p x + q y = 1`.
fn bezout(p: &BigInt, q: &BigInt) -> (BigInt, BigInt) {
    let e = p.extended_gcd(q);
    debug_assert!(e.gcd.is_one());
    (e.x, e.y)
}

/// `h = (a, b, 0)` with `b != 0`: transformation to `alpha x^2 + beta xy`
/// with `0 < alpha <= beta`.
fn normalize_xy(h: &Q) -> (BigInt, M) {
    debug_assert!(h.c.is_zero());
    // y -> -y gives (-a, b) exactly, i.e. (a, -b) up to sign
    let (a, beta, t0) = if h.b.is_negative() {
        (h.a.clone(), -h.b.clone(), m(1, 0, 0, -1))
    } else {
        (h.a.clone(), h.b.clone(), M::identity())
    };
    // y -> y + k x: alpha = a + k beta
    let k = -(&a - BigInt::one()).div_floor(&beta);
    let alpha = &a + &k * &beta;
    let t = t0.mul(&Mat2::new(BigInt::one(), BigInt::zero(), k, BigInt::one()));
    (alpha, t)
}

fn reduce_square(f: &Q) -> Result<Reduction> {
    let beta = sqrt_exact(&f.disc()).expect("square discriminant");
    // linear factors p x + q y
    let two = BigInt::from(2);
    let lin: Vec<(BigInt, BigInt)> = if f.a.is_zero() {
        vec![(BigInt::zero(), BigInt::one()), (f.b.clone(), f.c.clone())]
    } else {
        // roots t = x/y of a t^2 + b t + c
        [&beta, &(-&beta)]
            .iter()
            .map(|r| {
                let num = -&f.b + *r;
                let den = &two * &f.a;
                let g = num.gcd(&den);
                // root num/den: factor den x - num y
                (&den / &g, -(&num / &g))
            })
            .collect()
    };
    let mut best: Option<(BigInt, M)> = None;
    for (p, q) in lin.iter() {
        let g = p.gcd(q);
        let (p, q) = (p / &g, q / &g);
        let (x0, y0) = bezout(&p, &q);
        // U = [[p, q], [-y0, x0]], T = U^-1 sends the factor to x
        let u = Mat2::new(p.clone(), q.clone(), -y0, x0);
        let t = u.inverse()?;
        let h = f.twisted_act(&t)?;
        if !h.c.is_zero() {
            return Err(Error::Invalid(format!("factor of {f} not mapped to x")));
        }
        let (alpha, tn) = normalize_xy(&h);
        let t1 = t.mul(&tn);
        // x -> -x turns alpha into beta - alpha
        let (alpha2, tn2) = normalize_xy(&QuadForm::new(-alpha.clone(), beta.clone(), BigInt::zero()));
        let t2 = t1.mul(&m(-1, 0, 0, 1)).mul(&tn2);
        for (al, tt) in [(alpha, t1), (alpha2, t2)] {
            if best.as_ref().is_none_or(|(b, _)| al < *b) {
                best = Some((al, tt));
            }
        }
    }
    let (alpha, t) = best.unwrap();
    finish(f, QuadForm::new(alpha, beta, BigInt::zero()), t)
}

/// `T` in `GL_2(Z)` with `f_T = +-g`, if the forms are equivalent.
pub fn quad_equivalent(f: &Q, g: &Q) -> Result<Option<M>> {
    check_input(f)?;
    check_input(g)?;
    if f.disc() != g.disc() {
        return Ok(None);
    }
    let rf = reduce_quad(f)?;
    let rg = reduce_quad(g)?;
    if rf.form != rg.form {
        return Ok(None);
    }
    let t = rf.transform.mul(&rg.transform.inverse()?);
    debug_assert!(f.twisted_act(&t)?.sign_relative_to(g).is_some());
    Ok(Some(t))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64, c: i64) -> Q {
        QuadForm::from_i64(a, b, c)
    }

    #[test]
    fn examples() {
        assert_eq!(reduce_quad(&q(2, 2, 1)).unwrap().form, q(1, 0, 1));
        assert_eq!(reduce_quad(&q(0, 1, 0)).unwrap().form, q(1, 1, 0));
        assert_eq!(reduce_quad(&q(1, 0, -1)).unwrap().form, q(1, 2, 0));
        assert!(reduce_quad(&q(2, 0, 2)).is_err());
        assert!(reduce_quad(&q(1, 2, 1)).is_err());
        assert_eq!(reduce_quad(&q(0, 2, 1)).unwrap().form, q(1, 2, 0));
        assert_eq!(reduce_quad(&q(0, 1, 1)).unwrap().form, q(1, 1, 0));
        assert_eq!(reduce_quad(&q(3, -5, 2)).unwrap().form, q(1, 1, 0));
    }

    #[test]
    fn equivalence_examples() {
        assert!(quad_equivalent(&q(1, 0, 1), &q(2, 2, 1)).unwrap().is_some());
        assert!(quad_equivalent(&q(1, 0, 1), &q(1, 1, 1)).unwrap().is_none());
        for (a, b) in [(3, 1), (5, 2), (4, 7)] {
            let f = q(a, b, a);
            let g = q(2 * a - b, 2 * a - b, a);
            let t = m(-1, -1, 1, 0);
            assert_eq!(f.twisted_act(&t).unwrap().sign_relative_to(&g).map(|s| s.abs()), Some(1));
            assert!(quad_equivalent(&f, &g).unwrap().is_some());
        }
    }

    #[test]
    fn indefinite_cycle_closes() {
        let f = q(1, 1, -1);
        let cyc = indefinite_cycle(&f);
        let s = isqrt(&f.disc());
        assert!(cyc.iter().all(|(h, _)| is_reduced_indefinite(h, &s)));
        for (h, t) in &cyc {
            assert_eq!(&f.substitute(t), h);
        }
    }
}
