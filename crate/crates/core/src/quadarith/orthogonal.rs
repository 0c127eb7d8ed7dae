//! The groups `O_f(Z) = {T in GL_2(Z) : f_T = +-f}` and the index `r_f`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::pell::pell_least;
use super::reduce::{indefinite_cycle, quad_kind, reduce_quad, QuadKind};
use crate::error::{Error, Result};
use crate::forms::{Mat2, QuadForm};
use crate::quadlattice::hnf_rows;
use crate::scalar::sqrt_exact;

type Q = QuadForm<BigInt>;
type M = Mat2<BigInt>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupStructure {
    Finite,
    InfiniteCyclicModTorsion,
}

/// Finite groups are listed in full. For indefinite irreducible `f` the group
/// is `{+-T^n} u {+-T^n} C`; `finite_elements` then holds `+-I` and `+-C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthGroup {
    pub finite_elements: Vec<M>,
    pub infinite_generator: Option<M>,
    pub coset: Option<M>,
    pub structure: GroupStructure,
}

impl OrthGroup {
    pub fn contains(&self, f: &Q, t: &M) -> bool {
        in_orthogonal(f, t)
    }
}

fn m(t: [i64; 4]) -> M {
    Mat2::from_i64(t)
}

pub fn in_orthogonal(f: &Q, t: &M) -> bool {
    let d = t.det();
    if d.abs() != BigInt::one() {
        return false;
    }
    match f.twisted_act(t) {
        Ok(g) => g.sign_relative_to(f).is_some(),
        Err(_) => false,
    }
}

/// Group generated by `gens` and `-I`.
fn closure(gens: &[M]) -> Vec<M> {
    let mut els = vec![M::identity(), M::identity().neg()];
    let mut i = 0;
    while i < els.len() {
        for g in gens {
            let p = els[i].mul(g);
            if !els.contains(&p) {
                els.push(p);
            }
        }
        i += 1;
        assert!(els.len() <= 24, "generators do not span a finite group");
    }
    els
}

fn require_canonical(f: &Q) -> Result<()> {
    let r = reduce_quad(f)?;
    if r.form != *f {
        return Err(Error::NotCanonical);
    }
    Ok(())
}

/// `O_f(Z)` for `f` in canonical reduced shape.
pub fn orthogonal_group(f: &Q) -> Result<OrthGroup> {
    require_canonical(f)?;
    let finite = |els: Vec<M>| OrthGroup {
        finite_elements: els,
        infinite_generator: None,
        coset: None,
        structure: GroupStructure::Finite,
    };
    let one = BigInt::one();
    match quad_kind(f)? {
        QuadKind::PositiveDefinite | QuadKind::NegativeDefinite => {
            let (a, b, c) = (&f.a, &f.b, &f.c);
            let gens = if a.is_one() && b.is_zero() && c.is_one() {
                vec![m([0, 1, -1, 0]), m([1, 0, 0, -1]), m([0, 1, 1, 0])]
            } else if a.is_one() && b.is_one() && c.is_one() {
                vec![m([0, -1, 1, 1]), m([0, 1, 1, 0])]
            } else if b.is_zero() {
                vec![m([1, 0, 0, -1])]
            } else if a == c {
                vec![m([0, 1, 1, 0])]
            } else if a == b {
                vec![m([1, 1, 0, -1])]
            } else {
                vec![]
            };
            Ok(finite(closure(&gens)))
        }
        QuadKind::Reducible => {
            let (al, be) = (f.a.clone(), f.b.clone());
            let mut gens = Vec::new();
            if (BigInt::from(2) * &al) % &be == BigInt::zero() {
                let two_a = BigInt::from(2) * &al / &be;
                gens.push(Mat2::new(-one.clone(), BigInt::zero(), two_a, one.clone()));
            }
            for s in [1i64, -1] {
                // [[alpha, beta], [(s - alpha^2)/beta, -alpha]]
                let num = BigInt::from(s) - &al * &al;
                if (&num % &be).is_zero() {
                    gens.push(Mat2::new(al.clone(), be.clone(), num / &be, -al.clone()));
                }
            }
            Ok(finite(closure(&gens)))
        }
        QuadKind::Indefinite => {
            let gen = pell_generator(f)?;
            let coset = finite_order_element(f)?;
            let mut els = vec![M::identity(), M::identity().neg()];
            if let Some(c) = &coset {
                els.push(c.clone());
                els.push(c.neg());
            }
            Ok(OrthGroup {
                finite_elements: els,
                infinite_generator: Some(gen),
                coset,
                structure: GroupStructure::InfiniteCyclicModTorsion,
            })
        }
    }
}

/// `O_f(Z)` for any primitive `f`, by conjugating the group of its canonical
/// representative.
pub fn orthogonal_group_any(f: &Q) -> Result<OrthGroup> {
    let r = reduce_quad(f)?;
    let g = orthogonal_group(&r.form)?;
    let p = r.transform;
    let pinv = p.inverse()?;
    let conj = |u: &M| p.mul(u).mul(&pinv);
    Ok(OrthGroup {
        finite_elements: g.finite_elements.iter().map(conj).collect(),
        infinite_generator: g.infinite_generator.as_ref().map(conj),
        coset: g.coset.as_ref().map(conj),
        structure: g.structure,
    })
}

/// `T_D = [[(u - beta v)/2, -gamma v], [alpha v, (u + beta v)/2]]`.
pub fn pell_generator(f: &Q) -> Result<M> {
    let sol = pell_least(&f.disc())?;
    let two = BigInt::from(2);
    let t = Mat2::new(
        (&sol.u - &f.b * &sol.v) / &two,
        -&f.c * &sol.v,
        &f.a * &sol.v,
        (&sol.u + &f.b * &sol.v) / &two,
    );
    debug_assert!(in_orthogonal(f, &t));
    Ok(t)
}

/// A finite-order element of `O_f(Z)` other than `+-I`, for indefinite `f`
/// with nonsquare discriminant.
///
/// Such elements anticommute with `M_f`, so they are the integral
/// `[[p, q], [r, -p]]` with `a q - c r = b p` and `p^2 + q r = +-1`. The first
/// condition cuts out a rank-2 lattice on which `p^2 + q r` restricts to an
/// indefinite binary form `h`; `h` represents `+-1` exactly when a reduced form
/// on its cycle has leading coefficient `+-1`.
pub fn finite_order_element(f: &Q) -> Result<Option<M>> {
    if quad_kind(f)? != QuadKind::Indefinite {
        return Err(Error::Invalid(format!("{f} is not indefinite irreducible")));
    }
    let z = BigInt::zero;
    let o = BigInt::one;
    let rows = hnf_rows(vec![
        vec![-f.b.clone(), o(), z(), z()],
        vec![f.a.clone(), z(), o(), z()],
        vec![-f.c.clone(), z(), z(), o()],
    ]);
    let ker: Vec<[BigInt; 3]> = rows
        .into_iter()
        .filter(|r| r[0].is_zero())
        .map(|r| [r[1].clone(), r[2].clone(), r[3].clone()])
        .collect();
    assert_eq!(ker.len(), 2, "kernel of rank 2");
    let qv = |w: &[BigInt; 3]| &w[0] * &w[0] + &w[1] * &w[2];
    let bil = |u: &[BigInt; 3], w: &[BigInt; 3]| {
        BigInt::from(2) * &u[0] * &w[0] + &u[1] * &w[2] + &w[1] * &u[2]
    };
    let h = QuadForm::new(qv(&ker[0]), bil(&ker[0], &ker[1]), qv(&ker[1]));
    let to_mat = |mm: &BigInt, nn: &BigInt| {
        let p = mm * &ker[0][0] + nn * &ker[1][0];
        let q = mm * &ker[0][1] + nn * &ker[1][1];
        let r = mm * &ker[0][2] + nn * &ker[1][2];
        Mat2::new(p.clone(), q, r, -p)
    };
    if !h.is_primitive() {
        return Ok(None);
    }
    let dh = h.disc();
    let use_cycle = dh > BigInt::from(16) && sqrt_exact(&dh).is_none();
    let found = if use_cycle {
        indefinite_cycle(&h)
            .into_iter()
            .find(|(g, _)| g.a.abs().is_one())
            .map(|(_, t)| to_mat(&t.t1, &t.t3))
    } else {
        small_search(&h).map(|(mm, nn)| to_mat(&mm, &nn))
    };
    if let Some(x) = &found {
        if !in_orthogonal(f, x) {
            return Err(Error::Invalid(format!("coset candidate {x} fails for {f}")));
        }
    }
    Ok(found)
}

fn small_search(h: &Q) -> Option<(BigInt, BigInt)> {
    for r in 1i64..=60 {
        for mm in -r..=r {
            for nn in -r..=r {
                if mm.abs().max(nn.abs()) != r {
                    continue;
                }
                let (mb, nb) = (BigInt::from(mm), BigInt::from(nn));
                if h.eval(&mb, &nb).abs().is_one() {
                    return Some((mb, nb));
                }
            }
        }
    }
    None
}

/// All `T` with `|entries| <= bound`, `det T = +-1` and `f_T = +-f`.
pub fn orthogonal_bruteforce(f: &Q, bound: i64) -> Vec<M> {
    let (a, b, c) = (
        f.a.to_i128().expect("small form"),
        f.b.to_i128().expect("small form"),
        f.c.to_i128().expect("small form"),
    );
    let ev = |x: i128, y: i128| a * x * x + b * x * y + c * y * y;
    let bd = bound as i128;
    let mut cols = Vec::new();
    let mut cols2 = Vec::new();
    for x in -bd..=bd {
        for y in -bd..=bd {
            let v = ev(x, y);
            if v == a || v == -a {
                cols.push((x, y, v));
            }
            if v == c || v == -c {
                cols2.push((x, y));
            }
        }
    }
    let mut out = Vec::new();
    for &(t1, t3, v1) in &cols {
        for &(t2, t4) in &cols2 {
            let det = t1 * t4 - t2 * t3;
            if det != 1 && det != -1 {
                continue;
            }
            let mid = 2 * a * t1 * t2 + b * (t1 * t4 + t2 * t3) + 2 * c * t3 * t4;
            let ok = [1i128, -1].iter().any(|&s| {
                v1 == s * a * det && mid == s * b * det && ev(t2, t4) == s * c * det
            });
            if ok {
                out.push(Mat2::new(
                    BigInt::from(t1),
                    BigInt::from(t2),
                    BigInt::from(t3),
                    BigInt::from(t4),
                ));
            }
        }
    }
    out
}

/// `[O_f(Z) : O_f(Z) n {+-I, +-M_f / sqrt(D_f)}]` for canonical `f`.
pub fn r_f(f: &Q) -> Result<u32> {
    let g = orthogonal_group(f)?;
    match g.structure {
        GroupStructure::InfiniteCyclicModTorsion => Ok(if g.coset.is_some() { 2 } else { 1 }),
        GroupStructure::Finite => {
            let dd = f.disc().abs();
            let mut sub = 2u32;
            if let Some(s) = sqrt_exact(&dd) {
                let mm = f.m_matrix();
                let ents = mm.entries();
                if ents.iter().all(|e| (e % &s).is_zero()) {
                    let t = mm.map(|e| e / &s);
                    if g.finite_elements.contains(&t) {
                        sub = 4;
                    }
                }
            }
            let n = g.finite_elements.len() as u32;
            Ok(n / sub)
        }
    }
}

/// Scan the reduction cycles of `+-f` and its mirror image, together with
/// shears of size at most `bound` and the swap, for a form `(a, b, c)` with
/// `a | b`.
pub fn divisible_shape_scan(f: &Q, bound: i64) -> Result<Option<(Q, M)>> {
    if quad_kind(f)? != QuadKind::Indefinite {
        return Err(Error::Invalid(format!("{f} is not indefinite irreducible")));
    }
    let mirror = m([1, 0, 0, -1]);
    let swap = m([0, 1, 1, 0]);
    let mut neighbours = vec![M::identity(), swap];
    for k in -bound..=bound {
        if k != 0 {
            neighbours.push(m([1, k, 0, 1]));
            neighbours.push(m([1, 0, k, 1]));
        }
    }
    for (start, t0) in [
        (f.clone(), M::identity()),
        (f.neg(), M::identity()),
        (f.substitute(&mirror), mirror.clone()),
        (f.substitute(&mirror).neg(), mirror.clone()),
    ] {
        for (h, t) in indefinite_cycle(&start) {
            for nb in &neighbours {
                let g = h.substitute(nb);
                if !g.a.is_zero() && (&g.b % &g.a).is_zero() {
                    let tt = t0.mul(&t).mul(nb);
                    return Ok(Some((g, tt)));
                }
            }
        }
    }
    Ok(None)
}

/// `(x^2 - D y^2 = -4 solvable, alpha x^2 + beta xy - alpha y^2 ~ a form with
/// a | b)` for `D = beta^2 + 4 alpha^2`.
pub fn negative_pell_criterion(alpha: i64, beta: i64) -> Result<(bool, bool)> {
    if alpha <= 0 || beta <= 0 || alpha.gcd(&beta) != 1 {
        return Err(Error::Invalid(format!("need coprime positive alpha, beta; got {alpha}, {beta}")));
    }
    let d = BigInt::from(beta * beta + 4 * alpha * alpha);
    if sqrt_exact(&d).is_some() {
        return Err(Error::SquareDiscriminant);
    }
    let pell = pell_least(&d)?.sign == -4;
    let f = QuadForm::new(BigInt::from(alpha), BigInt::from(beta), BigInt::from(-alpha));
    let shape = divisible_shape_scan(&f, 25)?.is_some();
    Ok((pell, shape))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64, c: i64) -> Q {
        QuadForm::from_i64(a, b, c)
    }

    #[test]
    fn group_sizes() {
        assert_eq!(orthogonal_group(&q(1, 0, 1)).unwrap().finite_elements.len(), 8);
        assert_eq!(orthogonal_group(&q(1, 1, 1)).unwrap().finite_elements.len(), 12);
        let g = orthogonal_group(&q(1, 1, 0)).unwrap();
        assert_eq!(g.finite_elements.len(), 8);
        assert!(g.finite_elements.contains(&m([-1, 0, 2, 1])));
        assert_eq!(orthogonal_group(&q(1, 2, 0)).unwrap().finite_elements.len(), 8);
        assert!(orthogonal_group(&q(2, 2, 1)).is_err());
    }

    #[test]
    fn pell_generator_d5() {
        let g = orthogonal_group(&q(1, 1, -1)).unwrap();
        assert_eq!(g.infinite_generator, Some(m([0, 1, 1, 1])));
        assert!(g.coset.is_some());
    }

    #[test]
    fn r_values() {
        assert_eq!(r_f(&q(1, 1, 1)).unwrap(), 6);
        assert_eq!(r_f(&q(1, 0, 1)).unwrap(), 2);
        assert_eq!(r_f(&q(1, 1, 0)).unwrap(), 2);
        assert_eq!(r_f(&q(1, 2, 0)).unwrap(), 2);
        assert_eq!(r_f(&q(1, 1, -1)).unwrap(), 2);
    }

    #[test]
    fn bruteforce_examples() {
        assert_eq!(orthogonal_bruteforce(&q(1, 0, 1), 1).len(), 8);
        assert_eq!(orthogonal_bruteforce(&q(1, 1, 1), 1).len(), 12);
        assert_eq!(orthogonal_bruteforce(&q(7, 3, 11), 1).len(), 2);
    }

    #[test]
    fn neg_pell_examples() {
        assert_eq!(negative_pell_criterion(1, 2).unwrap(), (true, true));
        assert_eq!(negative_pell_criterion(1, 4).unwrap(), (true, true));
        assert_eq!(negative_pell_criterion(2, 1).unwrap(), (true, true));
    }
}
