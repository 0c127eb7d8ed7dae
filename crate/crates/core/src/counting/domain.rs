//! The sets `S_f(X)`: membership and lattice-point enumeration.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::forms::{QuadForm, QuarticForm};
use crate::quadarith::{quad_kind, reduce_quad, sign_with_sqrt, unit_power, QuadFieldElem, QuadKind};
use crate::quadlattice::{chart_relations, default_chart, Chart};
use crate::scalar::{cast_int, isqrt};

/// A lattice point of `V_{Z,f}` with its invariants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Cand {
    /// `[a4, a3, a2, a1, a0]`
    pub c: [i128; 5],
    pub l: i128,
    pub k: i128,
}

impl Cand {
    pub fn quartic(&self) -> QuarticForm<BigInt> {
        QuarticForm::from_coeffs(self.c.map(BigInt::from))
    }
}

/// The region cutting out `S_f(X)` inside `V_f^0(X)`.
#[derive(Clone, Debug)]
pub enum DomainCondition {
    /// all of `V_f^0(X)`
    PosDef,
    /// `c_lo <= |a0| <= c_hi`, i.e. `beta^2/8 <= |C| <= 5 beta^2 X / 18`
    Reducible { c_lo: i128, c_hi: i128 },
    /// `1 <= E1 Z / E2 < eps^8` with `eps^8 = (a8 + b8 sqrt D)/2`
    Indefinite { a8: BigInt, b8: BigInt, eps8: f64 },
}

/// Everything needed to enumerate `S_f(X)` for a canonical `f`.
#[derive(Clone, Debug)]
pub struct Census {
    pub f: QuadForm<BigInt>,
    pub kind: QuadKind,
    pub x: i128,
    pub(crate) al: i128,
    pub(crate) be: i128,
    pub(crate) ga: i128,
    /// `disc(f)`
    pub(crate) d: i128,
    pub(crate) chart: Chart,
    rel: ([i128; 3], i128, [i128; 3], i128),
    pub domain: DomainCondition,
    /// `eps^4` (indefinite), used for box radii
    eps4: f64,
}

fn sqrt_f(x: f64) -> f64 {
    x.max(0.0).sqrt()
}

impl Census {
    pub fn new(f: &QuadForm<BigInt>, x: i64) -> Result<Census> {
        let red = reduce_quad(f)?;
        if &red.form != f {
            return Err(Error::NotCanonical);
        }
        if x < 0 {
            return Err(Error::Invalid("X must be nonnegative".into()));
        }
        let kind = quad_kind(f)?;
        let fi: QuadForm<i128> = f.map(cast_int);
        let chart = if kind == QuadKind::Reducible { Chart::Two } else { default_chart(&fi) };
        let rel = chart_relations(&fi, chart)?;
        let d = fi.disc();
        let xi = x as i128;
        let mut eps4 = 1.0;
        let domain = match kind {
            QuadKind::PositiveDefinite => DomainCondition::PosDef,
            QuadKind::Reducible => {
                let b2 = fi.b * fi.b;
                DomainCondition::Reducible { c_lo: Integer::div_ceil(&b2, &8), c_hi: Integer::div_floor(&(5 * b2 * xi), &18) }
            }
            QuadKind::Indefinite => {
                let e8 = unit_power(&f.disc(), 8)?;
                let two = BigInt::from(2);
                let a8 = (e8.a.clone() * num_rational::BigRational::from_integer(two.clone())).to_integer();
                let b8 = (e8.b.clone() * num_rational::BigRational::from_integer(two)).to_integer();
                let eps8 = e8.to_f64();
                eps4 = eps8.sqrt();
                DomainCondition::Indefinite { a8, b8, eps8 }
            }
            QuadKind::NegativeDefinite => return Err(Error::NotCanonical),
        };
        Ok(Census { f: f.clone(), kind, x: xi, al: fi.a, be: fi.b, ga: fi.c, d, chart, rel, domain, eps4 })
    }

    /// Completes chart coordinates to an integral quartic.
    pub(crate) fn complete(&self, abc: [i128; 3]) -> Option<[i128; 5]> {
        let (n1, d1, n2, d2) = &self.rel;
        let dot = |n: &[i128; 3]| n[0] * abc[0] + n[1] * abc[1] + n[2] * abc[2];
        let (p, q) = (dot(n1), dot(n2));
        if p % d1 != 0 || q % d2 != 0 {
            return None;
        }
        let (x, y) = (p / d1, q / d2);
        let [a, b, c] = abc;
        Some(match self.chart {
            Chart::One => [a, b, c, x, y],
            Chart::Two => [a, x, b, y, c],
        })
    }

    /// Builds the candidate for a completed quartic with known `L`; `None` if
    /// the height or the discriminant rule it out.
    fn finish(&self, c: [i128; 5], l: i128) -> Option<Cand> {
        let i = 12 * c[0] * c[4] - 3 * c[1] * c[3] + c[2] * c[2];
        let k = 3 * i - l * l;
        if k.abs() > self.x || l * l > self.x {
            return None;
        }
        if l * l + 4 * k == 0 || 2 * l * l == k {
            return None;
        }
        debug_assert_eq!(
            72 * c[0] * c[2] * c[4] + 9 * c[1] * c[2] * c[3]
                - 27 * c[0] * c[3] * c[3]
                - 27 * c[1] * c[1] * c[4]
                - 2 * c[2] * c[2] * c[2],
            l * k
        );
        Some(Cand { c, l, k })
    }

    /// Whether a candidate of `V_f^0(X)` lies in `S_f(X)`.
    pub fn in_domain(&self, cand: &Cand) -> bool {
        match &self.domain {
            DomainCondition::PosDef => true,
            DomainCondition::Reducible { c_lo, c_hi } => {
                let c = cand.c[4].abs();
                *c_lo <= c && c <= *c_hi
            }
            DomainCondition::Indefinite { a8, b8, eps8 } => self.indefinite_in(cand, a8, b8, *eps8),
        }
    }

    fn l1_l2(&self, c: &[i128; 5]) -> (i128, i128) {
        let (al, be, ga) = (self.al, self.be, self.ga);
        let (a, b, cc) = (c[0], c[1], c[2]);
        (4 * (be * be - al * ga) * a - 3 * al * be * b + 2 * al * al * cc, 2 * (2 * be * a - al * b))
    }

    fn indefinite_in(&self, cand: &Cand, a8: &BigInt, b8: &BigInt, eps8: f64) -> bool {
        let (l1, l2) = self.l1_l2(&cand.c);
        let (l, k) = (cand.l, cand.k);
        let n = l1 * l1 - self.d * l2 * l2;
        let p = l * l + 4 * k;
        debug_assert_eq!(9 * n, 4 * self.al.pow(4) * p);
        let sd = (self.d as f64).sqrt();
        let (l1f, l2f) = (l1 as f64, l2 as f64);
        let (mut e1, mut e2) = (l1f - sd * l2f, l1f + sd * l2f);
        if e1.abs() < e2.abs() {
            e1 = n as f64 / e2;
        } else {
            e2 = n as f64 / e1;
        }
        let r = e1 / e2;
        // i = 3 iff E2 > 0 on the negative-discriminant branches
        let si: i32 = if p > 0 { 0 } else if e2 > 0.0 { -1 } else { 1 };
        let w = if si == 0 {
            r
        } else {
            let (lf, s) = (l as f64, (2 * l * l - k) as f64);
            let sigma = si as f64 * 2.0 * s.sqrt();
            let z = if (3.0 * lf).signum() == sigma.signum() {
                (3.0 * lf + sigma).powi(2) / p as f64
            } else {
                p as f64 / (3.0 * lf - sigma).powi(2)
            };
            r * z
        };
        let tol = 1e-9;
        let lower = if w > 1.0 + tol {
            Ordering::Greater
        } else if w < 1.0 - tol {
            Ordering::Less
        } else {
            self.exact_cmp(l1, l2, n, cand, si, &BigInt::from(2), &BigInt::zero())
        };
        if lower == Ordering::Less {
            return false;
        }
        let upper = if w < eps8 * (1.0 - tol) {
            Ordering::Less
        } else if w > eps8 * (1.0 + tol) {
            Ordering::Greater
        } else {
            self.exact_cmp(l1, l2, n, cand, si, a8, b8)
        };
        upper == Ordering::Less
    }

    /// Sign of `E1 Z / E2 - c` with `2c = c2a + c2b sqrt D`.
    fn exact_cmp(&self, l1: i128, l2: i128, n: i128, cand: &Cand, si: i32, c2a: &BigInt, c2b: &BigInt) -> Ordering {
        let big = |v: i128| BigInt::from(v);
        let d = big(self.d);
        let q = |a: BigInt, b: BigInt| QuadFieldElem::new(a, b, d.clone());
        // 2 E1^2 and 2c N
        let e1sq2 = q(big(2 * (l1 * l1 + self.d * l2 * l2)), big(-4 * l1 * l2));
        let cn = q(c2a * big(n), c2b * big(n));
        if si == 0 {
            // E1/E2 - c = (E1^2 - cN)/N with N > 0
            return e1sq2.sub(&cn).sign();
        }
        // (w - c) has the sign of si * (X + Y sqrt S)
        let x = e1sq2.sub(&cn).scale(&big(3 * cand.l));
        let y = e1sq2.add(&cn).scale(&big(2 * si as i128));
        let s = big(2 * cand.l * cand.l - cand.k);
        let sg = sign_with_sqrt(&x, &y, &s);
        if si > 0 {
            sg
        } else {
            sg.reverse()
        }
    }

    /// Candidates in `V_f^0(X)` for one value of the outer loop variable,
    /// restricted to `S_f(X)` unless `wide`.
    pub(crate) fn slab(&self, outer: i128, wide: bool) -> Vec<Cand> {
        let mut out = Vec::new();
        match self.kind {
            QuadKind::Reducible => self.slab_reducible(outer, wide, &mut out),
            _ => self.slab_chart1(outer, wide, &mut out),
        }
        out
    }

    /// The outer loop range: `L` for charts with `alpha != 0`, `a0` for the
    /// reducible chart.
    pub(crate) fn outer_range(&self, wide: bool) -> Vec<i128> {
        match (&self.domain, wide) {
            (DomainCondition::Reducible { c_lo, c_hi }, false) => {
                (-*c_hi..=-*c_lo).chain(*c_lo..=*c_hi).collect()
            }
            (DomainCondition::Reducible { c_hi, .. }, true) => {
                let m = 2 * c_hi + self.be * self.be;
                (-m..=m).filter(|c| *c != 0).collect()
            }
            _ => {
                let s = isqrt(&self.x);
                (-s..=s).collect()
            }
        }
    }

    fn emax(&self, wide: bool) -> f64 {
        let al2 = (self.al * self.al) as f64;
        let base = 2.0 * al2 / 3.0 * (3.0 + 2.0 * 3f64.sqrt()) * (self.x as f64).sqrt() * self.eps4;
        if wide {
            base * self.eps4
        } else {
            base
        }
    }

    fn slab_chart1(&self, l: i128, wide: bool, out: &mut Vec<Cand>) {
        let (al, be, ga, d) = (self.al, self.be, self.ga, self.d);
        let a4 = al.pow(4);
        let hi9n = 4 * a4 * (l * l + 4 * self.x);
        let lo9n = 4 * a4 * (l * l - 4 * self.x);
        let definite = d < 0;
        let l1max = if definite { sqrt_f(hi9n as f64 / 9.0) } else { self.emax(wide) };
        let emax2 = self.emax(wide).powi(2);
        // L1 = 4 d A - 2 al^2 L
        let shift = 2 * al * al * l;
        let (a_lo, a_hi) = {
            let x1 = (-l1max + shift as f64) / (4 * d) as f64;
            let x2 = (l1max + shift as f64) / (4 * d) as f64;
            (x1.min(x2).floor() as i128 - 1, x1.max(x2).ceil() as i128 + 1)
        };
        for a in a_lo..=a_hi {
            let l1 = 4 * d * a - shift;
            if definite {
                if 9 * l1 * l1 > hi9n {
                    continue;
                }
            } else if (l1 as f64).abs() > l1max + 1.0 {
                continue;
            }
            // admissible |L2| range
            let (l2_lo, l2_hi) = if definite {
                (0.0, sqrt_f((hi9n - 9 * l1 * l1) as f64 / (9 * -d) as f64))
            } else {
                let lo = sqrt_f((9 * l1 * l1 - hi9n) as f64 / (9 * d) as f64);
                let hi = sqrt_f((9 * l1 * l1 - lo9n) as f64 / (9 * d) as f64).min(sqrt_f(emax2 / d as f64));
                (lo, hi)
            };
            if l2_hi + 1.0 < l2_lo {
                continue;
            }
            // L2 = 4 be A - 2 al B
            let c0 = 4 * be * a;
            let brange = |lo: f64, hi: f64| {
                let x1 = (c0 as f64 - hi) / (2 * al) as f64;
                let x2 = (c0 as f64 - lo) / (2 * al) as f64;
                (x1.floor() as i128 - 1, x2.ceil() as i128 + 1)
            };
            let mut ranges = if definite {
                vec![brange(-l2_hi, l2_hi)]
            } else {
                vec![brange(-l2_hi, -l2_lo), brange(l2_lo, l2_hi)]
            };
            // no B visited twice
            ranges.sort();
            if ranges.len() == 2 && ranges[1].0 <= ranges[0].1 {
                ranges = vec![(ranges[0].0, ranges[0].1.max(ranges[1].1))];
            }
            for (b_lo, b_hi) in ranges {
                for b in b_lo..=b_hi {
                    let l2 = c0 - 2 * al * b;
                    let n9 = 9 * (l1 * l1 - d * l2 * l2);
                    if n9 > hi9n || n9 < lo9n {
                        continue;
                    }
                    if !definite && ((l2 * l2 * d) as f64 > emax2 * (1.0 + 1e-12) + 1.0) {
                        continue;
                    }
                    let num = -2 * al * l - 12 * ga * a + 3 * be * b;
                    if num % (2 * al) != 0 {
                        continue;
                    }
                    let c = num / (2 * al);
                    let Some(q) = self.complete([a, b, c]) else { continue };
                    let Some(cand) = self.finish(q, l) else { continue };
                    if wide || self.in_domain(&cand) {
                        out.push(cand);
                    }
                }
            }
        }
    }

    fn slab_reducible(&self, c: i128, wide: bool, out: &mut Vec<Cand>) {
        let (al, be) = (self.al, self.be);
        let (a2, b2) = (al * al, be * be);
        let b4 = b2 * b2;
        let s = isqrt(&self.x);
        for l in -s..=s {
            // L = 2B - 12 al^2 C / be^2
            let num = l * b2 + 12 * a2 * c;
            if num % (2 * b2) != 0 {
                continue;
            }
            let b = num / (2 * b2);
            // be^4 K = k0 + 36 be^4 C A
            let k0 = -b4 * b * b + 144 * a2 * a2 * c * c - 24 * a2 * b2 * b * c;
            let slope = 36 * b4 * c;
            let lo = -self.x * b4 - k0;
            let hi = self.x * b4 - k0;
            let (a_lo, a_hi) = if slope > 0 {
                (Integer::div_ceil(&lo, &slope), Integer::div_floor(&hi, &slope))
            } else {
                (Integer::div_ceil(&hi, &slope), Integer::div_floor(&lo, &slope))
            };
            for a in a_lo..=a_hi {
                let Some(q) = self.complete([a, b, c]) else { continue };
                let Some(cand) = self.finish(q, l) else { continue };
                if wide || self.in_domain(&cand) {
                    out.push(cand);
                }
            }
        }
    }

    /// All candidates, slabs in parallel, in a deterministic order.
    pub fn candidates(&self, wide: bool) -> Vec<Cand> {
        self.outer_range(wide)
            .into_par_iter()
            .flat_map_iter(|o| self.slab(o, wide))
            .collect()
    }

    /// `(L, K)` for a quartic already known to lie in `V_{Z,f}`, by the
    /// chart closed forms.
    pub fn lk_of(&self, c: &[i128; 5]) -> (i128, i128) {
        let l = match self.kind {
            QuadKind::Reducible => {
                let b2 = self.be * self.be;
                (2 * b2 * c[2] - 12 * self.al * self.al * c[4]) / b2
            }
            _ => -(12 * self.ga * c[0] - 3 * self.be * c[1] + 2 * self.al * c[2]) / (2 * self.al),
        };
        let i = 12 * c[0] * c[4] - 3 * c[1] * c[3] + c[2] * c[2];
        (l, 3 * i - l * l)
    }

    /// Membership of an arbitrary quartic in `S_f(X)`.
    pub fn contains(&self, quartic: &QuarticForm<BigInt>) -> Result<bool> {
        if quartic.disc().is_zero() {
            return Err(Error::Degenerate);
        }
        if !crate::forms::is_stabilized_by(quartic, &self.f) {
            return Err(Error::NotStabilized);
        }
        let Some(c) = to_i128(quartic) else { return Ok(false) };
        let (l, k) = self.lk_of(&c);
        if l * l > self.x || k.abs() > self.x {
            return Ok(false);
        }
        Ok(self.in_domain(&Cand { c, l, k }))
    }
}

pub(crate) fn to_i128(q: &QuarticForm<BigInt>) -> Option<[i128; 5]> {
    let c = q.coeffs();
    let v: Vec<i128> = c.iter().filter_map(|x| x.to_i128()).collect();
    (v.len() == 5 && c.iter().all(|x| x.abs() < BigInt::from(1u64 << 40))).then(|| [v[0], v[1], v[2], v[3], v[4]])
}

/// `F in S_f(X)` for a canonical `f`.
pub fn in_s(f: &QuadForm<BigInt>, quartic: &QuarticForm<BigInt>, x: i64) -> Result<bool> {
    Census::new(f, x)?.contains(quartic)
}

/// `S_f(X) cap V_{Z,f}^0`, each form once.
pub fn enumerate_s(f: &QuadForm<BigInt>, x: i64) -> Result<Vec<QuarticForm<BigInt>>> {
    Ok(Census::new(f, x)?.candidates(false).iter().map(Cand::quartic).collect())
}
