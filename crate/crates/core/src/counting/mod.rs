//! Counting GL_2(Z)-classes of quartics stabilized by a fixed quadratic form,
//! split by Galois group, against the predicted main terms.

mod domain;
mod equiv;

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

pub use domain::{enumerate_s, in_s, Cand, Census, DomainCondition};
pub use equiv::{class_labels, orbit_members_in_s, quartic_equivalent};

use crate::error::{Error, Result};
use crate::forms::{QuadForm, QuarticForm};
use crate::galois::{is_irreducible_fast, reducibility_type};
use crate::quadarith::{fundamental_t, r_f, QuadKind};
use crate::quadlattice::s_factor;
use crate::scalar::is_square;

/// Largest `X` accepted by `brute_force_classes`.
pub const BRUTE_FORCE_CAP: i64 = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FormClass {
    D4,
    C4,
    V4,
    Red1,
    Red2,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassCountReport {
    pub f: [i64; 3],
    #[serde(rename = "X")]
    pub x: i64,
    pub raw: u64,
    pub raw_d4: u64,
    pub raw_c4: u64,
    pub raw_v4: u64,
    #[serde(rename = "N_D4")]
    pub n_d4: u64,
    #[serde(rename = "N_C4")]
    pub n_c4: u64,
    #[serde(rename = "N_V4")]
    pub n_v4: u64,
    /// raw number of reducible forms of type 1
    pub red1: u64,
    pub red2: u64,
    pub main_term: f64,
    pub r_f: u32,
    pub s_f: u32,
    pub elapsed_ms: u64,
}

impl ClassCountReport {
    pub const CSV_HEADER: &'static str =
        "f_alpha,f_beta,f_gamma,X,raw,N_D4,N_C4,N_V4,red1,red2,main_term,r_f,s_f,elapsed_ms";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{:.5e},{},{},{}",
            self.f[0],
            self.f[1],
            self.f[2],
            self.x,
            self.raw,
            self.n_d4,
            self.n_c4,
            self.n_v4,
            self.red1,
            self.red2,
            self.main_term,
            self.r_f,
            self.s_f,
            self.elapsed_ms
        )
    }

    /// `N_D4 / main_term`.
    pub fn ratio(&self) -> f64 {
        self.n_d4 as f64 / self.main_term
    }
}

/// Class of a form in `V_{Z,f}^0` from `(L, K)` plus an irreducibility test.
pub fn form_class(census: &Census, cand: &Cand) -> Result<FormClass> {
    let (l, k) = (cand.l, cand.k);
    let p = l * l + 4 * k;
    let galois = if is_square(&p) {
        FormClass::V4
    } else {
        let pqd = p * (2 * l * l - k) * census.d;
        if is_square(&pqd) {
            FormClass::C4
        } else {
            FormClass::D4
        }
    };
    if is_irreducible_fast(&cand.c) {
        return Ok(galois);
    }
    let t = reducibility_type(&census.f, &cand.quartic())?;
    Ok(if t.index() == 1 { FormClass::Red1 } else { FormClass::Red2 })
}

#[derive(Clone, Debug, Default)]
struct Tally {
    raw: u64,
    d4: u64,
    c4: u64,
    v4: u64,
    red1: u64,
    red2: u64,
    v4_forms: Vec<Cand>,
}

impl Tally {
    fn add(&mut self, cls: FormClass, cand: &Cand) {
        self.raw += 1;
        match cls {
            FormClass::D4 => self.d4 += 1,
            FormClass::C4 => self.c4 += 1,
            FormClass::V4 => {
                self.v4 += 1;
                self.v4_forms.push(*cand);
            }
            FormClass::Red1 => self.red1 += 1,
            FormClass::Red2 => self.red2 += 1,
        }
    }

    fn merge(mut self, o: Tally) -> Tally {
        self.raw += o.raw;
        self.d4 += o.d4;
        self.c4 += o.c4;
        self.v4 += o.v4;
        self.red1 += o.red1;
        self.red2 += o.red2;
        self.v4_forms.extend(o.v4_forms);
        self
    }
}

fn small_f(f: &QuadForm<BigInt>) -> [i64; 3] {
    [f.a.to_i64().unwrap(), f.b.to_i64().unwrap(), f.c.to_i64().unwrap()]
}

fn exact_div(n: u64, r: u32, what: &str) -> Result<u64> {
    if n % r as u64 != 0 {
        return Err(Error::Invalid(format!("raw {what} count {n} is not divisible by r_f = {r}")));
    }
    Ok(n / r as u64)
}

/// Classes in `S_f(X)` by Galois group; `f` canonical and primitive.
pub fn count_classes(f: &QuadForm<BigInt>, x: i64) -> Result<ClassCountReport> {
    let start = Instant::now();
    let census = Census::new(f, x)?;
    let tally = census
        .outer_range(false)
        .into_par_iter()
        .map(|o| -> Result<Tally> {
            let mut t = Tally::default();
            for cand in census.slab(o, false) {
                t.add(form_class(&census, &cand)?, &cand);
            }
            Ok(t)
        })
        .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))?;
    let r = r_f(f)?;
    let v4: Vec<QuarticForm<BigInt>> = tally.v4_forms.iter().map(Cand::quartic).collect();
    let labels = class_labels(&v4)?;
    let n_v4 = labels.iter().enumerate().filter(|(i, l)| *i == **l).count() as u64;
    Ok(ClassCountReport {
        f: small_f(f),
        x,
        raw: tally.raw,
        raw_d4: tally.d4,
        raw_c4: tally.c4,
        raw_v4: tally.v4,
        n_d4: exact_div(tally.d4, r, "D4")?,
        n_c4: exact_div(tally.c4, r, "C4")?,
        n_v4,
        red1: tally.red1,
        red2: tally.red2,
        main_term: main_term(f, x as f64)?,
        r_f: r,
        s_f: s_factor(f).to_u32().unwrap(),
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// Ground truth for small `X`: every form of `V_{Z,f}^0(X)` in a box much
/// larger than `S_f(X)`, split into classes by explicit equivalence.
pub fn brute_force_classes(f: &QuadForm<BigInt>, x: i64) -> Result<ClassCountReport> {
    if x > BRUTE_FORCE_CAP {
        return Err(Error::Invalid(format!("X = {x} exceeds the brute-force cap {BRUTE_FORCE_CAP}")));
    }
    let start = Instant::now();
    let census = Census::new(f, x)?;
    let cands = census.candidates(true);
    let mut classes = Vec::with_capacity(cands.len());
    for c in &cands {
        // the enumeration's (L, K) must agree with the resolvent
        let q = c.quartic();
        let (l, k) = crate::resolvent::lk_invariants(f, &q)?;
        if l != BigInt::from(c.l) || k != BigInt::from(c.k) {
            return Err(Error::Invalid(format!("(L, K) mismatch at {q}: {c:?} vs {l} {k}")));
        }
        classes.push(form_class(&census, c)?);
    }
    let forms: Vec<QuarticForm<BigInt>> = cands.iter().map(Cand::quartic).collect();
    let labels = class_labels(&forms)?;
    let mut rep = Tally::default();
    for (i, l) in labels.iter().enumerate() {
        if i == *l {
            rep.add(classes[i], &cands[i]);
        }
    }
    let raw_of = |c: FormClass| classes.iter().filter(|x| **x == c).count() as u64;
    Ok(ClassCountReport {
        f: small_f(f),
        x,
        raw: cands.len() as u64,
        raw_d4: raw_of(FormClass::D4),
        raw_c4: raw_of(FormClass::C4),
        raw_v4: raw_of(FormClass::V4),
        n_d4: rep.d4,
        n_c4: rep.c4,
        n_v4: rep.v4,
        red1: rep.red1,
        red2: rep.red2,
        main_term: main_term(f, x as f64)?,
        r_f: r_f(f)?,
        s_f: s_factor(f).to_u32().unwrap(),
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// Leading term of the class count for a canonical primitive `f`.
pub fn main_term(f: &QuadForm<BigInt>, x: f64) -> Result<f64> {
    let kind = crate::quadarith::quad_kind(f)?;
    let s = s_factor(f).to_f64().unwrap();
    let r = r_f(f)? as f64;
    let d = f.disc().to_f64().unwrap().abs();
    let x32 = x.powf(1.5);
    Ok(match kind {
        QuadKind::PositiveDefinite | QuadKind::NegativeDefinite => {
            13.0 * std::f64::consts::PI / (27.0 * s * r * d.powf(1.5)) * x32
        }
        QuadKind::Reducible => {
            let beta = f.b.to_f64().unwrap().abs();
            8.0 / (9.0 * s * r * beta.powf(1.5)) * x32 * x.ln()
        }
        QuadKind::Indefinite => {
            let t = fundamental_t(&f.disc())?;
            32.0 * t / (9.0 * s * r * d.powf(1.5)) * x32
        }
    })
}

/// The three forms whose counts add up to the census of all small-Galois
/// classes with a rational stabilizer of discriminant `-4, 1, 4`.
pub fn census_forms() -> [QuadForm<BigInt>; 3] {
    [QuadForm::from_i64(1, 0, 1), QuadForm::from_i64(1, 1, 0), QuadForm::from_i64(1, 2, 0)]
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    #[serde(rename = "X")]
    pub x: i64,
    pub reports: Vec<ClassCountReport>,
    /// sum of `N_D4 + N_C4`
    pub total: u64,
    /// `X^{3/2} log X / 9`
    pub predicted: f64,
}

pub fn corollary_prediction(x: f64) -> f64 {
    x.powf(1.5) * x.ln() / 9.0
}

pub fn corollary_census(x: i64) -> Result<CensusReport> {
    let reports = census_forms().iter().map(|f| count_classes(f, x)).collect::<Result<Vec<_>>>()?;
    let total = reports.iter().map(|r| r.n_d4 + r.n_c4).sum();
    Ok(CensusReport { x, reports, total, predicted: corollary_prediction(x as f64) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64, c: i64) -> QuadForm<BigInt> {
        QuadForm::from_i64(a, b, c)
    }

    #[test]
    fn main_term_examples() {
        let x = 1000.0;
        let m = main_term(&q(1, 0, 1), x).unwrap();
        assert!((m - 13.0 * std::f64::consts::PI / 432.0 * x.powf(1.5)).abs() < 1e-9 * m);
        let m = main_term(&q(1, 1, 0), x).unwrap();
        assert!((m - x.powf(1.5) * x.ln() / 18.0).abs() < 1e-9 * m);
        let t5 = ((1.0 + 5f64.sqrt()) / 2.0).ln();
        let m = main_term(&q(1, 1, -1), x).unwrap();
        assert!((m - 2.0 * t5 / (9.0 * 5f64.powf(1.5)) * x.powf(1.5)).abs() < 1e-9 * m);
        let e = std::f64::consts::E;
        assert!((corollary_prediction(e * e) - e.powi(3) * 2.0 / 9.0).abs() < 1e-12);
    }

    #[test]
    fn membership_examples() {
        let f = q(1, 0, 1);
        let x4y4 = QuarticForm::from_i64([1, 0, 0, 0, 1]);
        assert!(in_s(&f, &x4y4, 36).unwrap());
        assert!(!in_s(&f, &x4y4, 35).unwrap());
        assert!(enumerate_s(&f, 36).unwrap().contains(&x4y4));
        assert!(enumerate_s(&f, 0).unwrap().is_empty());
        // y^4 coefficient 0 is below the window for x^2 + xy
        let g = q(1, 1, 0);
        let h = crate::quadlattice::complete_integral(&g, crate::Chart::Two, &[1.into(), 1.into(), 0.into()])
            .unwrap()
            .unwrap();
        assert!(!matches!(in_s(&g, &h, 100), Ok(true)));
    }

    #[test]
    fn empty_census() {
        let r = count_classes(&q(1, 0, 1), 0).unwrap();
        assert_eq!((r.raw, r.n_d4, r.n_c4, r.n_v4), (0, 0, 0, 0));
    }

    #[test]
    fn csv_shape() {
        let r = count_classes(&q(1, 0, 1), 50).unwrap();
        assert_eq!(r.csv_row().split(',').count(), ClassCountReport::CSV_HEADER.split(',').count());
    }
}
