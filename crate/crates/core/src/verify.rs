//! Self-checks against exhaustive or independent oracles. Each suite returns
//! a `SuiteReport`; the CLI `verify` command and the acceptance tests share
//! them.

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::counting::{
    brute_force_classes, count_classes, enumerate_s, main_term, orbit_members_in_s, Census,
    ClassCountReport,
};
use crate::error::{Error, Result};
use crate::factor::is_irreducible_quartic;
use crate::forms::{QuadForm, QuarticForm};
use crate::galois::{classify, frobenius_oracle, GaloisClass, ProbableClass};
use crate::params::{jacobian_det, round_trip, Branch, ParamPoint};
use crate::quadarith::{
    negative_pell_criterion, orthogonal_bruteforce, orthogonal_group_any, pell_bruteforce,
    pell_least, quad_kind, r_f, reduce_quad, unit_power, QuadKind,
};
use crate::quadlattice::{
    chart_valid, complete_integral, default_chart, explicit_lk_int, lattice_basis, lattice_det,
    predicted_det, Chart,
};
use crate::resolvent::{height, lk_invariants};
use crate::scalar::is_square;

pub const SUITES: [&str; 10] = [
    "identities",
    "determinants",
    "pell",
    "orthogonal",
    "galois",
    "multiplicity",
    "census",
    "asymptotic",
    "negpell",
    "params",
];

const MAX_COUNTEREXAMPLES: usize = 20;

/// Scale knobs. `None` means the suite default.
#[derive(Clone, Debug, Default)]
pub struct VerifyConfig {
    pub seed: u64,
    pub dmax: Option<u64>,
    pub x: Option<i64>,
    pub f: Option<[i64; 3]>,
    pub samples: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: u64,
    pub failures: u64,
    pub summary: String,
    pub counterexamples: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub reports: Vec<ClassCountReport>,
    pub elapsed_ms: u64,
}

/// Running tally of checks with the first few counterexamples.
#[derive(Default)]
pub struct Checks {
    checks: u64,
    failures: u64,
    bad: Vec<String>,
}

impl Checks {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn failures(&self) -> u64 {
        self.failures
    }

    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.bad.len() < MAX_COUNTEREXAMPLES {
                self.bad.push(what());
            }
        }
    }

    pub fn absorb(&mut self, o: Checks) {
        self.checks += o.checks;
        self.failures += o.failures;
        for b in o.bad {
            if self.bad.len() < MAX_COUNTEREXAMPLES {
                self.bad.push(b);
            }
        }
    }

    pub fn finish(self, suite: &str, summary: String, start: Instant) -> SuiteReport {
        SuiteReport {
            suite: suite.to_string(),
            passed: self.failures == 0,
            checks: self.checks,
            failures: self.failures,
            summary,
            counterexamples: self.bad,
            reports: Vec::new(),
            elapsed_ms: start.elapsed().as_millis() as u64,
        }
    }
}

pub fn run_suite(name: &str, cfg: &VerifyConfig) -> Result<SuiteReport> {
    match name {
        "identities" => identities(cfg),
        "determinants" => determinants(cfg),
        "pell" => pell(cfg),
        "orthogonal" => orthogonal(cfg),
        "galois" => galois(cfg),
        "multiplicity" => multiplicity(cfg),
        "census" => census(cfg),
        "asymptotic" => asymptotic(cfg),
        "negpell" => negpell(cfg),
        "params" => params(cfg),
        _ => Err(Error::Invalid(format!("unknown suite {name}"))),
    }
}

fn q(a: i64, b: i64, c: i64) -> QuadForm<BigInt> {
    QuadForm::from_i64(a, b, c)
}

fn q3(f: [i64; 3]) -> QuadForm<BigInt> {
    q(f[0], f[1], f[2])
}

/// Random primitive form of the requested kind with coefficients in
/// `[-bound, bound]`.
pub fn random_form(rng: &mut impl Rng, kind: QuadKind, bound: i64) -> QuadForm<BigInt> {
    loop {
        let f = q(
            rng.gen_range(-bound..=bound),
            rng.gen_range(-bound..=bound),
            rng.gen_range(-bound..=bound),
        );
        if f.disc().is_zero() || !f.is_primitive() {
            continue;
        }
        let Ok(k) = quad_kind(&f) else { continue };
        let want = match kind {
            QuadKind::NegativeDefinite => QuadKind::PositiveDefinite,
            other => other,
        };
        let got = match k {
            QuadKind::NegativeDefinite => QuadKind::PositiveDefinite,
            other => other,
        };
        if got == want {
            return f;
        }
    }
}

const KINDS: [QuadKind; 3] = [QuadKind::PositiveDefinite, QuadKind::Indefinite, QuadKind::Reducible];

/// A random point of `V_{Z,f}` in chart `w`, as a combination of the
/// lattice basis with coefficients in `[-r, r]`.
fn random_lattice_quartic(
    rng: &mut impl Rng,
    f: &QuadForm<BigInt>,
    w: Chart,
    r: i64,
) -> Result<QuarticForm<BigInt>> {
    let basis = lattice_basis(f, w)?;
    let mut abc = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
    for row in &basis {
        let k = BigInt::from(rng.gen_range(-r..=r));
        for i in 0..3 {
            abc[i] += &k * &row[i];
        }
    }
    complete_integral(f, w, &abc)?
        .ok_or_else(|| Error::Invalid(format!("basis combination {abc:?} left the lattice of {f}")))
}

// ---------- identities ----------

fn identities(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let start = Instant::now();
    let per_form = cfg.samples.unwrap_or(450);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let forms: Vec<(QuadForm<BigInt>, Chart, u64)> = (0..24)
        .map(|i| {
            let f = random_form(&mut rng, KINDS[i % 3], 7);
            let w = if i % 2 == 1 && chart_valid(&f, Chart::Two) { Chart::Two } else { default_chart(&f) };
            (f, w, rng.gen())
        })
        .collect();
    let accs: Vec<Result<Checks>> = forms
        .par_iter()
        .map(|(f, w, seed)| {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut acc = Checks::new();
            let mut done = 0;
            while done < per_form {
                let big = random_lattice_quartic(&mut rng, f, *w, 4)?;
                if big.disc().is_zero() {
                    continue;
                }
                done += 1;
                check_identities(&mut acc, f, &big);
            }
            Ok(acc)
        })
        .collect();
    let mut acc = Checks::new();
    for a in accs {
        acc.absorb(a?);
    }
    let summary = format!("{} forms, {} lattice points each", forms.len(), per_form);
    Ok(acc.finish("identities", summary, start))
}

fn check_identities(acc: &mut Checks, f: &QuadForm<BigInt>, big: &QuarticForm<BigInt>) {
    let Ok((l, k)) = explicit_lk_int(f, big) else {
        acc.check(false, || format!("(L, K) not integral for {big} over {f}"));
        return;
    };
    acc.check(true, String::new);
    let res = lk_invariants(f, big);
    acc.check(res.as_ref().ok() == Some(&(l.clone(), k.clone())), || {
        format!("resolvent (L, K) {res:?} differs from ({l}, {k}) for {big} over {f}")
    });
    let (i, j) = (big.invariant_i(), big.invariant_j());
    acc.check(BigInt::from(3) * &i == &l * &l + &k, || format!("3I != L^2 + K for {big}"));
    acc.check(j == &l * &k, || format!("J != LK for {big}"));
    let p = &l * &l + BigInt::from(4) * &k;
    let s = BigInt::from(2) * &l * &l - &k;
    acc.check(BigInt::from(729) * big.disc() == p * &s * &s, || {
        format!("disc factorization fails for {big}")
    });
    let h = height(&l, &k);
    let h3 = &h * &h * &h;
    let bs4 = big.bs_height_times4();
    acc.check(BigInt::from(4) * &h3 <= BigInt::from(1000) * &bs4 && bs4 <= BigInt::from(4) * &h3, || {
        format!("height comparison fails for {big}: H_f = {h}, 4 H_BS = {bs4}")
    });
}

// ---------- determinants ----------

fn determinants(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let start = Instant::now();
    let bound = cfg.x.unwrap_or(20);
    let accs: Vec<Checks> = (-bound..=bound)
        .into_par_iter()
        .map(|a| {
            let mut acc = Checks::new();
            for b in -bound..=bound {
                for c in -bound..=bound {
                    let f = QuadForm::new(a as i128, b as i128, c as i128);
                    if !f.is_primitive() || f.disc() == 0 {
                        continue;
                    }
                    for w in [Chart::One, Chart::Two] {
                        if !chart_valid(&f, w) {
                            continue;
                        }
                        let got = lattice_det(&f, w).map(Ratio::from_integer);
                        let want = predicted_det(&f, w);
                        acc.check(matches!((&got, &want), (Ok(x), Ok(y)) if x == y), || {
                            format!("{f} chart {}: det {got:?}, predicted {want:?}", w.index())
                        });
                    }
                }
            }
            acc
        })
        .collect();
    let mut acc = Checks::new();
    for a in accs {
        acc.absorb(a);
    }
    let summary = format!("primitive f with |coefficients| <= {bound}, both charts");
    Ok(acc.finish("determinants", summary, start))
}

// ---------- pell ----------

/// Exhaustive search bound for the Pell comparison; fundamental solutions
/// beyond it are only checked to be absent below it.
pub const PELL_VMAX: u64 = 20_000;

fn pell(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let start = Instant::now();
    let dmax = cfg.dmax.unwrap_or(2000);
    let ds: Vec<u64> = (2..=dmax).filter(|d| !is_square(&BigInt::from(*d))).collect();
    let accs: Vec<Result<Checks>> = ds
        .par_iter()
        .map(|&d| {
            let mut acc = Checks::new();
            let db = BigInt::from(d);
            let sol = pell_least(&db)?;
            let norm = &sol.u * &sol.u - &db * &sol.v * &sol.v;
            acc.check(norm == BigInt::from(sol.sign) && sol.u.is_positive() && sol.v.is_positive(), || {
                format!("D = {d}: ({}, {}) is not a positive solution of norm {}", sol.u, sol.v, sol.sign)
            });
            match sol.v.to_u64().filter(|v| *v <= PELL_VMAX) {
                Some(v) => {
                    let bf = pell_bruteforce(d, v);
                    let want = Some((sol.u.to_u128().unwrap(), v as u128, sol.sign));
                    acc.check(bf == want, || format!("D = {d}: search {bf:?}, solver {want:?}"));
                }
                None => {
                    let bf = pell_bruteforce(d, PELL_VMAX);
                    acc.check(bf.is_none(), || format!("D = {d}: search found {bf:?} below the solver's v"));
                }
            }
            Ok(acc)
        })
        .collect();
    let mut acc = Checks::new();
    for a in accs {
        acc.absorb(a?);
    }
    // unit_power is a homomorphism
    for d in ds.iter().step_by(41) {
        let db = BigInt::from(*d);
        let pows: Vec<_> = (-6..=6).map(|n| unit_power(&db, n)).collect::<Result<_>>()?;
        for m in -3..=3i64 {
            for n in -3..=3i64 {
                let lhs = pows[(m + 6) as usize].mul(&pows[(n + 6) as usize]);
                let rhs = &pows[(m + n + 6) as usize];
                acc.check(lhs == *rhs, || format!("D = {d}: eps^{m} eps^{n} != eps^{}", m + n));
            }
        }
    }
    let summary = format!("nonsquare D <= {dmax}, exhaustive search to v = {PELL_VMAX}");
    Ok(acc.finish("pell", summary, start))
}

// ---------- orthogonal ----------

/// The named families plus random forms, as in the group-structure
/// propositions.
pub fn orthogonal_families(rng: &mut impl Rng, random: usize) -> Vec<QuadForm<BigInt>> {
    let mut out = vec![q(1, 0, 1), q(1, 1, 1), q(1, 1, 0), q(1, 2, 0)];
    for a in 1..=6i64 {
        for c in -6..=6i64 {
            if c != 0 && a.gcd(&c) == 1 && (c > 0 || !is_square(&BigInt::from(-4 * a * c))) {
                out.push(q(a, 0, c));
            }
        }
    }
    for a in 1..=6i64 {
        for b in -12..=12i64 {
            if a.gcd(&b) == 1 && b * b != 4 * a * a {
                out.push(q(a, b, a));
            }
        }
    }
    for a in -4..=4i64 {
        for b in -4..=4i64 {
            for c in -4..=4i64 {
                let f = q(a, b, c);
                let d = b * b - 4 * a * c;
                if d > 0 && f.is_primitive() && !is_square(&BigInt::from(d)) {
                    out.push(f);
                }
            }
        }
    }
    for i in 0..random {
        out.push(random_form(rng, KINDS[i % 3], 9));
    }
    out
}

/// Group elements with entries at most `bound`.
fn bounded_elements(f: &QuadForm<BigInt>, bound: i64) -> Result<BTreeSet<[BigInt; 4]>> {
    let g = orthogonal_group_any(f)?;
    let b = BigInt::from(bound);
    let mut out = BTreeSet::new();
    for c in &g.finite_elements {
        if c.max_abs() <= b {
            out.insert(c.entries());
        }
        let Some(t) = &g.infinite_generator else { continue };
        // entries of c T^n grow geometrically in |n| past their minimum
        let cap = c.max_abs().max(b.clone()) * BigInt::from(1_000_000);
        for step in [t.clone(), t.inverse()?] {
            let mut m = c.clone();
            for _ in 0..500 {
                m = m.mul(&step);
                let size = m.max_abs();
                if size > cap {
                    break;
                }
                if size <= b {
                    out.insert(m.entries());
                }
            }
        }
    }
    Ok(out)
}

fn orthogonal(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let forms = orthogonal_families(&mut rng, cfg.samples.unwrap_or(200));
    let bound = cfg.x.unwrap_or(30);
    let accs: Vec<Result<Checks>> = forms
        .par_iter()
        .map(|f| {
            let mut acc = Checks::new();
            let ours = bounded_elements(f, bound)?;
            let bf: BTreeSet<[BigInt; 4]> =
                orthogonal_bruteforce(f, bound).into_iter().map(|m| m.entries()).collect();
            acc.check(ours == bf, || {
                format!("{f}: {} elements vs {} by search (entries <= {bound})", ours.len(), bf.len())
            });
            Ok(acc)
        })
        .collect();
    let mut acc = Checks::new();
    for a in accs {
        acc.absorb(a?);
    }
    for (f, want) in [(q(1, 1, 1), 6), (q(1, 0, 1), 2), (q(1, 1, 0), 2), (q(1, 2, 0), 2)] {
        let got = r_f(&f)?;
        acc.check(got == want, || format!("r_f({f}) = {got}, expected {want}"));
    }
    let summary = format!("{} forms, entries <= {bound}", forms.len());
    Ok(acc.finish("orthogonal", summary, start))
}

// ---------- galois ----------

/// Random irreducible quartics stabilized by random canonical forms.
pub fn random_stabilized(rng: &mut impl Rng, n: usize) -> Result<Vec<(QuadForm<BigInt>, QuarticForm<BigInt>)>> {
    let mut out = Vec::with_capacity(n);
    let mut i = 0usize;
    while out.len() < n {
        i += 1;
        let f = reduce_quad(&random_form(rng, KINDS[i % 3], 5))?.form;
        let big = random_lattice_quartic(rng, &f, default_chart(&f), 3)?;
        if big.disc().is_zero() || big.content() != BigInt::from(1) || !is_irreducible_quartic(&big) {
            continue;
        }
        out.push((f, big));
    }
    Ok(out)
}

fn galois(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = cfg.samples.unwrap_or(500);
    let mut acc = Checks::new();
    for (c, want) in [
        ([1, 0, 0, 0, 1], GaloisClass::V4),
        ([1, 1, 1, 1, 1], GaloisClass::C4),
        ([1, 0, 0, 0, -2], GaloisClass::D4),
    ] {
        let got = classify(&QuarticForm::<BigInt>::from_i64(c))?;
        acc.check(got == want, || format!("classify({c:?}) = {got}, expected {want}"));
    }
    let forms = random_stabilized(&mut rng, n)?;
    let rows: Vec<Result<(GaloisClass, ProbableClass, String)>> = forms
        .par_iter()
        .map(|(_, big)| {
            let c = classify(big)?;
            let o = frobenius_oracle(big, 25)?;
            Ok((c, o.probable, big.to_string()))
        })
        .collect();
    let mut inconclusive = 0;
    let mut tally = [0usize; 3];
    for r in rows {
        let (c, o, s) = r?;
        let want = match o {
            ProbableClass::D4 => GaloisClass::D4,
            ProbableClass::C4 => GaloisClass::C4,
            ProbableClass::V4 => GaloisClass::V4,
            ProbableClass::Inconclusive => {
                inconclusive += 1;
                continue;
            }
        };
        match c {
            GaloisClass::D4 => tally[0] += 1,
            GaloisClass::C4 => tally[1] += 1,
            GaloisClass::V4 => tally[2] += 1,
            _ => {}
        }
        acc.check(c == want, || format!("{s}: classify {c}, oracle {want}"));
    }
    let summary = format!(
        "{n} forms: D4 {}, C4 {}, V4 {}, oracle inconclusive {inconclusive}",
        tally[0], tally[1], tally[2]
    );
    Ok(acc.finish("galois", summary, start))
}

// ---------- multiplicity ----------

fn cfg_forms(cfg: &VerifyConfig) -> Vec<QuadForm<BigInt>> {
    match cfg.f {
        Some(f) => vec![q3(f)],
        None => vec![q(1, 0, 1), q(1, 1, 0), q(1, 1, -1)],
    }
}

fn multiplicity(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let start = Instant::now();
    let x = cfg.x.unwrap_or(500);
    let samples = cfg.samples.unwrap_or(400);
    let mut acc = Checks::new();
    let mut sampled = Vec::new();
    for f in cfg_forms(cfg) {
        let rep = count_classes(&f, x)?;
        let r = rep.r_f as u64;
        acc.check(rep.raw_d4 % r == 0 && rep.raw_c4 % r == 0, || {
            format!("{f}: raw D4 {} / C4 {} not divisible by {r}", rep.raw_d4, rep.raw_c4)
        });
        let census = Census::new(&f, x)?;
        let forms: Vec<_> = enumerate_s(&f, x)?
            .into_iter()
            .filter(|g| !is_square(&g.disc()))
            .collect();
        let step = (forms.len() / samples).max(1);
        let picked: Vec<_> = forms.iter().step_by(step).collect();
        sampled.push(picked.len());
        let results: Vec<Result<(usize, String)>> = picked
            .par_iter()
            .map(|g| Ok((orbit_members_in_s(&census, g, 4)?, g.to_string())))
            .collect();
        for res in results {
            let (n, g) = res?;
            acc.check(n as u64 == r, || format!("{f}: {g} has {n} copies in S, expected {r}"));
        }
    }
    let summary = format!("X = {x}, sampled {sampled:?} non-square-disc forms");
    Ok(acc.finish("multiplicity", summary, start))
}

// ---------- census ----------

fn census(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let start = Instant::now();
    let xs = match cfg.x {
        Some(x) => vec![x],
        None => vec![100, 150, 200],
    };
    let mut acc = Checks::new();
    let mut reports = Vec::new();
    for f in cfg_forms(cfg) {
        for &x in &xs {
            let a = count_classes(&f, x)?;
            let b = brute_force_classes(&f, x)?;
            acc.check((a.n_d4, a.n_c4, a.n_v4) == (b.n_d4, b.n_c4, b.n_v4), || {
                format!(
                    "{f}, X = {x}: domain ({}, {}, {}) vs brute force ({}, {}, {})",
                    a.n_d4, a.n_c4, a.n_v4, b.n_d4, b.n_c4, b.n_v4
                )
            });
            reports.push(a);
        }
    }
    let summary = format!("X in {xs:?}");
    let mut rep = acc.finish("census", summary, start);
    rep.reports = reports;
    Ok(rep)
}

// ---------- asymptotic ----------

/// Tolerance of the asymptotic comparisons.
pub const ASYMPTOTIC_TOL: f64 = 0.25;

/// Least-squares slope of `N_D4 / X^{3/2}` against `log X`.
pub fn log_slope(reports: &[ClassCountReport]) -> f64 {
    let pts: Vec<(f64, f64)> = reports
        .iter()
        .map(|r| {
            let x = r.x as f64;
            (x.ln(), r.n_d4 as f64 / x.powf(1.5))
        })
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

/// Judge one form from its reports (increasing `X`). Definite and indefinite:
/// the last ratio within tolerance, and for definite `f` closer than the
/// first. Reducible: fitted log slope within tolerance of `main/(X^{3/2} log X)`.
pub fn judge_asymptotic(acc: &mut Checks, f: &QuadForm<BigInt>, reports: &[ClassCountReport]) -> Result<String> {
    let last = reports.last().ok_or_else(|| Error::Invalid("no reports".into()))?;
    let tol = ASYMPTOTIC_TOL;
    match quad_kind(f)? {
        QuadKind::Reducible => {
            let x = last.x as f64;
            let coef = main_term(f, x)? / (x.powf(1.5) * x.ln());
            let slope = log_slope(reports);
            let rel = (slope - coef).abs() / coef;
            acc.check(reports.len() >= 2 && rel <= tol, || {
                format!("{f}: log slope {slope:.6} vs {coef:.6} (off by {:.1}%)", 100.0 * rel)
            });
            Ok(format!("{f}: log slope {slope:.6} vs {coef:.6}"))
        }
        kind => {
            let dev = |r: &ClassCountReport| (r.ratio() - 1.0).abs();
            acc.check(dev(last) <= tol, || {
                format!("{f}, X = {}: N_D4/main {:.6}", last.x, last.ratio())
            });
            if kind != QuadKind::Indefinite && reports.len() >= 2 {
                let first = &reports[0];
                acc.check(dev(last) < dev(first), || {
                    format!("{f}: ratio {:.6} at X = {} not closer than {:.6} at X = {}", last.ratio(), last.x, first.ratio(), first.x)
                });
            }
            Ok(format!(
                "{f}: {}",
                reports.iter().map(|r| format!("X = {} ratio {:.6}", r.x, r.ratio())).collect::<Vec<_>>().join(", ")
            ))
        }
    }
}

/// `X` values per form for the default asymptotic run.
pub fn asymptotic_plan() -> Vec<([i64; 3], Vec<i64>)> {
    vec![
        ([1, 0, 1], vec![10_000, 40_000]),
        ([1, 1, 0], vec![10_000, 20_000, 40_000]),
        ([1, 1, -1], vec![10_000, 40_000]),
    ]
}

fn asymptotic(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let start = Instant::now();
    let plan = match (cfg.f, cfg.x) {
        (None, None) => asymptotic_plan(),
        (f, x) => {
            let x = x.unwrap_or(40_000);
            let xs = vec![x / 4, x / 2, x];
            match f {
                Some(f) => vec![(f, xs)],
                None => asymptotic_plan().into_iter().map(|(f, _)| (f, xs.clone())).collect(),
            }
        }
    };
    let mut acc = Checks::new();
    let mut lines = Vec::new();
    let mut all = Vec::new();
    for (f, xs) in plan {
        let f = q3(f);
        let reports = xs.iter().map(|&x| count_classes(&f, x)).collect::<Result<Vec<_>>>()?;
        lines.push(judge_asymptotic(&mut acc, &f, &reports)?);
        all.extend(reports);
    }
    let mut rep = acc.finish("asymptotic", lines.join("; "), start);
    rep.reports = all;
    Ok(rep)
}

/// Share of C4 and V4 classes relative to D4 classes.
pub fn small_share(r: &ClassCountReport) -> f64 {
    (r.n_c4 + r.n_v4) as f64 / r.n_d4 as f64
}

// ---------- negpell ----------

fn negpell(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let start = Instant::now();
    let dmax = cfg.dmax.unwrap_or(500) as i64;
    let mut pairs = Vec::new();
    for alpha in 1..=dmax {
        for beta in 1..=dmax {
            let d = beta * beta + 4 * alpha * alpha;
            if d <= dmax && alpha.gcd(&beta) == 1 && !is_square(&BigInt::from(d)) {
                pairs.push((alpha, beta));
            }
        }
    }
    let rows: Vec<Result<(i64, i64, bool, bool)>> = pairs
        .par_iter()
        .map(|&(a, b)| negative_pell_criterion(a, b).map(|(p, s)| (a, b, p, s)))
        .collect();
    let mut acc = Checks::new();
    let mut solvable = 0;
    for r in rows {
        let (a, b, p, s) = r?;
        solvable += p as usize;
        acc.check(p == s, || format!("alpha = {a}, beta = {b}: negative Pell {p}, divisible shape {s}"));
    }
    let summary = format!("{} pairs with D <= {dmax}, {solvable} with x^2 - Dy^2 = -4 solvable", pairs.len());
    Ok(acc.finish("negpell", summary, start))
}

// ---------- params ----------

fn random_point(rng: &mut impl Rng, branch: Branch) -> ParamPoint {
    loop {
        let l: f64 = rng.gen_range(-3.0..3.0);
        let u: f64 = rng.gen_range(0.2..6.0);
        let t: f64 = rng.gen_range(-0.4..0.4);
        let k = match branch {
            Branch::Indef3 | Branch::Indef4 => -l * l / 4.0 - u,
            Branch::Red1 | Branch::Red2 => rng.gen_range(-6.0..6.0),
            _ => -l * l / 4.0 + u,
        };
        let p = ParamPoint::new(l, k, t, branch);
        let (a, b) = (l * l + 4.0 * k, 2.0 * l * l - k);
        if p.in_region() && a.abs() > 0.1 && b.abs() > 0.1 {
            return p;
        }
    }
}

fn random_param_form(rng: &mut impl Rng, branch: Branch) -> QuadForm<f64> {
    let f = match branch {
        Branch::PosDef => {
            let f = random_form(rng, QuadKind::PositiveDefinite, 5);
            if f.a.is_negative() { f.neg() } else { f }
        }
        Branch::Red1 | Branch::Red2 => q(rng.gen_range(1..=4), rng.gen_range(1..=6), 0),
        _ => loop {
            let f = random_form(rng, QuadKind::Indefinite, 5);
            if !f.a.is_zero() {
                break f;
            }
        },
    };
    f.map(|x| x.to_f64().unwrap())
}

pub const ROUND_TRIP_TOL: f64 = 1e-9;
pub const JACOBIAN_TOL: f64 = 1e-6;

fn params(cfg: &VerifyConfig) -> Result<SuiteReport> {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = cfg.samples.unwrap_or(100);
    let mut acc = Checks::new();
    let mut worst = (0.0f64, 0.0f64);
    for branch in Branch::ALL {
        for _ in 0..n {
            let p = random_point(&mut rng, branch);
            let f = random_param_form(&mut rng, branch);
            let (l, k) = round_trip(&f, &p)?;
            let el = (l - p.l).abs() / p.l.abs().max(1.0);
            let ek = (k - p.k).abs() / p.k.abs().max(1.0);
            worst.0 = worst.0.max(el).max(ek);
            acc.check(el <= ROUND_TRIP_TOL && ek <= ROUND_TRIP_TOL, || {
                format!("{branch:?} at {p:?} over {f}: recovered ({l}, {k})")
            });
            let j = jacobian_det(&p, 1e-5);
            let ej = (j + 1.0 / 18.0).abs();
            worst.1 = worst.1.max(ej);
            acc.check(ej <= JACOBIAN_TOL, || format!("{branch:?} at {p:?}: Jacobian {j}"));
        }
    }
    let summary = format!(
        "{n} points per branch; worst round-trip error {:.2e}, worst Jacobian error {:.2e}",
        worst.0, worst.1
    );
    Ok(acc.finish("params", summary, start))
}
