//! GL_2(Z)-equivalence of stabilized quartics and orbit multiplicities.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::domain::Census;
use crate::error::{Error, Result};
use crate::forms::{Mat2, QuarticForm};
use crate::quadarith::{orthogonal_group, orthogonal_group_any, quad_equivalent};
use crate::resolvent::stabilizer_quadratics;

type Q4 = QuarticForm<BigInt>;
type M = Mat2<BigInt>;

/// Steps of the unit generator tried in each direction before giving up.
const SWEEP_CAP: i64 = 64;

fn max_abs(q: &Q4) -> BigInt {
    q.coeffs().iter().map(|c| c.abs()).max().unwrap()
}

/// `T` in `GL_2(Z)` with `F_T = G`, if any.
pub fn quartic_equivalent(f: &Q4, g: &Q4) -> Result<Option<M>> {
    if f.disc().is_zero() || g.disc().is_zero() {
        return Err(Error::Degenerate);
    }
    if f.invariant_i() != g.invariant_i() || f.invariant_j() != g.invariant_j() {
        return Ok(None);
    }
    let sf = stabilizer_quadratics(f)?;
    let sg = stabilizer_quadratics(g)?;
    if sf.is_empty() || sg.is_empty() {
        return Err(Error::NotSmallGalois);
    }
    let gmax = max_abs(g);
    for (w1, f1) in &sf {
        for (w2, f2) in &sg {
            if w1 != w2 {
                continue;
            }
            let Some(sigma) = quad_equivalent(f1, f2)? else { continue };
            let grp = orthogonal_group_any(f2)?;
            for c in &grp.finite_elements {
                let t0 = sigma.mul(c);
                if f.twisted_act(&t0)? == *g {
                    return Ok(Some(t0));
                }
                let Some(gen) = &grp.infinite_generator else { continue };
                for step in [gen.clone(), gen.inverse()?] {
                    let mut t = t0.clone();
                    let mut prev = max_abs(&f.twisted_act(&t)?);
                    for _ in 0..SWEEP_CAP {
                        t = t.mul(&step);
                        let ft = f.twisted_act(&t)?;
                        if ft == *g {
                            return Ok(Some(t));
                        }
                        let m = max_abs(&ft);
                        if m > gmax && m > prev {
                            break;
                        }
                        prev = m;
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Union-find labels: `labels[i] == labels[j]` iff the forms are equivalent.
/// Forms are bucketed by `(I, J)` before pairwise tests.
pub fn class_labels(forms: &[Q4]) -> Result<Vec<usize>> {
    let mut buckets: BTreeMap<(BigInt, BigInt), Vec<usize>> = BTreeMap::new();
    let mut labels = vec![usize::MAX; forms.len()];
    for (i, q) in forms.iter().enumerate() {
        let key = (q.invariant_i(), q.invariant_j());
        let reps = buckets.entry(key).or_default();
        let mut found = None;
        for &r in reps.iter() {
            if quartic_equivalent(&forms[r], q)?.is_some() {
                found = Some(labels[r]);
                break;
            }
        }
        labels[i] = match found {
            Some(l) => l,
            None => {
                reps.push(i);
                i
            }
        };
    }
    Ok(labels)
}

/// Number of distinct members of `S_f(X)` among the `O_f(Z)`-translates of
/// `F` (unit powers swept over `|n| <= window`).
pub fn orbit_members_in_s(census: &Census, quartic: &Q4, window: i64) -> Result<usize> {
    let grp = orthogonal_group(&census.f)?;
    let mut seen = HashSet::new();
    let powers: Vec<M> = match &grp.infinite_generator {
        Some(g) => (-window..=window).map(|n| g.pow(n)).collect::<Result<_>>()?,
        None => vec![M::identity()],
    };
    for c in &grp.finite_elements {
        for p in &powers {
            let t = c.mul(p);
            let g = quartic.twisted_act(&t)?;
            if census.contains(&g)? {
                seen.insert(g);
            }
        }
    }
    Ok(seen.len())
}
