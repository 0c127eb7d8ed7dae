//! The three-dimensional space of quartics stabilized by `M_f`, its two
//! coordinate charts, the integral lattice inside each chart, and closed
//! forms for `(L, K)` in chart coordinates.
//!
//! Chart 1 (`alpha != 0`) uses `(A, B, C) = (a4, a3, a2)`; chart 2
//! (`beta != 0`, `beta^2 + 4 alpha gamma != 0`) uses `(a4, a2, a0)`.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::forms::{QuadForm, QuarticForm};
use crate::scalar::{int, FieldScalar, IntScalar, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Chart {
    One,
    Two,
}

impl Chart {
    pub fn index(self) -> u8 {
        match self {
            Chart::One => 1,
            Chart::Two => 2,
        }
    }

    pub fn from_index(w: u8) -> Result<Chart> {
        match w {
            1 => Ok(Chart::One),
            2 => Ok(Chart::Two),
            _ => Err(Error::Invalid(format!("chart index {w}"))),
        }
    }
}

pub fn chart_valid<T: Scalar>(f: &QuadForm<T>, w: Chart) -> bool {
    match w {
        Chart::One => !f.a.is_zero(),
        Chart::Two => !f.b.is_zero() && !beta_plus(f).is_zero(),
    }
}

/// `beta^2 + 4 alpha gamma`.
fn beta_plus<T: Scalar>(f: &QuadForm<T>) -> T {
    f.b.clone() * f.b.clone() + int::<T>(4) * f.a.clone() * f.c.clone()
}

/// The chart used for counting: 1 when `alpha != 0`, else 2.
pub fn default_chart<T: Scalar>(f: &QuadForm<T>) -> Chart {
    if !f.a.is_zero() {
        Chart::One
    } else {
        Chart::Two
    }
}

/// Numerators and denominators of the two dependent coefficients, as
/// integer-coefficient linear forms in `(A, B, C)`.
///
/// Chart 1: `a1 = n1 / d1`, `a0 = n2 / d2`. Chart 2: `a3 = n1 / d1`,
/// `a1 = n2 / d2`.
pub fn chart_relations<T: Scalar>(f: &QuadForm<T>, w: Chart) -> Result<([T; 3], T, [T; 3], T)> {
    if !chart_valid(f, w) {
        return Err(Error::NoChart);
    }
    let (a, b, c) = (f.a.clone(), f.b.clone(), f.c.clone());
    let i = int::<T>;
    let bp = beta_plus(f);
    Ok(match w {
        Chart::One => {
            let n1 = [
                i(4) * b.clone() * c.clone(),
                -(b.clone() * b.clone() + i(2) * a.clone() * c.clone()),
                i(2) * a.clone() * b.clone(),
            ];
            let d1 = i(2) * a.clone() * a.clone();
            let n2 = [
                i(4) * c.clone() * (b.clone() * b.clone() + i(2) * a.clone() * c.clone()),
                -(b.clone() * bp.clone()),
                i(2) * a.clone() * b.clone() * b.clone(),
            ];
            let d2 = i(8) * a.clone() * a.clone() * a.clone();
            (n1, d1, n2, d2)
        }
        Chart::Two => {
            let m = b.clone() * bp.clone();
            let k = i(4) * b.clone() * b.clone() + i(8) * a.clone() * c.clone();
            let n1 = [
                c.clone() * k.clone(),
                i(2) * a.clone() * b.clone() * b.clone(),
                i(-8) * a.clone() * a.clone() * a.clone(),
            ];
            let n2 = [
                i(-8) * c.clone() * c.clone() * c.clone(),
                i(2) * b.clone() * b.clone() * c.clone(),
                a.clone() * k,
            ];
            (n1, m.clone(), n2, m)
        }
    })
}

fn dot<T: Scalar>(n: &[T; 3], v: &[T; 3]) -> T {
    n[0].clone() * v[0].clone() + n[1].clone() * v[1].clone() + n[2].clone() * v[2].clone()
}

/// The unique quartic in `V_f` with chart coordinates `abc`.
pub fn complete_quartic<T: FieldScalar>(
    f: &QuadForm<T>,
    w: Chart,
    abc: &[T; 3],
) -> Result<QuarticForm<T>> {
    let (n1, d1, n2, d2) = chart_relations(f, w)?;
    let x = dot(&n1, abc) / d1;
    let y = dot(&n2, abc) / d2;
    let [a, b, c] = abc.clone();
    Ok(match w {
        Chart::One => QuarticForm::new(a, b, c, x, y),
        Chart::Two => QuarticForm::new(a, x, b, y, c),
    })
}

/// Integer version of `complete_quartic`; `None` off the lattice.
pub fn complete_integral<T: IntScalar>(
    f: &QuadForm<T>,
    w: Chart,
    abc: &[T; 3],
) -> Result<Option<QuarticForm<T>>> {
    let (n1, d1, n2, d2) = chart_relations(f, w)?;
    let (Some(x), Some(y)) = (dot(&n1, abc).div_exact(&d1), dot(&n2, abc).div_exact(&d2)) else {
        return Ok(None);
    };
    let [a, b, c] = abc.clone();
    Ok(Some(match w {
        Chart::One => QuarticForm::new(a, b, c, x, y),
        Chart::Two => QuarticForm::new(a, x, b, y, c),
    }))
}

/// Chart coordinates of a quartic.
pub fn chart_coords<T: Scalar>(quartic: &QuarticForm<T>, w: Chart) -> [T; 3] {
    match w {
        Chart::One => [quartic.a4.clone(), quartic.a3.clone(), quartic.a2.clone()],
        Chart::Two => [quartic.a4.clone(), quartic.a2.clone(), quartic.a0.clone()],
    }
}

pub fn in_lattice<T: IntScalar>(f: &QuadForm<T>, w: Chart, abc: &[T; 3]) -> Result<bool> {
    Ok(complete_integral(f, w, abc)?.is_some())
}

/// Row-style Hermite normal form: upper triangular, positive pivots,
/// entries above each pivot reduced into `[0, pivot)`. Zero rows dropped.
pub fn hnf_rows<T: IntScalar>(mut rows: Vec<Vec<T>>) -> Vec<Vec<T>> {
    if rows.is_empty() {
        return rows;
    }
    let ncols = rows[0].len();
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..ncols {
        if pivot_row >= rows.len() {
            break;
        }
        loop {
            // smallest nonzero |entry| in this column at or below pivot_row
            let mut best: Option<usize> = None;
            for r in pivot_row..rows.len() {
                if !rows[r][col].is_zero()
                    && best.is_none_or(|b| rows[r][col].abs() < rows[b][col].abs())
                {
                    best = Some(r);
                }
            }
            let Some(b) = best else { break };
            rows.swap(pivot_row, b);
            let mut done = true;
            for r in pivot_row + 1..rows.len() {
                if rows[r][col].is_zero() {
                    continue;
                }
                let q = rows[r][col].div_floor(&rows[pivot_row][col]);
                for k in col..ncols {
                    let v = rows[r][k].clone() - q.clone() * rows[pivot_row][k].clone();
                    rows[r][k] = v;
                }
                if !rows[r][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if pivot_row < rows.len() && !rows[pivot_row][col].is_zero() {
            if rows[pivot_row][col].is_negative() {
                for k in 0..ncols {
                    rows[pivot_row][k] = -rows[pivot_row][k].clone();
                }
            }
            pivots.push((pivot_row, col));
            pivot_row += 1;
        }
    }
    rows.truncate(pivot_row);
    for &(pr, pc) in &pivots {
        for r in 0..pr {
            let q = rows[r][pc].div_floor(&rows[pr][pc]);
            if q.is_zero() {
                continue;
            }
            for k in 0..ncols {
                let v = rows[r][k].clone() - q.clone() * rows[pr][k].clone();
                rows[r][k] = v;
            }
        }
    }
    rows
}



/// Basis (rows, HNF) of the lattice of chart coordinates giving integral
/// quartics.
pub fn lattice_basis<T: IntScalar>(f: &QuadForm<T>, w: Chart) -> Result<[[T; 3]; 3]> {
    let (n1, d1, n2, d2) = chart_relations(f, w)?;
    let z = T::zero;
    let o = T::one;
    let mut rows = vec![
        vec![n1[0].clone(), n2[0].clone(), o(), z(), z()],
        vec![n1[1].clone(), n2[1].clone(), z(), o(), z()],
        vec![n1[2].clone(), n2[2].clone(), z(), z(), o()],
        vec![d1.abs(), z(), z(), z(), z()],
        vec![z(), d2.abs(), z(), z(), z()],
    ];
    rows = hnf_rows(rows);
    let kernel: Vec<Vec<T>> = rows
        .into_iter()
        .filter(|r| r[0].is_zero() && r[1].is_zero())
        .map(|r| r[2..].to_vec())
        .collect();
    let h = hnf_rows(kernel);
    if h.len() != 3 {
        return Err(Error::Invalid("lattice is not full rank".into()));
    }
    let row = |r: &Vec<T>| [r[0].clone(), r[1].clone(), r[2].clone()];
    Ok([row(&h[0]), row(&h[1]), row(&h[2])])
}

pub fn lattice_det<T: IntScalar>(f: &QuadForm<T>, w: Chart) -> Result<T> {
    let b = lattice_basis(f, w)?;
    Ok(b[0][0].clone() * b[1][1].clone() * b[2][2].clone())
}

/// `s_f |alpha|^3` (chart 1) or `s_f |beta (beta^2 + 4 alpha gamma)| / 8`
/// (chart 2), where `s_f = 8` for odd discriminant and 1 otherwise.
pub fn predicted_det<T: IntScalar>(f: &QuadForm<T>, w: Chart) -> Result<Ratio<T>> {
    if !chart_valid(f, w) {
        return Err(Error::NoChart);
    }
    let s = s_factor(f);
    Ok(match w {
        Chart::One => Ratio::from_integer(s * f.a.abs() * f.a.abs() * f.a.abs()),
        Chart::Two => Ratio::new(s * (f.b.clone() * beta_plus(f)).abs(), int(8)),
    })
}

/// 8 when the discriminant is odd, 1 otherwise.
pub fn s_factor<T: IntScalar>(f: &QuadForm<T>) -> T {
    if f.disc().is_odd() {
        int(8)
    } else {
        int(1)
    }
}

/// Matrix taking chart-1 coordinates to chart-2 coordinates.
pub fn chart_change<T: FieldScalar>(f: &QuadForm<T>) -> Result<[[T; 3]; 3]> {
    let (_, _, n2, d2) = chart_relations(f, Chart::One)?;
    let z = T::zero;
    let o = T::one;
    Ok([
        [o(), z(), z()],
        [z(), z(), o()],
        [
            n2[0].clone() / d2.clone(),
            n2[1].clone() / d2.clone(),
            n2[2].clone() / d2,
        ],
    ])
}

pub fn det3<T: Scalar>(m: &[[T; 3]; 3]) -> T {
    let c = |i: usize, j: usize| m[i][j].clone();
    c(0, 0) * (c(1, 1) * c(2, 2) - c(1, 2) * c(2, 1)) - c(0, 1) * (c(1, 0) * c(2, 2) - c(1, 2) * c(2, 0))
        + c(0, 2) * (c(1, 0) * c(2, 1) - c(1, 1) * c(2, 0))
}

/// `(L, K)` from the closed forms in chart coordinates.
///
/// `alpha != 0` uses chart 1. With `alpha = 0`, `gamma != 0` the variables
/// are swapped first; with `alpha = gamma = 0` the chart-2 formulas apply.
pub fn explicit_lk<T: FieldScalar>(f: &QuadForm<T>, quartic: &QuarticForm<T>) -> Result<(T, T)> {
    if f.disc().is_zero() {
        return Err(Error::Degenerate);
    }
    if !f.a.is_zero() {
        Ok(lk_chart1(f, &chart_coords(quartic, Chart::One)))
    } else if !f.c.is_zero() {
        let g = QuadForm::new(f.c.clone(), f.b.clone(), f.a.clone());
        let q = QuarticForm::new(
            quartic.a0.clone(),
            quartic.a1.clone(),
            quartic.a2.clone(),
            quartic.a3.clone(),
            quartic.a4.clone(),
        );
        Ok(lk_chart1(&g, &chart_coords(&q, Chart::One)))
    } else {
        Ok(lk_gamma0(f, &chart_coords(quartic, Chart::Two)))
    }
}

/// Closed form for `alpha != 0`, chart-1 coordinates.
pub fn lk_chart1<T: FieldScalar>(f: &QuadForm<T>, abc: &[T; 3]) -> (T, T) {
    let (al, be, ga) = (f.a.clone(), f.b.clone(), f.c.clone());
    let [a, b, c] = abc.clone();
    let i = int::<T>;
    let l = -(i(12) * ga.clone() * a.clone() - i(3) * be.clone() * b.clone()
        + i(2) * al.clone() * c.clone())
        / (i(2) * al.clone());
    let bp = be.clone() * be.clone() + i(4) * al.clone() * ga.clone();
    let k_num = i(72) * be.clone() * be.clone() * ga.clone() * a.clone() * a.clone()
        + i(9) * al.clone() * bp.clone() * b.clone() * b.clone()
        + i(8) * al.clone() * al.clone() * al.clone() * c.clone() * c.clone()
        - i(18) * be.clone() * bp * a.clone() * b.clone()
        + i(12)
            * al.clone()
            * (i(3) * be.clone() * be.clone() - i(4) * al.clone() * ga.clone())
            * a.clone()
            * c.clone()
        - i(24) * al.clone() * al.clone() * be.clone() * b * c;
    let k = k_num / (i(4) * al.clone() * al.clone() * al);
    (l, k)
}

/// Closed form for `gamma = 0`, `beta != 0`, chart-2 coordinates.
pub fn lk_gamma0<T: FieldScalar>(f: &QuadForm<T>, abc: &[T; 3]) -> (T, T) {
    let (al, be) = (f.a.clone(), f.b.clone());
    let [a, b, c] = abc.clone();
    let i = int::<T>;
    let b2 = be.clone() * be.clone();
    let a2 = al.clone() * al.clone();
    let l = (i(2) * b2.clone() * b.clone() - i(12) * a2.clone() * c.clone()) / b2.clone();
    let k = (-(b2.clone() * b2.clone() * b.clone() * b.clone())
        + i(144) * a2.clone() * a2.clone() * c.clone() * c.clone()
        + i(36) * b2.clone() * b2.clone() * a * c.clone()
        - i(24) * a2 * b2.clone() * b * c)
        / (b2.clone() * b2);
    (l, k)
}

/// Integer-valued `(L, K)` for an integral quartic known to lie in `V_f`.
pub fn explicit_lk_int<T: IntScalar>(f: &QuadForm<T>, quartic: &QuarticForm<T>) -> Result<(T, T)> {
    let fr = f.map(|x| Ratio::from_integer(x.clone()));
    let (l, k) = explicit_lk(&fr, &quartic.to_ratio())?;
    if !l.is_integer() || !k.is_integer() {
        return Err(Error::NotIntegral);
    }
    Ok((l.to_integer(), k.to_integer()))
}

/// `(L1, L2)` for `alpha != 0`:
/// `L1 = 4(beta^2 - alpha gamma) A - 3 alpha beta B + 2 alpha^2 C`,
/// `L2 = 2 (2 beta A - alpha B)`.
pub fn l1_l2<T: Scalar>(f: &QuadForm<T>, abc: &[T; 3]) -> (T, T) {
    let (al, be, ga) = (f.a.clone(), f.b.clone(), f.c.clone());
    let [a, b, c] = abc.clone();
    let i = int::<T>;
    let l1 = i(4) * (be.clone() * be.clone() - al.clone() * ga) * a.clone()
        - i(3) * al.clone() * be.clone() * b.clone()
        + i(2) * al.clone() * al.clone() * c;
    let l2 = i(2) * (i(2) * be * a - al * b);
    (l1, l2)
}
