//! Real parametrizations of the stabilized quartics by `(L, K, t)`.
//!
//! Floating point only; used to check round trips, Jacobians and the branch
//! decomposition, never for counting.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::forms::{QuadForm, QuarticForm};
use crate::quadlattice::{complete_quartic, explicit_lk, Chart};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Branch {
    PosDef,
    Indef1,
    Indef2,
    Indef3,
    Indef4,
    Red1,
    Red2,
}

impl Branch {
    pub const ALL: [Branch; 7] = [
        Branch::PosDef,
        Branch::Indef1,
        Branch::Indef2,
        Branch::Indef3,
        Branch::Indef4,
        Branch::Red1,
        Branch::Red2,
    ];

    /// `(-1)^i` for the indexed branches.
    fn sign(self) -> f64 {
        match self {
            Branch::Indef1 | Branch::Indef3 | Branch::Red1 => -1.0,
            _ => 1.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ParamPoint {
    pub l: f64,
    pub k: f64,
    pub t: f64,
    pub branch: Branch,
}

impl ParamPoint {
    pub fn new(l: f64, k: f64, t: f64, branch: Branch) -> Self {
        ParamPoint { l, k, t, branch }
    }

    pub fn in_region(&self) -> bool {
        let p = self.l * self.l + 4.0 * self.k;
        let q = 2.0 * self.l * self.l - self.k;
        match self.branch {
            Branch::PosDef | Branch::Indef1 | Branch::Indef2 => p > 0.0 && q != 0.0,
            Branch::Indef3 | Branch::Indef4 => p < 0.0 && q > 0.0,
            Branch::Red1 | Branch::Red2 => p != 0.0 && q != 0.0,
        }
    }
}

/// Chart coordinates of the model quartic: `x^2+y^2` for `PosDef`,
/// `x^2-y^2` for `Indef*` (chart 1), `x^2+xy`-type reducible forms with
/// `alpha = 1, beta = 1` scaling left to `param_form` (chart 2).
pub fn base_param(p: &ParamPoint) -> [f64; 3] {
    let (l, k, t) = (p.l, p.k, p.t);
    let e = p.branch.sign();
    match p.branch {
        Branch::PosDef => {
            let r = (l * l + 4.0 * k).sqrt();
            let (s, c) = (4.0 * t).sin_cos();
            [-l / 8.0 + r * c / 24.0, r * s / 6.0, -l / 4.0 - r * c / 4.0]
        }
        Branch::Indef1 | Branch::Indef2 => {
            let r = (l * l + 4.0 * k).sqrt();
            let (s, c) = ((4.0 * t).sinh(), (4.0 * t).cosh());
            [l / 8.0 + e * r * c / 24.0, e * r * s / 6.0, -l / 4.0 + e * r * c / 4.0]
        }
        Branch::Indef3 | Branch::Indef4 => {
            let q = (2.0 * l * l - k).sqrt();
            let (s, c) = ((4.0 * t).sinh(), (4.0 * t).cosh());
            [
                l / 8.0 - l * c / 8.0 + e * q * s / 12.0,
                e * q * c / 3.0 - l * s / 2.0,
                -l / 4.0 - 3.0 * l * c / 4.0 + e * q * s / 2.0,
            ]
        }
        Branch::Red1 | Branch::Red2 => red_param(1.0, 1.0, p),
    }
}

/// Chart-2 coordinates `(a4, a2, a0)` for `f = alpha x^2 + beta xy`.
fn red_param(alpha: f64, beta: f64, p: &ParamPoint) -> [f64; 3] {
    let (l, k, t) = (p.l, p.k, p.t);
    let e = p.branch.sign();
    let (a2, b2) = (alpha * alpha, beta * beta);
    let u = (4.0 * t).exp();
    [
        e * (l * l + 4.0 * k) / (144.0 * b2 * u) + a2 * l / (2.0 * b2) + e * a2 * a2 * u / b2,
        l / 2.0 + e * 6.0 * a2 * u,
        e * b2 * u,
    ]
}

/// The chart-1 matrix taking the model quartic for `f` to `V_f`.
pub fn psi_matrix(f: &QuadForm<f64>) -> [[f64; 3]; 3] {
    let (al, be) = (f.a, f.b);
    let delta = f.disc().abs() / 4.0;
    let sd = delta.sqrt();
    [
        [al * al / delta, 0.0, 0.0],
        [2.0 * al * be / delta, al / sd, 0.0],
        [3.0 * be * be / (2.0 * delta), 3.0 * be / (2.0 * sd), 1.0],
    ]
}

fn apply(m: &[[f64; 3]; 3], v: &[f64; 3]) -> [f64; 3] {
    let mut out = [0.0; 3];
    for i in 0..3 {
        out[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
    }
    out
}

fn branch_matches(f: &QuadForm<f64>, b: Branch) -> bool {
    let d = f.disc();
    let r = d.abs().sqrt();
    let square = d > 0.0 && (r - r.round()).abs() < 1e-9;
    match b {
        Branch::PosDef => d < 0.0 && f.a > 0.0,
        Branch::Indef1 | Branch::Indef2 | Branch::Indef3 | Branch::Indef4 => {
            d > 0.0 && !square && f.a != 0.0
        }
        Branch::Red1 | Branch::Red2 => square && f.c == 0.0 && f.b != 0.0,
    }
}

/// Chart coordinates of the quartic at `p`: chart 1 for the definite and
/// indefinite branches, chart 2 `(a4, a2, a0)` for the reducible ones.
pub fn param_form(f: &QuadForm<f64>, p: &ParamPoint) -> Result<[f64; 3]> {
    if !p.in_region() || !branch_matches(f, p.branch) {
        return Err(Error::Invalid(format!("branch {:?} does not fit {f} at ({}, {})", p.branch, p.l, p.k)));
    }
    Ok(match p.branch {
        Branch::Red1 | Branch::Red2 => red_param(f.a, f.b, p),
        _ => apply(&psi_matrix(f), &base_param(p)),
    })
}

/// The whole quartic at `p`.
pub fn param_quartic(f: &QuadForm<f64>, p: &ParamPoint) -> Result<QuarticForm<f64>> {
    let abc = param_form(f, p)?;
    let w = match p.branch {
        Branch::Red1 | Branch::Red2 => Chart::Two,
        _ => Chart::One,
    };
    complete_quartic(f, w, &abc)
}

/// `(L, K)` recovered from the parametrized quartic.
pub fn round_trip(f: &QuadForm<f64>, p: &ParamPoint) -> Result<(f64, f64)> {
    explicit_lk(f, &param_quartic(f, p)?)
}

/// Central-difference Jacobian determinant of `(L, K, t) -> (A, B, C)` for
/// the model form of the branch (no `Psi_f`).
pub fn jacobian_det(p: &ParamPoint, h: f64) -> f64 {
    let at = |dl: f64, dk: f64, dt: f64| {
        base_param(&ParamPoint::new(p.l + dl, p.k + dk, p.t + dt, p.branch))
    };
    let mut cols = [[0.0; 3]; 3];
    let shifts = [[h, 0.0, 0.0], [0.0, h, 0.0], [0.0, 0.0, h]];
    for (j, s) in shifts.iter().enumerate() {
        let plus = at(s[0], s[1], s[2]);
        let minus = at(-s[0], -s[1], -s[2]);
        for i in 0..3 {
            cols[i][j] = (plus[i] - minus[i]) / (2.0 * h);
        }
    }
    crate::quadlattice::det3(&cols)
}

/// `(sign(L^2 + 4K), sign(E2))` for a quartic in `V_{x^2-y^2}` with chart-1
/// coordinates `abc`, where `E2 = 4A + 2C - 4B`.
pub fn indefinite_signature(abc: &[f64; 3]) -> (i8, i8) {
    let f = QuadForm::new(1.0, 0.0, -1.0);
    let (l, k) = crate::quadlattice::lk_chart1(&f, abc);
    let sg = |x: f64| if x > 0.0 { 1 } else if x < 0.0 { -1 } else { 0 };
    (sg(l * l + 4.0 * k), sg(4.0 * abc[0] + 2.0 * abc[2] - 4.0 * abc[1]))
}

/// The expected signature of each indefinite branch.
pub fn branch_signature(b: Branch) -> Option<(i8, i8)> {
    match b {
        Branch::Indef1 => Some((1, -1)),
        Branch::Indef2 => Some((1, 1)),
        Branch::Indef3 => Some((-1, 1)),
        Branch::Indef4 => Some((-1, -1)),
        _ => None,
    }
}
