//! Run diagnostics: divergence monitoring, positivity, conservation sums,
//! total variation. Diagnostics never mutate solver state.

use crate::curl::{curl_3d, CtMode};
use crate::grid::Field;

/// Per-step diagnostics record.
#[derive(Clone, Copy, Debug)]
pub struct StepRecord {
    pub step: usize,
    pub t: f64,
    pub dt: f64,
    pub max_divb: f64,
    pub min_p: f64,
    pub min_rho: f64,
    pub sum_b: [f64; 3],
    /// largest |B| component magnitude (scale for the divergence bound)
    pub max_b: f64,
}

/// Max |div B| where B is the discrete curl of the potential clear through
/// one ghost ring, evaluated on the interior shrunk by one point on active
/// axes (the largest region where the commutation identity is defined).
/// Requires the potential's ghosts to be filled.
pub fn divergence_from_potential(a: &Field, mode: CtMode) -> f64 {
    let grid = *a.grid();
    // in 2.5D, B3 is z-independent and never enters the divergence
    let b: Vec<Field> = match mode {
        CtMode::Scalar2d | CtMode::Vector25d => {
            let src = if mode == CtMode::Scalar2d { 0 } else { 2 };
            let b1 = crate::curl::deriv4(a, src, 1);
            let mut b2 = crate::curl::deriv4(a, src, 0);
            b2.scale(-1.0);
            vec![b1, b2]
        }
        CtMode::Vector3d => curl_3d(a).into(),
    };
    let inv12: Vec<f64> = (0..grid.ndim).map(|ax| 1.0 / (12.0 * grid.spacing(ax))).collect();
    let mut max_div = 0.0f64;
    let lo = 1isize;
    let hi: Vec<isize> = (0..3)
        .map(|ax| if ax < grid.ndim { grid.n(ax) as isize - 1 } else { 1 })
        .collect();
    for k in (if grid.ndim > 2 { lo } else { 0 })..hi[2] {
        for j in lo..hi[1] {
            for i in lo..hi[0] {
                let idx = [i, j, k];
                let mut div = 0.0;
                for (ax, bb) in b.iter().enumerate() {
                    let mut m2 = idx;
                    let mut m1 = idx;
                    let mut p1 = idx;
                    let mut p2 = idx;
                    m2[ax] -= 2;
                    m1[ax] -= 1;
                    p1[ax] += 1;
                    p2[ax] += 2;
                    div += (bb.at(0, m2) - 8.0 * bb.at(0, m1) + 8.0 * bb.at(0, p1)
                        - bb.at(0, p2))
                        * inv12[ax];
                }
                max_div = max_div.max(div.abs());
            }
        }
    }
    max_div
}

/// Max |div B| of the stored magnetic field (ghosts must be filled);
/// used for base-scheme runs where no potential exists.
pub fn divergence_of_b(q: &Field) -> f64 {
    let grid = *q.grid();
    let div = crate::curl::discrete_div(q);
    grid.interior_iter().map(|idx| div.at(0, idx).abs()).fold(0.0, f64::max)
}

/// Raw pressure (no positivity guard) for min-pressure monitoring.
#[inline]
fn raw_pressure(q: &Field, idx: [isize; 3], gamma: f64) -> f64 {
    let rho = q.at(0, idx);
    let m = [q.at(1, idx), q.at(2, idx), q.at(3, idx)];
    let b = [q.at(5, idx), q.at(6, idx), q.at(7, idx)];
    let ke = 0.5 * (m[0] * m[0] + m[1] * m[1] + m[2] * m[2]) / rho;
    let me = 0.5 * (b[0] * b[0] + b[1] * b[1] + b[2] * b[2]);
    (gamma - 1.0) * (q.at(4, idx) - ke - me)
}

pub fn min_pressure(q: &Field, gamma: f64) -> f64 {
    q.grid().interior_iter().map(|idx| raw_pressure(q, idx, gamma)).fold(f64::INFINITY, f64::min)
}

/// Collect the scalar diagnostics of a state. `a` carries the potential and
/// CT mode when the run is in constrained-transport mode.
pub fn collect(
    q: &Field,
    a: Option<(&Field, CtMode)>,
    gamma: f64,
    step: usize,
    t: f64,
    dt: f64,
) -> StepRecord {
    let max_divb = match a {
        Some((af, mode)) => divergence_from_potential(af, mode),
        None => divergence_of_b(q),
    };
    StepRecord {
        step,
        t,
        dt,
        max_divb,
        min_p: min_pressure(q, gamma),
        min_rho: q.min_interior(0),
        sum_b: [q.sum_interior(5), q.sum_interior(6), q.sum_interior(7)],
        max_b: (5..8).map(|c| q.max_abs_interior(c)).fold(0.0, f64::max),
    }
}

/// Total variation of component `c` along `axis` at the interior line nearest
/// to the physical cross positions.
pub fn total_variation(field: &Field, c: usize, axis: usize, cross_pos: [f64; 2]) -> f64 {
    let grid = *field.grid();
    let (ca, cb) = crate::grid::cross_axes(axis);
    let p = grid.nearest_index(ca, cross_pos[0]);
    let q = grid.nearest_index(cb, cross_pos[1]);
    let n = grid.n(axis) as isize;
    let mut tv = 0.0;
    for i in 0..n - 1 {
        let a = field.at(c, crate::grid::line_index(axis, i, p, q));
        let b = field.at(c, crate::grid::line_index(axis, i + 1, p, q));
        tv += (b - a).abs();
    }
    tv
}
