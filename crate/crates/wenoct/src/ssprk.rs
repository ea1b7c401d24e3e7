//! Low-storage 10-stage SSP-RK4 time stepping and CFL step-size control.
//!
//! The method keeps two persistent solution registers. Five forward-Euler
//! stages of size dt/6 advance register one, the registers are mixed
//! (Q2 <- Q2/25 + 9 Q1/25, Q1 <- 15 Q2 - 5 Q1), four more dt/6 stages follow,
//! and the final combination is Q2 + 3 Q1/5 + dt L(Q1)/10. Every stage is a
//! convex combination of forward Euler steps, which is what lets the
//! constrained-transport correction run inside each stage.

use crate::error::{Result, SolverError};
use crate::grid::Field;
use crate::state::{cons_to_prim, locate, wave_speeds, Conserved};

/// Register algebra required of a low-storage RK state.
pub trait RkState: Clone {
    /// self += a * x
    fn axpy(&mut self, a: f64, x: &Self);
    /// self = a * self + b * y
    fn scale_add(&mut self, a: f64, b: f64, y: &Self);
}

impl RkState for f64 {
    fn axpy(&mut self, a: f64, x: &Self) {
        *self += a * x;
    }
    fn scale_add(&mut self, a: f64, b: f64, y: &Self) {
        *self = a * *self + b * y;
    }
}

impl RkState for Field {
    fn axpy(&mut self, a: f64, x: &Self) {
        Field::axpy(self, a, x);
    }
    fn scale_add(&mut self, a: f64, b: f64, y: &Self) {
        Field::scale_add(self, a, b, y);
    }
}

/// Coupled solver state: conserved MHD field plus (in CT mode) the potential.
#[derive(Clone, Debug)]
pub struct SystemState {
    pub q: Field,
    pub a: Option<Field>,
}

impl RkState for SystemState {
    fn axpy(&mut self, c: f64, x: &Self) {
        self.q.axpy(c, &x.q);
        if let (Some(a), Some(xa)) = (self.a.as_mut(), x.a.as_ref()) {
            a.axpy(c, xa);
        }
    }
    fn scale_add(&mut self, c: f64, b: f64, y: &Self) {
        self.q.scale_add(c, b, &y.q);
        if let (Some(a), Some(ya)) = (self.a.as_mut(), y.a.as_ref()) {
            a.scale_add(c, b, ya);
        }
    }
}

/// One SSP-RK4 step. `rhs` may mutate its argument to refresh ghost layers
/// before evaluating; `post_stage` runs after every forward-Euler-type update
/// (the CT correction hooks in here).
pub fn ssp_rk4_step<S, R, C>(state: &S, dt: f64, rhs: &mut R, post_stage: &mut C) -> Result<S>
where
    S: RkState,
    R: FnMut(&mut S) -> Result<S>,
    C: FnMut(&mut S) -> Result<()>,
{
    let mut q1 = state.clone();
    let mut q2 = state.clone();
    for _ in 0..5 {
        let l = rhs(&mut q1)?;
        q1.axpy(dt / 6.0, &l);
        post_stage(&mut q1)?;
    }
    q2.scale_add(1.0 / 25.0, 9.0 / 25.0, &q1);
    q1.scale_add(-5.0, 15.0, &q2);
    for _ in 0..4 {
        let l = rhs(&mut q1)?;
        q1.axpy(dt / 6.0, &l);
        post_stage(&mut q1)?;
    }
    let l = rhs(&mut q1)?;
    let mut out = q2;
    out.axpy(3.0 / 5.0, &q1);
    out.axpy(dt / 10.0, &l);
    post_stage(&mut out)?;
    Ok(out)
}

/// CFL time step: dt = cfl / sum_axes(max_points |lambda_max| / d_axis).
pub fn compute_dt(q: &Field, cfl: f64, gamma: f64) -> Result<f64> {
    let grid = *q.grid();
    let mut total = 0.0f64;
    let mut speed = [0.0f64; 3];
    for idx in grid.interior_iter() {
        let qc = Conserved(q.state_at(idx).try_into().expect("8 components"));
        let w = locate(cons_to_prim(&qc, gamma), idx)?;
        for ax in 0..grid.ndim {
            let mut n = [0.0; 3];
            n[ax] = 1.0;
            let ws = locate(wave_speeds(&w, n, gamma), idx)?;
            speed[ax] = speed[ax].max(ws.lambda[0].abs().max(ws.lambda[7].abs()));
        }
    }
    for ax in 0..grid.ndim {
        total += speed[ax] / grid.spacing(ax);
    }
    if !(total > 0.0) {
        return Err(SolverError::config("zero maximal signal speed; no meaningful CFL step"));
    }
    Ok(cfl / total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{allocate_field, Grid};
    use crate::state::{max_signal_speed, prim_to_cons, Primitive};

    const G: f64 = 5.0 / 3.0;

    #[test]
    fn zero_rhs_is_a_no_op() {
        let q0 = 3.7f64;
        let out = ssp_rk4_step(&q0, 0.1, &mut |_: &mut f64| Ok(0.0), &mut |_| Ok(())).unwrap();
        assert!((out - q0).abs() < 1e-15 * q0.abs());
    }

    #[test]
    fn unit_rhs_advances_exactly_dt() {
        // stage weights telescope to q + dt
        let q0 = -1.25f64;
        let dt = 0.37;
        let out = ssp_rk4_step(&q0, dt, &mut |_: &mut f64| Ok(1.0), &mut |_| Ok(())).unwrap();
        assert!((out - (q0 + dt)).abs() < 1e-14);
    }

    #[test]
    fn linear_ode_fourth_order() {
        // q' = lambda q integrated to T = 1
        let lam = -0.5;
        let mut errs = Vec::new();
        for lvl in 0..4 {
            let n = 4 << lvl;
            let dt = 1.0 / n as f64;
            let mut q = 1.0f64;
            for _ in 0..n {
                q = ssp_rk4_step(&q, dt, &mut |s: &mut f64| Ok(lam * *s), &mut |_| Ok(())).unwrap();
            }
            errs.push((q - (lam * 1.0f64).exp()).abs());
        }
        for lvl in 1..errs.len() {
            let order = (errs[lvl - 1] / errs[lvl]).log2();
            assert!(order >= 3.9, "order {order:.2} ({errs:?})");
        }
    }

    #[test]
    fn field_registers_follow_the_same_algebra() {
        let grid = Grid::new_1d(5, 0.0, 1.0).unwrap();
        let mut f = allocate_field(&grid, 1).unwrap();
        f.fill(2.0);
        let out = ssp_rk4_step(
            &f,
            0.25,
            &mut |s: &mut Field| {
                let mut l = s.clone();
                l.fill(1.0);
                Ok(l)
            },
            &mut |_| Ok(()),
        )
        .unwrap();
        for i in 0..5 {
            assert!((out.at(0, [i, 0, 0]) - 2.25).abs() < 1e-14);
        }
    }

    #[test]
    fn dt_formula_matches_wave_speeds() {
        let w = Primitive([1.0, 0.9, 0.0, 0.0, 1.2, 0.4, 0.3, -0.2]);
        let grid = Grid::new_1d(8, 0.0, 0.1).unwrap();
        let mut q = allocate_field(&grid, 8).unwrap();
        let qc = prim_to_cons(&w, G);
        for i in 0..8isize {
            for c in 0..8 {
                q.set(c, [i, 0, 0], qc.0[c]);
            }
        }
        let smax = max_signal_speed(&w, [1.0, 0.0, 0.0], G).unwrap();
        let dt = compute_dt(&q, 3.0, G).unwrap();
        assert!((dt - 3.0 * 0.1 / smax).abs() < 1e-13);
    }

    #[test]
    fn two_identical_axes_halve_dt() {
        let w = Primitive([1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0]);
        let qc = prim_to_cons(&w, G);
        let g1 = Grid::new_1d(8, 0.0, 0.1).unwrap();
        let g2 = Grid::new_2d([8, 8], [0.0, 0.0], [0.1, 0.1]).unwrap();
        let mut q1 = allocate_field(&g1, 8).unwrap();
        let mut q2 = allocate_field(&g2, 8).unwrap();
        for idx in g1.interior_iter() {
            for c in 0..8 {
                q1.set(c, idx, qc.0[c]);
            }
        }
        for idx in g2.interior_iter() {
            for c in 0..8 {
                q2.set(c, idx, qc.0[c]);
            }
        }
        let dt1 = compute_dt(&q1, 3.0, G).unwrap();
        let dt2 = compute_dt(&q2, 3.0, G).unwrap();
        assert!((dt2 - 0.5 * dt1).abs() < 1e-14);
    }

    #[test]
    fn static_field_has_no_cfl_step() {
        // hydrodynamically impossible state (p = 0 rejected earlier), so
        // emulate with a direct zero-speed guard via an empty 0-speed case:
        // a valid state always has cf > 0, so compute_dt only errors through
        // the guard; exercise it with cfl over a degenerate fake
        let grid = Grid::new_1d(4, 0.0, 0.1).unwrap();
        let q = allocate_field(&grid, 8).unwrap(); // all-zero: invalid state
        assert!(compute_dt(&q, 3.0, G).is_err());
    }
}
