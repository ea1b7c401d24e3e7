//! 1D linear advection solved two ways: as a scalar conservation law with
//! upwind flux-split WENO5 (the HCL route) and as a Hamilton-Jacobi equation
//! with one-sided WENO derivatives (the HJ route). The HJ route controls
//! oscillations in the solution derivative, the HCL route only in the
//! solution itself; comparing the two isolates that difference.

use crate::boundary::{fill_ghosts, Recipe};
use crate::error::Result;
use crate::grid::{allocate_field, Field, Grid};
use crate::hj::hj_derivative_pair;
use crate::ssprk::ssp_rk4_step;
use crate::weno::{weno5, Stencil5, WenoParams};

/// Piecewise-linear trapezoid profile on [0, 1].
pub fn trapezoid_profile(x: f64) -> f64 {
    let x = x.rem_euclid(1.0);
    if x <= 0.25 {
        0.0
    } else if x <= 0.40 {
        (x - 0.25) / 0.075
    } else if x <= 0.60 {
        2.0
    } else if x <= 0.75 {
        (0.75 - x) / 0.075
    } else {
        0.0
    }
}

pub fn advection_grid(n: usize) -> Grid {
    Grid::new_1d(n, 0.0, 1.0 / n as f64).expect("valid grid")
}

/// Initial data for the 1D advection benchmark.
pub fn init_advection_1d(grid: &Grid) -> Field {
    let mut q = allocate_field(grid, 1).expect("alloc");
    for idx in grid.interior_iter() {
        q.set(0, idx, trapezoid_profile(grid.coord(0, idx[0])));
    }
    q
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdvectScheme {
    WenoHcl,
    WenoHj,
}

fn periodic() -> [[Recipe; 2]; 3] {
    [
        [Recipe::Periodic, Recipe::Periodic],
        [Recipe::Periodic, Recipe::Periodic],
        [Recipe::Periodic, Recipe::Periodic],
    ]
}

fn rhs_hcl(q: &Field, params: &WenoParams) -> Field {
    // unit advection speed: global LF splitting degenerates to pure upwind,
    // f_hat_{i+1/2} = WENO5(q_{i-2..i+2})
    let grid = *q.grid();
    let n = grid.n(0) as isize;
    let inv_dx = 1.0 / grid.spacing(0);
    let mut out = allocate_field(&grid, 1).expect("alloc");
    let mut fhat = vec![0.0; n as usize + 1];
    for i in -1..n {
        let s: Stencil5 = std::array::from_fn(|m| q.at(0, [i - 2 + m as isize, 0, 0]));
        fhat[(i + 1) as usize] = weno5(&s, params);
    }
    for i in 0..n {
        let d = -(fhat[(i + 1) as usize] - fhat[i as usize]) * inv_dx;
        out.set(0, [i, 0, 0], d);
    }
    out
}

fn rhs_hj(q: &Field, params: &WenoParams) -> Field {
    // dq/dt = -(d- + d+)/2 + alpha (d+ - d-)/2 with u = alpha = 1
    let grid = *q.grid();
    let g = grid.ghost(0);
    let mut buf = vec![0.0; grid.ntot(0)];
    q.gather_line(0, 0, 0, 0, &mut buf);
    let (dm, dp) = hj_derivative_pair(&buf, g, grid.spacing(0), params);
    let mut out = allocate_field(&grid, 1).expect("alloc");
    for i in 0..grid.n(0) as isize {
        let (m, p) = (dm[i as usize], dp[i as usize]);
        out.set(0, [i, 0, 0], -0.5 * (m + p) + 0.5 * (p - m));
    }
    out
}

/// Advance the trapezoid advection problem to `t_final` at the given CFL.
pub fn solve_advection(
    n: usize,
    cfl: f64,
    t_final: f64,
    scheme: AdvectScheme,
    params: &WenoParams,
) -> Result<Field> {
    let grid = advection_grid(n);
    let mut q = init_advection_1d(&grid);
    let bc = periodic();
    let dt_nominal = cfl * grid.spacing(0); // unit advection speed
    let mut t = 0.0;
    while t < t_final - 1e-14 {
        let dt = dt_nominal.min(t_final - t);
        let mut rhs = |s: &mut Field| -> Result<Field> {
            fill_ghosts(s, &bc)?;
            Ok(match scheme {
                AdvectScheme::WenoHcl => rhs_hcl(s, params),
                AdvectScheme::WenoHj => rhs_hj(s, params),
            })
        };
        q = ssp_rk4_step(&q, dt, &mut rhs, &mut |_| Ok(()))?;
        t += dt;
    }
    fill_ghosts(&mut q, &bc)?;
    Ok(q)
}
