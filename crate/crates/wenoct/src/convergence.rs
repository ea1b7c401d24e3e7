//! Mesh-refinement convergence studies against the exact Alfven-wave solution.

use crate::config::Scheme;
use crate::curl::EnergyOption;
use crate::driver::Simulation;
use crate::error::{Result, SolverError};
use crate::problems::Alfven;

#[derive(Clone, Debug)]
pub struct ConvergenceReport {
    pub components: Vec<String>,
    pub meshes: Vec<Vec<usize>>,
    /// discrete L2 errors, normalized per point (root mean square);
    /// [level][component]
    pub l2: Vec<Vec<f64>>,
    pub linf: Vec<Vec<f64>>,
    /// experimental orders per refinement pair, [pair][component]
    pub eoc_l2: Vec<Vec<f64>>,
    pub eoc_linf: Vec<Vec<f64>>,
}

/// Experimental order of convergence for one mesh doubling.
#[inline]
pub fn eoc(coarse_err: f64, fine_err: f64) -> f64 {
    (coarse_err / fine_err).log2()
}

/// Run the 2D or 3D Alfven-wave convergence study over `levels` mesh
/// doublings at the given CFL number, measuring errors at t = 1.
pub fn alfven_convergence(ndim: usize, levels: usize, cfl: f64) -> Result<ConvergenceReport> {
    if levels < 1 {
        return Err(SolverError::config("need at least one level"));
    }
    let setup = match ndim {
        2 => Alfven::new_2d(),
        3 => Alfven::new_3d(),
        _ => return Err(SolverError::config("alfven convergence is 2D or 3D")),
    };
    let base: Vec<usize> = if ndim == 2 { vec![16, 32] } else { vec![16, 32, 32] };
    let components: Vec<String> = if ndim == 2 {
        vec!["B1".into(), "B2".into(), "B3".into(), "A3".into()]
    } else {
        vec!["B1".into(), "B2".into(), "B3".into(), "A1".into(), "A2".into(), "A3".into()]
    };

    let mut meshes = Vec::new();
    let mut l2: Vec<Vec<f64>> = Vec::new();
    let mut linf: Vec<Vec<f64>> = Vec::new();
    for lvl in 0..levels {
        let mesh: Vec<usize> = base.iter().map(|n| n << lvl).collect();
        let mut m3 = [1usize; 3];
        m3[..mesh.len()].copy_from_slice(&mesh);
        let problem = setup.problem(m3);
        let grid = problem.grid;
        let mut sim = Simulation::new(problem, Scheme::Ct, EnergyOption::Conserve, 0.1, cfl)?;
        sim.diag_every = usize::MAX; // no per-step diagnostics during sweeps
        sim.advance_to(1.0)?;

        let ncomp = components.len();
        let inv_n = 1.0 / grid.interior_len() as f64;
        let mut sq = vec![0.0f64; ncomp];
        let mut mx = vec![0.0f64; ncomp];
        let a = sim.state.a.as_ref().expect("CT run carries the potential");
        for idx in grid.interior_iter() {
            let x = grid.coords(idx);
            let wex = setup.exact_prim(x, 1.0);
            let aex = setup.exact_a(x, 1.0);
            for c in 0..3 {
                let e = (sim.state.q.at(5 + c, idx) - wex[5 + c]).abs();
                sq[c] += e * e;
                mx[c] = mx[c].max(e);
            }
            for c in 0..a.ncomp() {
                let e = (a.at(c, idx) - aex[c]).abs();
                sq[3 + c] += e * e;
                mx[3 + c] = mx[3 + c].max(e);
            }
        }
        meshes.push(mesh);
        l2.push(sq.iter().map(|s| (s * inv_n).sqrt()).collect());
        linf.push(mx);
    }

    let mut eoc_l2 = Vec::new();
    let mut eoc_linf = Vec::new();
    for lvl in 1..levels {
        eoc_l2.push(
            (0..components.len()).map(|c| eoc(l2[lvl - 1][c], l2[lvl][c])).collect(),
        );
        eoc_linf.push(
            (0..components.len()).map(|c| eoc(linf[lvl - 1][c], linf[lvl][c])).collect(),
        );
    }

    Ok(ConvergenceReport { components, meshes, l2, linf, eoc_l2, eoc_linf })
}
