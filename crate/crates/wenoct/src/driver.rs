//! Simulation driver: couples the WENO-HCL base scheme, the WENO-HJ potential
//! update, the per-stage CT correction, and the SSP-RK4 stepper; collects
//! diagnostics; realizes the `run` entry point of the CLI.

use std::path::Path;

use crate::boundary::fill_ghosts;
use crate::config::{OutputFormat, RunConfig, Scheme};
use crate::curl::{ct_correct, EnergyOption};
use crate::diag::{self, StepRecord};
use crate::error::{Result, SolverError};
use crate::grid::{allocate_field, Field};
use crate::hcl::{compute_global_alphas, rhs_mhd};
use crate::hj::{rhs_potential_2d, rhs_potential_vector, ResistivityParams};
use crate::problems::Problem;
use crate::ssprk::{compute_dt, ssp_rk4_step, SystemState};
use crate::weno::WenoParams;
use crate::curl::CtMode;

/// Pointwise velocities of a conserved field (interior values).
pub fn velocity_field(q: &Field) -> Field {
    let grid = *q.grid();
    let mut v = allocate_field(&grid, 3).expect("alloc");
    for idx in grid.interior_iter() {
        let rho = q.at(0, idx);
        for c in 0..3 {
            v.set(c, idx, q.at(1 + c, idx) / rho);
        }
    }
    v
}

pub struct Simulation {
    pub problem: Problem,
    pub state: SystemState,
    pub t: f64,
    pub step_count: usize,
    pub records: Vec<StepRecord>,
    pub scheme: Scheme,
    pub energy: EnergyOption,
    pub res: ResistivityParams,
    pub weno: WenoParams,
    pub cfl: f64,
    pub diag_every: usize,
    /// Overrides the CFL step when set (diagnostic/determinism runs).
    pub fixed_dt: Option<f64>,
}

impl Simulation {
    pub fn new(problem: Problem, scheme: Scheme, energy: EnergyOption, nu: f64, cfl: f64) -> Result<Self> {
        let res = ResistivityParams { nu, ..ResistivityParams::default() };
        res.validate()?;
        let state = if scheme == Scheme::Base {
            problem.initialize_base()?
        } else {
            problem.initialize()?
        };
        let mut sim = Simulation {
            problem,
            state,
            t: 0.0,
            step_count: 0,
            records: Vec::new(),
            scheme,
            energy,
            res,
            weno: WenoParams::default(),
            cfl,
            diag_every: 1,
            fixed_dt: None,
        };
        sim.record();
        Ok(sim)
    }

    fn ct_mode(&self) -> Option<CtMode> {
        if self.scheme == Scheme::Ct {
            self.problem.ct_mode
        } else {
            None
        }
    }

    fn record(&mut self) {
        let rec = diag::collect(
            &self.state.q,
            self.ct_mode().and_then(|m| self.state.a.as_ref().map(|a| (a, m))),
            self.problem.gamma,
            self.step_count,
            self.t,
            0.0,
        );
        self.records.push(rec);
    }

    /// One SSP-RK4 step; dt from the CFL condition, clamped to land exactly
    /// on `t_stop`.
    pub fn step(&mut self, t_stop: f64) -> Result<f64> {
        let gamma = self.problem.gamma;
        let mut dt = match self.fixed_dt {
            Some(v) => v,
            None => compute_dt(&self.state.q, self.cfl, gamma)?,
        };
        if self.t + dt > t_stop {
            dt = t_stop - self.t;
        }
        if !(dt > 0.0) {
            return Err(SolverError::config(format!("nonpositive step dt = {dt}")));
        }

        let mode = self.ct_mode();
        let bc_q = self.problem.bc_q.clone();
        let bc_a = self.problem.bc_a.clone();
        let weno = self.weno;
        let res = self.res;
        let umode = mode;
        let step_idx = self.step_count;
        let mut stage = 0usize;

        let mut rhs = |s: &mut SystemState| -> Result<SystemState> {
            stage += 1;
            fill_ghosts(&mut s.q, &bc_q)?;
            if let (Some(a), Some(bca)) = (s.a.as_mut(), bc_a.as_ref()) {
                fill_ghosts(a, bca)?;
            }
            let alphas = compute_global_alphas(&s.q, gamma)
                .map_err(|e| annotate(e, step_idx, stage))?;
            let lq =
                rhs_mhd(&s.q, gamma, &alphas, &weno).map_err(|e| annotate(e, step_idx, stage))?;
            let la = match (umode, s.a.as_ref()) {
                (Some(CtMode::Scalar2d), Some(a)) => {
                    let vel = velocity_field(&s.q);
                    Some(rhs_potential_2d(a, &vel, &alphas.umax, &weno))
                }
                (Some(_), Some(a)) => {
                    let vel = velocity_field(&s.q);
                    Some(rhs_potential_vector(a, &vel, &alphas.umax, &res, dt, &weno)?)
                }
                _ => None,
            };
            Ok(SystemState { q: lq, a: la })
        };

        let energy = self.energy;
        let mut post = |s: &mut SystemState| -> Result<()> {
            if let (Some(m), Some(bca)) = (mode, bc_a.as_ref()) {
                if let Some(a) = s.a.as_mut() {
                    fill_ghosts(a, bca)?;
                }
                if let Some(a) = s.a.as_ref() {
                    ct_correct(&mut s.q, a, m, energy)?;
                }
            }
            Ok(())
        };

        self.state = ssp_rk4_step(&self.state, dt, &mut rhs, &mut post)?;
        self.t += dt;
        self.step_count += 1;
        if self.step_count % self.diag_every == 0 {
            self.record();
            let last = self.records.last_mut().expect("just pushed");
            last.dt = dt;
        }
        Ok(dt)
    }

    /// Advance to `t_final` (no-op when already there).
    pub fn advance_to(&mut self, t_final: f64) -> Result<()> {
        const MAX_STEPS: usize = 2_000_000;
        while self.t < t_final - 1e-12 {
            self.step(t_final)?;
            if self.step_count > MAX_STEPS {
                return Err(SolverError::config("step limit exceeded"));
            }
        }
        Ok(())
    }
}

fn annotate(e: SolverError, step: usize, stage: usize) -> SolverError {
    match e {
        SolverError::Positivity { location, reason } => SolverError::Positivity {
            location: format!("step {step} stage {stage}, {location}"),
            reason,
        },
        SolverError::InvalidState { location, reason } => SolverError::InvalidState {
            location: format!("step {step} stage {stage}, {location}"),
            reason,
        },
        other => other,
    }
}

#[derive(Clone, Debug)]
pub enum RunOutcome {
    Completed,
    /// The run aborted on a positivity failure (the base scheme is allowed
    /// to do this on some benchmarks); carries the failure time and message.
    PositivityFailure { t: f64, message: String },
}

#[derive(Debug)]
pub struct RunSummary {
    pub problem: String,
    pub steps: usize,
    pub t_end: f64,
    pub outcome: RunOutcome,
    pub records: Vec<StepRecord>,
}

/// Full CLI run: build the problem, advance to the final time, emit outputs.
pub fn run(config: &RunConfig) -> Result<RunSummary> {
    config.validate()?;
    if config.problem == "advection1d" {
        return run_advection(config);
    }
    let problem = crate::problems::by_name(&config.problem, config.mesh.clone())?;
    let t_final = config.t_final.unwrap_or(problem.t_final);
    let mut sim = Simulation::new(problem, config.scheme, config.energy, config.nu, config.cfl)?;
    sim.diag_every = config.diag_every;

    let outcome = match sim.advance_to(t_final) {
        Ok(()) => RunOutcome::Completed,
        Err(e @ SolverError::Positivity { .. }) => {
            RunOutcome::PositivityFailure { t: sim.t, message: e.to_string() }
        }
        Err(e) => return Err(e),
    };

    if let Some(dir) = &config.out_dir {
        std::fs::create_dir_all(dir)?;
        write_outputs(&mut sim, config, dir)?;
    }

    Ok(RunSummary {
        problem: sim.problem.name.clone(),
        steps: sim.step_count,
        t_end: sim.t,
        outcome,
        records: sim.records,
    })
}

fn write_outputs(sim: &mut Simulation, config: &RunConfig, dir: &Path) -> Result<()> {
    // refresh ghosts so derived quantities are well-defined up to the boundary
    fill_ghosts(&mut sim.state.q, &sim.problem.bc_q)?;
    if let (Some(a), Some(bca)) = (sim.state.a.as_mut(), sim.problem.bc_a.as_ref()) {
        fill_ghosts(a, bca)?;
    }
    let gamma = sim.problem.gamma;
    match config.format {
        OutputFormat::Csv => crate::output::write_fields_csv(
            &dir.join("fields.csv"),
            &sim.state.q,
            sim.state.a.as_ref(),
            gamma,
        )?,
        OutputFormat::Vtk => crate::output::write_fields_vtk(
            &dir.join("fields.vtk"),
            &sim.state.q,
            sim.state.a.as_ref(),
            gamma,
        )?,
    }
    crate::output::write_diagnostics_csv(&dir.join("diagnostics.csv"), &sim.records)?;
    for (i, spec) in config.slices.iter().enumerate() {
        let recs = crate::output::slice_extract(&sim.state.q, sim.state.a.as_ref(), gamma, spec)?;
        crate::output::write_slice_csv(&dir.join(format!("slice_{i}.csv")), &recs)?;
    }
    Ok(())
}

fn run_advection(config: &RunConfig) -> Result<RunSummary> {
    use crate::advect::{solve_advection, AdvectScheme};
    let n = config.mesh.as_ref().map(|m| m[0]).unwrap_or(300);
    let t_final = config.t_final.unwrap_or(4.0);
    let params = WenoParams::default();
    let cfl = config.cfl;
    let hcl = solve_advection(n, cfl, t_final, AdvectScheme::WenoHcl, &params)?;
    let hj = solve_advection(n, cfl, t_final, AdvectScheme::WenoHj, &params)?;
    if let Some(dir) = &config.out_dir {
        std::fs::create_dir_all(dir)?;
        crate::output::write_advection_csv(&dir.join("advection.csv"), &hcl, &hj)?;
    }
    Ok(RunSummary {
        problem: "advection1d".into(),
        steps: 0,
        t_end: t_final,
        outcome: RunOutcome::Completed,
        records: Vec::new(),
    })
}
