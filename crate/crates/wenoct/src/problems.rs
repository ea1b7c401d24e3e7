//! Benchmark problems: grids, initial conditions, boundary recipes.
//!
//! Every constrained-transport initializer sets the initial magnetic field
//! from the discrete curl of the initial potential (with the pressure kept),
//! so the divergence-free invariant holds exactly at t = 0.

use std::f64::consts::PI;

use crate::boundary::{fill_ghosts, Recipe};
use crate::curl::{ct_correct, CtMode, EnergyOption};
use crate::error::{Result, SolverError};
use crate::grid::{allocate_field, Grid};
use crate::ssprk::SystemState;
use crate::state::{prim_to_cons, Primitive};
use crate::GAMMA;

type InitFn = Box<dyn Fn([f64; 3]) -> ([f64; 8], Vec<f64>) + Send + Sync>;

pub struct Problem {
    pub name: String,
    pub grid: Grid,
    pub gamma: f64,
    pub t_final: f64,
    pub ct_mode: Option<CtMode>,
    pub bc_q: [[Recipe; 2]; 3],
    pub bc_a: Option<[[Recipe; 2]; 3]>,
    /// components of the potential field (1 scalar or 3 vector)
    pub acomp: usize,
    init: InitFn,
}

impl Problem {
    /// Build the initial coupled state. In CT mode the magnetic field is
    /// replaced by the discrete curl of the potential, keeping the pressure.
    pub fn initialize(&self) -> Result<SystemState> {
        self.init_state(true)
    }

    /// Initial state for base-scheme runs: analytic magnetic field, no
    /// potential carried.
    pub fn initialize_base(&self) -> Result<SystemState> {
        self.init_state(false)
    }

    fn init_state(&self, with_potential: bool) -> Result<SystemState> {
        let mut q = allocate_field(&self.grid, 8)?;
        let mut a = if self.ct_mode.is_some() && with_potential {
            Some(allocate_field(&self.grid, self.acomp)?)
        } else {
            None
        };
        for idx in self.grid.interior_iter() {
            let x = self.grid.coords(idx);
            let (prim, aval) = (self.init)(x);
            let qc = prim_to_cons(&Primitive(prim), self.gamma);
            for c in 0..8 {
                q.set(c, idx, qc.0[c]);
            }
            if let Some(af) = a.as_mut() {
                for c in 0..self.acomp {
                    af.set(c, idx, aval[c]);
                }
            }
        }
        if let (Some(af), Some(mode)) = (a.as_mut(), self.ct_mode) {
            let bc_a = self.bc_a.as_ref().expect("CT problems carry potential BCs");
            fill_ghosts(af, bc_a)?;
            ct_correct(&mut q, af, mode, EnergyOption::Pressure)?;
        }
        fill_ghosts(&mut q, &self.bc_q)?;
        Ok(SystemState { q, a })
    }
}

fn all_faces(r: Recipe) -> [[Recipe; 2]; 3] {
    [[r.clone(), r.clone()], [r.clone(), r.clone()], [r.clone(), r]]
}

/// Problem registry for the CLI; `mesh` overrides the default resolution.
pub fn by_name(name: &str, mesh: Option<Vec<usize>>) -> Result<Problem> {
    let m = |def: Vec<usize>| -> Vec<usize> { mesh.clone().unwrap_or(def) };
    match name {
        "briowu1d" => {
            let n = m(vec![400]);
            Ok(brio_wu_1d(n[0]))
        }
        "rotated_shock_tube" => {
            let mm = m(vec![180, 150]);
            rotated_shock_tube([mm[0], mm[1]])
        }
        "orszag_tang" => {
            let mm = m(vec![192, 192]);
            orszag_tang([mm[0], mm[1]])
        }
        "alfven2d" => {
            let mm = m(vec![16, 32]);
            Ok(Alfven::new_2d().problem([mm[0], mm[1], 1]))
        }
        "alfven3d" => {
            let mm = m(vec![16, 32, 32]);
            Ok(Alfven::new_3d().problem([mm[0], mm[1], mm[2]]))
        }
        "cloud_shock_2d" => {
            let mm = m(vec![256, 256]);
            cloud_shock([mm[0], mm[1], 1], CloudShockVariant::Scalar2d)
        }
        "cloud_shock_25d" => {
            let mm = m(vec![256, 256]);
            cloud_shock([mm[0], mm[1], 1], CloudShockVariant::Vector25d)
        }
        "cloud_shock_3d" => {
            let mm = m(vec![128, 128, 128]);
            cloud_shock([mm[0], mm[1], mm[2]], CloudShockVariant::Vector3d)
        }
        other => Err(SolverError::config(format!(
            "unknown problem '{other}' (expected one of advection1d, briowu1d, alfven2d, \
             alfven3d, rotated_shock_tube, orszag_tang, cloud_shock_2d, cloud_shock_25d, \
             cloud_shock_3d)"
        ))),
    }
}

// ---------------------------------------------------------------------------
// smooth Alfven wave
// ---------------------------------------------------------------------------

/// Circularly polarized Alfven wave travelling at unit speed along an oblique
/// lattice direction; the exact solution is the initial profile translated,
/// returning to the initial data at t = 1.
#[derive(Clone, Copy, Debug)]
pub struct Alfven {
    pub ndim: usize,
    pub n_hat: [f64; 3],
    pub t1: [f64; 3],
    pub t2: [f64; 3],
    pub lengths: [f64; 3],
    /// perturbation amplitude
    pub eps: f64,
}

impl Alfven {
    /// 2D wave along (2, 1)/sqrt(5) on [0, sqrt5/2] x [0, sqrt5].
    pub fn new_2d() -> Self {
        let s5 = 5.0f64.sqrt();
        Alfven {
            ndim: 2,
            n_hat: [2.0 / s5, 1.0 / s5, 0.0],
            t1: [-1.0 / s5, 2.0 / s5, 0.0],
            t2: [0.0, 0.0, 1.0],
            lengths: [s5 / 2.0, s5, 1.0],
            eps: 0.1,
        }
    }

    /// 3D wave along (1, 2, 2)/3 on [0, 3] x [0, 1.5]^2 (one period per axis).
    pub fn new_3d() -> Self {
        let s5 = 5.0f64.sqrt();
        Alfven {
            ndim: 3,
            n_hat: [1.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0],
            t1: [-2.0 / s5, 1.0 / s5, 0.0],
            t2: [-2.0 / (3.0 * s5), -4.0 / (3.0 * s5), 5.0 / (3.0 * s5)],
            lengths: [3.0, 1.5, 1.5],
            eps: 0.1,
        }
    }

    #[inline]
    pub fn xi(&self, x: [f64; 3]) -> f64 {
        x[0] * self.n_hat[0] + x[1] * self.n_hat[1] + x[2] * self.n_hat[2]
    }

    /// Exact primitive state at position x and time t.
    pub fn exact_prim(&self, x: [f64; 3], t: f64) -> [f64; 8] {
        let phase = 2.0 * PI * (self.xi(x) - t);
        let (s, c) = phase.sin_cos();
        let mut b = self.n_hat;
        let mut u = [0.0; 3];
        for d in 0..3 {
            let db = self.eps * (s * self.t1[d] + c * self.t2[d]);
            b[d] += db;
            u[d] = -db;
        }
        [1.0, u[0], u[1], u[2], 0.1, b[0], b[1], b[2]]
    }

    /// Exact potential at position x and time t: scalar A3 in 2D, the full
    /// vector in 3D.
    pub fn exact_a(&self, x: [f64; 3], t: f64) -> Vec<f64> {
        let phase = 2.0 * PI * (self.xi(x) - t);
        let (s, c) = phase.sin_cos();
        let amp = self.eps / (2.0 * PI);
        if self.ndim == 2 {
            let eta = self.t1[0] * x[0] + self.t1[1] * x[1];
            vec![eta + amp * c]
        } else {
            let n = self.n_hat;
            let bg = [
                0.5 * (n[1] * x[2] - n[2] * x[1]),
                0.5 * (n[2] * x[0] - n[0] * x[2]),
                0.5 * (n[0] * x[1] - n[1] * x[0]),
            ];
            (0..3).map(|d| bg[d] + amp * (s * self.t1[d] + c * self.t2[d])).collect()
        }
    }

    /// Per-axis affine jump of the potential across one period.
    fn affine_jumps(&self, axis: usize) -> Vec<f64> {
        let l = self.lengths[axis];
        if self.ndim == 2 {
            vec![self.t1[axis] * l]
        } else {
            // jump of 0.5 n x r across r -> r + L e_axis
            let n = self.n_hat;
            let e: [f64; 3] = std::array::from_fn(|d| if d == axis { l } else { 0.0 });
            vec![
                0.5 * (n[1] * e[2] - n[2] * e[1]),
                0.5 * (n[2] * e[0] - n[0] * e[2]),
                0.5 * (n[0] * e[1] - n[1] * e[0]),
            ]
        }
    }

    pub fn problem(&self, mesh: [usize; 3]) -> Problem {
        let setup = *self;
        let (grid, ct_mode, acomp) = if self.ndim == 2 {
            let d = [self.lengths[0] / mesh[0] as f64, self.lengths[1] / mesh[1] as f64];
            (
            Grid::new_2d([mesh[0], mesh[1]], [0.0, 0.0], d).expect("valid grid"),
                CtMode::Scalar2d,
                1,
            )
        } else {
            let d: [f64; 3] = std::array::from_fn(|ax| self.lengths[ax] / mesh[ax] as f64);
            (
                Grid::new_3d(mesh, [0.0; 3], d).expect("valid grid"),
                CtMode::Vector3d,
                3,
            )
        };
        let mut bc_a = all_faces(Recipe::Periodic);
        for ax in 0..self.ndim {
            let jump = self.affine_jumps(ax);
            bc_a[ax] = [
                Recipe::PeriodicAffine { jump: jump.clone() },
                Recipe::PeriodicAffine { jump },
            ];
        }
        Problem {
            name: format!("alfven{}d", self.ndim),
            grid,
            gamma: GAMMA,
            t_final: 1.0,
            ct_mode: Some(ct_mode),
            bc_q: all_faces(Recipe::Periodic),
            bc_a: Some(bc_a),
            acomp,
            init: Box::new(move |x| (setup.exact_prim(x, 0.0), setup.exact_a(x, 0.0))),
        }
    }
}

// ---------------------------------------------------------------------------
// shock tubes
// ---------------------------------------------------------------------------

/// Standard Brio-Wu states (used as a 1D reference oracle).
pub fn brio_wu_1d(n: usize) -> Problem {
    let d = 1.0 / n as f64;
    let grid = Grid::new_1d(n, 0.5 * d, d).expect("valid grid");
    Problem {
        name: "briowu1d".into(),
        grid,
        gamma: GAMMA,
        t_final: 0.1,
        ct_mode: None,
        bc_q: all_faces(Recipe::ZeroOrder),
        bc_a: None,
        acomp: 0,
        init: Box::new(|x| {
            let w = if x[0] < 0.5 {
                [1.0, 0.0, 0.0, 0.0, 1.0, 0.75, 1.0, 0.0]
            } else {
                [0.125, 0.0, 0.0, 0.0, 0.1, 0.75, -1.0, 0.0]
            };
            (w, vec![])
        }),
    }
}

/// States of the rotated shock tube in the shock-aligned frame.
fn rotated_tube_state(xi: f64) -> [f64; 8] {
    if xi < 0.0 {
        [1.0, -0.4, 0.0, 0.0, 1.0, 0.75, 1.0, 0.0]
    } else {
        [0.2, -0.4, 0.0, 0.0, 0.1, 0.75, -1.0, 0.0]
    }
}

/// Axis-aligned (alpha = 0) version of the rotated tube on [-1.2, 1.2];
/// the high-resolution 1D reference for the 2D run.
pub fn rotated_tube_1d(n: usize) -> Problem {
    let d = 2.4 / n as f64;
    let grid = Grid::new_1d(n, -1.2 + 0.5 * d, d).expect("valid grid");
    Problem {
        name: "rotated_tube_1d".into(),
        grid,
        gamma: GAMMA,
        t_final: 0.2,
        ct_mode: None,
        bc_q: all_faces(Recipe::ZeroOrder),
        bc_a: None,
        acomp: 0,
        init: Box::new(|x| (rotated_tube_state(x[0]), vec![])),
    }
}

/// Shock tube rotated by alpha = atan(1/2) on [-1.2, 1.2] x [-1, 1].
/// Top/bottom ghosts extrapolate along the interface direction (-1, 2):
/// conserved quantities by lattice copy, the potential by lattice-linear
/// extrapolation (it grows affinely along the interface).
pub fn rotated_shock_tube(mesh: [usize; 2]) -> Result<Problem> {
    let dx = 2.4 / mesh[0] as f64;
    let dy = 2.0 / mesh[1] as f64;
    if (dx - dy).abs() > 1e-12 * dx {
        return Err(SolverError::config(format!(
            "rotated tube needs square cells for the oblique lattice extrapolation \
             (got dx = {dx}, dy = {dy}); use meshes proportioned like 180x150"
        )));
    }
    let grid = Grid::new_2d(mesh, [-1.2 + 0.5 * dx, -1.0 + 0.5 * dy], [dx, dy]).expect("grid");
    let s5 = 5.0f64.sqrt();
    let (ca, sa) = (2.0 / s5, 1.0 / s5);
    let bc_q = [
        [Recipe::ZeroOrder, Recipe::ZeroOrder],
        [
            Recipe::LatticeCopy { step: [-1, 2, 0] },
            Recipe::LatticeCopy { step: [1, -2, 0] },
        ],
        [Recipe::ZeroOrder, Recipe::ZeroOrder],
    ];
    let bc_a = [
        [Recipe::LinearExtrap, Recipe::LinearExtrap],
        [
            Recipe::LatticeLinear { step: [-1, 2, 0] },
            Recipe::LatticeLinear { step: [1, -2, 0] },
        ],
        [Recipe::ZeroOrder, Recipe::ZeroOrder],
    ];
    Ok(Problem {
        name: "rotated_shock_tube".into(),
        grid,
        gamma: GAMMA,
        t_final: 0.2,
        ct_mode: Some(CtMode::Scalar2d),
        bc_q,
        bc_a: Some(bc_a),
        acomp: 1,
        init: Box::new(move |x| {
            let xi = x[0] * ca + x[1] * sa;
            let eta = -x[0] * sa + x[1] * ca;
            let s = rotated_tube_state(xi);
            let (rho, up, upar, u3, p, bp, bpar, b3) =
                (s[0], s[1], s[2], s[3], s[4], s[5], s[6], s[7]);
            let w = [
                rho,
                up * ca - upar * sa,
                up * sa + upar * ca,
                u3,
                p,
                bp * ca - bpar * sa,
                bp * sa + bpar * ca,
                b3,
            ];
            let a3 = 0.75 * eta + xi.abs();
            (w, vec![a3])
        }),
    })
}

// ---------------------------------------------------------------------------
// Orszag-Tang vortex
// ---------------------------------------------------------------------------

pub fn orszag_tang(mesh: [usize; 2]) -> Result<Problem> {
    let d = [2.0 * PI / mesh[0] as f64, 2.0 * PI / mesh[1] as f64];
    let grid = Grid::new_2d(mesh, [0.0, 0.0], d).expect("grid");
    Ok(Problem {
        name: "orszag_tang".into(),
        grid,
        gamma: GAMMA,
        t_final: 3.0,
        ct_mode: Some(CtMode::Scalar2d),
        bc_q: all_faces(Recipe::Periodic),
        bc_a: Some(all_faces(Recipe::Periodic)),
        acomp: 1,
        init: Box::new(|x| {
            let (xx, yy) = (x[0], x[1]);
            let w = [
                GAMMA * GAMMA,
                -yy.sin(),
                xx.sin(),
                0.0,
                GAMMA,
                -yy.sin(),
                (2.0 * xx).sin(),
                0.0,
            ];
            let a3 = 0.5 * (2.0 * xx).cos() + yy.cos();
            (w, vec![a3])
        }),
    })
}

// ---------------------------------------------------------------------------
// cloud-shock interaction
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CloudShockVariant {
    Scalar2d,
    Vector25d,
    Vector3d,
}

const CS_B_LEFT: f64 = 2.1826182;
const CS_B_RIGHT: f64 = 0.56418958;

pub fn cloud_shock(mesh: [usize; 3], variant: CloudShockVariant) -> Result<Problem> {
    let ndim = if variant == CloudShockVariant::Vector3d { 3 } else { 2 };
    let d: [f64; 3] = std::array::from_fn(|ax| 1.0 / mesh[ax] as f64);
    let grid = if ndim == 2 {
        Grid::new_2d([mesh[0], mesh[1]], [0.5 * d[0], 0.5 * d[1]], [d[0], d[1]]).expect("grid")
    } else {
        Grid::new_3d(mesh, [0.5 * d[0], 0.5 * d[1], 0.5 * d[2]], d).expect("grid")
    };
    let left = [3.86859, 11.2536, 0.0, 0.0, 167.345, 0.0, CS_B_LEFT, -CS_B_LEFT];
    let inflow = prim_to_cons(&Primitive(left), GAMMA).0.to_vec();
    let mut bc_q = all_faces(Recipe::ZeroOrder);
    bc_q[0][0] = Recipe::InflowFrozen { values: inflow };
    let (ct_mode, acomp) = match variant {
        CloudShockVariant::Scalar2d => (CtMode::Scalar2d, 1),
        CloudShockVariant::Vector25d => (CtMode::Vector25d, 3),
        CloudShockVariant::Vector3d => (CtMode::Vector3d, 3),
    };
    let name = match variant {
        CloudShockVariant::Scalar2d => "cloud_shock_2d",
        CloudShockVariant::Vector25d => "cloud_shock_25d",
        CloudShockVariant::Vector3d => "cloud_shock_3d",
    };
    Ok(Problem {
        name: name.into(),
        grid,
        gamma: GAMMA,
        t_final: 0.06,
        ct_mode: Some(ct_mode),
        bc_q,
        bc_a: Some(all_faces(Recipe::LinearExtrap)),
        acomp,
        init: Box::new(move |x| {
            let mut w = if x[0] < 0.05 {
                left
            } else {
                [1.0, 0.0, 0.0, 0.0, 1.0, 0.0, CS_B_RIGHT, CS_B_RIGHT]
            };
            // dense cloud in hydrostatic equilibrium ahead of the shock
            let mut r2 = (x[0] - 0.25).powi(2) + (x[1] - 0.5).powi(2);
            if ndim == 3 {
                r2 += (x[2] - 0.5).powi(2);
            }
            if x[0] > 0.05 && r2 < 0.15 * 0.15 {
                w[0] = 10.0;
            }
            let xs = x[0] - 0.05;
            let a = match variant {
                CloudShockVariant::Scalar2d => {
                    vec![if x[0] <= 0.05 { -CS_B_LEFT * xs } else { -CS_B_RIGHT * xs }]
                }
                _ => {
                    if x[0] <= 0.05 {
                        vec![0.0, -CS_B_LEFT * xs, -CS_B_LEFT * xs]
                    } else {
                        vec![0.0, CS_B_RIGHT * xs, -CS_B_RIGHT * xs]
                    }
                }
            };
            (w, a)
        }),
    })
}
