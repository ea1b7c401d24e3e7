//! Ghost-cell fill recipes.
//!
//! Faces are filled in axis order x, y, z over the full stored cross-range,
//! so later fills may read earlier ones; corner ghosts end up owned by the
//! highest-axis recipe. Interior values are never written.

use crate::error::{Result, SolverError};
use crate::grid::{line_index, Field};

#[derive(Clone, Debug)]
pub enum Recipe {
    /// Wrap-around copy of the interior.
    Periodic,
    /// Periodic copy plus a constant per-component jump across the period
    /// (potentials of uniform background fields are affine, not periodic).
    /// `jump[c]` is A_c(x + L) - A_c(x); low-face ghosts subtract it.
    PeriodicAffine { jump: Vec<f64> },
    /// Zero-order extrapolation (copy the nearest interior point).
    ZeroOrder,
    /// Linear extrapolation from the two nearest interior points.
    LinearExtrap,
    /// Frozen Dirichlet state written to every ghost point of the face.
    InflowFrozen { values: Vec<f64> },
    /// Copy along an integer lattice vector pointing into the domain
    /// (extrapolation parallel to a rotated discontinuity).
    LatticeCopy { step: [isize; 3] },
    /// Linear extrapolation along the lattice vector (for potentials that
    /// grow affinely along the discontinuity direction).
    LatticeLinear { step: [isize; 3] },
}

/// Fill all ghost layers of `field` according to per-face recipes,
/// `recipes[axis][side]` with side 0 = low face, 1 = high face.
pub fn fill_ghosts(field: &mut Field, recipes: &[[Recipe; 2]; 3]) -> Result<()> {
    let grid = *field.grid();
    for axis in 0..grid.ndim {
        for side in 0..2 {
            fill_face(field, axis, side, &recipes[axis][side])?;
        }
    }
    Ok(())
}

fn fill_face(field: &mut Field, axis: usize, side: usize, recipe: &Recipe) -> Result<()> {
    let grid = *field.grid();
    let n = grid.n(axis) as isize;
    let g = grid.ghost(axis) as isize;
    let ncomp = field.ncomp();

    let (ca, cb) = crate::grid::cross_axes(axis);
    let pa = -(grid.ghost(ca) as isize)..(grid.n(ca) as isize + grid.ghost(ca) as isize);
    let pb = -(grid.ghost(cb) as isize)..(grid.n(cb) as isize + grid.ghost(cb) as isize);

    if let Recipe::InflowFrozen { values } = recipe {
        if values.len() != ncomp {
            return Err(SolverError::config("inflow state has wrong component count"));
        }
    }

    for layer in 1..=g {
        let i = if side == 0 { -layer } else { n - 1 + layer };
        for q in pb.clone() {
            for p in pa.clone() {
                let idx = line_index(axis, i, p, q);
                match recipe {
                    Recipe::Periodic => {
                        let img = line_index(axis, i.rem_euclid(n), p, q);
                        for c in 0..ncomp {
                            let v = field.at(c, img);
                            field.set(c, idx, v);
                        }
                    }
                    Recipe::PeriodicAffine { jump } => {
                        if jump.len() != ncomp {
                            return Err(SolverError::config("affine jump has wrong length"));
                        }
                        let img = line_index(axis, i.rem_euclid(n), p, q);
                        let sign = if side == 0 { -1.0 } else { 1.0 };
                        for c in 0..ncomp {
                            let v = field.at(c, img) + sign * jump[c];
                            field.set(c, idx, v);
                        }
                    }
                    Recipe::ZeroOrder => {
                        let img = line_index(axis, if side == 0 { 0 } else { n - 1 }, p, q);
                        for c in 0..ncomp {
                            let v = field.at(c, img);
                            field.set(c, idx, v);
                        }
                    }
                    Recipe::LinearExtrap => {
                        let (i0, i1) = if side == 0 { (0, 1) } else { (n - 1, n - 2) };
                        let m = layer as f64;
                        let a = line_index(axis, i0, p, q);
                        let b = line_index(axis, i1, p, q);
                        for c in 0..ncomp {
                            let v = (1.0 + m) * field.at(c, a) - m * field.at(c, b);
                            field.set(c, idx, v);
                        }
                    }
                    Recipe::InflowFrozen { values } => {
                        for c in 0..ncomp {
                            field.set(c, idx, values[c]);
                        }
                    }
                    Recipe::LatticeCopy { step } => {
                        let src = stepped(&grid, idx, step, 1);
                        for c in 0..ncomp {
                            let v = field.at(c, src);
                            field.set(c, idx, v);
                        }
                    }
                    Recipe::LatticeLinear { step } => {
                        let s1 = stepped(&grid, idx, step, 1);
                        let s2 = stepped(&grid, idx, step, 2);
                        for c in 0..ncomp {
                            let v = 2.0 * field.at(c, s1) - field.at(c, s2);
                            field.set(c, idx, v);
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// idx + m*step, with each coordinate clamped to the stored range (the clamp
/// only engages on the outermost corner cells, which no interior stencil reads).
fn stepped(grid: &crate::grid::Grid, idx: [isize; 3], step: &[isize; 3], m: isize) -> [isize; 3] {
    let mut out = idx;
    for ax in 0..3 {
        let lo = -(grid.ghost(ax) as isize);
        let hi = grid.n(ax) as isize + grid.ghost(ax) as isize - 1;
        out[ax] = (idx[ax] + m * step[ax]).clamp(lo, hi);
    }
    out
}
