//! 4th-order central-difference curl, divergence, and the CT correction.
//!
//! The same D^x, D^y, D^z stencils are used for the curl and the divergence;
//! since one-dimensional central stencils along distinct axes commute, the
//! discrete divergence of the discrete curl vanishes identically (to roundoff)
//! for arbitrary nodal data. That algebraic identity is what makes the
//! corrected magnetic field divergence-free.

use crate::error::Result;
use crate::grid::{allocate_field, Field};

/// Magnetic-potential configuration of a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CtMode {
    /// 2D scalar potential A3; corrects B1, B2 only.
    Scalar2d,
    /// z-independent 3-component potential; corrects B1, B2, B3 on a 2D grid.
    Vector25d,
    /// full 3D vector potential.
    Vector3d,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnergyOption {
    /// Option 1: keep the total energy (default).
    Conserve,
    /// Option 2: keep the pressure; E <- E + (|B_new|^2 - |B_old|^2)/2.
    Pressure,
}

/// 4th-order central first derivative (A_{i-2} - 8A_{i-1} + 8A_{i+1} - A_{i+2})/(12 dx)
/// applied along `axis` to component `c`. Valid on interior points plus one
/// ghost ring (the stencil reaches two more ghosts); other slots are zero.
pub fn deriv4(field: &Field, c: usize, axis: usize) -> Field {
    let grid = *field.grid();
    let mut out = allocate_field(&grid, 1).expect("one component");
    if axis >= grid.ndim {
        return out; // derivative along an inactive axis is zero
    }
    let inv12 = 1.0 / (12.0 * grid.spacing(axis));
    let ext = ext_ranges(&grid, 1);
    for k in ext[2].clone() {
        for j in ext[1].clone() {
            for i in ext[0].clone() {
                let idx = [i, j, k];
                let mut m2 = idx;
                let mut m1 = idx;
                let mut p1 = idx;
                let mut p2 = idx;
                m2[axis] -= 2;
                m1[axis] -= 1;
                p1[axis] += 1;
                p2[axis] += 2;
                let v = (field.at(c, m2) - 8.0 * field.at(c, m1) + 8.0 * field.at(c, p1)
                    - field.at(c, p2))
                    * inv12;
                out.set(0, idx, v);
            }
        }
    }
    out
}

/// Index ranges covering the interior extended by `ring` ghost layers on
/// active axes.
pub fn ext_ranges(grid: &crate::grid::Grid, ring: isize) -> [std::ops::Range<isize>; 3] {
    std::array::from_fn(|ax| {
        if ax < grid.ndim {
            -ring..grid.n(ax) as isize + ring
        } else {
            0..1
        }
    })
}

/// 2D curl of the scalar potential: (B1, B2) = (D^y A3, -D^x A3).
/// Values are produced on the interior plus one ghost ring.
pub fn curl_2d(a3: &Field) -> (Field, Field) {
    let b1 = deriv4(a3, 0, 1);
    let mut b2 = deriv4(a3, 0, 0);
    negate(&mut b2);
    (b1, b2)
}

/// 3D curl of the vector potential (components of A stored as 0,1,2).
pub fn curl_3d(a: &Field) -> [Field; 3] {
    let dy_a3 = deriv4(a, 2, 1);
    let dz_a2 = deriv4(a, 1, 2);
    let dz_a1 = deriv4(a, 0, 2);
    let dx_a3 = deriv4(a, 2, 0);
    let dx_a2 = deriv4(a, 1, 0);
    let dy_a1 = deriv4(a, 0, 1);
    [sub(&dy_a3, &dz_a2), sub(&dz_a1, &dx_a3), sub(&dx_a2, &dy_a1)]
}

/// 2.5D curl: B1, B2 from A3 as in 2D, B3 = D^x A2 - D^y A1 (z drops out).
pub fn curl_25d(a: &Field) -> [Field; 3] {
    let b1 = deriv4(a, 2, 1);
    let mut b2 = deriv4(a, 2, 0);
    negate(&mut b2);
    let dx_a2 = deriv4(a, 1, 0);
    let dy_a1 = deriv4(a, 0, 1);
    [b1, b2, sub(&dx_a2, &dy_a1)]
}

/// Discrete divergence D^x B1 + D^y B2 (+ D^z B3) of the B components of a
/// conserved field, using the same stencils as the curl. Only points whose
/// stencil stays within the stored B values are meaningful; see
/// [`crate::diag::divergence_from_potential`] for the boundary-safe variant.
pub fn discrete_div(q: &Field) -> Field {
    let grid = *q.grid();
    let mut out = allocate_field(&grid, 1).expect("one component");
    for ax in 0..grid.ndim {
        let d = deriv4(q, 5 + ax, ax);
        out.axpy(1.0, &d);
    }
    out
}

fn negate(f: &mut Field) {
    f.scale(-1.0);
}

fn sub(a: &Field, b: &Field) -> Field {
    let mut out = a.clone();
    out.axpy(-1.0, b);
    out
}

/// Replace the predicted magnetic field by the discrete curl of the potential
/// (interior points), with the chosen energy treatment.
pub fn ct_correct(q: &mut Field, a: &Field, mode: CtMode, energy: EnergyOption) -> Result<()> {
    let grid = *q.grid();
    let new_b: [Option<Field>; 3] = match mode {
        CtMode::Scalar2d => {
            let (b1, b2) = curl_2d(a);
            [Some(b1), Some(b2), None]
        }
        CtMode::Vector25d => {
            let [b1, b2, b3] = curl_25d(a);
            [Some(b1), Some(b2), Some(b3)]
        }
        CtMode::Vector3d => {
            let [b1, b2, b3] = curl_3d(a);
            [Some(b1), Some(b2), Some(b3)]
        }
    };
    for idx in grid.interior_iter() {
        let mut old_sq = 0.0;
        let mut new_sq = 0.0;
        for (c, nb) in new_b.iter().enumerate() {
            if let Some(nb) = nb {
                let bold = q.at(5 + c, idx);
                let bnew = nb.at(0, idx);
                old_sq += bold * bold;
                new_sq += bnew * bnew;
                q.set(5 + c, idx, bnew);
            }
        }
        if energy == EnergyOption::Pressure {
            let e = q.at(4, idx);
            q.set(4, idx, e + 0.5 * (new_sq - old_sq));
        }
    }
    Ok(())
}
