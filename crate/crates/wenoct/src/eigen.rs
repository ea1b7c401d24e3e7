//! Characteristic eigensystem of the ideal-MHD flux Jacobian.
//!
//! The practical basis used for characteristic projection consists of the
//! seven MHD wave eigenvectors (fast/Alfven/slow pairs plus entropy) in the
//! Roe-Balsara normalization, which stay linearly independent through the
//! magnetosonic degeneracies, plus a divergence-mode column that carries the
//! normal magnetic-field component. The seven wave columns are exact
//! eigenvectors of the conservative flux Jacobian; the divergence column is
//! the completion that keeps the basis invertible at stagnation points, and
//! is assigned the advective speed u.n for the Lax-Friedrichs splitting.
//!
//! The raw flux Jacobian itself has a zero row for the normal B component
//! (its flux is identically zero), so its true eighth eigenvalue is 0 and the
//! associated eigenvector blows up wherever any wave speed crosses zero.
//! [`EigenSystem::completed`] constructs that exact decomposition, away from
//! such degeneracies, for verification against a finite-difference Jacobian.

use nalgebra::{SMatrix, SVector};

use crate::state::{fast_slow_speeds, Primitive, StateError};

pub type Mat8 = SMatrix<f64, 8, 8>;
pub type Vec8 = SVector<f64, 8>;

/// Wave slots in field order: fast-, alfven-, slow-, entropy, divergence,
/// slow+, alfven+, fast+.
pub const DIV_SLOT: usize = 4;

#[derive(Clone, Debug)]
pub struct EigenSystem {
    /// Well-ordered speeds; lambda[3] = lambda[4] = u.n.
    pub lambda: [f64; 8],
    pub right: Mat8,
    pub left: Mat8,
}

/// Eigensystem at a primitive interface state expressed in the sweep frame
/// (first axis is the sweep direction).
pub fn eigensystem_x(w: &Primitive, gamma: f64) -> std::result::Result<EigenSystem, StateError> {
    let rho = w.rho();
    if !(rho > 0.0) {
        return Err(StateError::NonPositiveDensity(rho));
    }
    let p = w.p();
    if !(p > 0.0) {
        return Err(StateError::NonPositivePressure(p));
    }
    let [u, v, wv] = w.vel();
    let [b1, b2, b3] = w.b();

    let a2 = gamma * p / rho;
    let a = a2.sqrt();
    let ca2 = b1 * b1 / rho;
    let bperp2 = (b2 * b2 + b3 * b3) / rho;
    let (cf2, cs2) = fast_slow_speeds(a2, ca2, bperp2);
    let (cf, cs, ca) = (cf2.sqrt(), cs2.sqrt(), ca2.sqrt());

    let bp = (b2 * b2 + b3 * b3).sqrt();
    let (bty, btz) = if bp > 0.0 {
        (b2 / bp, b3 / bp)
    } else {
        (std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_1_SQRT_2)
    };

    // alpha_f/alpha_s renormalization through the degenerate limits
    let d = cf2 - cs2;
    let (af, as_) = if d <= f64::EPSILON * (cf2 + cs2) {
        (1.0, 0.0)
    } else if a2 <= cs2 {
        (0.0, 1.0)
    } else if a2 >= cf2 {
        (1.0, 0.0)
    } else {
        (((a2 - cs2) / d).sqrt(), ((cf2 - a2) / d).sqrt())
    };

    let s = if b1 >= 0.0 { 1.0 } else { -1.0 };
    let sr = rho.sqrt();

    // right eigenvectors in primitive variables (rho, u, v, w, p, B1, B2, B3)
    let mut rp = Mat8::zeros();
    let fast = |sg: f64, col: &mut [f64; 8]| {
        *col = [
            rho * af,
            sg * af * cf,
            -sg * as_ * cs * bty * s,
            -sg * as_ * cs * btz * s,
            af * rho * a2,
            0.0,
            as_ * a * sr * bty,
            as_ * a * sr * btz,
        ];
    };
    let slow = |sg: f64, col: &mut [f64; 8]| {
        *col = [
            rho * as_,
            sg * as_ * cs,
            sg * af * cf * bty * s,
            sg * af * cf * btz * s,
            as_ * rho * a2,
            0.0,
            -af * a * sr * bty,
            -af * a * sr * btz,
        ];
    };
    let alfven = |sg: f64, col: &mut [f64; 8]| {
        *col = [0.0, 0.0, -btz * s, bty * s, 0.0, 0.0, sg * sr * btz, -sg * sr * bty];
    };

    let mut col = [0.0; 8];
    fast(-1.0, &mut col);
    rp.set_column(0, &Vec8::from_column_slice(&col));
    alfven(-1.0, &mut col);
    rp.set_column(1, &Vec8::from_column_slice(&col));
    slow(-1.0, &mut col);
    rp.set_column(2, &Vec8::from_column_slice(&col));
    rp.set_column(3, &Vec8::from_column_slice(&[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]));
    rp.set_column(DIV_SLOT, &Vec8::from_column_slice(&[0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0]));
    slow(1.0, &mut col);
    rp.set_column(5, &Vec8::from_column_slice(&col));
    alfven(1.0, &mut col);
    rp.set_column(6, &Vec8::from_column_slice(&col));
    fast(1.0, &mut col);
    rp.set_column(7, &Vec8::from_column_slice(&col));

    // map to conserved variables: dq/dw applied column-wise
    let ke = 0.5 * (u * u + v * v + wv * wv);
    let g1 = 1.0 / (gamma - 1.0);
    let mut right = Mat8::zeros();
    for m in 0..8 {
        let c = rp.column(m);
        let (dr, du, dv, dw, dp, db1, db2, db3) = (c[0], c[1], c[2], c[3], c[4], c[5], c[6], c[7]);
        let col = [
            dr,
            u * dr + rho * du,
            v * dr + rho * dv,
            wv * dr + rho * dw,
            ke * dr + rho * (u * du + v * dv + wv * dw) + g1 * dp + b1 * db1 + b2 * db2 + b3 * db3,
            db1,
            db2,
            db3,
        ];
        right.set_column(m, &Vec8::from_column_slice(&col));
    }

    // normalize columns (scaling freedom; keeps the inverse well-conditioned)
    for m in 0..8 {
        let norm = right.column(m).norm();
        debug_assert!(norm > 0.0);
        let scaled = right.column(m) / norm;
        right.set_column(m, &scaled);
    }

    let left = right
        .try_inverse()
        .ok_or(StateError::NonPositiveDensity(rho))?; // unreachable for valid states

    let lambda = [u - cf, u - ca, u - cs, u, u, u + cs, u + ca, u + cf];
    Ok(EigenSystem { lambda, right, left })
}

/// Eigensystem in an arbitrary sweep direction, obtained by building the
/// x-frame system at the permuted state and mapping right columns and left
/// rows back to lab components.
pub fn eigensystem(w: &Primitive, dir: usize, gamma: f64) -> std::result::Result<EigenSystem, StateError> {
    let wf = Primitive(crate::state::to_frame(&w.0, dir));
    let es = eigensystem_x(&wf, gamma)?;
    Ok(transform_from_frame(&es, dir))
}

/// Completed exact decomposition of the raw flux Jacobian in direction `dir`
/// (see [`EigenSystem::completed`]).
pub fn eigensystem_completed(
    w: &Primitive,
    dir: usize,
    gamma: f64,
    margin: f64,
) -> std::result::Result<Option<(Mat8, [f64; 8], Mat8)>, StateError> {
    let wf = Primitive(crate::state::to_frame(&w.0, dir));
    let es = eigensystem_x(&wf, gamma)?;
    Ok(es.completed(&wf, margin).map(|(r, lam, l)| {
        let t = EigenSystem { lambda: lam, right: r, left: l };
        let m = transform_from_frame(&t, dir);
        (m.right, m.lambda, m.left)
    }))
}

fn transform_from_frame(es: &EigenSystem, dir: usize) -> EigenSystem {
    if dir == 0 {
        return es.clone();
    }
    let mut right = Mat8::zeros();
    let mut left = Mat8::zeros();
    for m in 0..8 {
        let col: [f64; 8] = std::array::from_fn(|r| es.right[(r, m)]);
        right.set_column(m, &Vec8::from_column_slice(&crate::state::from_frame(&col, dir)));
        let row: [f64; 8] = std::array::from_fn(|c| es.left[(m, c)]);
        let mapped = crate::state::from_frame(&row, dir);
        for c in 0..8 {
            left[(m, c)] = mapped[c];
        }
    }
    EigenSystem { lambda: es.lambda, right, left }
}

impl EigenSystem {
    /// Exact spectral decomposition (R, Lambda, L) of the raw flux Jacobian,
    /// obtained by patching the divergence column so that J R = R Lambda with
    /// the true divergence-wave speed 0. Returns `None` within `margin` of a
    /// sonic degeneracy, where the raw Jacobian is defective.
    pub fn completed(&self, w: &Primitive, margin: f64) -> Option<(Mat8, [f64; 8], Mat8)> {
        let [_, v, wv] = w.vel();
        let [b1, b2, b3] = w.b();
        // sigma = J d, where d is the (conserved-space) divergence column
        // direction (0,0,0,0,B1,1,0,0)/|..|; analytically
        // J d0 = -(0, B1, B2, B3, v B2 + w B3, 0, v, w) for unnormalized d0.
        let dnorm = (1.0 + b1 * b1).sqrt();
        let sigma = Vec8::from_column_slice(&[
            0.0,
            -b1,
            -b2,
            -b3,
            -(v * b2 + wv * b3),
            0.0,
            -v,
            -wv,
        ]) / dnorm;

        let mut t = [0.0; 8];
        let scale = self.lambda[7].abs().max(self.lambda[0].abs()).max(1e-300);
        for m in 0..8 {
            if m == DIV_SLOT {
                continue;
            }
            if self.lambda[m].abs() < margin * scale {
                return None;
            }
            let lm_dot = self.left.row(m).transpose().dot(&sigma);
            t[m] = -lm_dot / self.lambda[m];
        }

        let mut right = self.right;
        let mut div_col = right.column(DIV_SLOT).clone_owned();
        for m in 0..8 {
            if m != DIV_SLOT {
                div_col += t[m] * self.right.column(m);
            }
        }
        right.set_column(DIV_SLOT, &div_col);

        // T^{-1} negates the patch coefficients
        let mut left = self.left;
        for m in 0..8 {
            if m != DIV_SLOT {
                let patched = self.left.row(m) - t[m] * self.left.row(DIV_SLOT);
                left.set_row(m, &patched);
            }
        }

        let mut lambda = self.lambda;
        lambda[DIV_SLOT] = 0.0;
        Some((right, lambda, left))
    }
}
