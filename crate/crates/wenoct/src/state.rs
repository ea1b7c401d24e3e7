//! Pointwise ideal-MHD physics: conserved/primitive conversions, directional
//! fluxes, and characteristic wave speeds.
//!
//! Conserved ordering is (rho, m1, m2, m3, E, B1, B2, B3); primitive ordering
//! is (rho, u1, u2, u3, p, B1, B2, B3). Directional quantities are computed in
//! a cyclically permuted frame whose first axis is the sweep direction, so all
//! formulas are written once for the x direction.

use crate::error::{Result, SolverError};

pub const NCOMP: usize = 8;

/// Pointwise state validity failure (location is attached by field-level code).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StateError {
    NonPositiveDensity(f64),
    NonPositivePressure(f64),
}

impl StateError {
    pub fn at(self, location: impl Into<String>) -> SolverError {
        match self {
            StateError::NonPositiveDensity(r) => SolverError::InvalidState {
                location: location.into(),
                reason: format!("density {r} <= 0"),
            },
            StateError::NonPositivePressure(p) => SolverError::Positivity {
                location: location.into(),
                reason: format!("pressure {p} <= 0"),
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Conserved(pub [f64; 8]);

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Primitive(pub [f64; 8]);

impl Conserved {
    #[inline]
    pub fn rho(&self) -> f64 {
        self.0[0]
    }
    #[inline]
    pub fn mom(&self) -> [f64; 3] {
        [self.0[1], self.0[2], self.0[3]]
    }
    #[inline]
    pub fn ener(&self) -> f64 {
        self.0[4]
    }
    #[inline]
    pub fn b(&self) -> [f64; 3] {
        [self.0[5], self.0[6], self.0[7]]
    }
}

impl Primitive {
    #[inline]
    pub fn rho(&self) -> f64 {
        self.0[0]
    }
    #[inline]
    pub fn vel(&self) -> [f64; 3] {
        [self.0[1], self.0[2], self.0[3]]
    }
    #[inline]
    pub fn p(&self) -> f64 {
        self.0[4]
    }
    #[inline]
    pub fn b(&self) -> [f64; 3] {
        [self.0[5], self.0[6], self.0[7]]
    }
}

#[inline]
fn dot3(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// p = (gamma-1)(E - rho|u|^2/2 - |B|^2/2); fails on rho <= 0 or p <= 0.
pub fn cons_to_prim(q: &Conserved, gamma: f64) -> std::result::Result<Primitive, StateError> {
    let rho = q.rho();
    if !(rho > 0.0) {
        return Err(StateError::NonPositiveDensity(rho));
    }
    let m = q.mom();
    let b = q.b();
    let u = [m[0] / rho, m[1] / rho, m[2] / rho];
    let p = (gamma - 1.0) * (q.ener() - 0.5 * rho * dot3(u, u) - 0.5 * dot3(b, b));
    if !(p > 0.0) {
        return Err(StateError::NonPositivePressure(p));
    }
    Ok(Primitive([rho, u[0], u[1], u[2], p, b[0], b[1], b[2]]))
}

pub fn prim_to_cons(u: &Primitive, gamma: f64) -> Conserved {
    let rho = u.rho();
    let v = u.vel();
    let b = u.b();
    let e = u.p() / (gamma - 1.0) + 0.5 * rho * dot3(v, v) + 0.5 * dot3(b, b);
    Conserved([rho, rho * v[0], rho * v[1], rho * v[2], e, b[0], b[1], b[2]])
}

/// Cyclic permutation taking vector components so that `dir` becomes the
/// first frame axis: dir=0 -> (x,y,z), dir=1 -> (y,z,x), dir=2 -> (z,x,y).
#[inline]
pub fn frame_axes(dir: usize) -> [usize; 3] {
    match dir {
        0 => [0, 1, 2],
        1 => [1, 2, 0],
        2 => [2, 0, 1],
        _ => unreachable!(),
    }
}

/// Permute an 8-component state into the sweep frame of `dir`.
#[inline]
pub fn to_frame(q: &[f64; 8], dir: usize) -> [f64; 8] {
    let ax = frame_axes(dir);
    [
        q[0],
        q[1 + ax[0]],
        q[1 + ax[1]],
        q[1 + ax[2]],
        q[4],
        q[5 + ax[0]],
        q[5 + ax[1]],
        q[5 + ax[2]],
    ]
}

/// Inverse of [`to_frame`].
#[inline]
pub fn from_frame(q: &[f64; 8], dir: usize) -> [f64; 8] {
    let ax = frame_axes(dir);
    let mut out = [0.0; 8];
    out[0] = q[0];
    out[4] = q[4];
    for m in 0..3 {
        out[1 + ax[m]] = q[1 + m];
        out[5 + ax[m]] = q[5 + m];
    }
    out
}

/// Directional flux; the B-component along `dir` is identically zero.
pub fn flux(q: &Conserved, dir: usize, gamma: f64) -> std::result::Result<[f64; 8], StateError> {
    let qf = Conserved(to_frame(&q.0, dir));
    let w = cons_to_prim(&qf, gamma)?;
    let f = flux_x_full(&qf, &w);
    Ok(from_frame(&f, dir))
}

/// x-frame flux given both conserved and primitive views of the same state.
#[inline]
pub fn flux_x_full(q: &Conserved, w: &Primitive) -> [f64; 8] {
    let rho = w.rho();
    let [u, v, wv] = w.vel();
    let p = w.p();
    let [b1, b2, b3] = w.b();
    let bsq = b1 * b1 + b2 * b2 + b3 * b3;
    let ptot = p + 0.5 * bsq;
    let udotb = u * b1 + v * b2 + wv * b3;
    [
        rho * u,
        rho * u * u + ptot - b1 * b1,
        rho * u * v - b1 * b2,
        rho * u * wv - b1 * b3,
        u * (q.ener() + ptot) - b1 * udotb,
        0.0,
        u * b2 - v * b1,
        u * b3 - wv * b1,
    ]
}

/// Characteristic speeds in direction `n` (unit vector).
#[derive(Clone, Copy, Debug)]
pub struct WaveSpeeds {
    pub a: f64,
    pub ca: f64,
    pub cs: f64,
    pub cf: f64,
    /// lambda^1..lambda^8 in the well-ordered convention
    /// (un-cf, un-ca, un-cs, un, un, un+cs, un+ca, un+cf).
    pub lambda: [f64; 8],
}

/// Fast/slow speeds via a cancellation-free discriminant:
/// (a^2+b^2)^2 - 4 a^2 ca^2 = (a^2-ca^2)^2 + bp^2 (2(a^2+ca^2) + bp^2).
#[inline]
pub fn fast_slow_speeds(a2: f64, ca2: f64, bperp2: f64) -> (f64, f64) {
    let disc = (a2 - ca2) * (a2 - ca2) + bperp2 * (2.0 * (a2 + ca2) + bperp2);
    let cf2 = 0.5 * (a2 + ca2 + bperp2 + disc.sqrt());
    let cs2 = if cf2 > 0.0 { a2 * ca2 / cf2 } else { 0.0 };
    (cf2, cs2)
}

pub fn wave_speeds(u: &Primitive, n: [f64; 3], gamma: f64) -> std::result::Result<WaveSpeeds, StateError> {
    let rho = u.rho();
    if !(rho > 0.0) {
        return Err(StateError::NonPositiveDensity(rho));
    }
    let p = u.p();
    if !(p > 0.0) {
        return Err(StateError::NonPositivePressure(p));
    }
    debug_assert!((dot3(n, n) - 1.0).abs() < 1e-12, "n must be a unit vector");
    let b = u.b();
    let a2 = gamma * p / rho;
    let bn = dot3(b, n);
    let ca2 = bn * bn / rho;
    let bperp2 = (dot3(b, b) - bn * bn).max(0.0) / rho;
    let (cf2, cs2) = fast_slow_speeds(a2, ca2, bperp2);
    let (a, ca, cf, cs) = (a2.sqrt(), ca2.sqrt(), cf2.sqrt(), cs2.sqrt());
    let un = dot3(u.vel(), n);
    Ok(WaveSpeeds {
        a,
        ca,
        cs,
        cf,
        lambda: [un - cf, un - ca, un - cs, un, un, un + cs, un + ca, un + cf],
    })
}

/// Largest signal speed in direction `n`: |u.n| + cf.
pub fn max_signal_speed(u: &Primitive, n: [f64; 3], gamma: f64) -> std::result::Result<f64, StateError> {
    let ws = wave_speeds(u, n, gamma)?;
    Ok(ws.lambda[0].abs().max(ws.lambda[7].abs()))
}

/// Arithmetic average of primitive variables (interface state).
#[inline]
pub fn average_prim(a: &Primitive, b: &Primitive) -> Primitive {
    let mut out = [0.0; 8];
    for m in 0..8 {
        out[m] = 0.5 * (a.0[m] + b.0[m]);
    }
    Primitive(out)
}

/// Wrap a pointwise state error with a grid location.
pub fn locate<T>(r: std::result::Result<T, StateError>, idx: [isize; 3]) -> Result<T> {
    r.map_err(|e| e.at(format!("({}, {}, {})", idx[0], idx[1], idx[2])))
}
