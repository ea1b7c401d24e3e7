//! Uniform Cartesian grids with ghost layers and flat point-value field storage.
//!
//! All solver data lives on nodal points (finite-difference semantics). Interior
//! points along an active axis are `origin + i*spacing` for `i = 0..n-1`; ghost
//! indices extend the same affine map to negative `i` and `i >= n`.

use crate::error::{Result, SolverError};

/// Ghost width used throughout: the widest stencil is the one-sided
/// Hamilton-Jacobi derivative, which reads q_{i-3}.
pub const GHOST_WIDTH: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub ndim: usize,
    n: [usize; 3],
    origin: [f64; 3],
    spacing: [f64; 3],
    ghost: usize,
}

impl Grid {
    pub fn new(ndim: usize, n: [usize; 3], origin: [f64; 3], spacing: [f64; 3]) -> Result<Self> {
        if !(1..=3).contains(&ndim) {
            return Err(SolverError::config(format!("ndim must be 1..=3, got {ndim}")));
        }
        let mut n = n;
        let mut spacing = spacing;
        let mut origin = origin;
        for ax in ndim..3 {
            n[ax] = 1;
            spacing[ax] = 1.0;
            origin[ax] = 0.0;
        }
        for ax in 0..ndim {
            if n[ax] < 1 {
                return Err(SolverError::config(format!("axis {ax}: need at least 1 point")));
            }
            if !(spacing[ax] > 0.0) {
                return Err(SolverError::config(format!(
                    "axis {ax}: spacing must be positive, got {}",
                    spacing[ax]
                )));
            }
        }
        Ok(Grid { ndim, n, origin, spacing, ghost: GHOST_WIDTH })
    }

    pub fn new_1d(n: usize, origin: f64, dx: f64) -> Result<Self> {
        Grid::new(1, [n, 1, 1], [origin, 0.0, 0.0], [dx, 1.0, 1.0])
    }

    pub fn new_2d(n: [usize; 2], origin: [f64; 2], d: [f64; 2]) -> Result<Self> {
        Grid::new(2, [n[0], n[1], 1], [origin[0], origin[1], 0.0], [d[0], d[1], 1.0])
    }

    pub fn new_3d(n: [usize; 3], origin: [f64; 3], d: [f64; 3]) -> Result<Self> {
        Grid::new(3, n, origin, d)
    }

    #[inline]
    pub fn n(&self, axis: usize) -> usize {
        self.n[axis]
    }

    #[inline]
    pub fn spacing(&self, axis: usize) -> f64 {
        self.spacing[axis]
    }

    #[inline]
    pub fn origin(&self, axis: usize) -> f64 {
        self.origin[axis]
    }

    /// Ghost width on `axis`; inactive axes carry no ghosts.
    #[inline]
    pub fn ghost(&self, axis: usize) -> usize {
        if axis < self.ndim {
            self.ghost
        } else {
            0
        }
    }

    /// Total points along `axis`, ghosts included.
    #[inline]
    pub fn ntot(&self, axis: usize) -> usize {
        self.n[axis] + 2 * self.ghost(axis)
    }

    pub fn interior_len(&self) -> usize {
        self.n[0] * self.n[1] * self.n[2]
    }

    pub fn min_spacing(&self) -> f64 {
        (0..self.ndim).map(|a| self.spacing[a]).fold(f64::INFINITY, f64::min)
    }

    /// Physical coordinate of grid index `i` along `axis` (affine map,
    /// valid for ghost indices too).
    #[inline]
    pub fn coord(&self, axis: usize, i: isize) -> f64 {
        self.origin[axis] + i as f64 * self.spacing[axis]
    }

    pub fn coords(&self, idx: [isize; 3]) -> [f64; 3] {
        [self.coord(0, idx[0]), self.coord(1, idx[1]), self.coord(2, idx[2])]
    }

    /// Nearest interior index to physical coordinate `x` along `axis`.
    pub fn nearest_index(&self, axis: usize, x: f64) -> isize {
        let i = ((x - self.origin[axis]) / self.spacing[axis]).round() as isize;
        i.clamp(0, self.n[axis] as isize - 1)
    }

    /// Iterate interior index triples, x fastest.
    pub fn interior_iter(&self) -> impl Iterator<Item = [isize; 3]> {
        let (nx, ny, nz) = (self.n[0] as isize, self.n[1] as isize, self.n[2] as isize);
        (0..nz).flat_map(move |k| {
            (0..ny).flat_map(move |j| (0..nx).map(move |i| [i, j, k]))
        })
    }
}

/// Multi-component nodal field on a [`Grid`], stored flat, component-major,
/// x-fastest, ghosts included on active axes.
#[derive(Clone, Debug)]
pub struct Field {
    grid: Grid,
    ncomp: usize,
    data: Vec<f64>,
}

/// `allocate_field`: zero-initialized storage over interior plus ghosts.
pub fn allocate_field(grid: &Grid, ncomp: usize) -> Result<Field> {
    if ncomp < 1 {
        return Err(SolverError::config("field needs at least one component"));
    }
    let len = ncomp * grid.ntot(0) * grid.ntot(1) * grid.ntot(2);
    Ok(Field { grid: *grid, ncomp, data: vec![0.0; len] })
}

impl Field {
    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn ncomp(&self) -> usize {
        self.ncomp
    }

    #[inline]
    fn flat(&self, c: usize, i: isize, j: isize, k: isize) -> usize {
        debug_assert!(c < self.ncomp);
        let g = &self.grid;
        let (gx, gy, gz) = (g.ghost(0) as isize, g.ghost(1) as isize, g.ghost(2) as isize);
        debug_assert!(i >= -gx && i < g.n(0) as isize + gx, "i={i} out of range");
        debug_assert!(j >= -gy && j < g.n(1) as isize + gy, "j={j} out of range");
        debug_assert!(k >= -gz && k < g.n(2) as isize + gz, "k={k} out of range");
        let (ntx, nty, ntz) = (g.ntot(0), g.ntot(1), g.ntot(2));
        let ii = (i + gx) as usize;
        let jj = (j + gy) as usize;
        let kk = (k + gz) as usize;
        ((c * ntz + kk) * nty + jj) * ntx + ii
    }

    #[inline]
    pub fn at(&self, c: usize, idx: [isize; 3]) -> f64 {
        self.data[self.flat(c, idx[0], idx[1], idx[2])]
    }

    #[inline]
    pub fn set(&mut self, c: usize, idx: [isize; 3], v: f64) {
        let f = self.flat(c, idx[0], idx[1], idx[2]);
        self.data[f] = v;
    }

    /// All components at one point.
    pub fn state_at(&self, idx: [isize; 3]) -> Vec<f64> {
        (0..self.ncomp).map(|c| self.at(c, idx)).collect()
    }

    /// Gather component `c` along `axis` (ghosts included) at cross indices
    /// `(p, q)` being the other two axes in increasing order.
    pub fn gather_line(&self, axis: usize, c: usize, p: isize, q: isize, out: &mut [f64]) {
        let g = self.grid.ghost(axis) as isize;
        let n = self.grid.n(axis) as isize;
        debug_assert_eq!(out.len(), (n + 2 * g) as usize);
        for (slot, i) in (-g..n + g).enumerate() {
            let idx = line_index(axis, i, p, q);
            out[slot] = self.at(c, idx);
        }
    }

    /// Scatter values onto the interior of one line (ghost slots of `vals`
    /// are ignored); `vals` is laid out like [`Field::gather_line`] output.
    pub fn scatter_line_interior(&mut self, axis: usize, c: usize, p: isize, q: isize, vals: &[f64]) {
        let g = self.grid.ghost(axis) as isize;
        let n = self.grid.n(axis) as isize;
        for i in 0..n {
            let idx = line_index(axis, i, p, q);
            self.set(c, idx, vals[(i + g) as usize]);
        }
    }

    /// Add values onto the interior of one line.
    pub fn add_line_interior(&mut self, axis: usize, c: usize, p: isize, q: isize, vals: &[f64]) {
        let g = self.grid.ghost(axis) as isize;
        let n = self.grid.n(axis) as isize;
        for i in 0..n {
            let idx = line_index(axis, i, p, q);
            let f = self.flat(c, idx[0], idx[1], idx[2]);
            self.data[f] += vals[(i + g) as usize];
        }
    }

    /// Cross-index ranges for line sweeps along `axis`: interior extents of
    /// the two remaining axes in increasing order.
    pub fn cross_ranges(&self, axis: usize) -> (isize, isize) {
        let (a, b) = cross_axes(axis);
        (self.grid.n(a) as isize, self.grid.n(b) as isize)
    }

    pub fn fill(&mut self, v: f64) {
        self.data.fill(v);
    }

    /// self += a * x  (all storage including ghosts)
    pub fn axpy(&mut self, a: f64, x: &Field) {
        debug_assert_eq!(self.data.len(), x.data.len());
        for (s, &v) in self.data.iter_mut().zip(x.data.iter()) {
            *s += a * v;
        }
    }

    /// self *= a
    pub fn scale(&mut self, a: f64) {
        for s in self.data.iter_mut() {
            *s *= a;
        }
    }

    /// self = a * self + b * y
    pub fn scale_add(&mut self, a: f64, b: f64, y: &Field) {
        debug_assert_eq!(self.data.len(), y.data.len());
        for (s, &v) in self.data.iter_mut().zip(y.data.iter()) {
            *s = a * *s + b * v;
        }
    }

    pub fn min_interior(&self, c: usize) -> f64 {
        self.grid
            .interior_iter()
            .map(|idx| self.at(c, idx))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn max_abs_interior(&self, c: usize) -> f64 {
        self.grid
            .interior_iter()
            .map(|idx| self.at(c, idx).abs())
            .fold(0.0, f64::max)
    }

    pub fn sum_interior(&self, c: usize) -> f64 {
        self.grid.interior_iter().map(|idx| self.at(c, idx)).sum()
    }

    /// All entries (ghosts included) finite?
    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }
}

/// The two axes crossing `axis`, in increasing order.
#[inline]
pub fn cross_axes(axis: usize) -> (usize, usize) {
    match axis {
        0 => (1, 2),
        1 => (0, 2),
        2 => (0, 1),
        _ => unreachable!(),
    }
}

/// Build an index triple with `i` on `axis` and `(p, q)` on the cross axes.
#[inline]
pub fn line_index(axis: usize, i: isize, p: isize, q: isize) -> [isize; 3] {
    match axis {
        0 => [i, p, q],
        1 => [p, i, q],
        2 => [p, q, i],
        _ => unreachable!(),
    }
}
