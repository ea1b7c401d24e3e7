//! File output: CSV and legacy-VTK field dumps, diagnostics time series,
//! line slices, and convergence tables.
//!
//! CSV values are printed with 17 significant digits so that re-parsing
//! reproduces the binary doubles exactly. The schlieren column is the
//! 4th-order gradient magnitude of ln(rho), as its column name states.

use std::fmt::Write as _;
use std::path::Path;

use crate::config::SliceSpec;
use crate::curl::{deriv4, discrete_div};
use crate::diag::StepRecord;
use crate::error::{Result, SolverError};
use crate::grid::{allocate_field, Field};

#[inline]
fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

/// ln(rho) gradient magnitude via the 4th-order central operator.
fn schlieren_field(q: &Field) -> Field {
    let grid = *q.grid();
    let mut lnrho = allocate_field(&grid, 1).expect("alloc");
    let r = crate::curl::ext_ranges(&grid, grid.ghost(0).min(3) as isize);
    for k in r[2].clone() {
        for j in r[1].clone() {
            for i in r[0].clone() {
                let v = q.at(0, [i, j, k]).max(1e-300).ln();
                lnrho.set(0, [i, j, k], v);
            }
        }
    }
    let mut out = allocate_field(&grid, 1).expect("alloc");
    for ax in 0..grid.ndim {
        let d = deriv4(&lnrho, 0, ax);
        for idx in grid.interior_iter() {
            let v = out.at(0, idx) + d.at(0, idx).powi(2);
            out.set(0, idx, v);
        }
    }
    for idx in grid.interior_iter() {
        let v = out.at(0, idx).sqrt();
        out.set(0, idx, v);
    }
    out
}

/// Field dump: header + one record per interior point, x-fastest.
pub fn write_fields_csv(path: &Path, q: &Field, a: Option<&Field>, gamma: f64) -> Result<()> {
    let grid = *q.grid();
    let div = discrete_div(q);
    let schl = schlieren_field(q);
    let acomp = a.map(|f| f.ncomp()).unwrap_or(0);
    let mut header = String::from("x,y,z,rho,u1,u2,u3,p,B1,B2,B3,divB");
    if acomp == 1 {
        header.push_str(",A3");
    } else {
        for c in 0..acomp {
            let _ = write!(header, ",A{}", c + 1);
        }
    }
    header.push_str(",schlieren_grad_ln_rho");
    let mut text = String::with_capacity(grid.interior_len() * 64);
    text.push_str(&header);
    text.push('\n');
    for idx in grid.interior_iter() {
        let [x, y, z] = grid.coords(idx);
        let rho = q.at(0, idx);
        let u: Vec<f64> = (0..3).map(|c| q.at(1 + c, idx) / rho).collect();
        let b: Vec<f64> = (0..3).map(|c| q.at(5 + c, idx)).collect();
        let ke = 0.5 * rho * (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
        let me = 0.5 * (b[0] * b[0] + b[1] * b[1] + b[2] * b[2]);
        let p = (gamma - 1.0) * (q.at(4, idx) - ke - me);
        let mut cols = vec![x, y, z, rho, u[0], u[1], u[2], p, b[0], b[1], b[2]];
        cols.push(div.at(0, idx));
        if let Some(af) = a {
            for c in 0..af.ncomp() {
                cols.push(af.at(c, idx));
            }
        }
        cols.push(schl.at(0, idx));
        let line: Vec<String> = cols.iter().map(|&v| fmt17(v)).collect();
        text.push_str(&line.join(","));
        text.push('\n');
    }
    std::fs::write(path, text)?;
    Ok(())
}

/// Legacy ASCII VTK structured-points dataset, one scalar array per component.
pub fn write_fields_vtk(path: &Path, q: &Field, a: Option<&Field>, gamma: f64) -> Result<()> {
    let grid = *q.grid();
    let (nx, ny, nz) = (grid.n(0), grid.n(1), grid.n(2));
    let npts = nx * ny * nz;
    let mut text = String::with_capacity(npts * 40);
    text.push_str("# vtk DataFile Version 3.0\n");
    text.push_str("wenoct fields\n");
    text.push_str("ASCII\n");
    text.push_str("DATASET STRUCTURED_POINTS\n");
    let _ = writeln!(text, "DIMENSIONS {nx} {ny} {nz}");
    let _ = writeln!(
        text,
        "ORIGIN {} {} {}",
        grid.origin(0),
        grid.origin(1),
        grid.origin(2)
    );
    let _ = writeln!(
        text,
        "SPACING {} {} {}",
        grid.spacing(0),
        grid.spacing(1),
        grid.spacing(2)
    );
    let _ = writeln!(text, "POINT_DATA {npts}");

    let div = discrete_div(q);
    let schl = schlieren_field(q);
    let mut arrays: Vec<(String, Box<dyn Fn([isize; 3]) -> f64 + '_>)> = vec![
        ("rho".into(), Box::new(move |i| q.at(0, i))),
        ("u1".into(), Box::new(move |i| q.at(1, i) / q.at(0, i))),
        ("u2".into(), Box::new(move |i| q.at(2, i) / q.at(0, i))),
        ("u3".into(), Box::new(move |i| q.at(3, i) / q.at(0, i))),
        (
            "p".into(),
            Box::new(move |i| {
                let rho = q.at(0, i);
                let ke = 0.5
                    * (q.at(1, i).powi(2) + q.at(2, i).powi(2) + q.at(3, i).powi(2))
                    / rho;
                let me = 0.5 * (q.at(5, i).powi(2) + q.at(6, i).powi(2) + q.at(7, i).powi(2));
                (gamma - 1.0) * (q.at(4, i) - ke - me)
            }),
        ),
        ("B1".into(), Box::new(move |i| q.at(5, i))),
        ("B2".into(), Box::new(move |i| q.at(6, i))),
        ("B3".into(), Box::new(move |i| q.at(7, i))),
    ];
    let divref = &div;
    let schlref = &schl;
    arrays.push(("divB".into(), Box::new(move |i| divref.at(0, i))));
    arrays.push(("schlieren_grad_ln_rho".into(), Box::new(move |i| schlref.at(0, i))));
    if let Some(af) = a {
        for c in 0..af.ncomp() {
            let name = if af.ncomp() == 1 { "A3".to_string() } else { format!("A{}", c + 1) };
            arrays.push((name, Box::new(move |i| af.at(c, i))));
        }
    }

    for (name, get) in &arrays {
        let _ = writeln!(text, "SCALARS {name} double 1");
        text.push_str("LOOKUP_TABLE default\n");
        for idx in grid.interior_iter() {
            let _ = writeln!(text, "{}", fmt17(get(idx)));
        }
    }
    std::fs::write(path, text)?;
    Ok(())
}

/// Diagnostics time series.
pub fn write_diagnostics_csv(path: &Path, records: &[StepRecord]) -> Result<()> {
    let mut text = String::from("step,t,dt,max_divB,min_p,min_rho,sumB1,sumB2,sumB3\n");
    for r in records {
        let _ = writeln!(
            text,
            "{},{},{},{},{},{},{},{},{}",
            r.step,
            fmt17(r.t),
            fmt17(r.dt),
            fmt17(r.max_divb),
            fmt17(r.min_p),
            fmt17(r.min_rho),
            fmt17(r.sum_b[0]),
            fmt17(r.sum_b[1]),
            fmt17(r.sum_b[2])
        );
    }
    std::fs::write(path, text)?;
    Ok(())
}

#[derive(Clone, Debug)]
pub struct SliceRecord {
    pub coords: [f64; 3],
    pub rho: f64,
    pub u: [f64; 3],
    pub p: f64,
    pub b: [f64; 3],
    pub divb: f64,
    pub a: Vec<f64>,
}

/// Extract a 1D cut along `spec.axis` at the grid line nearest to the fixed
/// cross positions. Positions outside the domain are an error.
pub fn slice_extract(
    q: &Field,
    a: Option<&Field>,
    gamma: f64,
    spec: &SliceSpec,
) -> Result<Vec<SliceRecord>> {
    let grid = *q.grid();
    if spec.axis >= grid.ndim {
        return Err(SolverError::config(format!("slice axis {} not active", spec.axis)));
    }
    let (ca, cb) = crate::grid::cross_axes(spec.axis);
    let mut cross_idx = [0isize; 2];
    for (slot, (ax, pos)) in [(ca, spec.cross[0]), (cb, spec.cross[1])].into_iter().enumerate() {
        if ax < grid.ndim {
            let lo = grid.origin(ax) - 0.5 * grid.spacing(ax);
            let hi = grid.coord(ax, grid.n(ax) as isize - 1) + 0.5 * grid.spacing(ax);
            if pos < lo || pos > hi {
                return Err(SolverError::config(format!(
                    "slice position {pos} outside domain [{lo}, {hi}] on axis {ax}"
                )));
            }
            cross_idx[slot] = grid.nearest_index(ax, pos);
        }
    }
    let div = discrete_div(q);
    let mut out = Vec::with_capacity(grid.n(spec.axis));
    for i in 0..grid.n(spec.axis) as isize {
        let idx = crate::grid::line_index(spec.axis, i, cross_idx[0], cross_idx[1]);
        let rho = q.at(0, idx);
        let u = [q.at(1, idx) / rho, q.at(2, idx) / rho, q.at(3, idx) / rho];
        let b = [q.at(5, idx), q.at(6, idx), q.at(7, idx)];
        let ke = 0.5 * rho * (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
        let me = 0.5 * (b[0] * b[0] + b[1] * b[1] + b[2] * b[2]);
        out.push(SliceRecord {
            coords: grid.coords(idx),
            rho,
            u,
            p: (gamma - 1.0) * (q.at(4, idx) - ke - me),
            b,
            divb: div.at(0, idx),
            a: a.map(|af| (0..af.ncomp()).map(|c| af.at(c, idx)).collect()).unwrap_or_default(),
        });
    }
    Ok(out)
}

pub fn write_slice_csv(path: &Path, records: &[SliceRecord]) -> Result<()> {
    let acomp = records.first().map(|r| r.a.len()).unwrap_or(0);
    let mut header = String::from("x,y,z,rho,u1,u2,u3,p,B1,B2,B3,divB");
    if acomp == 1 {
        header.push_str(",A3");
    } else {
        for c in 0..acomp {
            let _ = write!(header, ",A{}", c + 1);
        }
    }
    let mut text = header;
    text.push('\n');
    for r in records {
        let mut cols = vec![
            r.coords[0], r.coords[1], r.coords[2], r.rho, r.u[0], r.u[1], r.u[2], r.p, r.b[0],
            r.b[1], r.b[2], r.divb,
        ];
        cols.extend(&r.a);
        let line: Vec<String> = cols.iter().map(|&v| fmt17(v)).collect();
        text.push_str(&line.join(","));
        text.push('\n');
    }
    std::fs::write(path, text)?;
    Ok(())
}

/// Side-by-side dump of the two 1D advection solutions and the 4th-order
/// central derivative of each.
pub fn write_advection_csv(path: &Path, hcl: &Field, hj: &Field) -> Result<()> {
    let grid = *hcl.grid();
    let d_hcl = deriv4(hcl, 0, 0);
    let d_hj = deriv4(hj, 0, 0);
    let mut text = String::from("x,q_hcl,q_hj,dq_hcl,dq_hj\n");
    for i in 0..grid.n(0) as isize {
        let _ = writeln!(
            text,
            "{},{},{},{},{}",
            fmt17(grid.coord(0, i)),
            fmt17(hcl.at(0, [i, 0, 0])),
            fmt17(hj.at(0, [i, 0, 0])),
            fmt17(d_hcl.at(0, [i, 0, 0])),
            fmt17(d_hj.at(0, [i, 0, 0]))
        );
    }
    std::fs::write(path, text)?;
    Ok(())
}

/// Convergence table: one row per level with per-component L2/Linf errors,
/// then EOC rows per refinement pair.
pub fn write_convergence_csv(
    path: &Path,
    report: &crate::convergence::ConvergenceReport,
) -> Result<()> {
    let mut text = String::from("mesh");
    for name in &report.components {
        let _ = write!(text, ",L2_{name},Linf_{name}");
    }
    text.push('\n');
    for (lvl, mesh) in report.meshes.iter().enumerate() {
        let mstr: Vec<String> = mesh.iter().map(|n| n.to_string()).collect();
        let _ = write!(text, "{}", mstr.join("x"));
        for c in 0..report.components.len() {
            let _ = write!(text, ",{},{}", fmt17(report.l2[lvl][c]), fmt17(report.linf[lvl][c]));
        }
        text.push('\n');
    }
    for pair in 0..report.eoc_l2.len() {
        let _ = write!(text, "EOC_{}", pair + 1);
        for c in 0..report.components.len() {
            let _ = write!(
                text,
                ",{:.3},{:.3}",
                report.eoc_l2[pair][c], report.eoc_linf[pair][c]
            );
        }
        text.push('\n');
    }
    std::fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid;

    fn tiny_state() -> (Field, Field) {
        let grid = Grid::new_2d([16, 16], [0.0, 0.0], [0.1, 0.1]).unwrap();
        let mut q = allocate_field(&grid, 8).unwrap();
        let mut a = allocate_field(&grid, 1).unwrap();
        let r = crate::curl::ext_ranges(&grid, 3);
        for j in r[1].clone() {
            for i in r[0].clone() {
                let (x, y) = (grid.coord(0, i), grid.coord(1, j));
                q.set(0, [i, j, 0], 1.0 + 0.1 * (x + y));
                q.set(4, [i, j, 0], 2.0);
                q.set(5, [i, j, 0], 0.3 * y);
                a.set(0, [i, j, 0], x * y);
            }
        }
        (q, a)
    }

    #[test]
    fn csv_has_header_plus_one_record_per_point() {
        let (q, a) = tiny_state();
        let dir = std::env::temp_dir().join("wenoct_out_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("fields.csv");
        write_fields_csv(&path, &q, Some(&a), 5.0 / 3.0).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 1 + 16 * 16);
        assert!(lines[0].starts_with("x,y,z,rho,u1,u2,u3,p,B1,B2,B3,divB,A3"));
        assert!(lines[0].ends_with(",schlieren_grad_ln_rho"));
    }

    #[test]
    fn csv_round_trips_doubles_bitwise() {
        let (q, a) = tiny_state();
        let dir = std::env::temp_dir().join("wenoct_out_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("roundtrip.csv");
        write_fields_csv(&path, &q, Some(&a), 5.0 / 3.0).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let grid = *q.grid();
        for (row, idx) in text.lines().skip(1).zip(grid.interior_iter()) {
            let cols: Vec<f64> = row.split(',').map(|s| s.parse().unwrap()).collect();
            assert_eq!(cols[3].to_bits(), q.at(0, idx).to_bits());
            assert_eq!(cols[8].to_bits(), q.at(5, idx).to_bits());
        }
    }

    #[test]
    fn vtk_structure_is_wellformed() {
        let (q, a) = tiny_state();
        let dir = std::env::temp_dir().join("wenoct_out_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("fields.vtk");
        write_fields_vtk(&path, &q, Some(&a), 5.0 / 3.0).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let mut lines = text.lines();
        assert!(lines.next().unwrap().starts_with("# vtk DataFile"));
        let _title = lines.next().unwrap();
        assert_eq!(lines.next().unwrap(), "ASCII");
        assert_eq!(lines.next().unwrap(), "DATASET STRUCTURED_POINTS");
        let dims: Vec<usize> = lines
            .next()
            .unwrap()
            .strip_prefix("DIMENSIONS ")
            .unwrap()
            .split_whitespace()
            .map(|s| s.parse().unwrap())
            .collect();
        assert_eq!(dims, vec![16, 16, 1]);
        assert!(lines.next().unwrap().starts_with("ORIGIN"));
        assert!(lines.next().unwrap().starts_with("SPACING"));
        let npts: usize =
            lines.next().unwrap().strip_prefix("POINT_DATA ").unwrap().parse().unwrap();
        assert_eq!(npts, 256);
        // each scalar array: SCALARS line, LOOKUP_TABLE line, npts values
        let rest: Vec<&str> = lines.collect();
        let scalars = rest.iter().filter(|l| l.starts_with("SCALARS")).count();
        assert!(scalars >= 9);
        assert_eq!(rest.len(), scalars * (2 + npts));
    }

    #[test]
    fn slice_of_uniform_component_is_constant() {
        let (mut q, _) = tiny_state();
        let grid = *q.grid();
        for idx in grid.interior_iter() {
            q.set(0, idx, 2.0);
            q.set(4, idx, 3.0);
        }
        let spec = SliceSpec { axis: 0, cross: [0.75, 0.0] };
        let recs = slice_extract(&q, None, 5.0 / 3.0, &spec).unwrap();
        assert_eq!(recs.len(), 16);
        assert!(recs.iter().all(|r| r.rho == 2.0));
    }

    #[test]
    fn slice_outside_domain_is_an_error() {
        let (q, _) = tiny_state();
        let spec = SliceSpec { axis: 0, cross: [5.0, 0.0] };
        assert!(slice_extract(&q, None, 5.0 / 3.0, &spec).is_err());
    }
}
