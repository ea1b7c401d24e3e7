//! Linear advection of a piecewise-linear profile: conservation-law WENO
//! against Hamilton-Jacobi WENO.
//!
//!     cargo run --release --example advection_hj_vs_hcl -- [N] [T]
//!
//! Both transport the profile cleanly; the difference is in the solution
//! DERIVATIVE, where the HCL route oscillates and the HJ route does not.

use std::path::PathBuf;

use wenoct::advect::{solve_advection, AdvectScheme};
use wenoct::curl::deriv4;
use wenoct::diag::total_variation;
use wenoct::output::write_advection_csv;
use wenoct::weno::WenoParams;

fn main() -> anyhow::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(300);
    let t: f64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(4.0);

    let params = WenoParams::default();
    let hcl = solve_advection(n, 1.0, t, AdvectScheme::WenoHcl, &params)?;
    let hj = solve_advection(n, 1.0, t, AdvectScheme::WenoHj, &params)?;

    let tv_q_hcl = total_variation(&hcl, 0, 0, [0.0, 0.0]);
    let tv_q_hj = total_variation(&hj, 0, 0, [0.0, 0.0]);
    let tv_d_hcl = total_variation(&deriv4(&hcl, 0, 0), 0, 0, [0.0, 0.0]);
    let tv_d_hj = total_variation(&deriv4(&hj, 0, 0), 0, 0, [0.0, 0.0]);
    println!("N = {n}, t = {t} (exact TV of q is 4):");
    println!("  TV(q):     HCL {tv_q_hcl:8.4}   HJ {tv_q_hj:8.4}");
    println!("  TV(dq/dx): HCL {tv_d_hcl:8.2}   HJ {tv_d_hj:8.2}");

    let out = PathBuf::from("out/advection1d");
    std::fs::create_dir_all(&out)?;
    write_advection_csv(&out.join("advection.csv"), &hcl, &hj)?;
    println!("profiles and derivatives written to out/advection1d/advection.csv");
    Ok(())
}
