//! Cloud-shock interaction in its 2D, 2.5D, or 3D variant.
//!
//!     cargo run --release --example cloud_shock -- [2d|25d|3d] [N]
//!
//! The 2.5D variant evolves the full vector potential (with artificial
//! resistivity, nu = 0.1) on the 2D mesh and corrects all three B components;
//! the 2D variant corrects only B1, B2 from the scalar potential.

use std::path::PathBuf;

use wenoct::config::RunConfig;
use wenoct::driver::run;

fn main() -> anyhow::Result<()> {
    let mut args = std::env::args().skip(1);
    let variant = args.next().unwrap_or_else(|| "25d".to_string());
    let problem = match variant.as_str() {
        "2d" => "cloud_shock_2d",
        "25d" => "cloud_shock_25d",
        "3d" => "cloud_shock_3d",
        other => anyhow::bail!("expected 2d|25d|3d, got '{other}'"),
    };
    let default_n = if variant == "3d" { 64 } else { 256 };
    let n: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(default_n);

    let mut cfg = RunConfig::default();
    cfg.problem = problem.into();
    cfg.mesh = Some(if variant == "3d" { vec![n, n, n] } else { vec![n, n] });
    cfg.nu = 0.1;
    cfg.out_dir = Some(PathBuf::from(format!("out/{problem}")));

    let summary = run(&cfg)?;
    let last = summary.records.last().unwrap();
    println!(
        "{problem}: {} steps to t = {:.3}, max|divB| = {:.3e}, min p = {:.4e}",
        summary.steps, summary.t_end, last.max_divb, last.min_p
    );
    println!("fields (with the schlieren column) in out/{problem}/fields.csv");
    Ok(())
}
