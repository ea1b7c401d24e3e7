//! Orszag-Tang vortex with the constrained-transport scheme.
//!
//!     cargo run --release --example orszag_tang -- [N] [T_FINAL]
//!
//! Writes the final fields and a pressure slice at y = 0.625*pi to
//! out/orszag_tang/, and prints the divergence/positivity history summary.

use std::f64::consts::PI;
use std::path::PathBuf;

use wenoct::config::{RunConfig, SliceSpec};
use wenoct::driver::run;

fn main() -> anyhow::Result<()> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(96);
    let t_final: f64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(3.0);

    let mut cfg = RunConfig::default();
    cfg.problem = "orszag_tang".into();
    cfg.mesh = Some(vec![n, n]);
    cfg.t_final = Some(t_final);
    cfg.out_dir = Some(PathBuf::from("out/orszag_tang"));
    cfg.slices = vec![SliceSpec { axis: 0, cross: [0.625 * PI, 0.0] }];

    let summary = run(&cfg)?;
    println!("{} steps to t = {:.3}", summary.steps, summary.t_end);
    let max_div = summary.records.iter().map(|r| r.max_divb).fold(0.0f64, f64::max);
    let min_p = summary.records.iter().map(|r| r.min_p).fold(f64::INFINITY, f64::min);
    println!("max |div B| over the run: {max_div:.3e}");
    println!("min pressure over the run: {min_p:.4e}");
    println!("fields and the y = 0.625 pi pressure slice are in out/orszag_tang/");
    Ok(())
}
