//! 1D Brio-Wu shock tube with the base WENO scheme.
//!
//!     cargo run --release --example brio_wu -- [N]

use std::path::PathBuf;

use wenoct::config::{RunConfig, SliceSpec};
use wenoct::driver::run;

fn main() -> anyhow::Result<()> {
    let n: usize = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(800);
    let mut cfg = RunConfig::default();
    cfg.problem = "briowu1d".into();
    cfg.mesh = Some(vec![n]);
    cfg.set("scheme", "base")?;
    cfg.out_dir = Some(PathBuf::from("out/brio_wu"));
    cfg.slices = vec![SliceSpec { axis: 0, cross: [0.0, 0.0] }];
    let summary = run(&cfg)?;
    println!("{} steps to t = {:.3}; profile in out/brio_wu/slice_0.csv", summary.steps, summary.t_end);
    Ok(())
}
