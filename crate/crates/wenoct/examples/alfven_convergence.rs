//! Mesh-refinement study on the smooth Alfven wave (4th-order convergence).
//!
//!     cargo run --release --example alfven_convergence -- [2|3] [LEVELS]

use std::path::PathBuf;

use wenoct::convergence::alfven_convergence;
use wenoct::output::write_convergence_csv;

fn main() -> anyhow::Result<()> {
    let mut args = std::env::args().skip(1);
    let ndim: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(2);
    let levels: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(3);

    let report = alfven_convergence(ndim, levels, 3.0)?;
    println!("{}D Alfven wave, errors at t = 1 (CFL 3.0):", ndim);
    print!("{:>14}", "mesh");
    for c in &report.components {
        print!("{:>11}{:>7}", format!("L2({c})"), "EOC");
    }
    println!();
    for (lvl, mesh) in report.meshes.iter().enumerate() {
        let ms: Vec<String> = mesh.iter().map(|n| n.to_string()).collect();
        print!("{:>14}", ms.join("x"));
        for c in 0..report.components.len() {
            print!("{:>11.3e}", report.l2[lvl][c]);
            if lvl > 0 {
                print!("{:>7.3}", report.eoc_l2[lvl - 1][c]);
            } else {
                print!("{:>7}", "");
            }
        }
        println!();
    }
    let out = PathBuf::from(format!("out/alfven{ndim}d"));
    std::fs::create_dir_all(&out)?;
    write_convergence_csv(&out.join("convergence.csv"), &report)?;
    println!("table written to {}", out.join("convergence.csv").display());
    Ok(())
}
