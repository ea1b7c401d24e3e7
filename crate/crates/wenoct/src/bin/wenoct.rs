use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};

use wenoct::config::RunConfig;
use wenoct::convergence::alfven_convergence;
use wenoct::driver::{run, RunOutcome};

#[derive(Parser)]
#[command(name = "wenoct", about = "Finite-difference WENO constrained-transport MHD solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a benchmark problem to its final time and write field dumps,
    /// slices, and a diagnostics time series.
    Run {
        /// flat key = value config file; CLI flags override file values
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        problem: Option<String>,
        /// mesh as NX[,NY[,NZ]]
        #[arg(long)]
        mesh: Option<String>,
        #[arg(long)]
        tfinal: Option<f64>,
        #[arg(long)]
        cfl: Option<f64>,
        /// base | ct
        #[arg(long)]
        scheme: Option<String>,
        /// conserve | pressure
        #[arg(long)]
        energy: Option<String>,
        /// artificial-resistivity magnitude
        #[arg(long)]
        nu: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// csv | vtk
        #[arg(long)]
        format: Option<String>,
        /// line cut "axis:pos1,pos2" (repeatable)
        #[arg(long)]
        slice: Vec<String>,
        #[arg(long)]
        diag_every: Option<usize>,
    },
    /// Alfven-wave convergence study with mesh doubling; prints the error
    /// table and emits it as CSV.
    Converge {
        /// alfven2d | alfven3d
        #[arg(long)]
        problem: String,
        #[arg(long)]
        levels: usize,
        #[arg(long, default_value_t = 3.0)]
        cfl: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match real_main() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn real_main() -> anyhow::Result<ExitCode> {
    let cli = Cli::parse();
    match cli.command {
        Command::Run {
            config,
            problem,
            mesh,
            tfinal,
            cfl,
            scheme,
            energy,
            nu,
            out,
            format,
            slice,
            diag_every,
        } => {
            let mut cfg = RunConfig::default();
            if let Some(path) = config {
                cfg.load_file(&path).context("loading config file")?;
            }
            if let Some(v) = problem {
                cfg.set("problem", &v)?;
            }
            if let Some(v) = mesh {
                cfg.set("mesh", &v)?;
            }
            if let Some(v) = tfinal {
                cfg.set("tfinal", &v.to_string())?;
            }
            if let Some(v) = cfl {
                cfg.set("cfl", &v.to_string())?;
            }
            if let Some(v) = scheme {
                cfg.set("scheme", &v)?;
            }
            if let Some(v) = energy {
                cfg.set("energy", &v)?;
            }
            if let Some(v) = nu {
                cfg.set("nu", &v.to_string())?;
            }
            if let Some(v) = out {
                cfg.out_dir = Some(v);
            }
            if let Some(v) = format {
                cfg.set("format", &v)?;
            }
            for s in slice {
                cfg.set("slice", &s)?;
            }
            if let Some(v) = diag_every {
                cfg.set("diag_every", &v.to_string())?;
            }

            let summary = run(&cfg)?;
            println!(
                "{}: {} steps to t = {:.6}",
                summary.problem, summary.steps, summary.t_end
            );
            if let Some(last) = summary.records.last() {
                println!(
                    "  max|divB| = {:.3e}  min p = {:.6e}  min rho = {:.6e}",
                    last.max_divb, last.min_p, last.min_rho
                );
            }
            match summary.outcome {
                RunOutcome::Completed => Ok(ExitCode::SUCCESS),
                RunOutcome::PositivityFailure { t, message } => {
                    eprintln!("positivity failure at t = {t:.6}: {message}");
                    Ok(ExitCode::FAILURE)
                }
            }
        }
        Command::Converge { problem, levels, cfl, out } => {
            let ndim = match problem.as_str() {
                "alfven2d" => 2,
                "alfven3d" => 3,
                other => anyhow::bail!("converge expects alfven2d or alfven3d, got '{other}'"),
            };
            let report = alfven_convergence(ndim, levels, cfl)?;
            print!("mesh");
            for c in &report.components {
                print!("  L2({c})      EOC ");
            }
            println!();
            for (lvl, mesh) in report.meshes.iter().enumerate() {
                let ms: Vec<String> = mesh.iter().map(|n| n.to_string()).collect();
                print!("{:>12}", ms.join("x"));
                for c in 0..report.components.len() {
                    print!("  {:9.3e}", report.l2[lvl][c]);
                    if lvl > 0 {
                        print!(" {:5.2}", report.eoc_l2[lvl - 1][c]);
                    } else {
                        print!("      ");
                    }
                }
                println!();
            }
            if let Some(dir) = out {
                std::fs::create_dir_all(&dir)?;
                wenoct::output::write_convergence_csv(&dir.join("convergence.csv"), &report)?;
                println!("wrote {}", dir.join("convergence.csv").display());
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
