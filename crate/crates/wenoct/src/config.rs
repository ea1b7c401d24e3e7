//! Run configuration: flat `key = value` config files mirroring the CLI
//! flags, with CLI values taking precedence.

use std::path::{Path, PathBuf};

use crate::curl::EnergyOption;
use crate::error::{Result, SolverError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    Base,
    Ct,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Vtk,
}

#[derive(Clone, Debug)]
pub struct SliceSpec {
    /// line direction
    pub axis: usize,
    /// physical positions on the two cross axes (snapped to grid lines)
    pub cross: [f64; 2],
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub problem: String,
    pub mesh: Option<Vec<usize>>,
    pub cfl: f64,
    pub t_final: Option<f64>,
    pub scheme: Scheme,
    pub energy: EnergyOption,
    pub nu: f64,
    pub out_dir: Option<PathBuf>,
    pub format: OutputFormat,
    pub slices: Vec<SliceSpec>,
    /// record diagnostics every this many steps
    pub diag_every: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            problem: String::new(),
            mesh: None,
            cfl: 3.0,
            t_final: None,
            scheme: Scheme::Ct,
            energy: EnergyOption::Conserve,
            nu: 0.1,
            out_dir: None,
            format: OutputFormat::Csv,
            slices: Vec::new(),
            diag_every: 1,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.problem.is_empty() {
            return Err(SolverError::config("no problem selected"));
        }
        if !(self.cfl > 0.0) {
            return Err(SolverError::config(format!("cfl must be positive, got {}", self.cfl)));
        }
        if let Some(mesh) = &self.mesh {
            if mesh.iter().any(|&n| n < 16) && self.problem != "advection1d" {
                return Err(SolverError::config(
                    "mesh must be at least 16 points per axis (WENO stencils plus boundaries)",
                ));
            }
        }
        if self.diag_every == 0 {
            return Err(SolverError::config("diag_every must be at least 1"));
        }
        Ok(())
    }

    /// Apply one `key = value` assignment (config file line or CLI override).
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let v = value.trim();
        match key.trim() {
            "problem" => self.problem = v.to_string(),
            "mesh" => {
                let mesh: std::result::Result<Vec<usize>, _> =
                    v.split(|c| c == ',' || c == 'x').map(|s| s.trim().parse()).collect();
                self.mesh = Some(mesh.map_err(|e| {
                    SolverError::config(format!("bad mesh '{v}': {e}"))
                })?);
            }
            "cfl" => self.cfl = parse_f64(key, v)?,
            "tfinal" | "t_final" => self.t_final = Some(parse_f64(key, v)?),
            "scheme" => {
                self.scheme = match v {
                    "base" => Scheme::Base,
                    "ct" => Scheme::Ct,
                    _ => return Err(SolverError::config(format!("scheme must be base|ct, got '{v}'"))),
                }
            }
            "energy" => {
                self.energy = match v {
                    "conserve" => EnergyOption::Conserve,
                    "pressure" => EnergyOption::Pressure,
                    _ => {
                        return Err(SolverError::config(format!(
                            "energy must be conserve|pressure, got '{v}'"
                        )))
                    }
                }
            }
            "nu" => self.nu = parse_f64(key, v)?,
            "out" | "out_dir" => self.out_dir = Some(PathBuf::from(v)),
            "format" => {
                self.format = match v {
                    "csv" => OutputFormat::Csv,
                    "vtk" => OutputFormat::Vtk,
                    _ => return Err(SolverError::config(format!("format must be csv|vtk, got '{v}'"))),
                }
            }
            "slice" => {
                // axis:pos1,pos2  e.g.  x:0.0,0.0  or  0:0.0,0.0
                let (ax, rest) = v
                    .split_once(':')
                    .ok_or_else(|| SolverError::config(format!("bad slice spec '{v}'")))?;
                let axis = match ax.trim() {
                    "x" | "0" => 0,
                    "y" | "1" => 1,
                    "z" | "2" => 2,
                    _ => return Err(SolverError::config(format!("bad slice axis '{ax}'"))),
                };
                let parts: Vec<&str> = rest.split(',').collect();
                let mut cross = [0.0; 2];
                for (slot, p) in parts.iter().take(2).enumerate() {
                    cross[slot] = parse_f64("slice", p.trim())?;
                }
                self.slices.push(SliceSpec { axis, cross });
            }
            "diag_every" => {
                self.diag_every = v
                    .parse()
                    .map_err(|e| SolverError::config(format!("bad diag_every '{v}': {e}")))?
            }
            other => return Err(SolverError::config(format!("unknown config key '{other}'"))),
        }
        Ok(())
    }

    /// Load assignments from a flat config file (# starts a comment).
    pub fn load_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path)?;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                SolverError::config(format!("{}:{}: expected key = value", path.display(), lineno + 1))
            })?;
            self.set(key, value)?;
        }
        Ok(())
    }
}

fn parse_f64(key: &str, v: &str) -> Result<f64> {
    v.parse().map_err(|e| SolverError::config(format!("bad {key} '{v}': {e}")))
}
