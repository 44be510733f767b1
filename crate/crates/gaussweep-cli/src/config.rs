//! Flat key=value run configuration.  Precedence: defaults, then the config
//! file, then the GAUSSWEEP_OUT_DIR environment variable, then flags.

use anyhow::{bail, Context, Result};
use std::fmt::Write as _;
use std::path::PathBuf;

use gaussweep::QuadratureSpec;

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub quad_abs_tol: f64,
    pub quad_rel_tol: f64,
    pub truncation_threshold: f64,
    /// 0 = per-verifier default resolution
    pub bounds_resolution: usize,
    pub g_list: Vec<u32>,
    pub r_points: usize,
    pub t_res: usize,
    pub eta2: f64,
    pub catenoid_c: f64,
    pub threads: usize,
    pub out_dir: PathBuf,
    pub formats: Vec<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            quad_abs_tol: 1e-11,
            quad_rel_tol: 1e-10,
            truncation_threshold: 1e-18,
            bounds_resolution: 0,
            g_list: vec![1, 5, 20],
            r_points: 20,
            t_res: 200,
            eta2: 0.05,
            catenoid_c: 0.2,
            threads: 0,
            out_dir: PathBuf::from("out"),
            formats: vec!["json".into(), "csv".into()],
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.quad_abs_tol <= 0.0 || self.quad_rel_tol <= 0.0 || self.truncation_threshold <= 0.0
        {
            bail!("tolerances must be positive");
        }
        if self.r_points < 2 || self.t_res < 2 {
            bail!("grid resolutions must be at least 2");
        }
        if self.g_list.is_empty() || self.g_list.contains(&0) {
            bail!("genus list must be nonempty with entries >= 1");
        }
        for f in &self.formats {
            if f != "json" && f != "csv" {
                bail!("unknown output format {f:?}");
            }
        }
        Ok(())
    }

    pub fn quad_spec(&self) -> QuadratureSpec {
        QuadratureSpec {
            abs_tol: self.quad_abs_tol,
            rel_tol: self.quad_rel_tol,
            truncation_threshold: self.truncation_threshold,
            ..Default::default()
        }
    }

    pub fn to_ini(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "quad_abs_tol={:e}", self.quad_abs_tol);
        let _ = writeln!(s, "quad_rel_tol={:e}", self.quad_rel_tol);
        let _ = writeln!(s, "truncation_threshold={:e}", self.truncation_threshold);
        let _ = writeln!(s, "bounds_resolution={}", self.bounds_resolution);
        let gs: Vec<String> = self.g_list.iter().map(|g| g.to_string()).collect();
        let _ = writeln!(s, "g_list={}", gs.join(","));
        let _ = writeln!(s, "r_points={}", self.r_points);
        let _ = writeln!(s, "t_res={}", self.t_res);
        let _ = writeln!(s, "eta2={:e}", self.eta2);
        let _ = writeln!(s, "catenoid_c={:e}", self.catenoid_c);
        let _ = writeln!(s, "threads={}", self.threads);
        let _ = writeln!(s, "out_dir={}", self.out_dir.display());
        let _ = writeln!(s, "formats={}", self.formats.join(","));
        s
    }

    pub fn apply_ini(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with('[') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .with_context(|| format!("line {}: expected key=value", lineno + 1))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "quad_abs_tol" => self.quad_abs_tol = value.parse()?,
                "quad_rel_tol" => self.quad_rel_tol = value.parse()?,
                "truncation_threshold" => self.truncation_threshold = value.parse()?,
                "bounds_resolution" => self.bounds_resolution = value.parse()?,
                "g_list" => {
                    self.g_list = value
                        .split(',')
                        .map(|p| p.trim().parse::<u32>())
                        .collect::<Result<_, _>>()?
                }
                "r_points" => self.r_points = value.parse()?,
                "t_res" => self.t_res = value.parse()?,
                "eta2" => self.eta2 = value.parse()?,
                "catenoid_c" => self.catenoid_c = value.parse()?,
                "threads" => self.threads = value.parse()?,
                "out_dir" => self.out_dir = PathBuf::from(value),
                "formats" => {
                    self.formats = value.split(',').map(|p| p.trim().to_string()).collect()
                }
                other => bail!("unknown config key {other:?}"),
            }
        }
        Ok(())
    }

    pub fn echo_json(&self) -> serde_json::Value {
        serde_json::json!({
            "quad_abs_tol": self.quad_abs_tol,
            "quad_rel_tol": self.quad_rel_tol,
            "truncation_threshold": self.truncation_threshold,
            "bounds_resolution": self.bounds_resolution,
            "g_list": self.g_list,
            "r_points": self.r_points,
            "t_res": self.t_res,
            "eta2": self.eta2,
            "catenoid_c": self.catenoid_c,
            "threads": self.threads,
            "out_dir": self.out_dir.display().to_string(),
            "formats": self.formats,
        })
    }
}

/// Parse "a:b:n" into n log- or linearly spaced values.
pub fn parse_grid(spec: &str, log: bool) -> Result<Vec<f64>> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        bail!("grid spec must be lo:hi:count, got {spec:?}");
    }
    let lo: f64 = parts[0].parse()?;
    let hi: f64 = parts[1].parse()?;
    let n: usize = parts[2].parse()?;
    if n < 2 || hi <= lo {
        bail!("grid spec needs hi > lo and count >= 2");
    }
    Ok(if log {
        gaussweep::optimize::logspace(lo, hi, n)
    } else {
        gaussweep::optimize::linspace(lo, hi, n)
    })
}

/// Parse a float that may be the string "inf".
pub fn parse_extent(s: &str) -> Result<f64> {
    if s == "inf" {
        Ok(f64::INFINITY)
    } else {
        Ok(s.parse::<f64>()?)
    }
}
