//! Command-line runner: area and entropy queries, the bound verifiers, the
//! sweepout matrix, the stability-equation suite, and the combined run.
//! Reports are deterministic; wall-clock timings go to a separate file.

mod config;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use config::{parse_extent, parse_grid, RunConfig};
use gaussweep::bounds::{self, BoundReport};
use gaussweep::jacobi;
use gaussweep::measure::{self, EntropySearch};
use gaussweep::report::{self, ReportDocument};
use gaussweep::surfaces::Piece;
use gaussweep::sweepout::{self, StepProfile, SweepoutConfig, SweepoutParams};
use gaussweep::{CompositeSurface, QuadratureSpec};

#[derive(Parser)]
#[command(
    name = "gaussweep",
    version,
    about = "Gaussian-area verification toolkit"
)]
struct Cli {
    /// Flat key=value config file; flags override file values
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory for reports (also via GAUSSWEEP_OUT_DIR)
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    /// Worker threads (0 = library default)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Comma-separated output formats: json,csv
    #[arg(long, global = true)]
    formats: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Gaussian area of a single catalogue piece
    Area(SurfaceArgs),
    /// Entropy search sup over centers and scales for a single piece
    Entropy(EntropyArgs),
    /// Run the global bound verifiers
    VerifyBounds {
        /// One of: capped-cylinders, cones-finite, cones-infinite,
        /// cone-monotonicity, translated-cones, ellipsoids, capped-graphs
        #[arg(long)]
        prop: Option<String>,
        /// Grid resolution override (0 = verifier default)
        #[arg(long, default_value_t = 0)]
        resolution: usize,
    },
    /// Assemble and certify the inversion families
    Sweepout {
        /// Comma-separated genus list
        #[arg(long, short = 'g')]
        g: Option<String>,
        /// Inversion radii as lo:hi:count
        #[arg(long = "R-grid")]
        r_grid: Option<String>,
        /// Slices per step
        #[arg(long)]
        t_res: Option<usize>,
        /// Also write per-slice CSV profiles to this path
        #[arg(long)]
        emit_profiles: Option<PathBuf>,
        /// Also evaluate step 3 under the printed (literal) convention
        #[arg(long)]
        both_conventions: bool,
    },
    /// Stability-equation suite: residuals, zeros, sign certificates
    Jacobi {
        /// Lambda magnitudes as lo:hi:count (log-spaced, mirrored, plus 0)
        #[arg(long)]
        lambda_grid: Option<String>,
        /// Write (r, phi1, phi2, residuals) curves to this CSV path
        #[arg(long)]
        emit_curves: Option<PathBuf>,
    },
    /// Every suite with the configured defaults
    All,
}

#[derive(Args)]
struct SurfaceArgs {
    /// sphere | cylinder | annulus | cone | ellipsoid | capped-graph |
    /// ray-tubes | vertical-tubes | swept-ends
    #[arg(long)]
    surface: Option<String>,
    /// Piece as a JSON document (alternative to --surface)
    #[arg(long)]
    json: Option<String>,
    #[arg(long, short = 'R')]
    r: Option<f64>,
    /// accepts "inf"
    #[arg(long, value_parser = |s: &str| parse_extent(s).map_err(|e| e.to_string()))]
    half_height: Option<f64>,
    #[arg(long)]
    r_inner: Option<f64>,
    /// accepts "inf"
    #[arg(long, value_parser = |s: &str| parse_extent(s).map_err(|e| e.to_string()))]
    r_outer: Option<f64>,
    #[arg(long)]
    height: Option<f64>,
    #[arg(long)]
    offset: Option<f64>,
    #[arg(long)]
    inclination: Option<f64>,
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    b: Option<f64>,
    #[arg(long)]
    sheets: Option<u8>,
    #[arg(long)]
    count: Option<u32>,
    #[arg(long)]
    radius: Option<f64>,
    #[arg(long)]
    ring_radius: Option<f64>,
    #[arg(long)]
    s_min: Option<f64>,
    /// accepts "inf"
    #[arg(long, value_parser = |s: &str| parse_extent(s).map_err(|e| e.to_string()))]
    s_max: Option<f64>,
    #[arg(long)]
    omega: Option<f64>,
    #[arg(long)]
    t: Option<f64>,
}

#[derive(Args)]
struct EntropyArgs {
    #[command(flatten)]
    surface: SurfaceArgs,
    /// Also sample off-axis centers through the Bessel kernel
    #[arg(long)]
    off_axis: bool,
}

impl SurfaceArgs {
    fn build(&self) -> Result<Piece> {
        if let Some(json) = &self.json {
            let piece: Piece = serde_json::from_str(json).context("parsing --json piece")?;
            piece.validate().map_err(|e| anyhow!("{e}"))?;
            return Ok(piece);
        }
        let name = self
            .surface
            .as_deref()
            .ok_or_else(|| anyhow!("either --surface or --json is required"))?;
        let need = |v: Option<f64>, flag: &str| {
            v.ok_or_else(|| anyhow!("--{flag} is required for --surface {name}"))
        };
        let piece = match name {
            "sphere" => Piece::Sphere {
                radius: need(self.r, "R")?,
            },
            "cylinder" => Piece::Cylinder {
                radius: need(self.r, "R")?,
                half_height: need(self.half_height, "half-height")?,
            },
            "annulus" => Piece::DoubledAnnulus {
                r_inner: need(self.r_inner, "r-inner")?,
                r_outer: need(self.r_outer, "r-outer")?,
                height: self.height.unwrap_or(0.0),
            },
            "cone" => Piece::DoubledCone {
                r_inner: need(self.r_inner, "r-inner")?,
                r_outer: need(self.r_outer, "r-outer")?,
                offset: self.offset.unwrap_or(0.0),
                inclination: need(self.inclination, "inclination")?,
            },
            "ellipsoid" => Piece::Ellipsoid {
                a: need(self.a, "a")?,
                b: need(self.b, "b")?,
            },
            "capped-graph" => Piece::CappedGraph {
                height: need(self.height, "height")?,
                a: need(self.a, "a")?,
                b: need(self.b, "b")?,
                sheets: self.sheets.unwrap_or(1),
            },
            "ray-tubes" => Piece::RayTubes {
                count: self.count.unwrap_or(1),
                radius: need(self.radius, "radius")?,
                s_min: self.s_min.unwrap_or(0.0),
                s_max: self.s_max.unwrap_or(f64::INFINITY),
            },
            "vertical-tubes" => Piece::VerticalTubes {
                count: self.count.unwrap_or(1),
                radius: need(self.radius, "radius")?,
                ring_radius: need(self.ring_radius, "ring-radius")?,
                half_height: need(self.half_height, "half-height")?,
            },
            "swept-ends" => Piece::SweptEnds {
                r: need(self.r, "R")?,
                omega: need(self.omega, "omega")?,
                h: need(self.height, "height")?,
                t: self.t.unwrap_or(1.0),
            },
            other => bail!("unknown surface {other:?}"),
        };
        piece.validate().map_err(|e| anyhow!("{e}"))?;
        Ok(piece)
    }
}

fn load_config(cli: &Cli) -> Result<RunConfig> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        cfg.apply_ini(&text)?;
    }
    if let Ok(dir) = std::env::var("GAUSSWEEP_OUT_DIR") {
        cfg.out_dir = PathBuf::from(dir);
    }
    if let Some(dir) = &cli.out_dir {
        cfg.out_dir = dir.clone();
    }
    if let Some(t) = cli.threads {
        cfg.threads = t;
    }
    if let Some(f) = &cli.formats {
        cfg.formats = f.split(',').map(|p| p.trim().to_string()).collect();
    }
    cfg.validate()?;
    Ok(cfg)
}

fn write_output(cfg: &RunConfig, name: &str, content: &str) -> Result<()> {
    std::fs::create_dir_all(&cfg.out_dir)
        .with_context(|| format!("creating {}", cfg.out_dir.display()))?;
    let path = cfg.out_dir.join(name);
    std::fs::write(&path, content).with_context(|| format!("writing {}", path.display()))?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn wants(cfg: &RunConfig, fmt: &str) -> bool {
    cfg.formats.iter().any(|f| f == fmt)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<bool> {
    let cfg = load_config(cli)?;
    if cfg.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.threads)
            .build_global()
            .ok();
    }
    let spec = cfg.quad_spec();
    match &cli.command {
        Command::Area(args) => {
            let piece = args.build()?;
            let area = measure::area(&piece, &spec).map_err(|e| anyhow!("{e}"))?;
            let record = report::op_record(
                "area",
                serde_json::to_value(&piece)?,
                area.value,
                area.error_bound,
                area.method,
            );
            print!("{}", report::render_json(&record));
            Ok(true)
        }
        Command::Entropy(args) => {
            let piece = args.surface.build()?;
            let surf = CompositeSurface::single("query", piece.clone());
            let search = EntropySearch {
                check_off_axis: args.off_axis,
                ..Default::default()
            };
            let res = measure::entropy(&surf, &search, &spec).map_err(|e| anyhow!("{e}"))?;
            let mut record = report::op_record(
                "entropy",
                serde_json::to_value(&piece)?,
                res.value,
                0.0,
                gaussweep::Method::Quadrature,
            );
            record["argmax"] = serde_json::json!({"y": res.argmax.y, "tau": res.argmax.tau});
            record["boundary_warning"] = serde_json::json!(res.on_boundary);
            if let Some(off) = res.off_axis_max {
                record["off_axis_max"] = serde_json::json!(off);
            }
            print!("{}", report::render_json(&record));
            Ok(!res.on_boundary)
        }
        Command::VerifyBounds { prop, resolution } => {
            let (reports, cones_mono) = run_bounds(prop.as_deref(), *resolution, &spec)?;
            let mut doc = ReportDocument::new(cfg.echo_json());
            for rep in &reports {
                doc.push_bound_report(rep);
            }
            for m in &cones_mono {
                doc.push_section(
                    &format!("cone-monotonicity-R={}", m.r),
                    m.pass,
                    false,
                    serde_json::to_value(m)?,
                );
            }
            if wants(&cfg, "json") {
                write_output(&cfg, "bounds.json", &report::render_json(&doc))?;
            }
            if wants(&cfg, "csv") {
                write_output(&cfg, "bounds.csv", &report::bounds_csv(&reports))?;
            }
            for rep in &reports {
                println!(
                    "{}: max {:.6} vs bound {:.6} ({}{})",
                    rep.name,
                    rep.computed_max,
                    rep.stated_bound,
                    if rep.pass { "pass" } else { "FAIL" },
                    if rep.discrepancy.is_some() {
                        ", discrepancy flagged"
                    } else {
                        ""
                    }
                );
            }
            Ok(doc.overall_pass)
        }
        Command::Sweepout {
            g,
            r_grid,
            t_res,
            emit_profiles,
            both_conventions,
        } => {
            let g_list: Vec<u32> = match g {
                Some(s) => s
                    .split(',')
                    .map(|p| p.trim().parse::<u32>())
                    .collect::<Result<_, _>>()?,
                None => cfg.g_list.clone(),
            };
            let radii = match r_grid {
                Some(s) => parse_grid(s, false)?,
                None => sweepout::default_r_grid(cfg.r_points),
            };
            let t_res = t_res.unwrap_or(cfg.t_res);
            let sw_config = SweepoutConfig {
                eta2: cfg.eta2,
                catenoid_c: cfg.catenoid_c,
                ..Default::default()
            };
            let (doc, profiles) = run_sweepout(
                &cfg,
                &g_list,
                &radii,
                t_res,
                &sw_config,
                &spec,
                *both_conventions,
            )?;
            if wants(&cfg, "json") {
                write_output(&cfg, "sweepout.json", &report::render_json(&doc))?;
            }
            if wants(&cfg, "csv") {
                let csv = report::profiles_csv(&profiles);
                match emit_profiles {
                    Some(path) => {
                        std::fs::write(path, &csv)
                            .with_context(|| format!("writing {}", path.display()))?;
                        eprintln!("wrote {}", path.display());
                    }
                    None => write_output(&cfg, "sweepout_profiles.csv", &csv)?,
                }
                write_output(
                    &cfg,
                    "sweepout_budgets.csv",
                    &report::budgets_csv(&profiles),
                )?;
            }
            Ok(doc.overall_pass)
        }
        Command::Jacobi {
            lambda_grid,
            emit_curves,
        } => {
            let lambdas = match lambda_grid {
                Some(s) => {
                    let parts: Vec<&str> = s.split(':').collect();
                    if parts.len() != 3 {
                        bail!("--lambda-grid expects lo:hi:count");
                    }
                    jacobi::lambda_grid(parts[0].parse()?, parts[1].parse()?, parts[2].parse()?)
                }
                None => jacobi::lambda_grid(1e-6, 1e6, 100),
            };
            let (doc, curves) = run_jacobi(&cfg, &lambdas)?;
            if wants(&cfg, "json") {
                write_output(&cfg, "jacobi.json", &report::render_json(&doc))?;
            }
            if wants(&cfg, "csv") {
                let csv = report::jacobi_curves_csv(&curves);
                match emit_curves {
                    Some(path) => {
                        std::fs::write(path, &csv)
                            .with_context(|| format!("writing {}", path.display()))?;
                        eprintln!("wrote {}", path.display());
                    }
                    None => write_output(&cfg, "jacobi_curves.csv", &csv)?,
                }
            }
            Ok(doc.overall_pass)
        }
        Command::All => run_all(&cfg, &spec),
    }
}

fn run_bounds(
    prop: Option<&str>,
    resolution: usize,
    spec: &QuadratureSpec,
) -> Result<(Vec<BoundReport>, Vec<bounds::ConeMonotonicityReport>)> {
    let mut reports = Vec::new();
    let mut mono = Vec::new();
    let want = |name: &str| prop.is_none() || prop == Some(name);
    if want("capped-cylinders") {
        reports.push(bounds::verify_capped_cylinders(resolution));
    }
    if want("cones-finite") {
        reports.push(bounds::verify_cones_finite(resolution, spec).map_err(|e| anyhow!("{e}"))?);
    }
    if want("cones-infinite") {
        reports.push(bounds::verify_cones_infinite(resolution));
    }
    if want("cone-monotonicity") {
        for r in [0.05, 0.1, 0.2] {
            mono.push(bounds::verify_cone_monotonicity(r, 50));
        }
    }
    if want("translated-cones") {
        let h_grid = [0.0, 0.25, 0.5, 1.0, 2.0];
        reports.push(bounds::verify_translated_cones(&h_grid, spec).map_err(|e| anyhow!("{e}"))?);
    }
    if want("ellipsoids") {
        reports.push(bounds::verify_ellipsoids(resolution, spec).map_err(|e| anyhow!("{e}"))?);
    }
    if want("capped-graphs") {
        let res = if resolution == 0 {
            0
        } else {
            resolution.min(16)
        };
        reports.push(bounds::verify_capped_graphs(res, spec).map_err(|e| anyhow!("{e}"))?);
    }
    if reports.is_empty() && mono.is_empty() {
        bail!("unknown proposition {prop:?}");
    }
    Ok((reports, mono))
}

#[allow(clippy::too_many_arguments)]
fn run_sweepout(
    cfg: &RunConfig,
    g_list: &[u32],
    radii: &[f64],
    t_res: usize,
    sw_config: &SweepoutConfig,
    spec: &QuadratureSpec,
    both_conventions: bool,
) -> Result<(ReportDocument, Vec<StepProfile>)> {
    let mut doc = ReportDocument::new(cfg.echo_json());
    let mut all_profiles: Vec<StepProfile> = Vec::new();
    let mut global_max = f64::NEG_INFINITY;
    let mut min_margin = f64::INFINITY;
    for &g in g_list {
        let cascade = sweepout::GenusCascade::new(g, sw_config, spec)
            .map_err(|e| anyhow!("cascade(g={g}): {e}"))?;
        let mut params_left: Option<SweepoutParams> = None;
        let mut params_right: Option<SweepoutParams> = None;
        for &r in radii {
            let params = cascade
                .at_radius(r, spec)
                .map_err(|e| anyhow!("params(g={g}, R={r}): {e}"))?;
            let rep = sweepout::inversion_max_area(&params, t_res, spec)
                .map_err(|e| anyhow!("inversion(g={g}, R={r}): {e}"))?;
            global_max = global_max.max(rep.max_area);
            min_margin = min_margin.min(rep.margin);
            doc.push_section(
                &format!("inversion g={g} R={r:.4}"),
                rep.pass,
                false,
                serde_json::json!({
                    "max_area": rep.max_area,
                    "margin": rep.margin,
                    "steps": rep.steps.iter().map(|s| {
                        serde_json::json!({"id": s.id, "max_area": s.max_area, "bound": s.bound, "pass": s.pass})
                    }).collect::<Vec<_>>(),
                }),
            );
            for p in &rep.steps {
                let mut tagged = p.clone();
                tagged.id = format!("g{g}-R{r:.4}-{}", p.id);
                all_profiles.push(tagged);
            }
            if (r - 0.2).abs() < 1e-12 {
                params_left = Some(params.clone());
            }
            if (r - 5.0).abs() < 1e-12 {
                params_right = Some(params.clone());
            }
            if both_conventions {
                let lit = sweepout::step3_literal_profile(&params, t_res, spec)
                    .map_err(|e| anyhow!("{e}"))?;
                let mut tagged = lit.clone();
                tagged.id = format!("g{g}-R{r:.4}-{}", lit.id);
                all_profiles.push(tagged);
            }
        }
        if let (Some(left), Some(right)) = (params_left, params_right) {
            let edges = sweepout::edge_variant_profiles(&left, &right, t_res.min(60), spec)
                .map_err(|e| anyhow!("edges(g={g}): {e}"))?;
            for e in &edges {
                doc.push_section(
                    &format!("edge g={g} {}", e.id),
                    e.pass,
                    false,
                    serde_json::json!({"max_area": e.max_area, "bound": e.bound}),
                );
                let mut tagged = e.clone();
                tagged.id = format!("g{g}-{}", e.id);
                all_profiles.push(tagged);
            }
            let gaps = sweepout::step_continuity_gaps(&left, spec).map_err(|e| anyhow!("{e}"))?;
            let max_gap = gaps.iter().cloned().fold(0.0f64, f64::max);
            doc.push_section(
                &format!("continuity g={g}"),
                max_gap < 1e-9,
                false,
                serde_json::json!({"gaps": gaps}),
            );
        }
    }
    doc.push_section(
        "sweepout summary",
        global_max < 2.0,
        false,
        serde_json::json!({"global_max": global_max, "min_margin": min_margin}),
    );
    Ok((doc, all_profiles))
}

type JacobiCurves = Vec<(f64, f64, f64, f64, f64)>;

fn run_jacobi(cfg: &RunConfig, lambdas: &[f64]) -> Result<(ReportDocument, JacobiCurves)> {
    let mut doc = ReportDocument::new(cfg.echo_json());
    let phi1 = jacobi::JacobiSolution::phi1();
    let phi2 = jacobi::JacobiSolution::phi2();
    let mut curves = Vec::new();
    let mut worst = 0.0f64;
    for r in gaussweep::optimize::linspace(0.05, 6.0, 240) {
        let p1 = phi1.eval(r).map_err(|e| anyhow!("{e}"))?;
        let p2 = phi2.eval(r).map_err(|e| anyhow!("{e}"))?;
        let e1 = jacobi::stability_residual(&phi1, r).map_err(|e| anyhow!("{e}"))?;
        let e2 = jacobi::stability_residual(&phi2, r).map_err(|e| anyhow!("{e}"))?;
        worst = worst.max(e1).max(e2);
        curves.push((r, p1, p2, e1, e2));
    }
    doc.push_section(
        "ode residuals",
        worst < 1e-9,
        false,
        serde_json::json!({"max_residual": worst, "grid": [0.05, 6.0, 240]}),
    );
    let shape = jacobi::verify_phi1_shape().map_err(|e| anyhow!("{e}"))?;
    doc.push_section(
        "phi1 shape",
        shape.pass,
        false,
        serde_json::to_value(&shape)?,
    );
    let nopos = jacobi::verify_no_positive_radial(lambdas).map_err(|e| anyhow!("{e}"))?;
    doc.push_section(
        "no positive radial solution",
        nopos.pass,
        false,
        serde_json::json!({
            "r1": nopos.r1,
            "r2": nopos.r2,
            "lambda_count": nopos.certificates.len(),
            "failures": nopos.failures,
        }),
    );
    let sphere = jacobi::sphere_profile_first_zero().map_err(|e| anyhow!("{e}"))?;
    doc.push_section(
        "sphere comparison",
        sphere.pass,
        false,
        serde_json::to_value(&sphere)?,
    );
    Ok((doc, curves))
}

fn run_all(cfg: &RunConfig, spec: &QuadratureSpec) -> Result<bool> {
    let mut doc = ReportDocument::new(cfg.echo_json());
    let mut timings: Vec<(String, f64)> = Vec::new();

    // normalization pins
    let t0 = Instant::now();
    {
        let sphere =
            measure::area(&Piece::Sphere { radius: 2.0 }, spec).map_err(|e| anyhow!("{e}"))?;
        let cyl = measure::area(
            &Piece::Cylinder {
                radius: 2.0f64.sqrt(),
                half_height: f64::INFINITY,
            },
            spec,
        )
        .map_err(|e| anyhow!("{e}"))?;
        let vol = measure::gaussian_volume_ball(f64::INFINITY);
        let pins_pass = (sphere.value - 4.0 / std::f64::consts::E).abs() < 1e-9
            && (cyl.value - (2.0 * std::f64::consts::PI / std::f64::consts::E).sqrt()).abs() < 1e-8
            && (vol.value - 0.5445).abs() < 5e-4;
        doc.push_section(
            "normalization pins",
            pins_pass,
            false,
            serde_json::json!({
                "sphere_radius_two": sphere.value,
                "cylinder_sqrt_two": cyl.value,
                "gaussian_volume": vol.value,
                "half_volume_radius": measure::half_volume_radius(),
            }),
        );
    }
    timings.push(("pins".into(), t0.elapsed().as_secs_f64()));

    // monotonicity and translation spot checks (fixed deterministic cases)
    let t0 = Instant::now();
    {
        let sphere = CompositeSurface::single("sphere", Piece::Sphere { radius: 2.0 });
        let cylinder = CompositeSurface::single(
            "cylinder",
            Piece::Cylinder {
                radius: 2.0f64.sqrt(),
                half_height: f64::INFINITY,
            },
        );
        let grid = gaussweep::optimize::linspace(0.0, 3.0, 80);
        let mut pass = true;
        for (surf, y, a) in [
            (&sphere, [1.0, 0.0, 0.0], 0.0),
            (&sphere, [0.0, 0.0, 1.0], 0.1),
            (&cylinder, [0.5, 0.5, 0.0], 0.05),
        ] {
            let rep = measure::shrinker_monotonicity_check(surf, y, a, &grid, 1e-8, spec)
                .map_err(|e| anyhow!("{e}"))?;
            pass &= rep.pass;
        }
        let caps = gaussweep::surfaces::lower_in_frame(
            &Piece::SphericalCaps {
                radius: 1.5,
                offset: 0.5,
            },
            &gaussweep::surfaces::LoweringFrame::unit(spec.truncation_threshold),
        )
        .map_err(|e| anyhow!("{e}"))?;
        let upper = gaussweep::RadialProfile {
            segments: caps
                .segments
                .iter()
                .filter(|s| matches!(s.curve, gaussweep::surfaces::Curve::Arc { center_z, .. } if center_z > 0.0))
                .cloned()
                .collect(),
            truncation_error: 0.0,
        };
        let tr =
            measure::translate_area_bound_check(&upper, 1.0, spec).map_err(|e| anyhow!("{e}"))?;
        pass &= tr.pass;
        doc.push_section(
            "shrinker properties",
            pass,
            false,
            serde_json::json!({"translate_lhs": tr.lhs, "translate_rhs": tr.rhs_bound}),
        );
    }
    timings.push(("properties".into(), t0.elapsed().as_secs_f64()));

    // bound verifiers
    let t0 = Instant::now();
    let (reports, mono) = run_bounds(None, cfg.bounds_resolution, spec)?;
    for rep in &reports {
        doc.push_bound_report(rep);
    }
    for m in &mono {
        doc.push_section(
            &format!("cone-monotonicity-R={}", m.r),
            m.pass,
            false,
            serde_json::json!({"analytic_value": m.analytic_value}),
        );
    }
    if wants(cfg, "csv") {
        write_output(cfg, "bounds.csv", &report::bounds_csv(&reports))?;
    }
    timings.push(("bounds".into(), t0.elapsed().as_secs_f64()));

    // sweepout matrix
    let t0 = Instant::now();
    let radii = sweepout::default_r_grid(cfg.r_points);
    let sw_config = SweepoutConfig {
        eta2: cfg.eta2,
        catenoid_c: cfg.catenoid_c,
        ..Default::default()
    };
    let (sweep_doc, profiles) =
        run_sweepout(cfg, &cfg.g_list, &radii, cfg.t_res, &sw_config, spec, false)?;
    for s in sweep_doc.sections {
        doc.push_section(&s.name, s.pass, s.discrepancy_flagged, s.body);
    }
    if wants(cfg, "csv") {
        write_output(
            cfg,
            "sweepout_profiles.csv",
            &report::profiles_csv(&profiles),
        )?;
        write_output(cfg, "sweepout_budgets.csv", &report::budgets_csv(&profiles))?;
    }
    timings.push(("sweepout".into(), t0.elapsed().as_secs_f64()));

    // stability equation
    let t0 = Instant::now();
    let lambdas = jacobi::lambda_grid(1e-6, 1e6, 100);
    let (jacobi_doc, curves) = run_jacobi(cfg, &lambdas)?;
    for s in jacobi_doc.sections {
        doc.push_section(&s.name, s.pass, s.discrepancy_flagged, s.body);
    }
    if wants(cfg, "csv") {
        write_output(
            cfg,
            "jacobi_curves.csv",
            &report::jacobi_curves_csv(&curves),
        )?;
    }
    timings.push(("jacobi".into(), t0.elapsed().as_secs_f64()));

    write_output(cfg, "config.ini", &cfg.to_ini())?;
    if wants(cfg, "json") {
        write_output(cfg, "report.json", &report::render_json(&doc))?;
        let timing_doc: Vec<serde_json::Value> = timings
            .iter()
            .map(|(name, secs)| serde_json::json!({"section": name, "seconds": secs}))
            .collect();
        write_output(cfg, "timings.json", &report::render_json(&timing_doc))?;
    }
    println!(
        "overall: {}",
        if doc.overall_pass { "pass" } else { "FAIL" }
    );
    Ok(doc.overall_pass)
}
