//! Global-optimization certification of the closed-form area propositions:
//! capped cylinders, cones (finite, infinite, translated), ellipsoids and
//! capped graphs.  Each verifier owns its grid, a pattern-search polish and
//! a slack estimate (half the final cell diameter times a measured local
//! Lipschitz bound, plus quadrature error where quadrature is involved).

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::measure::{self, MeasureError};
use crate::optimize::{self, linspace};
use crate::quad::QuadratureSpec;
use crate::special::{self, SQRT_PI};
use crate::surfaces::Piece;

/// Margin constants certified in this module.
pub const DELTA1: f64 = 0.133;
pub const DELTA2: f64 = 0.02;
pub const DELTA3: f64 = 0.0365;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridSpec {
    /// (lo, hi, points) per axis
    pub axes: Vec<(f64, f64, usize)>,
    pub polish_rounds: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundReport {
    pub name: String,
    pub computed_max: f64,
    pub argmax: Vec<f64>,
    pub stated_bound: f64,
    /// stated_bound − computed_max
    pub margin: f64,
    /// certified numerical slack (grid cell × local Lipschitz + quadrature)
    pub slack: f64,
    pub pass: bool,
    /// set when the measured value contradicts the printed constant
    pub discrepancy: Option<String>,
    /// named side values (boundary slices, closure values, analytic checks)
    pub extras: Vec<(String, f64)>,
    pub grid_spec: GridSpec,
}

impl BoundReport {
    fn finish(
        name: &str,
        max: optimize::GridMax,
        stated_bound: f64,
        slack: f64,
        grid_spec: GridSpec,
    ) -> Self {
        BoundReport {
            name: name.to_string(),
            computed_max: max.value,
            argmax: max.argmax,
            stated_bound,
            margin: stated_bound - max.value,
            slack,
            pass: max.value <= stated_bound + slack,
            discrepancy: None,
            extras: Vec::new(),
            grid_spec,
        }
    }
}

/// Half final cell diameter × a central-difference Lipschitz estimate.
fn lipschitz_slack<F: Fn(&[f64]) -> f64>(f: &F, at: &[f64], cell: &[f64]) -> f64 {
    let mut slack = 0.0;
    for (d, &step) in cell.iter().enumerate() {
        if step == 0.0 {
            continue;
        }
        let h = step.max(1e-9);
        let mut hi = at.to_vec();
        let mut lo = at.to_vec();
        hi[d] += h;
        lo[d] = (lo[d] - h).max(0.0);
        let l = ((f(&hi) - f(&lo)) / (hi[d] - lo[d])).abs();
        slack += 0.5 * step * (l + 1e-9);
    }
    slack
}

/// G(R,h) = e^{−h²/4} R² e^{−R²/4} + √π R e^{−R²/4} erf(h/2): the
/// capped-cylinder area bound.
pub fn capped_cylinder_g(r: f64, h: f64) -> f64 {
    let base = (-r * r / 4.0).exp();
    (-h * h / 4.0).exp() * r * r * base + SQRT_PI * r * base * special::erf(h / 2.0).value
}

/// Certify sup_{R,h} (|S(R,h)| + |Cyl(R,h)|) ≤ 1.867 via the stationarity
/// reduction h = 2/R plus the h = 0 and h → ∞ boundary slices.
pub fn verify_capped_cylinders(resolution: usize) -> BoundReport {
    let n = if resolution == 0 { 4000 } else { resolution };
    let f = |p: &[f64]| capped_cylinder_g(p[0], 2.0 / p[0]);
    let axes = vec![linspace(0.05, 12.0, n)];
    let max = optimize::grid_maximize(f, &axes, 40).expect("nonempty grid");
    let slack = lipschitz_slack(&f, &max.argmax, &max.cell_radius);

    let sphere_slice = 4.0 / std::f64::consts::E; // h = 0: max of R²e^{−R²/4}
    let cylinder_slice = (2.0 * std::f64::consts::PI / std::f64::consts::E).sqrt(); // h → ∞
    let r0 = max.argmax[0];
    let overall = max.value.max(sphere_slice).max(cylinder_slice);

    // the stationarity reduction: ∂_h G vanishes only at h = 2/R
    let fd = 1e-6;
    let dh =
        (capped_cylinder_g(r0, 2.0 / r0 + fd) - capped_cylinder_g(r0, 2.0 / r0 - fd)) / (2.0 * fd);

    let grid_spec = GridSpec {
        axes: vec![(0.05, 12.0, n)],
        polish_rounds: 40,
    };
    let mut rep = BoundReport::finish(
        "capped-cylinders",
        optimize::GridMax {
            value: overall,
            argmax: vec![r0, 2.0 / r0],
            on_boundary: false,
            cell_radius: max.cell_radius.clone(),
        },
        1.867,
        slack,
        grid_spec,
    );
    // an argmax pinned to the artificial R range would invalidate the scan
    if max.on_boundary {
        rep.pass = false;
    }
    rep.extras.push(("sphere_slice_max".into(), sphere_slice));
    rep.extras
        .push(("cylinder_slice_max".into(), cylinder_slice));
    rep.extras.push(("stationarity_dG_dh".into(), dh));
    // the exact capped-cylinder area sits below its G envelope at the argmax
    let spec = QuadratureSpec::default();
    let exact = measure::area(
        &Piece::SphericalCaps {
            radius: r0,
            offset: 2.0 / r0,
        },
        &spec,
    )
    .map(|caps| {
        caps.value
            + measure::area(
                &Piece::Cylinder {
                    radius: r0,
                    half_height: 2.0 / r0,
                },
                &spec,
            )
            .map(|c| c.value)
            .unwrap_or(f64::NAN)
    })
    .unwrap_or(f64::NAN);
    rep.extras.push(("exact_sum_at_argmax".into(), exact));
    rep
}

/// Finite cones: every sampled |C(R₁,R₂,φ)| ≤ 2; the sup 2 is
/// attained only in the closure at (0, ∞, 0).
pub fn verify_cones_finite(
    resolution: usize,
    spec: &QuadratureSpec,
) -> Result<BoundReport, MeasureError> {
    let n = if resolution == 0 { 14 } else { resolution };
    let r1s = linspace(0.0, 6.0, n);
    // w parametrizes the outer radius: R₂ = R₁ + w/(1−w), w = 1 ↦ ∞
    let mut ws = linspace(0.05, 0.95, n - 1);
    ws.push(1.0);
    let phis = linspace(0.0, std::f64::consts::FRAC_PI_2, n);

    let mut samples: Vec<(f64, f64, f64)> = Vec::with_capacity(r1s.len() * ws.len() * phis.len());
    for &r1 in &r1s {
        for &w in &ws {
            for &phi in &phis {
                samples.push((r1, w, phi));
            }
        }
    }
    let values: Vec<f64> = samples
        .par_iter()
        .map(|&(r1, w, phi)| cone_area_sample(r1, w, phi, spec))
        .collect::<Result<Vec<_>, _>>()?;

    let mut best = f64::NEG_INFINITY;
    let mut arg = (0.0, 0.0, 0.0);
    let mut violations = 0usize;
    for (&(r1, w, phi), &v) in samples.iter().zip(&values) {
        if v > best {
            best = v;
            arg = (r1, w, phi);
        }
        if v > 2.0 + 1e-9 {
            violations += 1;
        }
    }
    let r2 = if arg.1 >= 1.0 {
        f64::INFINITY
    } else {
        arg.0 + arg.1 / (1.0 - arg.1)
    };
    let grid_spec = GridSpec {
        axes: vec![
            (0.0, 6.0, n),
            (0.05, 1.0, n),
            (0.0, std::f64::consts::FRAC_PI_2, n),
        ],
        polish_rounds: 0,
    };
    let mut rep = BoundReport {
        name: "cones-finite".into(),
        computed_max: best,
        argmax: vec![arg.0, r2, arg.2],
        stated_bound: 2.0,
        margin: 2.0 - best,
        slack: spec.abs_tol * 10.0,
        pass: violations == 0,
        discrepancy: None,
        extras: vec![("samples_above_two".into(), violations as f64)],
        grid_spec,
    };
    rep.extras
        .push(("sample_count".into(), samples.len() as f64));
    Ok(rep)
}

fn cone_area_sample(r1: f64, w: f64, phi: f64, spec: &QuadratureSpec) -> Result<f64, MeasureError> {
    let half_pi = std::f64::consts::FRAC_PI_2;
    if w >= 1.0 {
        return Ok(measure::cone_infinite_closed(r1, phi));
    }
    let r2 = r1 + w / (1.0 - w);
    if r2 <= r1 + 1e-12 {
        return Ok(0.0);
    }
    if phi >= half_pi {
        // the φ → π/2 closure with finite R₂ is the infinite vertical
        // cylinder over r = R₁ (the sheet height tan(φ)(R₂−R₁) diverges)
        if r1 == 0.0 {
            return Ok(0.0);
        }
        let p = Piece::Cylinder {
            radius: r1,
            half_height: f64::INFINITY,
        };
        return Ok(measure::area(&p, spec)?.value);
    }
    let p = Piece::DoubledCone {
        r_inner: r1,
        r_outer: r2,
        offset: 0.0,
        inclination: phi,
    };
    Ok(measure::area(&p, spec)?.value)
}

/// Infinite cones: max of |C(R,∞,φ)| over [.2,12] × [0,π/2].
/// The sup is 2e^{−0.01} ≈ 1.9801 at the corner (0.2, 0), which exceeds the
/// printed 2 − δ₂ = 1.98 by 1.0e-4; reported as a flagged discrepancy.
pub fn verify_cones_infinite(resolution: usize) -> BoundReport {
    let n = if resolution == 0 { 241 } else { resolution };
    let f = |p: &[f64]| measure::cone_infinite_closed(p[0], p[1]);
    let axes = vec![
        linspace(0.2, 12.0, n),
        linspace(0.0, std::f64::consts::FRAC_PI_2, n / 2 + 1),
    ];
    let max = optimize::grid_maximize(f, &axes, 30).expect("nonempty grid");
    let slack = lipschitz_slack(&f, &max.argmax, &max.cell_radius);
    let grid_spec = GridSpec {
        axes: vec![
            (0.2, 12.0, n),
            (0.0, std::f64::consts::FRAC_PI_2, n / 2 + 1),
        ],
        polish_rounds: 30,
    };
    // fail on the artificial R = 12 edge only; R = .2 and the φ edges are
    // the domain's own boundary
    let artificial = (max.argmax[0] - 12.0).abs() < 1e-9;
    let mut rep = BoundReport::finish("cones-infinite", max, 2.0 - DELTA2, slack, grid_spec);
    if artificial {
        rep.pass = false;
    }
    let measured_delta2 = 2.0 - rep.computed_max;
    rep.extras.push(("measured_delta2".into(), measured_delta2));
    if !rep.pass && rep.computed_max <= 2.0 {
        rep.discrepancy = Some(format!(
            "sup = 2e^(-0.01) = {:.9} at the closed corner (0.2, 0) exceeds 2 - delta2 = 1.98 \
             by {:.2e}; the printed delta2 = .02 rounds the true corner margin {:.6}",
            rep.computed_max,
            rep.computed_max - 1.98,
            measured_delta2
        ));
    }
    rep
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConeMonotonicityReport {
    pub r: f64,
    /// √π R e^{R²/4}, which must stay ≤ 1/2
    pub analytic_value: f64,
    pub analytic_ok: bool,
    /// (φ, finite-difference ∂_φ|C(R,∞,φ)|)
    pub derivative_trace: Vec<(f64, f64)>,
    pub pass: bool,
}

/// For R ≤ .2 the infinite-cone area strictly decreases in φ.
pub fn verify_cone_monotonicity(r: f64, phi_points: usize) -> ConeMonotonicityReport {
    assert!(r > 0.0 && r <= 0.2, "monotonicity claim covers 0 < R ≤ .2");
    let analytic_value = SQRT_PI * r * (r * r / 4.0).exp();
    let analytic_ok = analytic_value <= 0.5;
    let fd = 1e-6;
    let mut derivative_trace = Vec::with_capacity(phi_points);
    let mut pass = analytic_ok;
    for phi in linspace(fd * 2.0, std::f64::consts::FRAC_PI_2 - fd, phi_points) {
        let d = (measure::cone_infinite_closed(r, phi + fd)
            - measure::cone_infinite_closed(r, phi - fd))
            / (2.0 * fd);
        if d >= -1e-12 {
            pass = false;
        }
        derivative_trace.push((phi, d));
    }
    ConeMonotonicityReport {
        r,
        analytic_value,
        analytic_ok,
        derivative_trace,
        pass,
    }
}

/// Translated cones: for R > .2, |C(R,∞,h,φ)| ≤ 2 − δ₂; for R ≤ .2 it is
/// bounded by the doubled annulus |D(R,∞,h)|.  Both via the e^{−h²/4}
/// factor and direct quadrature spot checks; computed_max is the worst
/// sampled excess lhs − rhs (should be ≤ 0).
pub fn verify_translated_cones(
    h_grid: &[f64],
    spec: &QuadratureSpec,
) -> Result<BoundReport, MeasureError> {
    let rs_large = [0.205, 0.25, 0.3, 0.5, 1.0, 2.0, 4.0];
    let rs_small = [0.05, 0.1, 0.15, 0.2];
    let phis = linspace(0.0, std::f64::consts::FRAC_PI_2 - 0.05, 7);

    let mut worst = f64::NEG_INFINITY;
    let mut arg = vec![0.0; 3];
    let mut translation_worst = f64::NEG_INFINITY;
    let mut samples = 0usize;
    for &h in h_grid {
        for (&r, small) in rs_large
            .iter()
            .map(|r| (r, false))
            .chain(rs_small.iter().map(|r| (r, true)))
        {
            for &phi in &phis {
                let lhs = translated_cone_area(r, h, phi, spec)?;
                // Eq-style translation factor check against the h = 0 cone
                let untranslated = measure::cone_infinite_closed(r, phi);
                translation_worst =
                    translation_worst.max(lhs - (-h * h / 4.0).exp() * untranslated);
                let rhs = if small {
                    // |D(R,∞,h)|
                    2.0 * (-h * h / 4.0).exp() * (-r * r / 4.0).exp()
                } else {
                    2.0 - DELTA2
                };
                let excess = lhs - rhs;
                samples += 1;
                if excess > worst {
                    worst = excess;
                    arg = vec![r, h, phi];
                }
            }
        }
    }
    Ok(BoundReport {
        name: "translated-cones".into(),
        computed_max: worst,
        argmax: arg,
        stated_bound: 0.0,
        margin: -worst,
        slack: spec.abs_tol * 100.0 + 1e-10,
        pass: worst <= spec.abs_tol * 100.0 + 1e-10,
        discrepancy: None,
        extras: vec![
            ("translation_factor_excess".into(), translation_worst),
            ("samples".into(), samples as f64),
        ],
        grid_spec: GridSpec {
            axes: vec![
                (0.05, 4.0, rs_large.len() + rs_small.len()),
                (h_grid[0], *h_grid.last().unwrap(), h_grid.len()),
                (0.0, std::f64::consts::FRAC_PI_2 - 0.05, phis.len()),
            ],
            polish_rounds: 0,
        },
    })
}

fn translated_cone_area(
    r: f64,
    h: f64,
    phi: f64,
    spec: &QuadratureSpec,
) -> Result<f64, MeasureError> {
    if h == 0.0 {
        return Ok(measure::cone_infinite_closed(r, phi));
    }
    let p = Piece::DoubledCone {
        r_inner: r,
        r_outer: f64::INFINITY,
        offset: h,
        inclination: phi,
    };
    Ok(measure::area(&p, spec)?.value)
}

/// Ellipsoid areas over 0 < b ≤ a ≤ 4.  The printed "2−δ₃ = 1.9365" is an
/// arithmetic slip for 1.9635; the true sup is the b → 0 closure value
/// 2(1−e^{−4}) ≈ 1.963369, which the measured max approaches from below.
pub fn verify_ellipsoids(
    resolution: usize,
    spec: &QuadratureSpec,
) -> Result<BoundReport, MeasureError> {
    let n = if resolution == 0 { 60 } else { resolution };
    let a_grid = linspace(0.1, 4.0, n);
    // log-spaced b fractions reach the near-degenerate regime
    let fracs = optimize::logspace(1e-4, 1.0, n);

    let samples: Vec<(f64, f64)> = a_grid
        .iter()
        .flat_map(|&a| fracs.iter().map(move |&f| (a, f * a)))
        .collect();
    let values: Vec<f64> = samples
        .par_iter()
        .map(|&(a, b)| Ok(measure::area(&Piece::Ellipsoid { a, b }, spec)?.value))
        .collect::<Result<Vec<_>, MeasureError>>()?;
    let mut best = f64::NEG_INFINITY;
    let mut arg = (0.0, 0.0);
    for (&(a, b), &v) in samples.iter().zip(&values) {
        if v > best {
            best = v;
            arg = (a, b);
        }
    }

    let stated_bound = 2.0 - DELTA3;
    let closure_b0 = 2.0 * (1.0 - (-4.0f64).exp());
    let slack = spec.abs_tol * 10.0 + 1e-10;
    let mut rep = BoundReport {
        name: "ellipsoids".into(),
        computed_max: best,
        argmax: vec![arg.0, arg.1],
        stated_bound,
        margin: stated_bound - best,
        slack,
        pass: best <= stated_bound + slack,
        discrepancy: Some(format!(
            "the bound is usually printed as 1.9365, but 2 - delta3 = 2 - .0365 = 1.9635; the sup over \
             b in (0,a] approaches the flagged b = 0 closure value {closure_b0:.9} < 1.9635"
        )),
        extras: vec![
            ("b0_closure_max".into(), closure_b0),
            ("printed_bound".into(), 1.9365),
            ("sphere_diagonal_at_2".into(), 4.0 / std::f64::consts::E),
        ],
        grid_spec: GridSpec {
            axes: vec![(0.1, 4.0, n), (1e-4, 1.0, n)],
            polish_rounds: 0,
        },
    };
    // the b = 0 closure exceeds the printed 1.9365 once a ≥ 3.68
    let a_crossing = 2.0 * (-(1.0f64 - 1.9365 / 2.0).ln()).sqrt();
    rep.extras
        .push(("b0_exceeds_printed_above_a".into(), a_crossing));
    Ok(rep)
}

/// Capped graphs |z⁺_{h,a,b}| for a ≥ 3: monotone decreasing in b, with the
/// stated bound 1 − h²/4 failing at b = h (flat sheet of area e^{−h²/4});
/// the corrected envelope e^{−h²/4} is verified alongside.
pub fn verify_capped_graphs(
    resolution: usize,
    spec: &QuadratureSpec,
) -> Result<BoundReport, MeasureError> {
    let n = if resolution == 0 { 9 } else { resolution };
    let a_grid = linspace(3.0, 8.0, n);
    let h_grid = linspace(0.0, 1.0, n);

    let mut worst_excess = f64::NEG_INFINITY;
    let mut arg = vec![0.0; 3];
    let mut corrected_excess: f64 = f64::NEG_INFINITY;
    let mut monotonicity_violations = 0usize;
    for &a in &a_grid {
        for &h in &h_grid {
            let bs = linspace(h.max(1e-6), a, 2 * n);
            let mut prev = f64::INFINITY;
            for &b in &bs {
                let piece = Piece::CappedGraph {
                    height: h,
                    a,
                    b,
                    sheets: 1,
                };
                let v = measure::area(&piece, spec)?.value;
                if v > prev + 1e-8 {
                    monotonicity_violations += 1;
                }
                prev = v;
                let excess = v - (1.0 - h * h / 4.0);
                if excess > worst_excess {
                    worst_excess = excess;
                    arg = vec![a, h, b];
                }
                corrected_excess = corrected_excess.max(v - (-h * h / 4.0).exp());
            }
        }
    }
    let slack = spec.abs_tol * 100.0 + 1e-10;
    Ok(BoundReport {
        name: "capped-graphs".into(),
        computed_max: worst_excess,
        argmax: arg,
        stated_bound: 0.0,
        margin: -worst_excess,
        slack,
        pass: worst_excess <= slack,
        discrepancy: Some(format!(
            "the stated bound 1 - h^2/4 fails at b = h, where the single flat sheet has area \
             e^(-h^2/4) > 1 - h^2/4 for h > 0 (worst sampled excess {worst_excess:.3e}); the \
             corrected envelope e^(-h^2/4) holds with excess {corrected_excess:.3e}"
        )),
        extras: vec![
            ("corrected_bound_excess".into(), corrected_excess),
            (
                "monotonicity_violations".into(),
                monotonicity_violations as f64,
            ),
        ],
        grid_spec: GridSpec {
            axes: vec![(3.0, 8.0, n), (0.0, 1.0, n), (0.0, 8.0, 2 * n)],
            polish_rounds: 0,
        },
    })
}
