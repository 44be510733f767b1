//! The inversion-at-radius-R families: the parameter-constraint cascade
//! with measured budget constants, per-step surfaces and area profiles, the
//! concatenated maximum, interpolation-edge variants, the squeezing
//! translation arithmetic, and the quotient-sphere genus formula.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{DELTA1, DELTA2, DELTA3};
use crate::measure::{self, AreaResult, MeasureError};
use crate::optimize::{self, linspace};
use crate::quad::QuadratureSpec;
use crate::surfaces::{CompositeSurface, Piece};

#[derive(Debug, Error)]
pub enum SweepoutError {
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error("genus must be at least 1")]
    BadGenus,
    #[error("inversion radius must lie in [0.2, 5], got {0}")]
    BadRadius(f64),
    #[error("step must be 1..=5, got {0}")]
    BadStep(u8),
    #[error("step {0} requires t in [0, 1], got {1}")]
    BadT(u8, f64),
    #[error("step 1 at t = 0 degenerates to a union of rays (area 0)")]
    DegenerateSlice,
    #[error("step 5 interior slices carry the catenoid budget, not a piece list")]
    InteriorBudgeted,
    #[error("parameter cascade infeasible: {0}")]
    Infeasible(String),
    #[error("intersection data ({0},{1},{2}) fails the parity constraint for genus {3}")]
    GenusParity(u32, u32, u32, u32),
    #[error("intersection data ({0},{1},{2}) yields a negative genus for genus {3}")]
    GenusNegative(u32, u32, u32, u32),
}

/// Budget constants measured by direct quadrature of the pieces they bound:
/// |L(ε)| ≤ Aε, |F_h(h)| ≤ Bh², |Ends| ≤ EΩ²e^{−Ω²/4}, |V(R,h,δ)| ≤ Fδ.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct BudgetConstants {
    pub tube_a: f64,
    pub small_body_b: f64,
    pub ends_e: f64,
    pub vertical_f: f64,
}

/// The h and Ω gates of the cascade.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Thresholds {
    pub h0: f64,
    pub h1: f64,
    pub h2: f64,
    pub h3: f64,
    pub h4: f64,
    pub h_c: f64,
    pub omega1: f64,
    pub omega2: f64,
    pub omega3: f64,
}

/// Configuration inputs the construction does not compute: the external
/// catenoid-estimate budget and the small sweepout slack parameters.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SweepoutConfig {
    pub eta1: f64,
    pub eta2: f64,
    /// catenoid budget constant C ∈ (0, 1/4): step-5 interiors cost 2 − Ch²
    pub catenoid_c: f64,
    /// admissibility threshold for the catenoid estimate
    pub h_c: f64,
    /// interpolation half-width in the s coordinate
    pub iota: f64,
}

impl Default for SweepoutConfig {
    fn default() -> Self {
        Self {
            eta1: 1e-3,
            eta2: 0.05,
            catenoid_c: 0.2,
            h_c: 0.1,
            iota: 0.05,
        }
    }
}

/// The full parameter ledger of one inversion family.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepoutParams {
    pub genus: u32,
    pub r: f64,
    pub h: f64,
    pub omega: f64,
    /// neck tube radius ε = h³
    pub eps: f64,
    /// step-5 vertical tube radius δ = h³
    pub delta_tubes: f64,
    pub consts: BudgetConstants,
    pub thresholds: Thresholds,
    pub config: SweepoutConfig,
}

impl SweepoutParams {
    pub fn tube_count(&self) -> u32 {
        self.genus + 1
    }

    pub fn r_max(&self) -> f64 {
        (self.r / 2.0).max(self.r - 1.0)
    }

    pub fn r_necks(&self) -> f64 {
        (self.r + self.r_max()) / 2.0
    }

    /// Every threshold inequality of the cascade, as (name, lhs, rhs).
    pub fn invariant_ledger(&self) -> Vec<(String, f64, f64)> {
        let t = &self.thresholds;
        let c = &self.consts;
        let h = self.h;
        let om = self.omega;
        let ends_gate = |x: f64| c.ends_e * x * x * (-x * x / 4.0).exp();
        vec![
            (
                "h <= min(h_c, h0..h4, 0.1)".into(),
                h,
                t.h_c
                    .min(t.h0)
                    .min(t.h1)
                    .min(t.h2)
                    .min(t.h3)
                    .min(t.h4)
                    .min(0.1),
            ),
            (
                "Omega >= max(R, Omega1..Omega3)".into(),
                om.max(f64::MIN_POSITIVE),
                self.r.max(t.omega1).max(t.omega2).max(t.omega3),
            ),
            (
                "B h1^2 + A h1^3 < 2 - 4/e".into(),
                c.small_body_b * t.h1 * t.h1 + c.tube_a * t.h1.powi(3),
                2.0 - 4.0 / std::f64::consts::E,
            ),
            (
                "A h2^3 + B h2^2 <= delta1/2".into(),
                c.tube_a * t.h2.powi(3) + c.small_body_b * t.h2 * t.h2,
                DELTA1 / 2.0,
            ),
            (
                "E Om1^2 e^{-Om1^2/4} <= delta2/4".into(),
                ends_gate(t.omega1),
                DELTA2 / 4.0,
            ),
            (
                "5 h3 + A h3^3 + B h3^2 <= delta2/4".into(),
                5.0 * t.h3 + c.tube_a * t.h3.powi(3) + c.small_body_b * t.h3 * t.h3,
                DELTA2 / 4.0,
            ),
            (
                "A h4^3 + h4^4/16 <= eta2/4".into(),
                c.tube_a * t.h4.powi(3) + t.h4.powi(4) / 16.0,
                self.config.eta2 / 4.0,
            ),
            (
                "E Om2^2 e^{-Om2^2/4} <= eta2/4".into(),
                ends_gate(t.omega2),
                self.config.eta2 / 4.0,
            ),
            (
                "E Om3^2 e^{-Om3^2/4} <= h^3".into(),
                ends_gate(t.omega3),
                h.powi(3),
            ),
        ]
    }

    pub fn invariants_hold(&self) -> bool {
        // the Omega entry encodes "omega at least the max"
        self.invariant_ledger().iter().enumerate().all(
            |(i, (_, lhs, rhs))| {
                if i == 1 {
                    lhs >= rhs
                } else {
                    lhs <= rhs
                }
            },
        )
    }
}

/// The capped inner body F_h(r) = Cyl(r,h) ∪ D(0,r,h), as its two pieces.
fn small_body(r: f64, h: f64) -> [Piece; 2] {
    [
        Piece::Cylinder {
            radius: r,
            half_height: h,
        },
        Piece::DoubledAnnulus {
            r_inner: 0.0,
            r_outer: r,
            height: h,
        },
    ]
}

fn small_body_area(r: f64, h: f64, spec: &QuadratureSpec) -> Result<f64, MeasureError> {
    let [a, b] = small_body(r, h);
    Ok(measure::area(&a, spec)?.value + measure::area(&b, spec)?.value)
}

fn ends_area(r: f64, omega: f64, h: f64, spec: &QuadratureSpec) -> Result<f64, MeasureError> {
    measure::area(
        &Piece::SweptEnds {
            r,
            omega,
            h,
            t: 1.0,
        },
        spec,
    )
    .map(|a| a.value)
}

/// Largest x in (0, hi] with monotone-increasing f(x) ≤ target.
fn solve_gate<F: Fn(f64) -> f64>(f: F, target: f64, hi: f64) -> f64 {
    if f(hi) <= target {
        return hi;
    }
    let b = optimize::bisect(|x| f(x) - target, 1e-9, hi, 1e-12)
        .expect("gate function spans the target");
    // step slightly inside to keep the inequality strict
    b.lo
}

/// The radius-independent part of the cascade: budget constants and the h
/// and Ω gates, measured once per genus.
#[derive(Debug, Clone)]
pub struct GenusCascade {
    pub genus: u32,
    pub config: SweepoutConfig,
    pub tube_a: f64,
    pub small_body_b: f64,
    pub ends_e: f64,
    pub vertical_f_unit: f64,
    pub h: f64,
    pub thresholds: Thresholds,
}

impl GenusCascade {
    pub fn new(
        genus: u32,
        config: &SweepoutConfig,
        spec: &QuadratureSpec,
    ) -> Result<Self, SweepoutError> {
        if genus == 0 {
            return Err(SweepoutError::BadGenus);
        }
        let count = genus + 1;

        // A: tube budget per unit radius, measured on full rays and pushed
        // to the ε → 0 envelope
        let eps_ref = 1e-3;
        let tube_a = measure::area(
            &Piece::RayTubes {
                count,
                radius: eps_ref,
                s_min: 0.0,
                s_max: f64::INFINITY,
            },
            spec,
        )?
        .value
            / eps_ref
            / (-eps_ref * eps_ref / 4.0f64).exp();

        // B: sup over h ≤ 0.1 of |F_h(h)|/h²
        let mut small_body_b = 0.0f64;
        for h in optimize::logspace(1e-4, 0.1, 120) {
            small_body_b = small_body_b.max(small_body_area(h, h, spec)? / (h * h));
        }
        let h0: f64 = 0.1;

        let budget = |h: f64| small_body_b * h * h + tube_a * h.powi(3);
        let h1: f64 = solve_gate(budget, 2.0 - 4.0 / std::f64::consts::E, 1.0);
        let h2 = solve_gate(budget, DELTA1 / 2.0, 1.0);
        let h3 = solve_gate(|h| 5.0 * h + budget(h), DELTA2 / 4.0, 1.0);
        let h4 = solve_gate(
            |h| tube_a * h.powi(3) + h.powi(4) / 16.0,
            config.eta2 / 4.0,
            1.0,
        );
        let h = h0.min(h1).min(h2).min(h3).min(h4).min(config.h_c).min(0.1);

        // E: envelope constant with |Ends(R,Ω,h,t)| ≤ E Ω² e^{−Ω²/4},
        // measured over the (R, Ω) operating box and padded by 10%
        let mut ratio_max = 0.0f64;
        for &rr in linspace(0.2, 5.0, 5).iter() {
            for &om in linspace(6.0, 16.0, 6).iter() {
                let a = ends_area(rr, om, h, spec)?;
                ratio_max = ratio_max.max(a / (om * om * (-om * om / 4.0).exp()));
            }
        }
        let ends_e = 1.1 * ratio_max;

        // Ω gates through the (monotone, analytic) envelope
        let gate = |target: f64| -> Result<f64, SweepoutError> {
            let f = |x: f64| ends_e * x * x * (-x * x / 4.0).exp();
            if f(6.0) <= target {
                return Ok(6.0);
            }
            let b = optimize::bisect(|x| f(x) - target, 6.0, 80.0, 1e-9)
                .map_err(|_| SweepoutError::Infeasible("no Omega meets the ends gate".into()))?;
            Ok(b.hi)
        };
        let omega1 = gate(DELTA2 / 4.0)?;
        let omega2 = gate(config.eta2 / 4.0)?;
        let omega3 = gate(h.powi(3))?;

        // F at unit neck ring, scaled per radius later
        let delta_ref = h.powi(3);
        let vertical_f_unit = measure::area(
            &Piece::VerticalTubes {
                count,
                radius: delta_ref,
                ring_radius: 0.15,
                half_height: h,
            },
            spec,
        )?
        .value
            / delta_ref;

        Ok(Self {
            genus,
            config: *config,
            tube_a,
            small_body_b,
            ends_e,
            vertical_f_unit,
            h,
            thresholds: Thresholds {
                h0,
                h1,
                h2,
                h3,
                h4,
                h_c: config.h_c,
                omega1,
                omega2,
                omega3,
            },
        })
    }

    /// Instantiate the ledger at one inversion radius: Ω from the gates, the
    /// envelope check at the operating point, and the measured F at this
    /// radius' neck ring.
    pub fn at_radius(
        &self,
        r: f64,
        spec: &QuadratureSpec,
    ) -> Result<SweepoutParams, SweepoutError> {
        if !(0.2..=5.0).contains(&r) {
            return Err(SweepoutError::BadRadius(r));
        }
        let t = &self.thresholds;
        let omega = r.max(t.omega1).max(t.omega2).max(t.omega3);
        let ends_here = ends_area(r, omega, self.h, spec)?;
        let envelope = self.ends_e * omega * omega * (-omega * omega / 4.0).exp();
        if ends_here > envelope {
            return Err(SweepoutError::Infeasible(format!(
                "ends area {ends_here:e} above its envelope {envelope:e} at R = {r}"
            )));
        }

        let delta = self.h.powi(3);
        let r_necks = (r + (r / 2.0).max(r - 1.0)) / 2.0;
        let vertical_f = measure::area(
            &Piece::VerticalTubes {
                count: self.genus + 1,
                radius: delta,
                ring_radius: r_necks,
                half_height: self.h,
            },
            spec,
        )?
        .value
            / delta;

        let params = SweepoutParams {
            genus: self.genus,
            r,
            h: self.h,
            omega,
            eps: delta,
            delta_tubes: delta,
            consts: BudgetConstants {
                tube_a: self.tube_a,
                small_body_b: self.small_body_b,
                ends_e: self.ends_e,
                vertical_f,
            },
            thresholds: *t,
            config: self.config,
        };
        if !params.invariants_hold() {
            return Err(SweepoutError::Infeasible(format!(
                "ledger violated: {:?}",
                params.invariant_ledger()
            )));
        }
        Ok(params)
    }
}

/// Measure the budget constants and solve the threshold cascade for (g, R).
pub fn select_parameters(
    genus: u32,
    r: f64,
    config: &SweepoutConfig,
    spec: &QuadratureSpec,
) -> Result<SweepoutParams, SweepoutError> {
    GenusCascade::new(genus, config, spec)?.at_radius(r, spec)
}

/// The slice Σ_step(t) as a list of pieces.  Steps 1–4 are explicit; step 5
/// has piece lists only at its endpoints (the interior is charged to the
/// catenoid budget).
pub fn step_surface(
    step: u8,
    t: f64,
    params: &SweepoutParams,
) -> Result<CompositeSurface, SweepoutError> {
    if !(0.0..=1.0).contains(&t) {
        return Err(SweepoutError::BadT(step, t));
    }
    let r = params.r;
    let h = params.h;
    let om = params.omega;
    let count = params.tube_count();
    let half_pi = std::f64::consts::FRAC_PI_2;
    let mut surf = CompositeSurface::new(format!("step{step}(R={r:.4}, t={t:.6})"));
    match step {
        1 => {
            if t == 0.0 {
                return Err(SweepoutError::DegenerateSlice);
            }
            surf.push(Piece::Sphere { radius: r / t }, 1);
            for p in small_body(h * t, h * t) {
                surf.push(p, 1);
            }
            surf.push(
                Piece::RayTubes {
                    count,
                    radius: t * h.powi(3),
                    s_min: t * h,
                    s_max: r / t,
                },
                1,
            );
        }
        2 => {
            surf.push(
                Piece::SphericalCaps {
                    radius: r,
                    offset: om * t,
                },
                1,
            );
            if t > 0.0 {
                surf.push(
                    Piece::Cylinder {
                        radius: r,
                        half_height: om * t,
                    },
                    1,
                );
            }
            for p in small_body(h, h) {
                surf.push(p, 1);
            }
            surf.push(
                Piece::RayTubes {
                    count,
                    radius: h.powi(3),
                    s_min: h,
                    s_max: r,
                },
                1,
            );
        }
        3 => {
            if t == 0.0 {
                // vertical cone of slant Ω−h over Cyl(R,h) is the full wall
                surf.push(
                    Piece::Cylinder {
                        radius: r,
                        half_height: om,
                    },
                    1,
                );
            } else {
                surf.push(
                    Piece::DoubledCone {
                        r_inner: r,
                        r_outer: r + (t * half_pi).sin() * (om - h),
                        offset: h,
                        inclination: (1.0 - t) * half_pi,
                    },
                    1,
                );
                surf.push(
                    Piece::Cylinder {
                        radius: r,
                        half_height: h,
                    },
                    1,
                );
            }
            surf.push(Piece::SweptEnds { r, omega: om, h, t }, 1);
            for p in small_body(h, h) {
                surf.push(p, 1);
            }
            surf.push(
                Piece::RayTubes {
                    count,
                    radius: h.powi(3),
                    s_min: h,
                    s_max: r,
                },
                1,
            );
        }
        4 => {
            let rt = h + t * (params.r_max() - h);
            for p in small_body(rt, h) {
                surf.push(p, 1);
            }
            surf.push(
                Piece::DoubledAnnulus {
                    r_inner: r,
                    r_outer: r + om - h,
                    height: h,
                },
                1,
            );
            surf.push(
                Piece::Cylinder {
                    radius: r,
                    half_height: h,
                },
                1,
            );
            surf.push(
                Piece::SweptEnds {
                    r,
                    omega: om,
                    h,
                    t: 1.0,
                },
                1,
            );
            surf.push(
                Piece::RayTubes {
                    count,
                    radius: h.powi(3),
                    s_min: rt,
                    s_max: r,
                },
                1,
            );
        }
        5 => {
            if t == 0.0 {
                return step_surface(4, 1.0, params).map(|mut s| {
                    s.label = format!("step5(R={r:.4}, t=0)");
                    s
                });
            }
            if t < 1.0 {
                return Err(SweepoutError::InteriorBudgeted);
            }
            surf.push(
                Piece::DoubledAnnulus {
                    r_inner: 0.0,
                    r_outer: om + r - h,
                    height: h,
                },
                1,
            );
            surf.push(
                Piece::SweptEnds {
                    r,
                    omega: om,
                    h,
                    t: 1.0,
                },
                1,
            );
            surf.push(
                Piece::VerticalTubes {
                    count,
                    radius: params.delta_tubes,
                    ring_radius: params.r_necks(),
                    half_height: h,
                },
                1,
            );
        }
        s => return Err(SweepoutError::BadStep(s)),
    }
    Ok(surf)
}

/// One step's area profile over a t grid, with its asserted bound and the
/// itemized budget terms.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StepProfile {
    pub id: String,
    pub r: f64,
    pub t_grid: Vec<f64>,
    pub areas: Vec<AreaResult>,
    pub max_area: f64,
    pub max_t: f64,
    /// the bound this step must stay below
    pub bound: f64,
    pub budget: Vec<(String, f64)>,
    pub pass: bool,
}

/// The bound asserted for each step's supremum.
fn step_bound(step: u8, params: &SweepoutParams) -> f64 {
    match step {
        1 => 2.0,
        2 => 2.0 - DELTA1 / 2.0,
        3 => 2.0 - DELTA2 / 2.0,
        4 => 2.0 - params.config.eta2 / 4.0,
        _ => 2.0 - params.config.catenoid_c * params.h * params.h,
    }
}

pub fn step_area_profile(
    step: u8,
    params: &SweepoutParams,
    t_res: usize,
    spec: &QuadratureSpec,
) -> Result<StepProfile, SweepoutError> {
    if !(1..=5).contains(&step) {
        return Err(SweepoutError::BadStep(step));
    }
    let t_grid = linspace(0.0, 1.0, t_res.max(2));
    let areas: Vec<AreaResult> = t_grid
        .par_iter()
        .map(|&t| slice_area(step, t, params, spec))
        .collect::<Result<Vec<_>, _>>()?;
    let (mut max_area, mut max_t) = (f64::NEG_INFINITY, 0.0);
    let mut slack = 0.0f64;
    for (&t, a) in t_grid.iter().zip(&areas) {
        if a.value > max_area {
            max_area = a.value;
            max_t = t;
        }
        slack = slack.max(a.error_bound);
    }
    let g = params.tube_count() as f64;
    let eps = params.eps;
    let mut budget = vec![
        ("tube_budget_A_eps".into(), params.consts.tube_a * eps),
        ("disks_removed_bound".into(), g * eps * eps),
        (
            "ends_budget".into(),
            params.consts.ends_e
                * params.omega
                * params.omega
                * (-params.omega * params.omega / 4.0).exp(),
        ),
    ];
    if step == 5 {
        budget.push((
            "catenoid_budget".into(),
            2.0 - params.config.catenoid_c * params.h * params.h,
        ));
        budget.push((
            "vertical_tube_budget_F_delta".into(),
            params.consts.vertical_f * params.delta_tubes,
        ));
        budget.push((
            "disks3_removed_bound".into(),
            g * params.delta_tubes * params.delta_tubes,
        ));
    }
    let bound = step_bound(step, params);
    Ok(StepProfile {
        id: format!("step{step}"),
        r: params.r,
        t_grid,
        areas,
        max_area,
        max_t,
        bound,
        budget,
        pass: max_area + slack < bound || (step == 5 && max_area <= bound + slack + 1e-12),
    })
}

fn slice_area(
    step: u8,
    t: f64,
    params: &SweepoutParams,
    spec: &QuadratureSpec,
) -> Result<AreaResult, SweepoutError> {
    if step == 1 && t == 0.0 {
        return Ok(AreaResult::budget(0.0, 0.0));
    }
    if step == 5 && t > 0.0 && t < 1.0 {
        return Ok(AreaResult::budget(
            2.0 - params.config.catenoid_c * params.h * params.h,
            0.0,
        ));
    }
    let surf = step_surface(step, t, params)?;
    Ok(measure::composite_area(&surf, spec)?)
}

/// How step 3 reads the opening-cone formula.  The folded convention
/// (inclination (1−t)π/2, the default) keeps the radial extent
/// sin(tπ/2)(Ω−h) equal to the horizontal projection of the folding slant
/// and is continuous at both ends.  The literal convention (inclination
/// tπ/2, as printed) is degenerate at t = 0 and invalid at t = 1, where a
/// vertical cone meets a finite outer radius; both are reportable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Step3Convention {
    Folded,
    Literal,
}

/// The step-3 profile under the printed (literal) convention, for
/// side-by-side comparison.  Slices where the literal formula produces an
/// invalid piece are carried as NaN.
pub fn step3_literal_profile(
    params: &SweepoutParams,
    t_res: usize,
    spec: &QuadratureSpec,
) -> Result<StepProfile, SweepoutError> {
    let half_pi = std::f64::consts::FRAC_PI_2;
    let p = params;
    let t_grid = linspace(0.0, 1.0, t_res.max(2));
    let areas: Vec<AreaResult> = t_grid
        .par_iter()
        .map(|&t| {
            let r_out = p.r + (t * half_pi).sin() * (p.omega - p.h);
            let mut surf = CompositeSurface::new(format!("step3-literal(t={t:.6})"));
            if r_out > p.r && t < 1.0 {
                surf.push(
                    Piece::DoubledCone {
                        r_inner: p.r,
                        r_outer: r_out,
                        offset: p.h,
                        inclination: t * half_pi,
                    },
                    1,
                );
            } else if t >= 1.0 {
                // inclination π/2 with finite outer radius: the printed
                // formula has no valid surface here
                return Ok(AreaResult::budget(f64::NAN, 0.0));
            }
            surf.push(
                Piece::SweptEnds {
                    r: p.r,
                    omega: p.omega,
                    h: p.h,
                    t,
                },
                1,
            );
            surf.push(
                Piece::Cylinder {
                    radius: p.r,
                    half_height: p.h,
                },
                1,
            );
            for piece in small_body(p.h, p.h) {
                surf.push(piece, 1);
            }
            Ok::<_, SweepoutError>(measure::composite_area(&surf, spec)?)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let finite: Vec<(f64, AreaResult)> = t_grid
        .iter()
        .zip(&areas)
        .filter(|(_, a)| a.value.is_finite())
        .map(|(&t, &a)| (t, a))
        .collect();
    let (max_area, max_t) = finite
        .iter()
        .fold((f64::NEG_INFINITY, 0.0), |(m, mt), (t, a)| {
            if a.value > m {
                (a.value, *t)
            } else {
                (m, mt)
            }
        });
    let invalid = areas.iter().filter(|a| a.value.is_nan()).count();
    Ok(StepProfile {
        id: "step3-literal-convention".into(),
        r: p.r,
        t_grid,
        areas,
        max_area,
        max_t,
        bound: 2.0 - DELTA2 / 2.0,
        budget: vec![("invalid_slices".into(), invalid as f64)],
        pass: max_area < 2.0 - DELTA2 / 2.0,
    })
}

/// Gaps |area(Σ_i(1)) − area(Σ_{i+1}(0))| across the step concatenation.
pub fn step_continuity_gaps(
    params: &SweepoutParams,
    spec: &QuadratureSpec,
) -> Result<Vec<f64>, SweepoutError> {
    let mut gaps = Vec::new();
    for step in 1..=4u8 {
        let end = slice_area(step, 1.0, params, spec)?;
        let start = slice_area(step + 1, 0.0, params, spec)?;
        gaps.push((end.value - start.value).abs());
    }
    Ok(gaps)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InversionReport {
    pub genus: u32,
    pub r: f64,
    pub max_area: f64,
    /// 2 − max_area
    pub margin: f64,
    pub steps: Vec<StepProfile>,
    pub pass: bool,
}

/// Maximum Gaussian area along the concatenated steps 1–5 at radius R.
pub fn inversion_max_area(
    params: &SweepoutParams,
    t_res: usize,
    spec: &QuadratureSpec,
) -> Result<InversionReport, SweepoutError> {
    let mut steps = Vec::with_capacity(5);
    let mut max_area = f64::NEG_INFINITY;
    for step in 1..=5u8 {
        let p = step_area_profile(step, params, t_res, spec)?;
        max_area = max_area.max(p.max_area);
        steps.push(p);
    }
    let margin = 2.0 - max_area;
    let pass = margin > 0.0 && steps.iter().all(|s| s.pass);
    Ok(InversionReport {
        genus: params.genus,
        r: params.r,
        max_area,
        margin,
        steps,
        pass,
    })
}

/// Default verification matrix: 20 radii across [0.2, 5].
pub fn default_r_grid(points: usize) -> Vec<f64> {
    linspace(0.2, 5.0, points.max(2))
}

/// The interpolation-edge families: the left-edge partial cone opening at
/// R = 0.2, and the right-edge ellipsoid and capped-graph families at R = 5.
pub fn edge_variant_profiles(
    params_left: &SweepoutParams,
    params_right: &SweepoutParams,
    t_res: usize,
    spec: &QuadratureSpec,
) -> Result<Vec<StepProfile>, SweepoutError> {
    let mut out = Vec::new();

    // Left edge: the step-3 opening runs only partially; every partial cone
    // stays below the doubled-annulus budget |D(.2,∞,h)|.
    {
        let p = params_left;
        let (r, h) = (p.r, p.h);
        let t_grid = linspace(0.0, 1.0, t_res.max(2));
        let areas: Vec<AreaResult> = t_grid
            .par_iter()
            .map(|&u| slice_area(3, u, p, spec))
            .collect::<Result<Vec<_>, _>>()?;
        let annulus_budget = 2.0 * (-h * h / 4.0).exp() * (-r * r / 4.0).exp();
        let mut cone_excess = f64::NEG_INFINITY;
        for &u in t_grid.iter().skip(1) {
            let cone = Piece::DoubledCone {
                r_inner: r,
                r_outer: r + (u * std::f64::consts::FRAC_PI_2).sin() * (p.omega - h),
                offset: h,
                inclination: (1.0 - u) * std::f64::consts::FRAC_PI_2,
            };
            cone_excess = cone_excess.max(measure::area(&cone, spec)?.value - annulus_budget);
        }
        let (max_area, max_t) = profile_max(&t_grid, &areas);
        out.push(StepProfile {
            id: "left-edge-partial-cone".into(),
            r,
            t_grid,
            areas,
            max_area,
            max_t,
            bound: 2.0,
            budget: vec![
                ("annulus_budget".into(), annulus_budget),
                ("cone_budget_excess".into(), cone_excess),
            ],
            pass: max_area < 2.0 && cone_excess <= spec.abs_tol * 100.0,
        });
    }

    // Right edge, stage one: the inner capped cylinder is replaced by the
    // inscribed ellipsoid E(r_t, h) at fixed height.
    {
        let p = params_right;
        let t_grid = linspace(0.0, 1.0, t_res.max(2));
        let areas: Vec<AreaResult> = t_grid
            .par_iter()
            .map(|&t| right_edge_slice(p, t, p.h, spec))
            .collect::<Result<Vec<_>, _>>()?;
        let (max_area, max_t) = profile_max(&t_grid, &areas);
        let bound = 2.0 - p.config.eta2 / 4.0;
        out.push(StepProfile {
            id: "right-edge-ellipsoid-fixed-height".into(),
            r: p.r,
            t_grid,
            areas,
            max_area,
            max_t,
            bound,
            budget: Vec::new(),
            pass: max_area < bound,
        });
    }

    // Right edge, stage two: ellipsoid heights h_{t,s} interpolate from h
    // up to r_t; u ∈ [0,1] is the s-coordinate rescaled across [s₂+ι, s₂+2ι].
    {
        let p = params_right;
        let u_grid = linspace(0.0, 1.0, t_res.max(2));
        let t_inner = linspace(0.0, 1.0, 41);
        let areas: Vec<AreaResult> = u_grid
            .par_iter()
            .map(|&u| {
                let mut worst = AreaResult::budget(f64::NEG_INFINITY, 0.0);
                for &t in &t_inner {
                    let rt = p.h + t * (p.r_max() - p.h);
                    let b = p.h + u * (rt - p.h);
                    let a = right_edge_slice(p, t, b, spec)?;
                    if a.value > worst.value {
                        worst = a;
                    }
                }
                Ok::<_, SweepoutError>(worst)
            })
            .collect::<Result<Vec<_>, _>>()?;
        let (max_area, max_t) = profile_max(&u_grid, &areas);
        let margin_lhs = DELTA3;
        let margin_rhs = 2.0 * (-25.0f64 / 4.0).exp();
        out.push(StepProfile {
            id: "right-edge-growing-ellipsoids".into(),
            r: p.r,
            t_grid: u_grid,
            areas,
            max_area,
            max_t,
            bound: 2.0,
            budget: vec![
                ("delta3".into(), margin_lhs),
                ("two_exp_minus_25_over_4".into(), margin_rhs),
            ],
            pass: max_area < 2.0 && margin_lhs > margin_rhs,
        });
    }

    // Right edge, end states: the step-5 sheets are parts of the capped
    // graphs z_{h,4,b(s)} instead of flat disks.
    {
        let p = params_right;
        let b_grid = linspace(p.h, p.r_max().min(4.0), t_res.max(2));
        let areas: Vec<AreaResult> = b_grid
            .par_iter()
            .map(|&b| {
                let mut surf = CompositeSurface::new(format!("right-edge-end-state(b={b:.4})"));
                surf.push(
                    Piece::CappedGraph {
                        height: p.h,
                        a: 4.0,
                        b,
                        sheets: 2,
                    },
                    1,
                );
                surf.push(
                    Piece::SweptEnds {
                        r: p.r,
                        omega: p.omega,
                        h: p.h,
                        t: 1.0,
                    },
                    1,
                );
                surf.push(
                    Piece::VerticalTubes {
                        count: p.tube_count(),
                        radius: p.delta_tubes,
                        ring_radius: p.r_necks(),
                        half_height: p.h,
                    },
                    1,
                );
                Ok::<_, SweepoutError>(measure::composite_area(&surf, spec)?)
            })
            .collect::<Result<Vec<_>, _>>()?;
        let (max_area, max_t) = profile_max(&b_grid, &areas);
        let bound = 2.0 - p.h * p.h / 4.0;
        out.push(StepProfile {
            id: "right-edge-capped-graph-end-states".into(),
            r: p.r,
            t_grid: b_grid,
            areas,
            max_area,
            max_t,
            bound,
            budget: Vec::new(),
            pass: max_area <= bound,
        });
    }

    Ok(out)
}

fn right_edge_slice(
    params: &SweepoutParams,
    t: f64,
    inner_b: f64,
    spec: &QuadratureSpec,
) -> Result<AreaResult, SweepoutError> {
    let p = params;
    let rt = p.h + t * (p.r_max() - p.h);
    let mut surf = CompositeSurface::new(format!("right-edge(t={t:.4}, b={inner_b:.4})"));
    surf.push(
        Piece::Ellipsoid {
            a: rt,
            b: inner_b.min(rt),
        },
        1,
    );
    surf.push(
        Piece::DoubledAnnulus {
            r_inner: p.r,
            r_outer: p.r + p.omega - p.h,
            height: p.h,
        },
        1,
    );
    surf.push(
        Piece::Cylinder {
            radius: p.r,
            half_height: p.h,
        },
        1,
    );
    surf.push(
        Piece::SweptEnds {
            r: p.r,
            omega: p.omega,
            h: p.h,
            t: 1.0,
        },
        1,
    );
    surf.push(
        Piece::RayTubes {
            count: p.tube_count(),
            radius: p.eps,
            s_min: rt.min(p.r - p.eps),
            s_max: p.r,
        },
        1,
    );
    Ok(measure::composite_area(&surf, spec)?)
}

fn profile_max(grid: &[f64], areas: &[AreaResult]) -> (f64, f64) {
    let mut max_area = f64::NEG_INFINITY;
    let mut max_t = grid[0];
    for (&t, a) in grid.iter().zip(areas) {
        if a.value > max_area {
            max_area = a.value;
            max_t = t;
        }
    }
    (max_area, max_t)
}

/// The squeezing lemma's translation arithmetic: the smallest ρ₀ with
/// Λ′ e^{−ρ₀²/4} < Λ, i.e. ρ₀ = 2√(ln(Λ′/Λ)).
pub fn squeeze_translation_gap(lambda_cap: f64, lambda_prime: f64) -> Result<f64, SweepoutError> {
    if !(lambda_cap > 0.0 && lambda_prime > lambda_cap) {
        return Err(SweepoutError::Infeasible(
            "need 0 < Lambda < Lambda'".into(),
        ));
    }
    Ok(2.0 * (lambda_prime / lambda_cap).ln().sqrt())
}

/// Genus of the connected lift of a quotient sphere with intersection data
/// (k₁, k₂, b): genus = k/2 − g(4−2b−k)/2 − 1 with k = k₁+k₂.  Inputs whose
/// formula value is fractional or negative are rejected.
pub fn riemann_hurwitz_genus(k1: u32, k2: u32, b: u32, genus: u32) -> Result<u32, SweepoutError> {
    if genus == 0 {
        return Err(SweepoutError::BadGenus);
    }
    let k = i64::from(k1) + i64::from(k2);
    let g = i64::from(genus);
    let twice = k - g * (4 - 2 * i64::from(b) - k) - 2;
    if twice.rem_euclid(2) != 0 {
        return Err(SweepoutError::GenusParity(k1, k2, b, genus));
    }
    if twice < 0 {
        return Err(SweepoutError::GenusNegative(k1, k2, b, genus));
    }
    Ok((twice / 2) as u32)
}
