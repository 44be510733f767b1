//! The Gaussian area functional F_{y,τ}, closed-form areas, entropy search,
//! Gaussian volume, and the translation/monotonicity checks.
//!
//! Normalization: F_{y,τ}(Σ) = (1/4πτ) ∫_Σ exp(−|x−y|²/4τ) dμ, so that the
//! plane has area 1, the sphere of radius 2 has area 4/e and the cylinder of
//! radius √2 has area √(2π/e).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quad::{self, QuadError, QuadratureSpec};
use crate::special::{self, SpecialError, SQRT_PI};
use crate::surfaces::{
    lower_in_frame, CompositeSurface, Curve, LoweringFrame, Piece, PieceError, ProfileSegment,
    RadialProfile,
};

#[derive(Debug, Error)]
pub enum MeasureError {
    #[error(transparent)]
    Piece(#[from] PieceError),
    #[error(transparent)]
    Quad(#[from] QuadError),
    #[error(transparent)]
    Special(#[from] SpecialError),
    #[error("tube pieces support only centers on the symmetry axis")]
    OffAxisTube,
    #[error("functional center requires finite y and tau > 0, got tau = {0}")]
    BadCenter(f64),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// Center y ∈ R³ and scale τ > 0 of the functional F_{y,τ}.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
pub struct FunctionalCenter {
    pub y: [f64; 3],
    pub tau: f64,
}

impl FunctionalCenter {
    pub fn origin() -> Self {
        Self {
            y: [0.0; 3],
            tau: 1.0,
        }
    }

    pub fn on_axis(z: f64, tau: f64) -> Self {
        Self {
            y: [0.0, 0.0, z],
            tau,
        }
    }

    pub fn validate(&self) -> Result<(), MeasureError> {
        if !(self.tau > 0.0 && self.tau.is_finite()) || self.y.iter().any(|v| !v.is_finite()) {
            return Err(MeasureError::BadCenter(self.tau));
        }
        Ok(())
    }

    /// Distance of the center from the symmetry axis.
    pub fn rho(&self) -> f64 {
        self.y[0].hypot(self.y[1])
    }

    pub fn z(&self) -> f64 {
        self.y[2]
    }

    fn frame(&self, threshold: f64) -> LoweringFrame {
        LoweringFrame {
            center_rho: self.rho(),
            center_z: self.z(),
            tau: self.tau,
            truncation_threshold: threshold,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Quadrature,
    Budget,
}

/// A Gaussian-area value with its certified error bound and provenance.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct AreaResult {
    pub value: f64,
    pub error_bound: f64,
    pub method: Method,
}

impl AreaResult {
    fn closed(value: f64, error_bound: f64) -> Self {
        Self {
            value,
            error_bound,
            method: Method::ClosedForm,
        }
    }

    pub fn budget(value: f64, error_bound: f64) -> Self {
        Self {
            value,
            error_bound,
            method: Method::Budget,
        }
    }
}

fn eg(x: f64) -> f64 {
    (-x * x / 4.0).exp()
}

/// Closed form where the catalogue provides one.
fn area_closed(piece: &Piece) -> Option<AreaResult> {
    let eps = f64::EPSILON;
    match *piece {
        Piece::DoubledAnnulus {
            r_inner,
            r_outer,
            height,
        } => {
            let outer = if r_outer.is_finite() {
                eg(r_outer)
            } else {
                0.0
            };
            let v = 2.0 * eg(height) * (eg(r_inner) - outer);
            Some(AreaResult::closed(v, 8.0 * eps * (v.abs() + 1.0)))
        }
        Piece::Cylinder {
            radius,
            half_height,
        } => {
            let erf_h = if half_height.is_finite() {
                special::erf(half_height / 2.0)
            } else {
                special::FnValue::new(1.0, 0.0)
            };
            let v = SQRT_PI * radius * eg(radius) * erf_h.value;
            Some(AreaResult::closed(
                v,
                SQRT_PI * radius * eg(radius) * erf_h.abs_error_bound + 8.0 * eps * v.abs(),
            ))
        }
        Piece::Sphere { radius } => {
            let v = radius * radius * eg(radius);
            Some(AreaResult::closed(v, 8.0 * eps * v))
        }
        Piece::SphericalCaps { radius, offset } => {
            let beta = offset * radius / 2.0;
            let shape = if beta > 1e-8 {
                (1.0 - (-beta).exp()) / beta
            } else {
                1.0 - beta / 2.0 + beta * beta / 6.0
            };
            let v = radius * radius * ((radius * radius + offset * offset) / -4.0).exp() * shape;
            Some(AreaResult::closed(v, 16.0 * eps * v))
        }
        Piece::DoubledCone {
            r_inner,
            r_outer,
            offset,
            inclination,
        } => {
            if inclination == 0.0 {
                let outer = if r_outer.is_finite() {
                    eg(r_outer)
                } else {
                    0.0
                };
                let v = 2.0 * eg(offset) * (eg(r_inner) - outer);
                Some(AreaResult::closed(v, 8.0 * eps * (v.abs() + 1.0)))
            } else if r_outer.is_infinite() && offset == 0.0 {
                let v = cone_infinite_closed(r_inner, inclination);
                Some(AreaResult::closed(v, 1e-13 * (v.abs() + 1.0)))
            } else if r_outer.is_infinite() && inclination == std::f64::consts::FRAC_PI_2 {
                // two vertical half-lines r = R, |z| ≥ h
                let c = special::erfc(offset / 2.0);
                let v = SQRT_PI * r_inner * eg(r_inner) * c.value;
                Some(AreaResult::closed(
                    v,
                    SQRT_PI * r_inner * eg(r_inner) * c.abs_error_bound + 8.0 * eps * v,
                ))
            } else {
                None
            }
        }
        Piece::RayTubes {
            count,
            radius,
            s_min,
            s_max,
        } => {
            let line = special::gauss_line_integral(s_min, s_max);
            let v = count as f64 * radius / 2.0 * eg(radius) * line.value;
            Some(AreaResult::closed(
                v,
                count as f64 * radius / 2.0 * line.abs_error_bound + 8.0 * eps * v,
            ))
        }
        Piece::VerticalTubes {
            count,
            radius,
            ring_radius,
            half_height,
        } => {
            let i0e = special::bessel_i0e(radius * ring_radius / 2.0);
            let erf_h = special::erf(half_height / 2.0);
            let v = count as f64
                * radius
                * SQRT_PI
                * erf_h.value
                * i0e.value
                * ((ring_radius - radius).powi(2) / -4.0).exp();
            Some(AreaResult::closed(v, 1e-12 * v + 16.0 * eps * v))
        }
        _ => None,
    }
}

/// |C(R,∞,φ)| = 2cos(φ)e^{−R²/4} + √π R sin²(φ) e^{−R²sin²(φ)/4} erfc(R cos(φ)/2).
///
/// Continuous up to φ = π/2, where it reduces to the infinite cylinder.
pub fn cone_infinite_closed(r: f64, phi: f64) -> f64 {
    let (s, c) = phi.sin_cos();
    2.0 * c * eg(r)
        + SQRT_PI * r * s * s * (-r * r * s * s / 4.0).exp() * special::erfc(r * c / 2.0).value
}

/// Gaussian area of a piece: closed form when the catalogue provides one,
/// quadrature over the lowered profile otherwise.
pub fn area(piece: &Piece, spec: &QuadratureSpec) -> Result<AreaResult, MeasureError> {
    piece.validate()?;
    if let Some(r) = area_closed(piece) {
        return Ok(r);
    }
    area_quadrature(piece, spec)
}

/// Quadrature route, available for every piece (the dual of `area_closed`).
pub fn area_quadrature(piece: &Piece, spec: &QuadratureSpec) -> Result<AreaResult, MeasureError> {
    let center = FunctionalCenter::origin();
    let profile = lower_in_frame(piece, &center.frame(spec.truncation_threshold))?;
    f_functional_profile(&profile, &center, spec)
}

/// F_{y,τ} over a lowered profile.  The angular integral is reduced
/// analytically: for off-axis centers the kernel carries the scaled
/// modified Bessel factor i0e(rρ/2τ).
pub fn f_functional_profile(
    profile: &RadialProfile,
    center: &FunctionalCenter,
    spec: &QuadratureSpec,
) -> Result<AreaResult, MeasureError> {
    center.validate()?;
    let mut value = 0.0;
    let mut error = profile.truncation_error;
    for seg in &profile.segments {
        let (v, e) = segment_f(seg, center, spec)?;
        value += v;
        error += e;
    }
    Ok(AreaResult {
        value,
        error_bound: error,
        method: Method::Quadrature,
    })
}

fn segment_f(
    seg: &ProfileSegment,
    center: &FunctionalCenter,
    spec: &QuadratureSpec,
) -> Result<(f64, f64), MeasureError> {
    let tau = center.tau;
    let rho = center.rho();
    let zc = center.z();
    let mult = seg.multiplicity as f64;
    match seg.curve {
        Curve::Tube {
            count,
            axis_r,
            tube_r,
            z0,
            z1,
        } => {
            if rho != 0.0 {
                return Err(MeasureError::OffAxisTube);
            }
            let st = tau.sqrt();
            let (barg, dperp, a, b) = if axis_r > 0.0 {
                // tubes about off-axis vertical lines, center on the axis
                (
                    axis_r * tube_r / (2.0 * tau),
                    axis_r - tube_r,
                    (z0 - zc) / (2.0 * st),
                    (z1 - zc) / (2.0 * st),
                )
            } else {
                // tubes about rays through the origin in H; z plays arclength
                (
                    tube_r * zc.abs() / (2.0 * tau),
                    tube_r - zc.abs(),
                    z0 / (2.0 * st),
                    z1 / (2.0 * st),
                )
            };
            let i0e = special::bessel_i0e(barg);
            let e_lo = special::erf(a);
            let e_hi = special::erf(b);
            let pref =
                mult * count as f64 * tube_r / (2.0 * tau) * (dperp * dperp / (-4.0 * tau)).exp();
            let v = pref * i0e.value * SQRT_PI * st * (e_hi.value - e_lo.value);
            let err = pref
                * (i0e.abs_error_bound * SQRT_PI * st * 2.0
                    + i0e.value * SQRT_PI * st * (e_hi.abs_error_bound + e_lo.abs_error_bound))
                + 8.0 * f64::EPSILON * v.abs();
            Ok((v, err))
        }
        _ => {
            let f = |u: f64| {
                let (r, z) = seg.curve.point(u);
                let speed = seg.curve.speed(u);
                let kernel = special::bessel_i0e(r * rho / (2.0 * tau)).value;
                let dsq = (r - rho) * (r - rho) + (z - zc) * (z - zc);
                mult * r / (2.0 * tau) * kernel * (dsq / (-4.0 * tau)).exp() * speed
            };
            let q = quad::integrate(f, 0.0, 1.0, spec)?;
            // the Bessel kernel itself is accurate to ~1e-13 relative
            Ok((q.value, q.error + 2e-13 * q.value.abs()))
        }
    }
}

/// F_{y,τ} of a composite surface (sum over pieces × multiplicities).
pub fn f_functional(
    surface: &CompositeSurface,
    center: &FunctionalCenter,
    spec: &QuadratureSpec,
) -> Result<AreaResult, MeasureError> {
    surface.validate()?;
    center.validate()?;
    let frame = center.frame(spec.truncation_threshold);
    let mut value = 0.0;
    let mut error = 0.0;
    for entry in &surface.pieces {
        let profile = lower_in_frame(&entry.piece, &frame)?;
        let r = f_functional_profile(&profile, center, spec)?;
        value += entry.multiplicity as f64 * r.value;
        error += entry.multiplicity as f64 * r.error_bound;
    }
    Ok(AreaResult {
        value,
        error_bound: error,
        method: Method::Quadrature,
    })
}

/// Gaussian area of a composite surface using closed forms where available.
pub fn composite_area(
    surface: &CompositeSurface,
    spec: &QuadratureSpec,
) -> Result<AreaResult, MeasureError> {
    surface.validate()?;
    let mut value = 0.0;
    let mut error = 0.0;
    let mut method = Method::ClosedForm;
    for entry in &surface.pieces {
        let r = area(&entry.piece, spec)?;
        if r.method == Method::Quadrature {
            method = Method::Quadrature;
        }
        value += entry.multiplicity as f64 * r.value;
        error += entry.multiplicity as f64 * r.error_bound;
    }
    Ok(AreaResult {
        value,
        error_bound: error,
        method,
    })
}

/// Search configuration for the entropy sup over (y, τ).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EntropySearch {
    pub axis_range: (f64, f64),
    pub axis_points: usize,
    pub tau_range: (f64, f64),
    pub tau_points: usize,
    pub polish_rounds: usize,
    /// Also sample a coarse off-axis (ρ, z) grid through the Bessel kernel.
    pub check_off_axis: bool,
}

impl Default for EntropySearch {
    fn default() -> Self {
        Self {
            axis_range: (-4.0, 4.0),
            axis_points: 41,
            tau_range: (1e-3, 1e3),
            tau_points: 121,
            polish_rounds: 3,
            check_off_axis: false,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EntropyResult {
    pub value: f64,
    pub argmax: FunctionalCenter,
    /// The argmax landed on the search-box boundary.
    pub on_boundary: bool,
    /// Largest off-axis sample, when requested.
    pub off_axis_max: Option<f64>,
}

/// Lower bound on the entropy sup_{y,τ} F_{y,τ}(Σ): coarse axis × log-τ grid
/// followed by pattern-search polishing.  Flat directions tie-break toward
/// the smallest |y| and |ln τ|.
pub fn entropy(
    surface: &CompositeSurface,
    search: &EntropySearch,
    spec: &QuadratureSpec,
) -> Result<EntropyResult, MeasureError> {
    surface.validate()?;
    let ds =
        crate::optimize::linspace(search.axis_range.0, search.axis_range.1, search.axis_points);
    let taus = crate::optimize::logspace(search.tau_range.0, search.tau_range.1, search.tau_points);
    let eval = |d: f64, tau: f64| -> Result<f64, MeasureError> {
        Ok(f_functional(surface, &FunctionalCenter::on_axis(d, tau), spec)?.value)
    };

    let mut best = f64::NEG_INFINITY;
    let mut grid: Vec<(f64, f64, f64)> = Vec::with_capacity(ds.len() * taus.len());
    for &d in &ds {
        for &tau in &taus {
            let v = eval(d, tau)?;
            grid.push((v, d, tau));
            if v > best {
                best = v;
            }
        }
    }
    let tol = 1e-12 * (1.0 + best.abs());
    let (mut d0, mut tau0) = grid
        .iter()
        .filter(|&&(v, _, _)| v >= best - tol)
        .map(|&(_, d, t)| (d, t))
        .min_by(|a, b| {
            (a.0.abs(), a.1.ln().abs(), a.0, a.1)
                .partial_cmp(&(b.0.abs(), b.1.ln().abs(), b.0, b.1))
                .unwrap()
        })
        .expect("nonempty grid");

    // pattern polish in (d, ln τ)
    let mut best_val = eval(d0, tau0)?;
    let mut step_d = (search.axis_range.1 - search.axis_range.0) / (search.axis_points - 1) as f64;
    let mut step_l =
        (search.tau_range.1.ln() - search.tau_range.0.ln()) / (search.tau_points - 1) as f64;
    for _ in 0..search.polish_rounds {
        let mut improved = true;
        while improved {
            improved = false;
            for (dd, dl) in [(step_d, 0.0), (-step_d, 0.0), (0.0, step_l), (0.0, -step_l)] {
                let d = (d0 + dd).clamp(search.axis_range.0, search.axis_range.1);
                let tau = (tau0.ln() + dl)
                    .exp()
                    .clamp(search.tau_range.0, search.tau_range.1);
                let v = eval(d, tau)?;
                if v > best_val + tol {
                    best_val = v;
                    d0 = d;
                    tau0 = tau;
                    improved = true;
                }
            }
        }
        step_d *= 0.5;
        step_l *= 0.5;
    }

    let on_boundary = (d0 - search.axis_range.0).abs() < 1e-9
        || (d0 - search.axis_range.1).abs() < 1e-9
        || tau0 / search.tau_range.0 < 1.0 + 1e-9
        || search.tau_range.1 / tau0 < 1.0 + 1e-9;

    let off_axis_max = if search.check_off_axis {
        let mut m = f64::NEG_INFINITY;
        for &rho in &[0.25, 0.5, 1.0, 2.0] {
            for &z in &[-1.0, -0.25, 0.0, 0.25, 1.0] {
                let c = FunctionalCenter {
                    y: [rho, 0.0, z],
                    tau: tau0,
                };
                m = m.max(f_functional(surface, &c, spec)?.value);
            }
        }
        Some(m)
    } else {
        None
    };

    Ok(EntropyResult {
        value: best_val,
        argmax: FunctionalCenter::on_axis(d0, tau0),
        on_boundary,
        off_axis_max,
    })
}

/// Volume of the Euclidean ball B_R in Gaussian space:
/// (4π)^{−3/2} ∫_{B_R} e^{−3|x|²/8} dx, in closed form through erf.
pub fn gaussian_volume_ball(radius: f64) -> AreaResult {
    assert!(radius >= 0.0 || radius.is_infinite());
    let alpha: f64 = 3.0 / 8.0;
    let norm = 1.0 / (4.0 * std::f64::consts::PI).sqrt();
    if radius == 0.0 {
        return AreaResult::closed(0.0, 0.0);
    }
    let gauss_part = SQRT_PI / (4.0 * alpha.powf(1.5));
    let v = if radius.is_infinite() {
        norm * gauss_part
    } else {
        let e = special::erf(alpha.sqrt() * radius);
        norm * (gauss_part * e.value - radius * (-alpha * radius * radius).exp() / (2.0 * alpha))
    };
    AreaResult::closed(v, 1e-14 * (1.0 + v))
}

/// The radius at which the ball encloses half the total Gaussian volume.
pub fn half_volume_radius() -> f64 {
    let total = gaussian_volume_ball(f64::INFINITY).value;
    crate::optimize::bisect(
        |r| gaussian_volume_ball(r).value - total / 2.0,
        0.1,
        5.0,
        1e-12,
    )
    .expect("volume is monotone and spans the target")
    .root
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TranslateReport {
    pub shift: f64,
    pub lhs: f64,
    pub rhs_bound: f64,
    pub slack: f64,
    pub pass: bool,
}

/// Check F(Σ + h·k) ≤ e^{−h²/4} F(Σ) for a profile supported in {z ≥ 0}.
pub fn translate_area_bound_check(
    profile: &RadialProfile,
    h: f64,
    spec: &QuadratureSpec,
) -> Result<TranslateReport, MeasureError> {
    if h < 0.0 {
        return Err(MeasureError::Precondition("shift must be ≥ 0".into()));
    }
    if profile.z_min() < -1e-12 {
        return Err(MeasureError::Precondition(format!(
            "profile dips below z = 0 (z_min = {})",
            profile.z_min()
        )));
    }
    let origin = FunctionalCenter::origin();
    let base = f_functional_profile(profile, &origin, spec)?;
    let shifted = f_functional_profile(&profile.translated_z(h), &origin, spec)?;
    let rhs = (h * h / -4.0).exp() * base.value;
    let slack = shifted.error_bound + (h * h / -4.0).exp() * base.error_bound;
    Ok(TranslateReport {
        shift: h,
        lhs: shifted.value,
        rhs_bound: rhs,
        slack,
        pass: shifted.value <= rhs + slack + 1e-14,
    })
}

/// Piece-level wrapper for the translation bound; rejects pieces whose
/// profile dips below z = 0.
pub fn translate_area_bound_check_piece(
    piece: &Piece,
    h: f64,
    spec: &QuadratureSpec,
) -> Result<TranslateReport, MeasureError> {
    let profile = lower_in_frame(
        piece,
        &LoweringFrame {
            center_rho: 0.0,
            center_z: h,
            tau: 1.0,
            truncation_threshold: spec.truncation_threshold,
        },
    )?;
    translate_area_bound_check(&profile, h, spec)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MonotonicityReport {
    pub values: Vec<(f64, f64)>,
    pub first_violation: Option<(f64, f64)>,
    pub pass: bool,
}

/// Check that s ↦ F_{s·y, 1+a·s²}(Σ) is non-increasing along the grid for a
/// self-shrinker Σ, within `tol` plus quadrature slack.
pub fn shrinker_monotonicity_check(
    surface: &CompositeSurface,
    y: [f64; 3],
    a: f64,
    s_grid: &[f64],
    tol: f64,
    spec: &QuadratureSpec,
) -> Result<MonotonicityReport, MeasureError> {
    if s_grid.len() < 2 {
        return Err(MeasureError::Precondition(
            "need at least two s values".into(),
        ));
    }
    let mut values = Vec::with_capacity(s_grid.len());
    for &s in s_grid {
        let tau = 1.0 + a * s * s;
        if tau <= 0.0 {
            return Err(MeasureError::Precondition(format!(
                "1 + a s² must stay positive, fails at s = {s}"
            )));
        }
        let center = FunctionalCenter {
            y: [s * y[0], s * y[1], s * y[2]],
            tau,
        };
        let r = f_functional(surface, &center, spec)?;
        values.push((s, r.value));
    }
    let mut first_violation = None;
    for w in values.windows(2) {
        let (s0, v0) = w[0];
        let (s1, v1) = w[1];
        if v1 > v0 + tol {
            first_violation = Some((s0, s1));
            break;
        }
    }
    Ok(MonotonicityReport {
        pass: first_violation.is_none(),
        values,
        first_violation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const FOUR_OVER_E: f64 = 4.0 / std::f64::consts::E;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn sphere_of_radius_two_has_entropy_area() {
        let r = area(&Piece::Sphere { radius: 2.0 }, &spec()).unwrap();
        assert!((r.value - FOUR_OVER_E).abs() < 1e-12);
        assert_eq!(r.method, Method::ClosedForm);
        let q = area_quadrature(&Piece::Sphere { radius: 2.0 }, &spec()).unwrap();
        assert!((q.value - FOUR_OVER_E).abs() < 1e-9);
    }

    #[test]
    fn doubled_plane_has_area_two() {
        let r = area(
            &Piece::DoubledAnnulus {
                r_inner: 0.0,
                r_outer: f64::INFINITY,
                height: 0.0,
            },
            &spec(),
        )
        .unwrap();
        assert!((r.value - 2.0).abs() < 1e-14);
    }

    #[test]
    fn infinite_cylinder_matches_closed_form() {
        let r = area(
            &Piece::Cylinder {
                radius: 2.0f64.sqrt(),
                half_height: f64::INFINITY,
            },
            &spec(),
        )
        .unwrap();
        let want = (2.0 * std::f64::consts::PI / std::f64::consts::E).sqrt();
        assert!((r.value - want).abs() < 1e-12);
    }

    #[test]
    fn flat_cone_is_the_annulus() {
        let r = area(
            &Piece::DoubledCone {
                r_inner: 0.2,
                r_outer: f64::INFINITY,
                offset: 0.0,
                inclination: 0.0,
            },
            &spec(),
        )
        .unwrap();
        assert!((r.value - 2.0 * (-0.01f64).exp()).abs() < 1e-13);
    }

    #[test]
    fn closed_forms_agree_with_quadrature() {
        let pieces = [
            Piece::Sphere { radius: 1.3 },
            Piece::DoubledAnnulus {
                r_inner: 0.4,
                r_outer: 2.5,
                height: 0.7,
            },
            Piece::Cylinder {
                radius: 0.9,
                half_height: 2.0,
            },
            Piece::SphericalCaps {
                radius: 1.7,
                offset: 0.8,
            },
            Piece::RayTubes {
                count: 5,
                radius: 0.01,
                s_min: 0.05,
                s_max: 3.0,
            },
            Piece::VerticalTubes {
                count: 4,
                radius: 0.02,
                ring_radius: 1.1,
                half_height: 0.35,
            },
            Piece::DoubledCone {
                r_inner: 0.5,
                r_outer: f64::INFINITY,
                offset: 0.0,
                inclination: 0.6,
            },
        ];
        for p in &pieces {
            let c = area(p, &spec()).unwrap();
            let q = area_quadrature(p, &spec()).unwrap();
            assert!(
                (c.value - q.value).abs() < 1e-8 * (1.0 + c.value.abs()),
                "{p:?}: closed {} vs quadrature {}",
                c.value,
                q.value
            );
        }
    }

    /// Simpson rule on the unreduced (α, z) integrand: independent of the
    /// scaled-Bessel reduction used by both the closed form and the profile
    /// route.
    fn tube_double_integral_oracle(count: u32, delta: f64, ring: f64, half_h: f64) -> f64 {
        let n_a = 400;
        let n_z = 400;
        let simpson = |f: &dyn Fn(usize) -> f64, n: usize, h: f64| {
            let mut s = f(0) + f(n);
            for i in 1..n {
                s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(i);
            }
            s * h / 3.0
        };
        let ha = 2.0 * std::f64::consts::PI / n_a as f64;
        let hz = 2.0 * half_h / n_z as f64;
        let inner = |i: usize| {
            let alpha = i as f64 * ha;
            let rho_sq = ring * ring + delta * delta + 2.0 * ring * delta * alpha.cos();
            let g = |j: usize| {
                let z = -half_h + j as f64 * hz;
                (-(rho_sq + z * z) / 4.0f64).exp()
            };
            simpson(&g, n_z, hz)
        };
        count as f64 / (4.0 * std::f64::consts::PI) * delta * simpson(&inner, n_a, ha)
    }

    #[test]
    fn tube_reduction_matches_double_integral() {
        let s = spec();
        for (count, delta, ring, half_h) in [
            (3u32, 0.05, 1.2, 0.4),
            (1, 0.2, 0.6, 1.0),
            (5, 0.01, 2.0, 0.2),
        ] {
            let reduced = area(
                &Piece::VerticalTubes {
                    count,
                    radius: delta,
                    ring_radius: ring,
                    half_height: half_h,
                },
                &s,
            )
            .unwrap();
            let oracle = tube_double_integral_oracle(count, delta, ring, half_h);
            assert!(
                (reduced.value - oracle).abs() < 1e-9 * (1.0 + oracle),
                "count={count} δ={delta} ρ={ring}: {} vs oracle {oracle}",
                reduced.value
            );
        }
    }

    #[test]
    fn ray_tube_area_stays_below_linear_budget() {
        // four rays: the straight-tube computation never exceeds A·ε with
        // A = 4·√π/2 (the ε → 0 envelope)
        let s = spec();
        let budget_a = 4.0 * crate::special::SQRT_PI / 2.0;
        for &eps in &[1e-4, 1e-3, 1e-2, 0.05] {
            let v = area(
                &Piece::RayTubes {
                    count: 4,
                    radius: eps,
                    s_min: 0.0,
                    s_max: f64::INFINITY,
                },
                &s,
            )
            .unwrap();
            assert!(
                v.value <= budget_a * eps,
                "{} vs {}",
                v.value,
                budget_a * eps
            );
        }
    }

    #[test]
    fn finite_slanted_cone_below_two() {
        let s = spec();
        let v = area_quadrature(
            &Piece::DoubledCone {
                r_inner: 1.0,
                r_outer: 2.0,
                offset: 0.0,
                inclination: std::f64::consts::FRAC_PI_4,
            },
            &s,
        )
        .unwrap();
        assert!(v.value < 2.0 && v.value > 0.0, "{}", v.value);
    }

    #[test]
    fn half_ellipsoid_joined_to_plane_below_one() {
        // h = 0, b = a = 3: the upper half of a round ellipsoid glued to the
        // plane outside it
        let s = spec();
        let v = area(
            &Piece::CappedGraph {
                height: 0.0,
                a: 3.0,
                b: 3.0,
                sheets: 1,
            },
            &s,
        )
        .unwrap();
        let want = 9.0 * (-9.0f64 / 4.0).exp() / 2.0 + (-9.0f64 / 4.0).exp();
        assert!(v.value < 1.0, "{}", v.value);
        assert!((v.value - want).abs() < 1e-8, "{} vs {want}", v.value);
    }

    #[test]
    fn ellipsoid_degenerations() {
        let s = spec();
        let disk2 = area(
            &Piece::DoubledAnnulus {
                r_inner: 0.0,
                r_outer: 1.8,
                height: 0.0,
            },
            &s,
        )
        .unwrap();
        let flat = area(&Piece::Ellipsoid { a: 1.8, b: 0.0 }, &s).unwrap();
        assert!((flat.value - disk2.value).abs() < 1e-8);
        let sph = area(&Piece::Sphere { radius: 1.8 }, &s).unwrap();
        let round = area(&Piece::Ellipsoid { a: 1.8, b: 1.8 }, &s).unwrap();
        assert!((round.value - sph.value).abs() < 1e-8);
    }

    #[test]
    fn f_functional_reduces_to_area_at_origin() {
        let surf = CompositeSurface::single("sphere", Piece::Sphere { radius: 2.0 });
        let r = f_functional(&surf, &FunctionalCenter::origin(), &spec()).unwrap();
        assert!((r.value - FOUR_OVER_E).abs() < 1e-9);
    }

    #[test]
    fn f_functional_scaled_sphere() {
        // F_{0,τ}(S(R)) = (R²/τ) e^{−R²/4τ}
        let surf = CompositeSurface::single("sphere", Piece::Sphere { radius: 3.0 });
        for &tau in &[0.25, 1.0, 4.0] {
            let r = f_functional(&surf, &FunctionalCenter::on_axis(0.0, tau), &spec()).unwrap();
            let want = 9.0 / tau * (-9.0 / (4.0 * tau)).exp();
            assert!((r.value - want).abs() < 1e-9, "tau={tau}");
        }
    }

    #[test]
    fn f_functional_plane_off_center() {
        // single flat sheet: F_{(0,0,d),1} = e^{−d²/4}
        let plane = CompositeSurface::single(
            "plane",
            Piece::CappedGraph {
                height: 0.0,
                a: 1.0,
                b: 0.0,
                sheets: 1,
            },
        );
        for &d in &[0.0, 0.7, 2.0] {
            let r = f_functional(&plane, &FunctionalCenter::on_axis(d, 1.0), &spec()).unwrap();
            let want = (-d * d / 4.0).exp();
            assert!((r.value - want).abs() < 1e-9, "d={d}");
        }
    }

    #[test]
    fn f_functional_off_axis_sphere() {
        // closed-form oracle: F_{y,τ}(S(R)) = (R²/2τ) e^{−(R²+|y|²)/4τ} (e^β−e^{−β})/β,
        // β = R|y|/2τ, for any center by symmetry
        let surf = CompositeSurface::single("sphere", Piece::Sphere { radius: 2.0 });
        for (y, tau) in [([0.8f64, 0.0, 0.0], 1.0f64), ([0.3, 0.4, 0.5], 0.7)] {
            let d: f64 = (y[0] * y[0] + y[1] * y[1] + y[2] * y[2]).sqrt();
            let beta: f64 = 2.0 * d / (2.0 * tau);
            let want = 4.0 / (2.0 * tau)
                * ((4.0 + d * d) / (-4.0 * tau)).exp()
                * (beta.exp() - (-beta).exp())
                / beta;
            let r = f_functional(&surf, &FunctionalCenter { y, tau }, &spec()).unwrap();
            assert!(
                (r.value - want).abs() < 1e-9,
                "y={y:?}: {} vs {}",
                r.value,
                want
            );
        }
    }

    #[test]
    fn scaling_identity_on_axis() {
        // F_{y,τ}(Σ) = F_{0,1}((Σ−y)/√τ) for axis centers
        let piece = Piece::SphericalCaps {
            radius: 1.5,
            offset: 0.6,
        };
        let (d, tau) = (0.4, 2.2);
        let center = FunctionalCenter::on_axis(d, tau);
        let frame = LoweringFrame {
            center_rho: 0.0,
            center_z: d,
            tau,
            truncation_threshold: 1e-18,
        };
        let profile = lower_in_frame(&piece, &frame).unwrap();
        let lhs = f_functional_profile(&profile, &center, &spec()).unwrap();
        let transformed = profile.translated_z(-d).scaled(1.0 / tau.sqrt());
        let rhs = f_functional_profile(&transformed, &FunctionalCenter::origin(), &spec()).unwrap();
        assert!((lhs.value - rhs.value).abs() < 1e-9);
    }

    #[test]
    fn entropy_of_the_shrinking_sphere() {
        let surf = CompositeSurface::single("sphere", Piece::Sphere { radius: 2.0 });
        let r = entropy(&surf, &EntropySearch::default(), &spec()).unwrap();
        assert!((r.value - FOUR_OVER_E).abs() < 1e-7, "value {}", r.value);
        assert!(r.argmax.z().abs() < 1e-6);
        assert!((r.argmax.tau - 1.0).abs() < 1e-4);
        assert!(!r.on_boundary);
    }

    #[test]
    fn entropy_of_the_plane() {
        let search = EntropySearch {
            axis_points: 21,
            tau_points: 41,
            ..Default::default()
        };
        // single sheet: the normalization pin λ(plane) = 1, flat in τ
        let sheet = CompositeSurface::single(
            "plane sheet",
            Piece::CappedGraph {
                height: 0.0,
                a: 1.0,
                b: 0.0,
                sheets: 1,
            },
        );
        let r = entropy(&sheet, &search, &spec()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-8, "λ(plane) = {}", r.value);
        assert!(r.argmax.z().abs() < 1e-9);
        // flat τ direction: the canonical tie-break keeps τ off the boundary
        assert!(!r.on_boundary, "argmax τ = {}", r.argmax.tau);
        // the doubled plane carries multiplicity two
        let doubled = CompositeSurface::single(
            "doubled plane",
            Piece::DoubledAnnulus {
                r_inner: 0.0,
                r_outer: f64::INFINITY,
                height: 0.0,
            },
        );
        let r2 = entropy(&doubled, &search, &spec()).unwrap();
        assert!((r2.value - 2.0).abs() < 1e-8);
    }

    #[test]
    fn off_axis_samples_stay_below_the_axis_maximum() {
        let surf = CompositeSurface::single("sphere", Piece::Sphere { radius: 2.0 });
        let search = EntropySearch {
            axis_points: 21,
            tau_points: 41,
            check_off_axis: true,
            ..Default::default()
        };
        let r = entropy(&surf, &search, &spec()).unwrap();
        let off = r.off_axis_max.expect("off-axis sampling requested");
        assert!(
            off <= r.value + 1e-9,
            "off-axis {off} above axis {}",
            r.value
        );
    }

    #[test]
    fn entropy_of_the_cylinder() {
        let surf = CompositeSurface::single(
            "cylinder",
            Piece::Cylinder {
                radius: 2.0f64.sqrt(),
                half_height: f64::INFINITY,
            },
        );
        let search = EntropySearch {
            axis_points: 21,
            tau_points: 61,
            ..Default::default()
        };
        let r = entropy(&surf, &search, &spec()).unwrap();
        let want = (2.0 * std::f64::consts::PI / std::f64::consts::E).sqrt();
        assert!((r.value - want).abs() < 1e-7, "value {}", r.value);
        // translation along the axis is a flat direction
        let shifted = f_functional(&surf, &FunctionalCenter::on_axis(1.3, 1.0), &spec()).unwrap();
        assert!((shifted.value - want).abs() < 1e-9);
    }

    #[test]
    fn gaussian_volume_at_infinity() {
        let v = gaussian_volume_ball(f64::INFINITY);
        assert!((v.value - 0.544_331_053_951_817_4).abs() < 1e-12);
        assert!((v.value - 0.5445).abs() < 5e-4);
        assert_eq!(gaussian_volume_ball(0.0).value, 0.0);
        // monotone
        let mut prev = 0.0;
        for i in 1..40 {
            let r = gaussian_volume_ball(i as f64 * 0.25).value;
            assert!(r > prev);
            prev = r;
        }
    }

    #[test]
    fn half_volume_sphere_area_at_least_one() {
        let r_star = half_volume_radius();
        let total = gaussian_volume_ball(f64::INFINITY).value;
        assert!((gaussian_volume_ball(r_star).value - total / 2.0).abs() < 1e-10);
        let a = area(&Piece::Sphere { radius: r_star }, &spec()).unwrap();
        assert!(a.value >= 1.0, "|S(R*)| = {} at R* = {r_star}", a.value);
    }

    #[test]
    fn translation_bound_on_caps() {
        // upper cap of S(R, h), shifted further up by 1
        let profile = {
            let mut p = RadialProfile::new();
            p.push(
                Curve::Arc {
                    center_r: 0.0,
                    center_z: 0.5,
                    rad: 1.2,
                    th0: 0.0,
                    th1: std::f64::consts::FRAC_PI_2,
                },
                1,
            );
            p
        };
        let r = translate_area_bound_check(&profile, 1.0, &spec()).unwrap();
        assert!(r.pass, "{r:?}");
        // h = 0 is equality
        let r0 = translate_area_bound_check(&profile, 0.0, &spec()).unwrap();
        assert!((r0.lhs - r0.rhs_bound).abs() < 1e-12);
    }

    #[test]
    fn translation_bound_rejects_lower_halfspace() {
        let profile =
            lower_in_frame(&Piece::Sphere { radius: 1.0 }, &LoweringFrame::unit(1e-18)).unwrap();
        assert!(matches!(
            translate_area_bound_check(&profile, 0.5, &spec()),
            Err(MeasureError::Precondition(_))
        ));
    }

    #[test]
    fn monotonicity_on_the_sphere() {
        let surf = CompositeSurface::single("sphere", Piece::Sphere { radius: 2.0 });
        let grid = crate::optimize::linspace(0.0, 3.0, 61);
        let r =
            shrinker_monotonicity_check(&surf, [1.0, 0.0, 0.0], 0.0, &grid, 1e-8, &spec()).unwrap();
        assert!(r.pass, "violation at {:?}", r.first_violation);
        // s = 0 recovers the entropy value
        assert!((r.values[0].1 - FOUR_OVER_E).abs() < 1e-9);
        let r2 =
            shrinker_monotonicity_check(&surf, [0.0, 0.0, 1.0], 0.1, &grid, 1e-8, &spec()).unwrap();
        assert!(r2.pass);
    }

    #[test]
    fn additivity_is_exact_summation() {
        let mut surf = CompositeSurface::new("two pieces");
        surf.push(Piece::Sphere { radius: 2.0 }, 1);
        surf.push(
            Piece::Cylinder {
                radius: 1.0,
                half_height: 0.5,
            },
            2,
        );
        let total = composite_area(&surf, &spec()).unwrap();
        let a = area(&Piece::Sphere { radius: 2.0 }, &spec()).unwrap();
        let b = area(
            &Piece::Cylinder {
                radius: 1.0,
                half_height: 0.5,
            },
            &spec(),
        )
        .unwrap();
        assert_eq!(total.value, a.value + 2.0 * b.value);
    }
}
