//! The catalogue of rotationally symmetric surface primitives and their
//! lowering to radial profiles (curves in the (r, z) half-plane, revolved
//! around the z-axis) for quadrature.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Serialize possibly-infinite extents as a number or the string "inf".
pub mod extent {
    use serde::de::{self, Deserializer, Unexpected};
    use serde::ser::Serializer;
    use serde::Deserialize;

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else {
            s.serialize_str("inf")
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(x) => Ok(x),
            Raw::Str(s) if s == "inf" => Ok(f64::INFINITY),
            Raw::Str(s) => Err(de::Error::invalid_value(
                Unexpected::Str(&s),
                &"a number or \"inf\"",
            )),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PieceError {
    #[error("invalid {piece} parameter: {reason}")]
    Invalid { piece: &'static str, reason: String },
    #[error("vertical cone (inclination π/2) with finite outer radius; express it as a cylinder")]
    VerticalCone,
    #[error("composite surface must contain at least one piece")]
    EmptyComposite,
    #[error("piece multiplicity must be 1 or 2, got {0}")]
    BadMultiplicity(u32),
}

fn invalid(piece: &'static str, reason: impl Into<String>) -> PieceError {
    PieceError::Invalid {
        piece,
        reason: reason.into(),
    }
}

/// A rotationally symmetric surface primitive.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "piece", rename_all = "snake_case")]
pub enum Piece {
    /// D(R₁,R₂,h): the flat annulus R₁ ≤ r ≤ R₂ doubled over z = ±h
    /// (both sheets; they coincide with multiplicity two at h = 0).
    DoubledAnnulus {
        r_inner: f64,
        #[serde(with = "extent")]
        r_outer: f64,
        height: f64,
    },
    /// Cyl(R,h): the cylinder r = R, |z| ≤ h.
    Cylinder {
        radius: f64,
        #[serde(with = "extent")]
        half_height: f64,
    },
    /// S(R): the sphere of radius R about the origin.
    Sphere { radius: f64 },
    /// S(R,h): both hemispherical caps of S(R), moved apart by ±h.
    SphericalCaps { radius: f64, offset: f64 },
    /// C(R₁,R₂,h,φ): the doubled cone z = ±(tan(φ)(r−R₁) + h), R₁ < r < R₂,
    /// inclination measured from the horizontal plane.
    DoubledCone {
        r_inner: f64,
        #[serde(with = "extent")]
        r_outer: f64,
        offset: f64,
        inclination: f64,
    },
    /// E(a,b): the ellipsoid (x²+y²)/a² + z²/b² = 1 with b ≤ a.
    Ellipsoid { a: f64, b: f64 },
    /// z^±_{h,a,b}: the radial graph following E(a,b) out to
    /// r = a√(1−h²/b²) and constant at height h beyond, one or two sheets.
    CappedGraph {
        height: f64,
        a: f64,
        b: f64,
        sheets: u8,
    },
    /// L(ε): lateral boundary of the ε-neighborhood of `count` rays in the
    /// plane H through the origin, truncated to s ∈ [s_min, s_max] along
    /// each ray.  Junction geometry near the origin is ignored: each ray
    /// tube is the straight circular tube, which carries the same Gaussian
    /// area as a tube about the z-axis (|x|² = s² + ε² either way).
    RayTubes {
        count: u32,
        radius: f64,
        s_min: f64,
        #[serde(with = "extent")]
        s_max: f64,
    },
    /// V(R,h,δ): `count` tubes of radius δ around vertical lines at distance
    /// `ring_radius` from the z-axis, |z| ≤ half_height.
    VerticalTubes {
        count: u32,
        radius: f64,
        ring_radius: f64,
        half_height: f64,
    },
    /// Ends(R,Ω,h,t): the translated caps S(R,Ω) together with the swept
    /// region traced by the opening cone's outer edge — meridian arcs of
    /// radius Ω−h about (R, ±h) up to angle tπ/2.
    SweptEnds { r: f64, omega: f64, h: f64, t: f64 },
}

impl Piece {
    pub fn validate(&self) -> Result<(), PieceError> {
        match *self {
            Piece::DoubledAnnulus {
                r_inner,
                r_outer,
                height,
            } => {
                if !(r_inner >= 0.0 && r_inner.is_finite()) {
                    return Err(invalid("DoubledAnnulus", "r_inner must be finite and ≥ 0"));
                }
                if r_outer <= r_inner {
                    return Err(invalid("DoubledAnnulus", "r_outer must exceed r_inner"));
                }
                if !(height >= 0.0 && height.is_finite()) {
                    return Err(invalid("DoubledAnnulus", "height must be finite and ≥ 0"));
                }
            }
            Piece::Cylinder {
                radius,
                half_height,
            } => {
                if !(radius > 0.0 && radius.is_finite()) {
                    return Err(invalid("Cylinder", "radius must be finite and > 0"));
                }
                if half_height <= 0.0 {
                    return Err(invalid("Cylinder", "half_height must be > 0"));
                }
            }
            Piece::Sphere { radius } => {
                if !(radius > 0.0 && radius.is_finite()) {
                    return Err(invalid("Sphere", "radius must be finite and > 0"));
                }
            }
            Piece::SphericalCaps { radius, offset } => {
                if !(radius > 0.0 && radius.is_finite()) {
                    return Err(invalid("SphericalCaps", "radius must be finite and > 0"));
                }
                if !(offset >= 0.0 && offset.is_finite()) {
                    return Err(invalid("SphericalCaps", "offset must be finite and ≥ 0"));
                }
            }
            Piece::DoubledCone {
                r_inner,
                r_outer,
                offset,
                inclination,
            } => {
                if !(r_inner >= 0.0 && r_inner.is_finite()) {
                    return Err(invalid("DoubledCone", "r_inner must be finite and ≥ 0"));
                }
                if r_outer <= r_inner {
                    return Err(invalid("DoubledCone", "r_outer must exceed r_inner"));
                }
                if !(offset >= 0.0 && offset.is_finite()) {
                    return Err(invalid("DoubledCone", "offset must be finite and ≥ 0"));
                }
                if !(0.0..=std::f64::consts::FRAC_PI_2).contains(&inclination) {
                    return Err(invalid("DoubledCone", "inclination must lie in [0, π/2]"));
                }
                if inclination == std::f64::consts::FRAC_PI_2 && r_outer.is_finite() {
                    return Err(PieceError::VerticalCone);
                }
            }
            Piece::Ellipsoid { a, b } => {
                if !(a > 0.0 && a.is_finite()) {
                    return Err(invalid("Ellipsoid", "a must be finite and > 0"));
                }
                if !(0.0..=a).contains(&b) {
                    return Err(invalid("Ellipsoid", "b must lie in [0, a]"));
                }
            }
            Piece::CappedGraph {
                height,
                a,
                b,
                sheets,
            } => {
                if !(a > 0.0 && a.is_finite()) {
                    return Err(invalid("CappedGraph", "a must be finite and > 0"));
                }
                if !(height >= 0.0 && height.is_finite()) {
                    return Err(invalid("CappedGraph", "height must be finite and ≥ 0"));
                }
                if !(b >= height && b <= a) {
                    return Err(invalid("CappedGraph", "b must lie in [height, a]"));
                }
                if sheets != 1 && sheets != 2 {
                    return Err(invalid("CappedGraph", "sheets must be 1 or 2"));
                }
            }
            Piece::RayTubes {
                count,
                radius,
                s_min,
                s_max,
            } => {
                if count == 0 {
                    return Err(invalid("RayTubes", "count must be positive"));
                }
                if !(radius > 0.0 && radius.is_finite()) {
                    return Err(invalid("RayTubes", "radius must be finite and > 0"));
                }
                if !(s_min >= 0.0 && s_min.is_finite() && s_max > s_min) {
                    return Err(invalid("RayTubes", "need 0 ≤ s_min < s_max"));
                }
            }
            Piece::VerticalTubes {
                count,
                radius,
                ring_radius,
                half_height,
            } => {
                if count == 0 {
                    return Err(invalid("VerticalTubes", "count must be positive"));
                }
                if !(radius > 0.0 && radius.is_finite()) {
                    return Err(invalid("VerticalTubes", "radius must be finite and > 0"));
                }
                if !(ring_radius > 0.0 && ring_radius.is_finite()) {
                    return Err(invalid(
                        "VerticalTubes",
                        "ring_radius must be finite and > 0",
                    ));
                }
                if !(half_height > 0.0 && half_height.is_finite()) {
                    return Err(invalid(
                        "VerticalTubes",
                        "half_height must be finite and > 0",
                    ));
                }
            }
            Piece::SweptEnds { r, omega, h, t } => {
                if !(r > 0.0 && r.is_finite()) {
                    return Err(invalid("SweptEnds", "r must be finite and > 0"));
                }
                if !(omega > h && omega.is_finite()) {
                    return Err(invalid("SweptEnds", "omega must be finite and > h"));
                }
                if !(h >= 0.0 && h.is_finite()) {
                    return Err(invalid("SweptEnds", "h must be finite and ≥ 0"));
                }
                if !(0.0..=1.0).contains(&t) {
                    return Err(invalid("SweptEnds", "t must lie in [0, 1]"));
                }
            }
        }
        Ok(())
    }
}

/// One piece of a sweepout slice, with multiplicity 1 or 2.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct PieceEntry {
    #[serde(flatten)]
    pub piece: Piece,
    pub multiplicity: u32,
}

/// A finite union of pieces representing one sweepout slice.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CompositeSurface {
    pub label: String,
    pub pieces: Vec<PieceEntry>,
}

impl CompositeSurface {
    pub fn new(label: impl Into<String>) -> Self {
        Self {
            label: label.into(),
            pieces: Vec::new(),
        }
    }

    pub fn push(&mut self, piece: Piece, multiplicity: u32) {
        self.pieces.push(PieceEntry {
            piece,
            multiplicity,
        });
    }

    pub fn single(label: impl Into<String>, piece: Piece) -> Self {
        let mut s = Self::new(label);
        s.push(piece, 1);
        s
    }

    pub fn validate(&self) -> Result<(), PieceError> {
        if self.pieces.is_empty() {
            return Err(PieceError::EmptyComposite);
        }
        for e in &self.pieces {
            if e.multiplicity != 1 && e.multiplicity != 2 {
                return Err(PieceError::BadMultiplicity(e.multiplicity));
            }
            e.piece.validate()?;
        }
        Ok(())
    }
}

/// A smooth parametric curve in the (r, z) half-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Curve {
    /// Straight segment from (r0, z0) to (r1, z1), revolved.
    Line { r0: f64, z0: f64, r1: f64, z1: f64 },
    /// Meridian circular arc about (center_r, center_z):
    /// (r, z) = (center_r + rad sin θ, center_z + rad cos θ), θ ∈ [th0, th1].
    Arc {
        center_r: f64,
        center_z: f64,
        rad: f64,
        th0: f64,
        th1: f64,
    },
    /// Elliptical arc (r, z) = (a sin θ, z_off + b cos θ), θ ∈ [th0, th1] ⊆ [0, π].
    EllipseArc {
        a: f64,
        b: f64,
        z_off: f64,
        th0: f64,
        th1: f64,
    },
    /// Lateral boundary of `count` circular tubes of radius tube_r about
    /// vertical lines at distance axis_r from the z-axis, z0 ≤ z ≤ z1.
    /// axis_r = 0 doubles as the area-equivalent form of tubes about rays
    /// through the origin (with z playing the arclength role).
    Tube {
        count: u32,
        axis_r: f64,
        tube_r: f64,
        z0: f64,
        z1: f64,
    },
}

impl Curve {
    /// Position at normalized parameter u ∈ [0, 1].
    pub fn point(&self, u: f64) -> (f64, f64) {
        match *self {
            Curve::Line { r0, z0, r1, z1 } => (r0 + (r1 - r0) * u, z0 + (z1 - z0) * u),
            Curve::Arc {
                center_r,
                center_z,
                rad,
                th0,
                th1,
            } => {
                let th = th0 + (th1 - th0) * u;
                (center_r + rad * th.sin(), center_z + rad * th.cos())
            }
            Curve::EllipseArc {
                a,
                b,
                z_off,
                th0,
                th1,
            } => {
                let th = th0 + (th1 - th0) * u;
                (a * th.sin(), z_off + b * th.cos())
            }
            Curve::Tube { axis_r, z0, z1, .. } => (axis_r, z0 + (z1 - z0) * u),
        }
    }

    /// |d(r,z)/du| at u.
    pub fn speed(&self, u: f64) -> f64 {
        match *self {
            Curve::Line { r0, z0, r1, z1 } => (r1 - r0).hypot(z1 - z0),
            Curve::Arc { rad, th0, th1, .. } => rad * (th1 - th0).abs(),
            Curve::EllipseArc { a, b, th0, th1, .. } => {
                let th = th0 + (th1 - th0) * u;
                (a * th.cos()).hypot(b * th.sin()) * (th1 - th0).abs()
            }
            Curve::Tube { z0, z1, .. } => (z1 - z0).abs(),
        }
    }

    fn z_range(&self) -> (f64, f64) {
        match *self {
            Curve::Line { z0, z1, .. } => (z0.min(z1), z0.max(z1)),
            Curve::Arc {
                center_z,
                rad,
                th0,
                th1,
                ..
            } => {
                let mut lo = f64::INFINITY;
                let mut hi = f64::NEG_INFINITY;
                for th in [th0, th1] {
                    let z = center_z + rad * th.cos();
                    lo = lo.min(z);
                    hi = hi.max(z);
                }
                // interior extrema at θ = 0 or π
                if th0.min(th1) <= 0.0 && 0.0 <= th0.max(th1) {
                    hi = hi.max(center_z + rad);
                }
                if th0.min(th1) <= std::f64::consts::PI && std::f64::consts::PI <= th0.max(th1) {
                    lo = lo.min(center_z - rad);
                }
                (lo, hi)
            }
            Curve::EllipseArc {
                b, z_off, th0, th1, ..
            } => {
                let (z0, z1) = (z_off + b * th0.cos(), z_off + b * th1.cos());
                (z0.min(z1), z0.max(z1))
            }
            Curve::Tube { z0, z1, .. } => (z0.min(z1), z0.max(z1)),
        }
    }

    fn translated_z(&self, dz: f64) -> Curve {
        let mut c = *self;
        match &mut c {
            Curve::Line { z0, z1, .. } => {
                *z0 += dz;
                *z1 += dz;
            }
            Curve::Arc { center_z, .. } => *center_z += dz,
            Curve::EllipseArc { z_off, .. } => *z_off += dz,
            Curve::Tube { z0, z1, .. } => {
                *z0 += dz;
                *z1 += dz;
            }
        }
        c
    }

    fn scaled(&self, k: f64) -> Curve {
        let mut c = *self;
        match &mut c {
            Curve::Line { r0, z0, r1, z1 } => {
                *r0 *= k;
                *z0 *= k;
                *r1 *= k;
                *z1 *= k;
            }
            Curve::Arc {
                center_r,
                center_z,
                rad,
                ..
            } => {
                *center_r *= k;
                *center_z *= k;
                *rad *= k;
            }
            Curve::EllipseArc { a, b, z_off, .. } => {
                *a *= k;
                *b *= k;
                *z_off *= k;
            }
            Curve::Tube {
                axis_r,
                tube_r,
                z0,
                z1,
                ..
            } => {
                *axis_r *= k;
                *tube_r *= k;
                *z0 *= k;
                *z1 *= k;
            }
        }
        c
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileSegment {
    pub curve: Curve,
    pub multiplicity: u32,
}

/// The lowering target of every piece: a finite list of weighted curves,
/// plus an analytic bound on the Gaussian area discarded when infinite
/// extents were truncated.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialProfile {
    pub segments: Vec<ProfileSegment>,
    pub truncation_error: f64,
}

impl RadialProfile {
    pub fn new() -> Self {
        Self {
            segments: Vec::new(),
            truncation_error: 0.0,
        }
    }

    pub fn push(&mut self, curve: Curve, multiplicity: u32) {
        self.segments.push(ProfileSegment {
            curve,
            multiplicity,
        });
    }

    pub fn z_min(&self) -> f64 {
        self.segments
            .iter()
            .map(|s| s.curve.z_range().0)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn z_max(&self) -> f64 {
        self.segments
            .iter()
            .map(|s| s.curve.z_range().1)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// The profile shifted by dz along the axis.  The stored truncation
    /// bound remains valid for upward shifts (the discarded tail only loses
    /// Gaussian mass when moved away from the origin).
    pub fn translated_z(&self, dz: f64) -> RadialProfile {
        RadialProfile {
            segments: self
                .segments
                .iter()
                .map(|s| ProfileSegment {
                    curve: s.curve.translated_z(dz),
                    multiplicity: s.multiplicity,
                })
                .collect(),
            truncation_error: self.truncation_error,
        }
    }

    /// The profile scaled by k about the origin.
    pub fn scaled(&self, k: f64) -> RadialProfile {
        RadialProfile {
            segments: self
                .segments
                .iter()
                .map(|s| ProfileSegment {
                    curve: s.curve.scaled(k),
                    multiplicity: s.multiplicity,
                })
                .collect(),
            truncation_error: self.truncation_error,
        }
    }
}

impl Default for RadialProfile {
    fn default() -> Self {
        Self::new()
    }
}

/// Evaluation frame for center-aware lowering: truncation radii must cover
/// the Gaussian window of F_{y,τ} around the center, not just F_{0,1}.
#[derive(Debug, Clone, Copy)]
pub struct LoweringFrame {
    pub center_rho: f64,
    pub center_z: f64,
    pub tau: f64,
    pub truncation_threshold: f64,
}

impl LoweringFrame {
    pub fn unit(truncation_threshold: f64) -> Self {
        Self {
            center_rho: 0.0,
            center_z: 0.0,
            tau: 1.0,
            truncation_threshold,
        }
    }

    /// Distance from the center beyond which exp(−d²/4τ) < threshold.
    pub fn cut_distance(&self) -> f64 {
        2.0 * (self.tau * (1.0 / self.truncation_threshold).ln()).sqrt()
    }

    fn radial_cut(&self) -> f64 {
        self.center_rho + self.cut_distance() + 1.0
    }

    fn vertical_cut(&self) -> f64 {
        self.center_z.abs() + self.cut_distance() + 1.0
    }

    /// (1/2τ) ∫_T^∞ r e^{−(r−ρc)²/4τ} dr, an upper bound for the Gaussian
    /// area of any flat or slanted sheet beyond radius T (the z factor and
    /// the scaled Bessel kernel are both ≤ 1).
    fn radial_tail(&self, cut: f64) -> f64 {
        let tau = self.tau;
        let arg = (cut - self.center_rho) / (2.0 * tau.sqrt());
        ((cut - self.center_rho).powi(2) / (-4.0 * tau)).exp()
            + self.center_rho / (2.0 * tau)
                * (std::f64::consts::PI * tau).sqrt()
                * crate::special::erfc(arg).value
    }

    /// w · ∫_Z^∞ e^{−(z−zc)²/4τ} dz for a vertical line or tube whose reduced
    /// radial weight is w.
    fn vertical_tail(&self, cut: f64, weight: f64) -> f64 {
        let tau = self.tau;
        let arg = (cut - self.center_z.abs()) / (2.0 * tau.sqrt());
        weight * (std::f64::consts::PI * tau).sqrt() * crate::special::erfc(arg).value
    }
}

/// Lower a piece to its radial profile with the default F_{0,1} frame.
pub fn lower_to_profile(
    piece: &Piece,
    truncation_threshold: f64,
) -> Result<RadialProfile, PieceError> {
    lower_in_frame(piece, &LoweringFrame::unit(truncation_threshold))
}

/// Center-aware lowering; infinite extents are truncated where the frame's
/// Gaussian integrand falls below its threshold and the discarded tail is
/// bounded analytically into `truncation_error`.
pub fn lower_in_frame(piece: &Piece, frame: &LoweringFrame) -> Result<RadialProfile, PieceError> {
    piece.validate()?;
    let mut p = RadialProfile::new();
    let half_pi = std::f64::consts::FRAC_PI_2;
    match *piece {
        Piece::DoubledAnnulus {
            r_inner,
            r_outer,
            height,
        } => {
            let (outer, tail) = if r_outer.is_finite() {
                (r_outer, 0.0)
            } else {
                let cut = frame.radial_cut().max(r_inner + 1.0);
                (cut, frame.radial_tail(cut))
            };
            if height == 0.0 {
                p.push(
                    Curve::Line {
                        r0: r_inner,
                        z0: 0.0,
                        r1: outer,
                        z1: 0.0,
                    },
                    2,
                );
                p.truncation_error += 2.0 * tail;
            } else {
                for s in [1.0, -1.0] {
                    p.push(
                        Curve::Line {
                            r0: r_inner,
                            z0: s * height,
                            r1: outer,
                            z1: s * height,
                        },
                        1,
                    );
                    p.truncation_error += tail;
                }
            }
        }
        Piece::Cylinder {
            radius,
            half_height,
        } => {
            let (hh, tail) = if half_height.is_finite() {
                (half_height, 0.0)
            } else {
                let cut = frame.vertical_cut();
                // reduced weight of the vertical line at radius R
                let w = radius / (2.0 * frame.tau)
                    * ((radius - frame.center_rho).powi(2) / (-4.0 * frame.tau)).exp();
                (cut, 2.0 * frame.vertical_tail(cut, w))
            };
            p.push(
                Curve::Line {
                    r0: radius,
                    z0: -hh,
                    r1: radius,
                    z1: hh,
                },
                1,
            );
            p.truncation_error += tail;
        }
        Piece::Sphere { radius } => {
            p.push(
                Curve::Arc {
                    center_r: 0.0,
                    center_z: 0.0,
                    rad: radius,
                    th0: 0.0,
                    th1: std::f64::consts::PI,
                },
                1,
            );
        }
        Piece::SphericalCaps { radius, offset } => {
            p.push(
                Curve::Arc {
                    center_r: 0.0,
                    center_z: offset,
                    rad: radius,
                    th0: 0.0,
                    th1: half_pi,
                },
                1,
            );
            p.push(
                Curve::Arc {
                    center_r: 0.0,
                    center_z: -offset,
                    rad: radius,
                    th0: half_pi,
                    th1: std::f64::consts::PI,
                },
                1,
            );
        }
        Piece::DoubledCone {
            r_inner,
            r_outer,
            offset,
            inclination,
        } => {
            if inclination == half_pi {
                // degenerate vertical piece: half-lines r = r_inner, |z| ≥ offset
                let cut = frame.vertical_cut().max(offset + 1.0);
                let w = r_inner / (2.0 * frame.tau)
                    * ((r_inner - frame.center_rho).powi(2) / (-4.0 * frame.tau)).exp();
                for s in [1.0, -1.0] {
                    p.push(
                        Curve::Line {
                            r0: r_inner,
                            z0: s * offset,
                            r1: r_inner,
                            z1: s * cut,
                        },
                        1,
                    );
                    p.truncation_error += frame.vertical_tail(cut, w);
                }
            } else {
                let tan = inclination.tan();
                let sec = 1.0 / inclination.cos();
                let (outer, tail) = if r_outer.is_finite() {
                    (r_outer, 0.0)
                } else {
                    let cut = frame.radial_cut().max(r_inner + 1.0);
                    (cut, sec * frame.radial_tail(cut))
                };
                for s in [1.0, -1.0] {
                    p.push(
                        Curve::Line {
                            r0: r_inner,
                            z0: s * offset,
                            r1: outer,
                            z1: s * (tan * (outer - r_inner) + offset),
                        },
                        1,
                    );
                    p.truncation_error += tail;
                }
            }
        }
        Piece::Ellipsoid { a, b } => {
            p.push(
                Curve::EllipseArc {
                    a,
                    b,
                    z_off: 0.0,
                    th0: 0.0,
                    th1: std::f64::consts::PI,
                },
                1,
            );
        }
        Piece::CappedGraph {
            height,
            a,
            b,
            sheets,
        } => {
            let cut = frame.radial_cut().max(a + 1.0);
            let tail = frame.radial_tail(cut);
            // elliptical portion: z = b cos θ from b down to height
            let th_star = if b > 0.0 {
                (height / b).clamp(-1.0, 1.0).acos()
            } else {
                0.0
            };
            let r_star = a * th_star.sin();
            for sheet in 0..sheets {
                let sign = if sheet == 0 { 1.0 } else { -1.0 };
                if th_star > 0.0 {
                    if sign > 0.0 {
                        p.push(
                            Curve::EllipseArc {
                                a,
                                b,
                                z_off: 0.0,
                                th0: 0.0,
                                th1: th_star,
                            },
                            1,
                        );
                    } else {
                        p.push(
                            Curve::EllipseArc {
                                a,
                                b,
                                z_off: 0.0,
                                th0: std::f64::consts::PI - th_star,
                                th1: std::f64::consts::PI,
                            },
                            1,
                        );
                    }
                }
                p.push(
                    Curve::Line {
                        r0: r_star,
                        z0: sign * height,
                        r1: cut,
                        z1: sign * height,
                    },
                    1,
                );
                p.truncation_error += tail;
            }
        }
        Piece::RayTubes {
            count,
            radius,
            s_min,
            s_max,
        } => {
            let (top, tail) = if s_max.is_finite() {
                (s_max, 0.0)
            } else {
                let cut = frame.vertical_cut().max(s_min + 1.0);
                let w = count as f64 * radius / (2.0 * frame.tau);
                (cut, frame.vertical_tail(cut, w))
            };
            p.push(
                Curve::Tube {
                    count,
                    axis_r: 0.0,
                    tube_r: radius,
                    z0: s_min,
                    z1: top,
                },
                1,
            );
            p.truncation_error += tail;
        }
        Piece::VerticalTubes {
            count,
            radius,
            ring_radius,
            half_height,
        } => {
            p.push(
                Curve::Tube {
                    count,
                    axis_r: ring_radius,
                    tube_r: radius,
                    z0: -half_height,
                    z1: half_height,
                },
                1,
            );
        }
        Piece::SweptEnds { r, omega, h, t } => {
            // the translated caps
            p.push(
                Curve::Arc {
                    center_r: 0.0,
                    center_z: omega,
                    rad: r,
                    th0: 0.0,
                    th1: half_pi,
                },
                1,
            );
            p.push(
                Curve::Arc {
                    center_r: 0.0,
                    center_z: -omega,
                    rad: r,
                    th0: half_pi,
                    th1: std::f64::consts::PI,
                },
                1,
            );
            // the swept edge trace: meridian arcs of radius Ω−h about (r, ±h)
            if t > 0.0 {
                p.push(
                    Curve::Arc {
                        center_r: r,
                        center_z: h,
                        rad: omega - h,
                        th0: 0.0,
                        th1: t * half_pi,
                    },
                    1,
                );
                p.push(
                    Curve::Arc {
                        center_r: r,
                        center_z: -h,
                        rad: omega - h,
                        th0: std::f64::consts::PI,
                        th1: std::f64::consts::PI - t * half_pi,
                    },
                    1,
                );
            }
        }
    }
    Ok(p)
}
