//! Radial solutions of the stability operator on the plane,
//!   L φ = φ'' + (1/r − r/2) φ' + φ/2,
//! through the Kummer equation ξφ_ξξ + (1−ξ)φ_ξ + φ/2 = 0 in ξ = r²/4:
//! φ₁(r) = M(−1/2,1,r²/4) and φ₂(r) = U(−1/2,1,r²/4), their zeros, and the
//! nonexistence of positive radial solutions.  Also the spherical
//! comparison: the first zero of J'' + cot(φ)J' + 4J = 0, J(0)=1, J'(0)=0.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::optimize::{self, SearchError};
use crate::special::{self, SpecialError};

#[derive(Debug, Error)]
pub enum JacobiError {
    #[error(transparent)]
    Special(#[from] SpecialError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error("evaluation requires r > 0, got {0}")]
    Domain(f64),
}

/// Which radial solution to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum JacobiKind {
    Phi1,
    Phi2,
    Combination { lambda: f64 },
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct JacobiSolution {
    pub kind: JacobiKind,
}

impl JacobiSolution {
    pub fn phi1() -> Self {
        Self {
            kind: JacobiKind::Phi1,
        }
    }

    pub fn phi2() -> Self {
        Self {
            kind: JacobiKind::Phi2,
        }
    }

    pub fn combination(lambda: f64) -> Self {
        Self {
            kind: JacobiKind::Combination { lambda },
        }
    }

    /// (f, f', f'') in the Kummer variable ξ.
    fn xi_derivatives(&self, xi: f64) -> Result<(f64, f64, f64), JacobiError> {
        let phi1 = |xi: f64| -> Result<(f64, f64, f64), JacobiError> {
            Ok((
                special::kummer_m(-0.5, 1.0, xi)?.value,
                special::kummer_m_deriv(-0.5, 1.0, xi)?.value,
                special::kummer_m_deriv2(-0.5, 1.0, xi)?.value,
            ))
        };
        let phi2 = |xi: f64| -> Result<(f64, f64, f64), JacobiError> {
            Ok((
                special::tricomi_u_half(xi)?.value,
                special::tricomi_u_half_deriv(xi)?.value,
                special::tricomi_u_half_deriv2(xi)?.value,
            ))
        };
        match self.kind {
            JacobiKind::Phi1 => phi1(xi),
            JacobiKind::Phi2 => phi2(xi),
            JacobiKind::Combination { lambda } => {
                let a = phi2(xi)?;
                let b = phi1(xi)?;
                Ok((a.0 + lambda * b.0, a.1 + lambda * b.1, a.2 + lambda * b.2))
            }
        }
    }

    pub fn eval(&self, r: f64) -> Result<f64, JacobiError> {
        if r <= 0.0 {
            // φ₁ extends continuously to r = 0 with value 1
            if r == 0.0 {
                if let JacobiKind::Phi1 = self.kind {
                    return Ok(1.0);
                }
            }
            return Err(JacobiError::Domain(r));
        }
        Ok(self.xi_derivatives(r * r / 4.0)?.0)
    }

    /// dφ/dr = f'(ξ)·r/2.
    pub fn deriv(&self, r: f64) -> Result<f64, JacobiError> {
        if r <= 0.0 {
            return Err(JacobiError::Domain(r));
        }
        let (_, fp, _) = self.xi_derivatives(r * r / 4.0)?;
        Ok(fp * r / 2.0)
    }

    /// d²φ/dr² = ξ f''(ξ) + f'(ξ)/2.
    pub fn deriv2(&self, r: f64) -> Result<f64, JacobiError> {
        if r <= 0.0 {
            return Err(JacobiError::Domain(r));
        }
        let xi = r * r / 4.0;
        let (_, fp, fpp) = self.xi_derivatives(xi)?;
        Ok(xi * fpp + fp / 2.0)
    }
}

/// |φ'' + (1/r − r/2)φ' + φ/2| with analytic derivatives.
pub fn stability_residual(sol: &JacobiSolution, r: f64) -> Result<f64, JacobiError> {
    if r <= 0.0 {
        return Err(JacobiError::Domain(r));
    }
    let xi = r * r / 4.0;
    let (f, fp, fpp) = sol.xi_derivatives(xi)?;
    let phi_r = fp * r / 2.0;
    let phi_rr = xi * fpp + fp / 2.0;
    Ok((phi_rr + (1.0 / r - r / 2.0) * phi_r + f / 2.0).abs())
}

/// The same residual measured in the Kummer form ξf'' + (1−ξ)f' + f/2.
pub fn kummer_form_residual(sol: &JacobiSolution, xi: f64) -> Result<f64, JacobiError> {
    if xi <= 0.0 {
        return Err(JacobiError::Domain(xi));
    }
    let (f, fp, fpp) = sol.xi_derivatives(xi)?;
    Ok((xi * fpp + (1.0 - xi) * fp + f / 2.0).abs())
}

/// A bracketed zero of a radial solution.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ZeroBracket {
    pub lo: f64,
    pub hi: f64,
    pub root: f64,
    pub residual: f64,
}

/// Bisect a sign change of `sol` inside `bracket` down to width 1e-12.
pub fn find_zero(sol: &JacobiSolution, bracket: (f64, f64)) -> Result<ZeroBracket, JacobiError> {
    let s = *sol;
    let r = optimize::bisect(
        move |r| s.eval(r).unwrap_or(f64::NAN),
        bracket.0,
        bracket.1,
        1e-12,
    )?;
    Ok(ZeroBracket {
        lo: r.lo,
        hi: r.hi,
        root: r.root,
        residual: r.residual,
    })
}

/// First zero r₁ of φ₁, bracketed to 1e-12.
pub fn phi1_first_zero() -> Result<ZeroBracket, JacobiError> {
    find_zero(&JacobiSolution::phi1(), (0.1, 6.0))
}

/// The zero r₂ of φ₂; lies below r₁.
pub fn phi2_zero() -> Result<ZeroBracket, JacobiError> {
    let r1 = phi1_first_zero()?;
    find_zero(&JacobiSolution::phi2(), (1e-6, r1.root))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Phi1ShapeReport {
    pub value_at_zero: f64,
    pub first_zero: f64,
    /// grid points in (0, r₁+2] where φ₁' ≥ 0 or φ₁'' ≥ 0
    pub violations: Vec<f64>,
    /// φ₁(8) over the asymptotic series built on −4r^{−3}e^{r²/4}/√π
    pub asymptotic_ratio: f64,
    /// the same ratio against the bare leading term (≈ 1.18 at r = 8;
    /// the 1 + 9/(4ξ) correction is not negligible there)
    pub leading_term_ratio: f64,
    pub pass: bool,
}

/// Asymptotic series for φ₁: −4r^{−3}e^{r²/4}/√π · Σ_k (3/2)_k(3/2)_k/(k! ξ^k),
/// truncated at its smallest term.
fn phi1_asymptotic(r: f64) -> f64 {
    let xi = r * r / 4.0;
    let leading = -4.0 * r.powi(-3) * xi.exp() / special::SQRT_PI;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 0.0;
    loop {
        let next = term * (1.5 + k) * (1.5 + k) / ((k + 1.0) * xi);
        if next.abs() >= term.abs() || k > 40.0 {
            break;
        }
        term = next;
        sum += term;
        k += 1.0;
    }
    leading * sum
}

/// φ₁(0) = 1, φ₁' < 0 and φ₁'' < 0 on (0, r₁+2], and the large-r asymptote.
pub fn verify_phi1_shape() -> Result<Phi1ShapeReport, JacobiError> {
    let phi1 = JacobiSolution::phi1();
    let value_at_zero = phi1.eval(0.0)?;
    let r1 = phi1_first_zero()?;
    let mut violations = Vec::new();
    for r in optimize::linspace(1e-3, r1.root + 2.0, 2000) {
        if phi1.deriv(r)? >= 0.0 || phi1.deriv2(r)? >= 0.0 {
            violations.push(r);
        }
    }
    let r = 8.0f64;
    let leading = -4.0 * r.powi(-3) * (r * r / 4.0).exp() / special::SQRT_PI;
    let asymptotic_ratio = phi1.eval(r)? / phi1_asymptotic(r);
    let leading_term_ratio = phi1.eval(r)? / leading;
    let pass = (value_at_zero - 1.0).abs() < 1e-14
        && violations.is_empty()
        && (asymptotic_ratio - 1.0).abs() < 0.05;
    Ok(Phi1ShapeReport {
        value_at_zero,
        first_zero: r1.root,
        violations,
        asymptotic_ratio,
        leading_term_ratio,
        pass,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SignCertificate {
    pub lambda: f64,
    pub positive_at: f64,
    pub positive_value: f64,
    pub negative_at: f64,
    pub negative_value: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NoPositiveRadialReport {
    pub r1: f64,
    pub r2: f64,
    pub certificates: Vec<SignCertificate>,
    pub failures: Vec<f64>,
    pub pass: bool,
}

/// Certify that every φ_λ = φ₂ + λφ₁ (and ±φ₁, ±φ₂ themselves) takes both
/// signs: positivity at r₁ where φ_λ(r₁) = φ₂(r₁) > 0, negativity near 0
/// where φ₂ → −∞ logarithmically, or at large r where λφ₁ → −∞ dominates.
pub fn verify_no_positive_radial(
    lambda_grid: &[f64],
) -> Result<NoPositiveRadialReport, JacobiError> {
    let r1 = phi1_first_zero()?;
    let r2 = phi2_zero()?;
    let mut certificates = Vec::new();
    let mut failures = Vec::new();
    for &lambda in lambda_grid {
        let sol = JacobiSolution::combination(lambda);
        let pos_r = r1.root;
        let pos_val = sol.eval(pos_r)?;
        let mut neg = None;
        for &r in &[1e-6, 0.1, 4.0, 8.0] {
            let v = sol.eval(r)?;
            if v < -1e-9 {
                neg = Some((r, v));
                break;
            }
        }
        match (pos_val > 1e-9, neg) {
            (true, Some((neg_r, neg_val))) => certificates.push(SignCertificate {
                lambda,
                positive_at: pos_r,
                positive_value: pos_val,
                negative_at: neg_r,
                negative_value: neg_val,
            }),
            _ => failures.push(lambda),
        }
    }
    // pure multiples change sign across their own zeros
    let phi1 = JacobiSolution::phi1();
    let phi2 = JacobiSolution::phi2();
    let d = 1e-3;
    let phi1_flips = phi1.eval(r1.root - d)? > 0.0 && phi1.eval(r1.root + d)? < 0.0;
    let phi2_flips =
        phi2.eval(r2.root - d.min(r2.root / 2.0))? < 0.0 && phi2.eval(r2.root + d)? > 0.0;
    let pass = failures.is_empty() && phi1_flips && phi2_flips && r2.root < r1.root;
    Ok(NoPositiveRadialReport {
        r1: r1.root,
        r2: r2.root,
        certificates,
        failures,
        pass,
    })
}

/// Log-symmetric λ grid: ±logspace plus 0.
pub fn lambda_grid(magnitude_lo: f64, magnitude_hi: f64, per_side: usize) -> Vec<f64> {
    let mags = optimize::logspace(magnitude_lo, magnitude_hi, per_side);
    let mut grid: Vec<f64> = mags.iter().map(|m| -m).collect();
    grid.push(0.0);
    grid.extend(mags.iter());
    grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
    grid
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SphereComparisonReport {
    pub first_zero: ZeroBracket,
    pub below_equator: bool,
    pub cos_eigen_residual: f64,
    pub pass: bool,
}

/// State derivative for J'' + cot(φ)J' + 4J = 0.
fn sphere_ode(phi: f64, y: [f64; 2]) -> [f64; 2] {
    let cot = phi.cos() / phi.sin();
    [y[1], -cot * y[1] - 4.0 * y[0]]
}

fn rk4_step(phi: f64, y: [f64; 2], h: f64) -> [f64; 2] {
    let k1 = sphere_ode(phi, y);
    let k2 = sphere_ode(
        phi + h / 2.0,
        [y[0] + h / 2.0 * k1[0], y[1] + h / 2.0 * k1[1]],
    );
    let k3 = sphere_ode(
        phi + h / 2.0,
        [y[0] + h / 2.0 * k2[0], y[1] + h / 2.0 * k2[1]],
    );
    let k4 = sphere_ode(phi + h, [y[0] + h * k3[0], y[1] + h * k3[1]]);
    [
        y[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
        y[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
    ]
}

/// Integrate from the regular series start; J ≈ 1 − φ² + (5/24)φ⁴ enforces
/// J'(0) = 0 smoothness at the pole.
fn integrate_sphere_profile(to: f64, h: f64) -> [f64; 2] {
    let phi0: f64 = 1e-4;
    let mut y = [
        1.0 - phi0 * phi0 + 5.0 / 24.0 * phi0.powi(4),
        -2.0 * phi0 + 5.0 / 6.0 * phi0.powi(3),
    ];
    let mut phi = phi0;
    while phi + h <= to {
        y = rk4_step(phi, y, h);
        phi += h;
    }
    let rest = to - phi;
    if rest > 0.0 {
        y = rk4_step(phi, y, rest);
    }
    y
}

/// First zero φ₀ of the spherical profile equation, and the cos φ
/// cross-check under the eigenvalue-2 operator.
pub fn sphere_profile_first_zero() -> Result<SphereComparisonReport, JacobiError> {
    let h = 2e-5;
    let mut phi = 1e-4;
    let mut y = [1.0 - phi * phi, -2.0 * phi];
    let mut prev_phi = phi;
    let limit = std::f64::consts::FRAC_PI_2 + 0.3;
    while y[0] > 0.0 && phi < limit {
        prev_phi = phi;
        y = rk4_step(phi, y, h);
        phi += h;
    }
    if y[0] > 0.0 {
        return Err(JacobiError::Domain(phi));
    }
    // bisect on the integrated solution
    let eval = |p: f64| integrate_sphere_profile(p, h)[0];
    let b = optimize::bisect(eval, prev_phi - h, phi + h, 1e-12)?;
    let first_zero = ZeroBracket {
        lo: b.lo,
        hi: b.hi,
        root: b.root,
        residual: b.residual,
    };

    // f = cos φ satisfies f'' + cot(φ)f' + 2f = 0 exactly
    let mut worst = 0.0f64;
    for p in optimize::linspace(0.05, std::f64::consts::PI - 0.05, 500) {
        let f = p.cos();
        let fp = -p.sin();
        let fpp = -p.cos();
        let res = (fpp + p.cos() / p.sin() * fp + 2.0 * f).abs();
        worst = worst.max(res);
    }
    let below_equator = first_zero.root < std::f64::consts::FRAC_PI_2;
    Ok(SphereComparisonReport {
        first_zero,
        below_equator,
        cos_eigen_residual: worst,
        pass: below_equator && worst < 1e-10,
    })
}
