//! The canonical relative frame at the pole and the Euler-Savary
//! conjugate-point map.
//!
//! Chart convention: pole-relative vectors (`tangent_unit`, `x_rel`,
//! `x_rel_p`) are expressed in the fixed plane `H′` at the instant `t`.
//! [`CanonicalData::to_moving_chart`] turns them into `H` vectors.
//!
//! The canonical frame `{P; a₁, a₂}` has `a₂ = j·a₁`. When the centrode
//! tangent is H-I/H-III type it is `a₁`; when it is H-II/H-IV type it is
//! `a₂`. Canonical coordinates `c` of a chart vector `v` satisfy `v = c·a₁`.

use thiserror::Error;

use crate::hypnum::{exp_j, HyperbolicNumber, SectorClass, J};
use crate::motion::{Motion, MotionError};

/// Relative threshold for the Euler-Savary denominator (inflection locus).
pub const INFLECTION_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum CanonicalError {
    #[error(transparent)]
    Motion(#[from] MotionError),
    #[error("pole tangent is isotropic at t = {t}")]
    IsotropicTangent { t: f64 },
    #[error("direction ({re}, {uni}) is isotropic or zero")]
    IsotropicDirection { re: f64, uni: f64 },
    #[error("curvature center at infinity (point on the inflection locus)")]
    NoConjugate,
}

/// Which canonical axis carries the common centrode tangent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameConfiguration {
    /// Tangent is H-I/H-III type and lies along `a₁`.
    TangentOnFirstAxis,
    /// Tangent is H-II/H-IV type and lies along `a₂`.
    TangentOnSecondAxis,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Plane {
    Moving,
    Fixed,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalData {
    pub t: f64,
    pub pole_h: HyperbolicNumber,
    pub pole_hp: HyperbolicNumber,
    /// Unit tangent of the fixed centrode in `H′`, pointing along the motion.
    pub tangent_unit: HyperbolicNumber,
    pub sector: SectorClass,
    /// Arc rate `ds/dt > 0` shared by both centrodes.
    pub s_dot: f64,
    /// Signed curvature radius of the moving centrode.
    pub r: f64,
    /// Signed curvature radius of the fixed centrode.
    pub r_p: f64,
    /// `ψ̇ − φ̇`
    pub nu_dot: f64,
    /// Tangent-angle rate of the moving centrode in `H`.
    pub theta_dot_moving: f64,
    /// Tangent-angle rate of the fixed centrode in `H′`.
    pub theta_dot_fixed: f64,
    pub phi: f64,
    pub psi: f64,
}

impl CanonicalData {
    pub fn configuration(&self) -> FrameConfiguration {
        if self.sector.is_real_type() {
            FrameConfiguration::TangentOnFirstAxis
        } else {
            FrameConfiguration::TangentOnSecondAxis
        }
    }

    pub fn normal_unit(&self) -> HyperbolicNumber {
        J * self.tangent_unit
    }

    /// `a₁` in the `H′` chart.
    pub fn first_axis(&self) -> HyperbolicNumber {
        match self.configuration() {
            FrameConfiguration::TangentOnFirstAxis => self.tangent_unit,
            FrameConfiguration::TangentOnSecondAxis => self.normal_unit(),
        }
    }

    /// `dν/ds = 1/r′ − 1/r`.
    pub fn nu_per_arc(&self) -> f64 {
        self.nu_dot / self.s_dot
    }

    /// Arc rate as a canonical-frame vector: along `a₁` or `a₂`.
    pub fn sigma_canonical(&self) -> HyperbolicNumber {
        match self.configuration() {
            FrameConfiguration::TangentOnFirstAxis => HyperbolicNumber::real(self.s_dot),
            FrameConfiguration::TangentOnSecondAxis => J * self.s_dot,
        }
    }

    pub fn to_canonical(&self, v: HyperbolicNumber) -> HyperbolicNumber {
        // a₁ has unit modulus, so 1/a₁ = ā₁ / ⟨a₁, a₁⟩.
        let a1 = self.first_axis();
        v * a1.conj() * a1.quadrance().signum()
    }

    pub fn from_canonical(&self, c: HyperbolicNumber) -> HyperbolicNumber {
        c * self.first_axis()
    }

    /// Rotates an `H′` vector into the `H` chart at this instant.
    pub fn to_moving_chart(&self, v: HyperbolicNumber) -> HyperbolicNumber {
        v * exp_j(self.phi - self.psi)
    }

    /// `H`-coordinates of the point at `x_rel` from the pole.
    pub fn moving_point(&self, x_rel: HyperbolicNumber) -> HyperbolicNumber {
        self.pole_h + self.to_moving_chart(x_rel)
    }

    /// The same instant seen from the inverse motion, where `H′` moves and
    /// `H` is fixed. The result uses the `H` chart.
    pub fn inverse(&self) -> CanonicalData {
        let tangent = self.to_moving_chart(self.tangent_unit);
        CanonicalData {
            t: self.t,
            pole_h: self.pole_hp,
            pole_hp: self.pole_h,
            tangent_unit: tangent,
            sector: tangent.sector(),
            s_dot: self.s_dot,
            r: self.r_p,
            r_p: self.r,
            nu_dot: -self.nu_dot,
            theta_dot_moving: self.theta_dot_fixed,
            theta_dot_fixed: self.theta_dot_moving,
            phi: self.psi,
            psi: self.phi,
        }
    }
}

/// A point and the curvature center of its trajectory, both pole-relative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConjugatePair {
    pub x_rel: HyperbolicNumber,
    pub x_rel_p: HyperbolicNumber,
    /// Lorentzian distance of `X` from the pole.
    pub a: f64,
    /// Signed distance of `X′` along the ray from the pole through `X`;
    /// negative when the center lies across the pole.
    pub a_p: f64,
    /// Hyperbolic angle of `x_rel` within its canonical sector.
    pub alpha: f64,
    /// Sector of `x_rel` relative to the tangent: H-I/H-III are the tangent
    /// sector (forward/backward), H-II/H-IV the normal sector.
    pub sector: SectorClass,
}

/// Builds the canonical frame of `motion` at `t`.
pub fn canonical_data(motion: &Motion, t: f64) -> Result<CanonicalData, CanonicalError> {
    let pole = motion.pole_point(t)?;
    let (moving, fixed) = motion.pole_jets(t)?;
    let (phi, psi) = motion.angles(t)?;
    let (tau, tau_p) = motion.rotation_rates(t)?;

    let v = fixed.d1;
    if v.norm_sqr_euclid() == 0.0 || v.is_isotropic() || moving.d1.is_isotropic() {
        return Err(CanonicalError::IsotropicTangent { t });
    }
    let s_dot = v.norm_h();
    let tangent_unit = v / s_dot;

    let theta_dot_moving = moving.d1.cross(moving.d2) / moving.d1.quadrance();
    let theta_dot_fixed = fixed.d1.cross(fixed.d2) / fixed.d1.quadrance();

    Ok(CanonicalData {
        t,
        pole_h: pole.in_h,
        pole_hp: pole.in_hp,
        tangent_unit,
        sector: tangent_unit.sector(),
        s_dot,
        r: s_dot / theta_dot_moving,
        r_p: s_dot / theta_dot_fixed,
        nu_dot: tau_p - tau,
        theta_dot_moving,
        theta_dot_fixed,
        phi,
        psi,
    })
}

/// Curvature center `X′` of the trajectory of the moving-plane point at
/// `x_rel` from the pole.
///
/// With `x_rel = ±a·T·e^{jα}` (tangent sector) the center satisfies
/// `(1/a − 1/a′)·sinh α = ±(1/r − 1/r′)`; with `x_rel = ±a·jT·e^{jα}`
/// (normal sector) it satisfies `(1/a − 1/a′)·cosh α = ±(1/r′ − 1/r)`.
pub fn conjugate_point(
    cd: &CanonicalData,
    x_rel: HyperbolicNumber,
) -> Result<ConjugatePair, CanonicalError> {
    let isotropic = CanonicalError::IsotropicDirection {
        re: x_rel.re,
        uni: x_rel.uni,
    };
    let t = cd.tangent_unit;
    let w = x_rel * t.conj() * t.quadrance().signum();
    let polar = w.to_polar().map_err(|_| isotropic)?;
    let (a, alpha, side) = (polar.radius, polar.angle, polar.sector.sign());
    let kappa = cd.nu_per_arc();

    let (num, den, size) = if polar.sector.is_real_type() {
        let sh = alpha.sinh();
        (sh, sh + side * kappa * a, sh.abs() + (kappa * a).abs())
    } else {
        let ch = alpha.cosh();
        (ch, ch - side * kappa * a, ch + (kappa * a).abs())
    };
    if den.abs() <= INFLECTION_TOLERANCE * size {
        return Err(CanonicalError::NoConjugate);
    }
    let a_p = a * num / den;
    Ok(ConjugatePair {
        x_rel,
        x_rel_p: x_rel * (a_p / a),
        a,
        a_p,
        alpha,
        sector: polar.sector,
    })
}

/// Left side of `jσ(a − a′) + j·a·a′·e^{jα}·ν̇` for a pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerSavaryResidual {
    pub value: HyperbolicNumber,
    /// Unipotent part: the component along the pole normal.
    pub normal_component: f64,
    /// Real part, reported for diagnostics only.
    pub complementary_component: f64,
    /// Magnitude of the individual terms, for relative comparisons.
    pub scale: f64,
}

pub fn euler_savary_residual(cd: &CanonicalData, pair: &ConjugatePair) -> EulerSavaryResidual {
    let sigma = cd.s_dot * pair.sector.sign();
    let first = J * (sigma * (pair.a - pair.a_p));
    let second = J * exp_j(pair.alpha) * (pair.a * pair.a_p * cd.nu_dot);
    let value = first + second;
    EulerSavaryResidual {
        value,
        normal_component: value.uni,
        complementary_component: value.re,
        scale: first.abs_euclid() + second.abs_euclid(),
    }
}

/// Canonical-coordinate rates of a point at canonical position `c` that is
/// fixed in the moving plane (`Moving`) or the fixed plane (`Fixed`):
/// `ċ = −σ − jτc`, with `τ` the centrode tangent-angle rate of that plane.
pub fn canonical_fixed_flow(
    cd: &CanonicalData,
    c: HyperbolicNumber,
    which: Plane,
) -> HyperbolicNumber {
    let tau = match which {
        Plane::Moving => cd.theta_dot_moving,
        Plane::Fixed => cd.theta_dot_fixed,
    };
    -cd.sigma_canonical() - J * c * tau
}

/// Sliding velocity `j·ν̇·c` of the moving-plane point at canonical position `c`.
pub fn canonical_sliding(cd: &CanonicalData, c: HyperbolicNumber) -> HyperbolicNumber {
    J * c * cd.nu_dot
}
