//! Split-complex (hyperbolic) numbers `x + jy` with `j² = +1`.
//!
//! These are the coordinates of the Lorentzian plane: the bilinear form
//! `⟨z, w⟩ = xu − yv` has signature `(+, −)`, the lines `y = ±x` are null,
//! and multiplication by `e^{jφ} = cosh φ + j sinh φ` is a hyperbolic
//! rotation (a Lorentz boost) that preserves the form.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use thiserror::Error;

/// Relative tolerance under which `|re² − uni²|` counts as zero.
pub const ISOTROPY_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum HypError {
    #[error("non-finite component ({re}, {uni})")]
    NonFinite { re: f64, uni: f64 },
    #[error("zero has no polar form")]
    ZeroInput,
    #[error("isotropic value ({re}, {uni}) has no polar form")]
    IsotropicInput { re: f64, uni: f64 },
    #[error("division by a null (isotropic or zero) value")]
    NullDivisor,
}

#[derive(Clone, Copy, Default, PartialEq)]
pub struct HyperbolicNumber {
    pub re: f64,
    pub uni: f64,
}

/// The unipotent unit `j`.
pub const J: HyperbolicNumber = HyperbolicNumber { re: 0.0, uni: 1.0 };
pub const ONE: HyperbolicNumber = HyperbolicNumber { re: 1.0, uni: 0.0 };
pub const ZERO: HyperbolicNumber = HyperbolicNumber { re: 0.0, uni: 0.0 };

impl HyperbolicNumber {
    #[inline]
    pub const fn new(re: f64, uni: f64) -> Self {
        Self { re, uni }
    }

    /// Checked constructor; rejects NaN and infinities.
    pub fn try_new(re: f64, uni: f64) -> Result<Self, HypError> {
        if re.is_finite() && uni.is_finite() {
            Ok(Self { re, uni })
        } else {
            Err(HypError::NonFinite { re, uni })
        }
    }

    #[inline]
    pub const fn real(re: f64) -> Self {
        Self { re, uni: 0.0 }
    }

    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.uni.is_finite()
    }

    #[inline]
    pub fn conj(self) -> Self {
        Self::new(self.re, -self.uni)
    }

    #[inline]
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, w: Self) -> Self {
        Self::new(
            self.re * w.re + self.uni * w.uni,
            self.re * w.uni + self.uni * w.re,
        )
    }

    /// Lorentzian inner product `Re(z w̄) = xu − yv`.
    #[inline]
    pub fn inner(self, w: Self) -> f64 {
        self.re * w.re - self.uni * w.uni
    }

    /// `z z̄ = x² − y²`, the signed squared modulus.
    #[inline]
    pub fn quadrance(self) -> f64 {
        (self.re - self.uni) * (self.re + self.uni)
    }

    /// Hyperbolic modulus `√|x² − y²|`; zero on the isotropic lines.
    #[inline]
    pub fn norm_h(self) -> f64 {
        self.quadrance().abs().sqrt()
    }

    /// Ordinary Euclidean length of the coordinate vector, used for scales.
    #[inline]
    pub fn abs_euclid(self) -> f64 {
        self.re.hypot(self.uni)
    }

    #[inline]
    pub fn norm_sqr_euclid(self) -> f64 {
        self.re * self.re + self.uni * self.uni
    }

    /// Unipotent part of `z̄ w`: `xv − yu`. Zero exactly when `z` and `w` are parallel.
    #[inline]
    pub fn cross(self, w: Self) -> f64 {
        self.re * w.uni - self.uni * w.re
    }

    pub fn is_isotropic(self) -> bool {
        self.quadrance().abs() <= ISOTROPY_TOLERANCE * self.norm_sqr_euclid()
    }

    pub fn sector(self) -> SectorClass {
        SectorClass::classify(self)
    }

    pub fn checked_div(self, w: Self) -> Result<Self, HypError> {
        let q = w.quadrance();
        if w.is_isotropic() || q == 0.0 {
            return Err(HypError::NullDivisor);
        }
        let n = self.mul(w.conj());
        Ok(Self::new(n.re / q, n.uni / q))
    }

    pub fn scale(self, k: f64) -> Self {
        Self::new(self.re * k, self.uni * k)
    }

    pub fn to_polar(self) -> Result<HyperbolicPolar, HypError> {
        HyperbolicPolar::from_number(self)
    }
}

impl fmt::Debug for HyperbolicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({:?} {} {:?}j)",
            self.re,
            if self.uni < 0.0 { '-' } else { '+' },
            self.uni.abs()
        )
    }
}

impl fmt::Display for HyperbolicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {}j",
            self.re,
            if self.uni < 0.0 { '-' } else { '+' },
            self.uni.abs()
        )
    }
}

impl Add for HyperbolicNumber {
    type Output = Self;
    #[inline]
    fn add(self, w: Self) -> Self {
        Self::new(self.re + w.re, self.uni + w.uni)
    }
}

impl AddAssign for HyperbolicNumber {
    fn add_assign(&mut self, w: Self) {
        *self = *self + w;
    }
}

impl Sub for HyperbolicNumber {
    type Output = Self;
    #[inline]
    fn sub(self, w: Self) -> Self {
        Self::new(self.re - w.re, self.uni - w.uni)
    }
}

impl SubAssign for HyperbolicNumber {
    fn sub_assign(&mut self, w: Self) {
        *self = *self - w;
    }
}

impl Neg for HyperbolicNumber {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.re, -self.uni)
    }
}

impl Mul for HyperbolicNumber {
    type Output = Self;
    #[inline]
    fn mul(self, w: Self) -> Self {
        HyperbolicNumber::mul(self, w)
    }
}

impl Mul<f64> for HyperbolicNumber {
    type Output = Self;
    #[inline]
    fn mul(self, k: f64) -> Self {
        self.scale(k)
    }
}

impl Mul<HyperbolicNumber> for f64 {
    type Output = HyperbolicNumber;
    #[inline]
    fn mul(self, z: HyperbolicNumber) -> HyperbolicNumber {
        z.scale(self)
    }
}

impl Div<f64> for HyperbolicNumber {
    type Output = Self;
    #[inline]
    fn div(self, k: f64) -> Self {
        Self::new(self.re / k, self.uni / k)
    }
}

/// Free-function forms of the basic algebra.
#[inline]
pub fn mul(z: HyperbolicNumber, w: HyperbolicNumber) -> HyperbolicNumber {
    z.mul(w)
}

#[inline]
pub fn inner(z: HyperbolicNumber, w: HyperbolicNumber) -> f64 {
    z.inner(w)
}

#[inline]
pub fn norm_h(z: HyperbolicNumber) -> f64 {
    z.norm_h()
}

/// `e^{jφ} = cosh φ + j sinh φ`, a point on the right branch of the unit hyperbola.
#[inline]
pub fn exp_j(phi: f64) -> HyperbolicNumber {
    HyperbolicNumber::new(phi.cosh(), phi.sinh())
}

/// Matrix of the hyperbolic rotation by `phi`, acting on `(re, uni)` column vectors.
pub fn rotation_matrix(phi: f64) -> [[f64; 2]; 2] {
    let (c, s) = (phi.cosh(), phi.sinh());
    [[c, s], [s, c]]
}

pub fn apply_matrix(m: [[f64; 2]; 2], z: HyperbolicNumber) -> HyperbolicNumber {
    HyperbolicNumber::new(
        m[0][0] * z.re + m[0][1] * z.uni,
        m[1][0] * z.re + m[1][1] * z.uni,
    )
}

/// The region of the Lorentzian plane a value falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SectorClass {
    /// `re > |uni|`
    HI,
    /// `uni > |re|`
    HII,
    /// `re < −|uni|`
    HIII,
    /// `uni < −|re|`
    HIV,
    /// On the line `y = x`.
    IsotropicPlus,
    /// On the line `y = −x`.
    IsotropicMinus,
    Zero,
}

impl SectorClass {
    pub fn classify(z: HyperbolicNumber) -> Self {
        if z.re == 0.0 && z.uni == 0.0 {
            return SectorClass::Zero;
        }
        if z.is_isotropic() {
            return if z.re * z.uni >= 0.0 {
                SectorClass::IsotropicPlus
            } else {
                SectorClass::IsotropicMinus
            };
        }
        if z.re.abs() > z.uni.abs() {
            if z.re > 0.0 {
                SectorClass::HI
            } else {
                SectorClass::HIII
            }
        } else if z.uni > 0.0 {
            SectorClass::HII
        } else {
            SectorClass::HIV
        }
    }

    /// True for H-I and H-III, where the polar form is `±r e^{jφ}`.
    pub fn is_real_type(self) -> bool {
        matches!(self, SectorClass::HI | SectorClass::HIII)
    }

    /// True for H-II and H-IV, where the polar form is `±r j e^{jφ}`.
    pub fn is_unipotent_type(self) -> bool {
        matches!(self, SectorClass::HII | SectorClass::HIV)
    }

    pub fn is_quadrant(self) -> bool {
        self.is_real_type() || self.is_unipotent_type()
    }

    /// `+1` for H-I/H-II, `−1` for H-III/H-IV, `0` otherwise.
    pub fn sign(self) -> f64 {
        match self {
            SectorClass::HI | SectorClass::HII => 1.0,
            SectorClass::HIII | SectorClass::HIV => -1.0,
            _ => 0.0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            SectorClass::HI => "H-I",
            SectorClass::HII => "H-II",
            SectorClass::HIII => "H-III",
            SectorClass::HIV => "H-IV",
            SectorClass::IsotropicPlus => "isotropic(+)",
            SectorClass::IsotropicMinus => "isotropic(-)",
            SectorClass::Zero => "zero",
        }
    }
}

impl fmt::Display for SectorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Polar form of a non-null value.
///
/// H-I: `z = r e^{jφ}`, H-III: `z = −r e^{jφ}`,
/// H-II: `z = r j e^{jφ}`, H-IV: `z = −r j e^{jφ}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HyperbolicPolar {
    pub radius: f64,
    pub angle: f64,
    pub sector: SectorClass,
}

impl HyperbolicPolar {
    pub fn from_number(z: HyperbolicNumber) -> Result<Self, HypError> {
        let sector = SectorClass::classify(z);
        let (num, den) = match sector {
            SectorClass::Zero => return Err(HypError::ZeroInput),
            SectorClass::IsotropicPlus | SectorClass::IsotropicMinus => {
                return Err(HypError::IsotropicInput {
                    re: z.re,
                    uni: z.uni,
                })
            }
            SectorClass::HI | SectorClass::HIII => (z.uni, z.re),
            SectorClass::HII | SectorClass::HIV => (z.re, z.uni),
        };
        Ok(Self {
            radius: z.norm_h(),
            angle: (num / den).atanh(),
            sector,
        })
    }

    pub fn to_number(self) -> HyperbolicNumber {
        let e = exp_j(self.angle).scale(self.radius * self.sector.sign());
        if self.sector.is_unipotent_type() {
            J * e
        } else {
            e
        }
    }
}

pub fn to_polar(z: HyperbolicNumber) -> Result<HyperbolicPolar, HypError> {
    HyperbolicPolar::from_number(z)
}

pub fn from_polar(p: HyperbolicPolar) -> HyperbolicNumber {
    p.to_number()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn hn(re: f64, uni: f64) -> HyperbolicNumber {
        HyperbolicNumber::new(re, uni)
    }

    fn close(a: HyperbolicNumber, b: HyperbolicNumber, tol: f64) -> bool {
        (a - b).abs_euclid() <= tol * (1.0 + a.abs_euclid().max(b.abs_euclid()))
    }

    #[test]
    fn product_rule() {
        assert_eq!(hn(3.0, 2.0) * hn(1.0, 1.0), hn(5.0, 5.0));
        assert_eq!(hn(1.0, 1.0) * hn(1.0, -1.0), hn(0.0, 0.0));
        assert_eq!(J * J, ONE);
    }

    #[test]
    fn inner_product() {
        assert_eq!(inner(hn(3.0, 2.0), hn(1.0, 1.0)), 1.0);
        let z = hn(-1.7, 0.3);
        assert_eq!(inner(z, J * z), 0.0);
        let (w, phi) = (hn(0.4, 2.2), 0.9);
        let lhs = inner(z * exp_j(phi), w * exp_j(phi));
        assert!((lhs - inner(z, w)).abs() < 1e-12);
    }

    #[test]
    fn hyperbolic_modulus() {
        assert!((norm_h(hn(3.0, 2.0)) - 5f64.sqrt()).abs() < 1e-15);
        assert_eq!(norm_h(hn(1.0, 1.0)), 0.0);
        for phi in [-2.5, -0.1, 0.0, 1.3, 4.0] {
            assert!((norm_h(exp_j(phi)) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn exp_j_values() {
        assert_eq!(exp_j(0.0), ONE);
        assert!(close(exp_j(2f64.ln()), hn(1.25, 0.75), 1e-15));
        assert!(close(exp_j(0.3) * exp_j(-1.1), exp_j(-0.8), 1e-14));
    }

    #[test]
    fn polar_forms() {
        let p = to_polar(hn(1.25, 0.75)).unwrap();
        assert_eq!(p.sector, SectorClass::HI);
        assert!((p.radius - 1.0).abs() < 1e-15 && (p.angle - 2f64.ln()).abs() < 1e-15);

        let p = to_polar(hn(0.75, 1.25)).unwrap();
        assert_eq!(p.sector, SectorClass::HII);
        assert!((p.radius - 1.0).abs() < 1e-15 && (p.angle - 2f64.ln()).abs() < 1e-15);

        assert!(matches!(
            to_polar(hn(1.0, 1.0)),
            Err(HypError::IsotropicInput { .. })
        ));
        assert_eq!(to_polar(ZERO), Err(HypError::ZeroInput));
    }

    #[test]
    fn sector_classification() {
        assert_eq!(hn(2.0, 1.0).sector(), SectorClass::HI);
        assert_eq!(hn(1.0, 2.0).sector(), SectorClass::HII);
        assert_eq!(hn(-2.0, 1.0).sector(), SectorClass::HIII);
        assert_eq!(hn(1.0, -2.0).sector(), SectorClass::HIV);
        assert_eq!(hn(3.0, 3.0).sector(), SectorClass::IsotropicPlus);
        assert_eq!(hn(-3.0, 3.0).sector(), SectorClass::IsotropicMinus);
        assert_eq!(hn(1.0, 1.0 + 1e-14).sector(), SectorClass::IsotropicPlus);
        assert_eq!(ZERO.sector(), SectorClass::Zero);
    }

    #[test]
    fn rotation_matrix_values() {
        assert_eq!(rotation_matrix(0.0), [[1.0, 0.0], [0.0, 1.0]]);
        let m = rotation_matrix(2f64.ln());
        assert!((m[0][0] - 1.25).abs() < 1e-15 && (m[0][1] - 0.75).abs() < 1e-15);
        assert!((m[1][0] - 0.75).abs() < 1e-15 && (m[1][1] - 1.25).abs() < 1e-15);
    }

    #[test]
    fn constructor_rejects_non_finite() {
        assert!(HyperbolicNumber::try_new(f64::NAN, 0.0).is_err());
        assert!(HyperbolicNumber::try_new(1.0, f64::INFINITY).is_err());
        assert!(HyperbolicNumber::try_new(1.0, 2.0).is_ok());
    }

    #[test]
    fn division_inverts_multiplication() {
        let z = hn(2.0, -0.5);
        let w = hn(-0.3, 1.9);
        assert!(close((z * w).checked_div(w).unwrap(), z, 1e-14));
        assert_eq!(z.checked_div(hn(2.0, 2.0)), Err(HypError::NullDivisor));
    }

    fn coord() -> impl Strategy<Value = f64> {
        -10.0..10.0f64
    }

    fn number() -> impl Strategy<Value = HyperbolicNumber> {
        (coord(), coord()).prop_map(|(a, b)| hn(a, b))
    }

    proptest! {
        #[test]
        fn matrix_matches_multiplication(phi in -3.0..3.0f64, z in number()) {
            let a = apply_matrix(rotation_matrix(phi), z);
            prop_assert!(close(a, z * exp_j(phi), 1e-13));
        }

        #[test]
        fn modulus_is_multiplicative(z in number(), w in number()) {
            let lhs = norm_h(z * w);
            let rhs = norm_h(z) * norm_h(w);
            prop_assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + rhs) * (1.0 + z.norm_sqr_euclid() * w.norm_sqr_euclid()).sqrt());
        }

        #[test]
        fn polar_round_trip(radius in 0.01..50.0f64, angle in -4.0..4.0f64, k in 0usize..4) {
            let sector = [SectorClass::HI, SectorClass::HII, SectorClass::HIII, SectorClass::HIV][k];
            let z = HyperbolicPolar { radius, angle, sector }.to_number();
            let p = to_polar(z).unwrap();
            prop_assert_eq!(p.sector, sector);
            prop_assert!((p.radius - radius).abs() <= 1e-10 * radius * angle.cosh().powi(2));
            prop_assert!((p.angle - angle).abs() <= 1e-10 * angle.cosh().powi(2));
            prop_assert!(close(from_polar(p), z, 1e-12));
        }
    }
}
