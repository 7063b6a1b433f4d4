//! Lorentzian curve geometry on sampled curves: arc length, tangent-angle
//! rate and osculating center.
//!
//! Nothing here knows about motions or poles. Curves come in as samples
//! (optionally with exact velocity/acceleration callbacks) so the results can
//! be used to check the kinematic modules from the outside.

use thiserror::Error;

use crate::hypnum::{HyperbolicNumber, J};

/// Relative threshold on `|⟨v,v⟩| / |v|²` below which a velocity counts as null.
pub const NULL_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum OracleError {
    #[error("curve is isotropic (or changes causal type) on [{t0}, {t1}]")]
    IsotropicSegment { t0: f64, t1: f64 },
    #[error("null velocity at t = {t}")]
    NullVelocity { t: f64 },
    #[error("curve is straight at t = {t}: center at infinity")]
    StraightCurve { t: f64 },
    #[error("not enough samples around t = {t} for the stencil")]
    InsufficientSamples { t: f64 },
    #[error("sample spacing is not uniform around t = {t}")]
    NonUniformSpacing { t: f64 },
    #[error("t = {t} is not a sample time")]
    NotASample { t: f64 },
    #[error("sample times must be finite and strictly increasing")]
    Unordered,
}

pub type CurveFn<'a> = Box<dyn Fn(f64) -> HyperbolicNumber + 'a>;

pub struct ExactDerivatives<'a> {
    pub velocity: CurveFn<'a>,
    pub acceleration: CurveFn<'a>,
}

/// An ordered list of `(t, point)` samples.
pub struct SampledCurve<'a> {
    samples: Vec<(f64, HyperbolicNumber)>,
    exact: Option<ExactDerivatives<'a>>,
}

impl std::fmt::Debug for SampledCurve<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SampledCurve")
            .field("samples", &self.samples.len())
            .field("exact", &self.exact.is_some())
            .finish()
    }
}

impl<'a> SampledCurve<'a> {
    pub fn from_samples(samples: Vec<(f64, HyperbolicNumber)>) -> Result<Self, OracleError> {
        let ordered = samples.iter().all(|(t, _)| t.is_finite())
            && samples.windows(2).all(|w| w[1].0 > w[0].0);
        if !ordered {
            return Err(OracleError::Unordered);
        }
        Ok(Self {
            samples,
            exact: None,
        })
    }

    pub fn from_fn<F, I>(f: F, times: I) -> Result<Self, OracleError>
    where
        F: Fn(f64) -> HyperbolicNumber,
        I: IntoIterator<Item = f64>,
    {
        Self::from_samples(times.into_iter().map(|t| (t, f(t))).collect())
    }

    /// `n` evenly spaced samples over `[t0, t1]`.
    pub fn uniform<F>(f: F, t0: f64, t1: f64, n: usize) -> Result<Self, OracleError>
    where
        F: Fn(f64) -> HyperbolicNumber,
    {
        Self::from_fn(f, crate::motion::sample_times(t0, t1, n))
    }

    /// Samples at `t + k·h` for `k = −half_width..=half_width`.
    pub fn around<F>(f: F, t: f64, h: f64, half_width: usize) -> Result<Self, OracleError>
    where
        F: Fn(f64) -> HyperbolicNumber,
    {
        let m = half_width as i64;
        Self::from_fn(f, (-m..=m).map(|k| t + k as f64 * h))
    }

    pub fn with_exact<V, A>(mut self, velocity: V, acceleration: A) -> Self
    where
        V: Fn(f64) -> HyperbolicNumber + 'a,
        A: Fn(f64) -> HyperbolicNumber + 'a,
    {
        self.exact = Some(ExactDerivatives {
            velocity: Box::new(velocity),
            acceleration: Box::new(acceleration),
        });
        self
    }

    pub fn samples(&self) -> &[(f64, HyperbolicNumber)] {
        &self.samples
    }

    pub fn has_exact(&self) -> bool {
        self.exact.is_some()
    }

    fn index_of(&self, t: f64) -> Result<usize, OracleError> {
        let k = self.samples.partition_point(|(s, _)| *s < t);
        let tol = 1e-9 * self.spacing_hint().max(f64::MIN_POSITIVE);
        [k.checked_sub(1), Some(k)]
            .into_iter()
            .flatten()
            .filter(|&i| i < self.samples.len())
            .find(|&i| (self.samples[i].0 - t).abs() <= tol)
            .ok_or(OracleError::NotASample { t })
    }

    fn spacing_hint(&self) -> f64 {
        match self.samples.as_slice() {
            [a, b, ..] => b.0 - a.0,
            _ => 1.0,
        }
    }

    /// Uniform step of the `2·reach + 1` samples centred on index `i`.
    fn stencil_step(&self, i: usize, reach: usize) -> Result<f64, OracleError> {
        let t = self.samples[i].0;
        if i < reach || i + reach >= self.samples.len() {
            return Err(OracleError::InsufficientSamples { t });
        }
        let window = &self.samples[i - reach..=i + reach];
        let h = (window[window.len() - 1].0 - window[0].0) / (2 * reach) as f64;
        let uniform = window
            .windows(2)
            .all(|w| ((w[1].0 - w[0].0) - h).abs() <= 1e-6 * h);
        if uniform {
            Ok(h)
        } else {
            Err(OracleError::NonUniformSpacing { t })
        }
    }

    fn point(&self, i: usize) -> HyperbolicNumber {
        self.samples[i].1
    }

    /// Five-point central velocity at sample `i`.
    fn fd_velocity(&self, i: usize) -> Result<HyperbolicNumber, OracleError> {
        let h = self.stencil_step(i, 2)?;
        let f = |k: isize| self.point((i as isize + k) as usize);
        Ok((f(-2) - f(-1) * 8.0 + f(1) * 8.0 - f(2)) / (12.0 * h))
    }

    /// Five-point central acceleration at sample `i`.
    fn fd_acceleration(&self, i: usize) -> Result<HyperbolicNumber, OracleError> {
        let h = self.stencil_step(i, 2)?;
        let f = |k: isize| self.point((i as isize + k) as usize);
        Ok((-f(-2) + f(-1) * 16.0 - f(0) * 30.0 + f(1) * 16.0 - f(2)) / (12.0 * h * h))
    }

    pub fn velocity_at(&self, t: f64) -> Result<HyperbolicNumber, OracleError> {
        match &self.exact {
            Some(d) => Ok((d.velocity)(t)),
            None => self.fd_velocity(self.index_of(t)?),
        }
    }

    pub fn acceleration_at(&self, t: f64) -> Result<HyperbolicNumber, OracleError> {
        match &self.exact {
            Some(d) => Ok((d.acceleration)(t)),
            None => self.fd_acceleration(self.index_of(t)?),
        }
    }

    /// `∫ ‖γ′‖_h dt` over `[t0, t1]`.
    ///
    /// With exact velocities this is adaptive Simpson quadrature. Without,
    /// it sums Lorentzian chord lengths over the samples inside the interval
    /// and Richardson-extrapolates against the every-other-sample sum.
    pub fn lorentz_arc_length(&self, t0: f64, t1: f64) -> Result<f64, OracleError> {
        match &self.exact {
            Some(d) => exact_arc_length(&*d.velocity, t0, t1),
            None => self.chord_arc_length(t0, t1),
        }
    }

    fn chord_arc_length(&self, t0: f64, t1: f64) -> Result<f64, OracleError> {
        let tol = 1e-9 * self.spacing_hint();
        let pts: Vec<HyperbolicNumber> = self
            .samples
            .iter()
            .filter(|(t, _)| *t >= t0 - tol && *t <= t1 + tol)
            .map(|(_, p)| *p)
            .collect();
        if pts.len() < 2 {
            return Err(OracleError::InsufficientSamples { t: t0 });
        }
        let segment = OracleError::IsotropicSegment { t0, t1 };
        let mut causal = 0.0;
        let mut fine = 0.0;
        for w in pts.windows(2) {
            let d = w[1] - w[0];
            let q = d.quadrance();
            if q.abs() <= NULL_TOLERANCE * d.norm_sqr_euclid() {
                return Err(segment);
            }
            if causal * q < 0.0 {
                return Err(segment);
            }
            causal = q.signum();
            fine += q.abs().sqrt();
        }
        let intervals = pts.len() - 1;
        if !intervals.is_multiple_of(2) || intervals < 4 {
            return Ok(fine);
        }
        let coarse: f64 = pts
            .iter()
            .step_by(2)
            .collect::<Vec<_>>()
            .windows(2)
            .map(|w| (*w[1] - *w[0]).norm_h())
            .sum();
        Ok((4.0 * fine - coarse) / 3.0)
    }

    /// Center of the osculating Lorentz circle at `t`.
    ///
    /// The center `c = γ + λ·jγ′` makes `⟨γ − c, γ − c⟩` stationary to second
    /// order, which gives `λ = ⟨γ′, γ′⟩ / ⟨γ″, jγ′⟩`.
    pub fn osculating_center(&self, t: f64) -> Result<HyperbolicNumber, OracleError> {
        let i = self.index_of(t)?;
        let (v, acc) = match &self.exact {
            Some(d) => ((d.velocity)(t), (d.acceleration)(t)),
            None => (self.fd_velocity(i)?, self.fd_acceleration(i)?),
        };
        let vv = v.quadrance();
        if v.norm_sqr_euclid() == 0.0 || vv.abs() <= NULL_TOLERANCE * v.norm_sqr_euclid() {
            return Err(OracleError::NullVelocity { t });
        }
        let n = J * v;
        let an = acc.inner(n);
        let lambda = vv / an;
        if an == 0.0 || an.abs() <= 1e-13 * acc.abs_euclid() * n.abs_euclid() || !lambda.is_finite()
        {
            return Err(OracleError::StraightCurve { t });
        }
        Ok(self.point(i) + n * lambda)
    }

    /// Rate of change of the hyperbolic polar angle of the velocity.
    pub fn tangent_angle_rate(&self, t: f64) -> Result<f64, OracleError> {
        if let Some(d) = &self.exact {
            let v = (d.velocity)(t);
            let acc = (d.acceleration)(t);
            let vv = v.quadrance();
            if v.norm_sqr_euclid() == 0.0 || vv.abs() <= NULL_TOLERANCE * v.norm_sqr_euclid() {
                return Err(OracleError::NullVelocity { t });
            }
            return Ok(v.cross(acc) / vv);
        }
        // Central differences of the polar angle itself, which needs
        // velocities at i−2..=i+2 and therefore samples out to i±4.
        let i = self.index_of(t)?;
        let h = self.stencil_step(i, 4)?;
        let mut angles = [0.0; 5];
        let mut sector = None;
        for (slot, k) in angles.iter_mut().zip(i - 2..=i + 2) {
            let tk = self.samples[k].0;
            let polar = self
                .fd_velocity(k)?
                .to_polar()
                .map_err(|_| OracleError::NullVelocity { t: tk })?;
            if sector.is_some_and(|s| s != polar.sector) {
                return Err(OracleError::NullVelocity { t: tk });
            }
            sector = Some(polar.sector);
            *slot = polar.angle;
        }
        Ok((angles[0] - 8.0 * angles[1] + 8.0 * angles[3] - angles[4]) / (12.0 * h))
    }
}

fn exact_arc_length(
    velocity: &dyn Fn(f64) -> HyperbolicNumber,
    t0: f64,
    t1: f64,
) -> Result<f64, OracleError> {
    let segment = OracleError::IsotropicSegment { t0, t1 };
    let mut causal = 0.0f64;
    let mut bad = false;
    let mut speed = |t: f64| {
        let v = velocity(t);
        let q = v.quadrance();
        if v.norm_sqr_euclid() == 0.0
            || q.abs() <= NULL_TOLERANCE * v.norm_sqr_euclid()
            || causal * q < 0.0
        {
            bad = true;
        }
        causal = q.signum();
        q.abs().sqrt()
    };
    let (a, b) = (t0, t1);
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (speed(a), speed(m), speed(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    let eps = 1e-12 * whole.abs().max(1e-300);
    let total = simpson(&mut speed, a, b, fa, fm, fb, whole, eps, 48);
    if bad {
        Err(segment)
    } else {
        Ok(total)
    }
}

#[allow(clippy::too_many_arguments)]
fn simpson(
    f: &mut dyn FnMut(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    eps: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * eps {
        return left + right + delta / 15.0;
    }
    simpson(f, a, m, fa, flm, fm, left, eps / 2.0, depth - 1)
        + simpson(f, m, b, fm, frm, fb, right, eps / 2.0, depth - 1)
}

pub fn lorentz_arc_length(c: &SampledCurve<'_>, t0: f64, t1: f64) -> Result<f64, OracleError> {
    c.lorentz_arc_length(t0, t1)
}

pub fn osculating_center(c: &SampledCurve<'_>, t: f64) -> Result<HyperbolicNumber, OracleError> {
    c.osculating_center(t)
}

pub fn tangent_angle_rate(c: &SampledCurve<'_>, t: f64) -> Result<f64, OracleError> {
    c.tangent_angle_rate(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypnum::exp_j;

    fn hn(re: f64, uni: f64) -> HyperbolicNumber {
        HyperbolicNumber::new(re, uni)
    }

    /// Closed form of the S1 moving centrode and its derivatives.
    fn s1_moving(t: f64) -> HyperbolicNumber {
        hn(-2.0 * t, -1.0) * exp_j(t)
    }
    fn s1_moving_vel(t: f64) -> HyperbolicNumber {
        hn(-3.0, -2.0 * t) * exp_j(t)
    }
    fn s1_moving_acc(t: f64) -> HyperbolicNumber {
        // d/dt[(−3 − 2tj)e^{jt}] = (−2j + j(−3 − 2tj))e^{jt} = (−2t − 5j)e^{jt}
        hn(-2.0 * t, -5.0) * exp_j(t)
    }

    fn s1_arc_exact(t1: f64) -> f64 {
        // ∫₀ᵗ¹ √(9 − 4t²) dt
        let u: f64 = 2.0 * t1;
        0.5 * (0.5 * u * (9.0 - u * u).sqrt() + 4.5 * (u / 3.0).asin())
    }

    #[test]
    fn unit_hyperbola_arc_length_is_parameter_span() {
        let c = SampledCurve::uniform(exp_j, 0.0, 2.0, 5)
            .unwrap()
            .with_exact(|t| hn(t.sinh(), t.cosh()), exp_j);
        assert!((c.lorentz_arc_length(0.0, 2.0).unwrap() - 2.0).abs() < 1e-10);

        let sampled = SampledCurve::uniform(exp_j, 0.0, 2.0, 2001).unwrap();
        assert!((sampled.lorentz_arc_length(0.0, 2.0).unwrap() - 2.0).abs() < 1e-10);
    }

    #[test]
    fn s1_centrode_arc_length() {
        let reference = s1_arc_exact(0.5);
        assert!((reference - 1.47170).abs() < 1e-4);

        let exact = SampledCurve::uniform(s1_moving, 0.0, 0.5, 5)
            .unwrap()
            .with_exact(s1_moving_vel, s1_moving_acc);
        let l = exact.lorentz_arc_length(0.0, 0.5).unwrap();
        assert!((l - reference).abs() <= 1e-8 * reference);

        let sampled = SampledCurve::uniform(s1_moving, 0.0, 0.5, 1001).unwrap();
        let l = sampled.lorentz_arc_length(0.0, 0.5).unwrap();
        assert!((l - reference).abs() <= 1e-9);
    }

    #[test]
    fn null_line_is_rejected() {
        let null = |t: f64| hn(t, t);
        let sampled = SampledCurve::uniform(null, 0.0, 1.0, 11).unwrap();
        assert!(matches!(
            sampled.lorentz_arc_length(0.0, 1.0),
            Err(OracleError::IsotropicSegment { .. })
        ));
        let exact = SampledCurve::uniform(null, 0.0, 1.0, 11)
            .unwrap()
            .with_exact(|_| hn(1.0, 1.0), |_| hn(0.0, 0.0));
        assert!(matches!(
            exact.lorentz_arc_length(0.0, 1.0),
            Err(OracleError::IsotropicSegment { .. })
        ));
        let fd = SampledCurve::around(null, 0.5, 1e-2, 4).unwrap();
        assert_eq!(
            fd.osculating_center(0.5),
            Err(OracleError::NullVelocity { t: 0.5 })
        );
    }

    #[test]
    fn lorentz_circle_center() {
        let c0 = hn(0.7, -1.3);
        let rho = 2.5;
        let gamma = |t: f64| c0 + exp_j(t) * rho;
        for t in [-1.0, 0.0, 0.4, 1.7] {
            let fd = SampledCurve::around(gamma, t, 2e-3, 2).unwrap();
            let c = fd.osculating_center(t).unwrap();
            assert!((c - c0).abs_euclid() < 1e-8 * t.cosh());

            let exact = SampledCurve::around(gamma, t, 2e-3, 2)
                .unwrap()
                .with_exact(move |t| J * exp_j(t) * rho, move |t| exp_j(t) * rho);
            assert!((exact.osculating_center(t).unwrap() - c0).abs_euclid() < 1e-12 * t.cosh());
        }
    }

    #[test]
    fn spacelike_circle_center() {
        // Velocity of j·ρe^{jt} is timelike-opposite; the center is still c₀.
        let c0 = hn(-0.2, 0.4);
        let gamma = |t: f64| c0 + J * exp_j(t) * 1.5;
        let fd = SampledCurve::around(gamma, 0.3, 2e-3, 2).unwrap();
        assert!((fd.osculating_center(0.3).unwrap() - c0).abs_euclid() < 1e-8);
    }

    #[test]
    fn s1_trajectory_centers() {
        // Trajectory in H′ of the point fixed in H at x_H: t·e^{2jt} + x_H·e^{jt}.
        let trajectory = |x_h: HyperbolicNumber| move |t: f64| exp_j(2.0 * t) * t + x_h * exp_j(t);
        let c = SampledCurve::around(trajectory(hn(-0.5, -1.0)), 0.0, 2e-3, 2).unwrap();
        assert!((c.osculating_center(0.0).unwrap() - hn(0.0, -1.0)).abs_euclid() < 1e-9);
        let c = SampledCurve::around(trajectory(hn(0.0, 0.0)), 0.0, 2e-3, 2).unwrap();
        assert!((c.osculating_center(0.0).unwrap() - hn(0.0, -0.25)).abs_euclid() < 1e-9);
    }

    #[test]
    fn straight_line_has_no_center() {
        let line = |t: f64| hn(2.0 * t, 0.5 * t);
        let c = SampledCurve::around(line, 0.0, 0.1, 2)
            .unwrap()
            .with_exact(|_| hn(2.0, 0.5), |_| hn(0.0, 0.0));
        assert_eq!(
            c.osculating_center(0.0),
            Err(OracleError::StraightCurve { t: 0.0 })
        );
    }

    #[test]
    fn tangent_angle_rates() {
        let exact = SampledCurve::around(s1_moving, 0.0, 1e-3, 4)
            .unwrap()
            .with_exact(s1_moving_vel, s1_moving_acc);
        assert!((exact.tangent_angle_rate(0.0).unwrap() - 5.0 / 3.0).abs() < 1e-14);
        let fd = SampledCurve::around(s1_moving, 0.0, 1e-3, 4).unwrap();
        assert!((fd.tangent_angle_rate(0.0).unwrap() - 5.0 / 3.0).abs() < 1e-7);

        let s1_fixed = |t: f64| hn(-t, -1.0) * exp_j(2.0 * t);
        let fd = SampledCurve::around(s1_fixed, 0.0, 1e-3, 4).unwrap();
        assert!((fd.tangent_angle_rate(0.0).unwrap() - 8.0 / 3.0).abs() < 1e-7);

        let circle = |t: f64| exp_j(t) * 3.0;
        for t in [-0.5, 0.0, 1.2] {
            let fd = SampledCurve::around(circle, t, 1e-3, 4).unwrap();
            assert!((fd.tangent_angle_rate(t).unwrap() - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn exact_and_fd_modes_agree() {
        for t in [0.1, 0.6, 1.1] {
            let exact = SampledCurve::around(s1_moving, t, 2e-3, 4)
                .unwrap()
                .with_exact(s1_moving_vel, s1_moving_acc);
            let fd = SampledCurve::around(s1_moving, t, 2e-3, 4).unwrap();
            let (a, b) = (
                exact.osculating_center(t).unwrap(),
                fd.osculating_center(t).unwrap(),
            );
            assert!((a - b).abs_euclid() <= 1e-6 * a.abs_euclid());
            let (a, b) = (
                exact.tangent_angle_rate(t).unwrap(),
                fd.tangent_angle_rate(t).unwrap(),
            );
            assert!((a - b).abs() <= 1e-6 * a.abs());
        }
    }

    #[test]
    fn center_offset_is_orthogonal_to_velocity() {
        let curve = |t: f64| hn(t.sinh() + 0.3 * t * t, 2.0 + 0.1 * t.powi(3));
        for t in [0.2, 0.5, 0.9] {
            let c = SampledCurve::around(curve, t, 1e-3, 2).unwrap();
            let center = c.osculating_center(t).unwrap();
            let v = c.velocity_at(t).unwrap();
            let offset = center - curve(t);
            assert!(offset.inner(v).abs() <= 1e-10 * offset.abs_euclid() * v.abs_euclid());
        }
    }

    #[test]
    fn stencil_requirements() {
        let c = SampledCurve::uniform(exp_j, 0.0, 1.0, 5).unwrap();
        assert_eq!(
            c.osculating_center(0.0),
            Err(OracleError::InsufficientSamples { t: 0.0 })
        );
        assert!(matches!(
            c.osculating_center(0.33),
            Err(OracleError::NotASample { .. })
        ));
        assert!(c.osculating_center(0.5).is_ok());
        let bumpy = SampledCurve::from_fn(exp_j, [0.0, 0.1, 0.2, 0.35, 0.4]).unwrap();
        assert!(matches!(
            bumpy.osculating_center(0.2),
            Err(OracleError::NonUniformSpacing { .. })
        ));
        assert_eq!(
            SampledCurve::from_fn(exp_j, [0.0, 0.2, 0.1]).unwrap_err(),
            OracleError::Unordered
        );
    }
}
