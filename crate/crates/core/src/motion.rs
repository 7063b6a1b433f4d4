//! One-parameter planar motion of a plane `A` relative to a moving plane `H`
//! and a fixed plane `H′`.
//!
//! A point with `A`-coordinates `x̃` sits at `x = (b + x̃)e^{jφ}` in `H` and at
//! `x′ = (b′ + x̃)e^{jψ}` in `H′`. All velocities here are rates per unit `t`.

use thiserror::Error;

use crate::hypnum::{exp_j, HyperbolicNumber, J};
use crate::jet::Jet;
use crate::timefun::{EvalError, ParseError, TimeExpr};

/// `|τ − τ′|` at or below this fraction of `|τ| + |τ′| + 1` means no pole.
pub const POLE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum MotionError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("degenerate motion at t = {t}: {which} rate vanishes")]
    DegenerateMotion { t: f64, which: &'static str },
    #[error("no pole at t = {t}: rotation rates coincide")]
    NoPole { t: f64 },
}

/// A pair of time functions giving a position in some plane.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanarExpr {
    pub re: TimeExpr,
    pub uni: TimeExpr,
}

impl PlanarExpr {
    pub fn new(re: TimeExpr, uni: TimeExpr) -> Self {
        Self { re, uni }
    }

    pub fn parse(re: &str, uni: &str) -> Result<Self, ParseError> {
        Ok(Self::new(TimeExpr::parse(re)?, TimeExpr::parse(uni)?))
    }

    pub fn eval(&self, t: f64) -> Result<HyperbolicNumber, EvalError> {
        Ok(HyperbolicNumber::new(self.re.eval(t)?, self.uni.eval(t)?))
    }
}

/// The six time functions defining the motions `A/H` and `A/H′`.
#[derive(Debug, Clone, PartialEq)]
pub struct MotionSpec {
    /// Origin of `A` relative to `H`, in `A`-axes.
    pub b: PlanarExpr,
    /// Origin of `A` relative to `H′`, in `A`-axes.
    pub b_prime: PlanarExpr,
    /// Hyperbolic rotation angle of `A` against `H`.
    pub phi: TimeExpr,
    /// Hyperbolic rotation angle of `A` against `H′`.
    pub psi: TimeExpr,
}

impl MotionSpec {
    pub fn new(b: PlanarExpr, b_prime: PlanarExpr, phi: TimeExpr, psi: TimeExpr) -> Self {
        Self {
            b,
            b_prime,
            phi,
            psi,
        }
    }

    /// Builds a spec from expression strings in the order
    /// `b.re, b.uni, b′.re, b′.uni, φ, ψ`.
    pub fn parse(
        b_re: &str,
        b_uni: &str,
        bp_re: &str,
        bp_uni: &str,
        phi: &str,
        psi: &str,
    ) -> Result<Self, ParseError> {
        Ok(Self::new(
            PlanarExpr::parse(b_re, b_uni)?,
            PlanarExpr::parse(bp_re, bp_uni)?,
            TimeExpr::parse(phi)?,
            TimeExpr::parse(psi)?,
        ))
    }

    /// The inverse motion: `H′` becomes the moving plane and `H` the fixed one.
    pub fn swapped(&self) -> Self {
        Self::new(
            self.b_prime.clone(),
            self.b.clone(),
            self.psi.clone(),
            self.phi.clone(),
        )
    }
}

/// A time function together with its first three derivatives.
#[derive(Debug, Clone)]
struct DerivChain([TimeExpr; 4]);

impl DerivChain {
    fn new(e: &TimeExpr) -> Self {
        let d1 = e.differentiate();
        let d2 = d1.differentiate();
        let d3 = d2.differentiate();
        Self([e.clone(), d1, d2, d3])
    }

    fn eval(&self, t: f64) -> Result<[f64; 4], EvalError> {
        Ok([
            self.0[0].eval(t)?,
            self.0[1].eval(t)?,
            self.0[2].eval(t)?,
            self.0[3].eval(t)?,
        ])
    }

    fn eval_upto(&self, order: usize, t: f64) -> Result<[f64; 4], EvalError> {
        let mut out = [0.0; 4];
        for (k, slot) in out.iter_mut().enumerate().take(order + 1) {
            *slot = self.0[k].eval(t)?;
        }
        Ok(out)
    }
}

/// Instantaneous translation and rotation rates of `A/H` and `A/H′`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PfaffianState {
    pub t: f64,
    /// `ḃ + j b φ̇`
    pub sigma: HyperbolicNumber,
    /// `φ̇`
    pub tau: f64,
    /// `ḃ′ + j b′ ψ̇`
    pub sigma_p: HyperbolicNumber,
    /// `ψ̇`
    pub tau_p: f64,
}

/// Instantaneous rotation pole in all three charts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolePoint {
    pub t: f64,
    /// Relative to `B`, in `A`-axes.
    pub in_a: HyperbolicNumber,
    pub in_h: HyperbolicNumber,
    pub in_hp: HyperbolicNumber,
}

/// Sampled pole curves: `(P)` in `H` and `(P′)` in `H′`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PoleTrace {
    pub times: Vec<f64>,
    pub moving: Vec<HyperbolicNumber>,
    pub fixed: Vec<HyperbolicNumber>,
}

/// A motion with its derivative chains prepared for evaluation.
#[derive(Debug, Clone)]
pub struct Motion {
    spec: MotionSpec,
    b_re: DerivChain,
    b_uni: DerivChain,
    bp_re: DerivChain,
    bp_uni: DerivChain,
    phi: DerivChain,
    psi: DerivChain,
}

struct Rates {
    b: HyperbolicNumber,
    bp: HyperbolicNumber,
    phi: f64,
    psi: f64,
    state: PfaffianState,
}

impl Motion {
    pub fn new(spec: MotionSpec) -> Self {
        Self {
            b_re: DerivChain::new(&spec.b.re),
            b_uni: DerivChain::new(&spec.b.uni),
            bp_re: DerivChain::new(&spec.b_prime.re),
            bp_uni: DerivChain::new(&spec.b_prime.uni),
            phi: DerivChain::new(&spec.phi),
            psi: DerivChain::new(&spec.psi),
            spec,
        }
    }

    pub fn spec(&self) -> &MotionSpec {
        &self.spec
    }

    pub fn swapped(&self) -> Motion {
        Motion::new(self.spec.swapped())
    }

    /// `(φ(t), ψ(t))`
    pub fn angles(&self, t: f64) -> Result<(f64, f64), MotionError> {
        Ok((self.spec.phi.eval(t)?, self.spec.psi.eval(t)?))
    }

    fn rates(&self, t: f64) -> Result<Rates, MotionError> {
        let [b_re, db_re, ..] = self.b_re.eval_upto(1, t)?;
        let [b_uni, db_uni, ..] = self.b_uni.eval_upto(1, t)?;
        let [bp_re, dbp_re, ..] = self.bp_re.eval_upto(1, t)?;
        let [bp_uni, dbp_uni, ..] = self.bp_uni.eval_upto(1, t)?;
        let [phi, tau, ..] = self.phi.eval_upto(1, t)?;
        let [psi, tau_p, ..] = self.psi.eval_upto(1, t)?;
        let b = HyperbolicNumber::new(b_re, b_uni);
        let bp = HyperbolicNumber::new(bp_re, bp_uni);
        let sigma = HyperbolicNumber::new(db_re, db_uni) + J * b * tau;
        let sigma_p = HyperbolicNumber::new(dbp_re, dbp_uni) + J * bp * tau_p;
        Ok(Rates {
            b,
            bp,
            phi,
            psi,
            state: PfaffianState {
                t,
                sigma,
                tau,
                sigma_p,
                tau_p,
            },
        })
    }

    /// `(φ̇(t), ψ̇(t))` without the nonzero check of [`Motion::pfaffians`].
    pub fn rotation_rates(&self, t: f64) -> Result<(f64, f64), MotionError> {
        let s = self.rates(t)?.state;
        Ok((s.tau, s.tau_p))
    }

    /// Pfaffian rates at `t`; fails when either rotation rate is exactly zero.
    pub fn pfaffians(&self, t: f64) -> Result<PfaffianState, MotionError> {
        let state = self.rates(t)?.state;
        if state.tau == 0.0 {
            return Err(MotionError::DegenerateMotion { t, which: "phi" });
        }
        if state.tau_p == 0.0 {
            return Err(MotionError::DegenerateMotion { t, which: "psi" });
        }
        Ok(state)
    }

    /// Velocity in `H` of the point with `A`-coordinates `x` moving at `dx` within `A`.
    pub fn relative_velocity(
        &self,
        x: HyperbolicNumber,
        dx: HyperbolicNumber,
        t: f64,
    ) -> Result<HyperbolicNumber, MotionError> {
        let r = self.rates(t)?;
        Ok((r.state.sigma + J * x * r.state.tau + dx) * exp_j(r.phi))
    }

    /// Velocity in `H′` of the same point.
    pub fn absolute_velocity(
        &self,
        x: HyperbolicNumber,
        dx: HyperbolicNumber,
        t: f64,
    ) -> Result<HyperbolicNumber, MotionError> {
        let r = self.rates(t)?;
        Ok((r.state.sigma_p + J * x * r.state.tau_p + dx) * exp_j(r.psi))
    }

    /// Velocity in `H′` of the point of `H` currently at `A`-coordinates `x`.
    pub fn sliding_velocity(
        &self,
        x: HyperbolicNumber,
        t: f64,
    ) -> Result<HyperbolicNumber, MotionError> {
        let r = self.rates(t)?;
        let s = r.state;
        Ok(((s.sigma_p - s.sigma) + J * x * (s.tau_p - s.tau)) * exp_j(r.psi))
    }

    fn check_pole(s: &PfaffianState) -> Result<f64, MotionError> {
        let den = s.tau - s.tau_p;
        if den.abs() <= POLE_TOLERANCE * (s.tau.abs() + s.tau_p.abs() + 1.0) {
            Err(MotionError::NoPole { t: s.t })
        } else {
            Ok(den)
        }
    }

    /// The point of zero sliding velocity, `p̃ = j(σ′ − σ)/(τ − τ′)`.
    pub fn pole_point(&self, t: f64) -> Result<PolePoint, MotionError> {
        let r = self.rates(t)?;
        let den = Self::check_pole(&r.state)?;
        let in_a = J * (r.state.sigma_p - r.state.sigma) / den;
        Ok(PolePoint {
            t,
            in_a,
            in_h: (r.b + in_a) * exp_j(r.phi),
            in_hp: (r.bp + in_a) * exp_j(r.psi),
        })
    }

    /// Pole in `A`-coordinates from the componentwise formulas
    /// `p₁ = (σ′₂ − σ₂)/(τ − τ′)`, `p₂ = (σ′₁ − σ₁)/(τ − τ′)`.
    pub fn pole_components(&self, t: f64) -> Result<HyperbolicNumber, MotionError> {
        let s = self.rates(t)?.state;
        let den = Self::check_pole(&s)?;
        Ok(HyperbolicNumber::new(
            (s.sigma_p.uni - s.sigma.uni) / den,
            (s.sigma_p.re - s.sigma.re) / den,
        ))
    }

    /// Samples both pole curves at `n` evenly spaced times over `[t0, t1]`.
    pub fn trace_pole_curves(&self, t0: f64, t1: f64, n: usize) -> Result<PoleTrace, MotionError> {
        let mut trace = PoleTrace::default();
        for t in sample_times(t0, t1, n) {
            let p = self.pole_point(t)?;
            trace.times.push(t);
            trace.moving.push(p.in_h);
            trace.fixed.push(p.in_hp);
        }
        Ok(trace)
    }

    /// `H′`-position at `t` of the point fixed in `H` at `x_h`.
    pub fn trajectory_in_fixed(
        &self,
        x_h: HyperbolicNumber,
        t: f64,
    ) -> Result<HyperbolicNumber, MotionError> {
        let b = self.spec.b.eval(t)?;
        let bp = self.spec.b_prime.eval(t)?;
        let (phi, psi) = self.angles(t)?;
        let x_a = x_h * exp_j(-phi) - b;
        Ok((bp + x_a) * exp_j(psi))
    }

    /// `H`-position at `t` of the point fixed in `H′` at `x_hp`.
    pub fn trajectory_in_moving(
        &self,
        x_hp: HyperbolicNumber,
        t: f64,
    ) -> Result<HyperbolicNumber, MotionError> {
        let b = self.spec.b.eval(t)?;
        let bp = self.spec.b_prime.eval(t)?;
        let (phi, psi) = self.angles(t)?;
        let x_a = x_hp * exp_j(-psi) - bp;
        Ok((b + x_a) * exp_j(phi))
    }

    /// Second-order jets of the pole curves `(P)` in `H` and `(P′)` in `H′`.
    pub(crate) fn pole_jets(&self, t: f64) -> Result<(Jet, Jet), MotionError> {
        fn planar(re: [f64; 4], uni: [f64; 4], shift: usize) -> Jet {
            Jet::new(
                HyperbolicNumber::new(re[shift], uni[shift]),
                HyperbolicNumber::new(re[shift + 1], uni[shift + 1]),
                HyperbolicNumber::new(re[shift + 2], uni[shift + 2]),
            )
        }
        fn scalar(v: [f64; 4], shift: usize) -> Jet {
            Jet::real(v[shift], v[shift + 1], v[shift + 2])
        }

        let (b_re, b_uni) = (self.b_re.eval(t)?, self.b_uni.eval(t)?);
        let (bp_re, bp_uni) = (self.bp_re.eval(t)?, self.bp_uni.eval(t)?);
        let (phi, psi) = (self.phi.eval(t)?, self.psi.eval(t)?);

        let j = Jet::constant(J);
        let b = planar(b_re, b_uni, 0);
        let bp = planar(bp_re, bp_uni, 0);
        let sigma = planar(b_re, b_uni, 1) + j * b * scalar(phi, 1);
        let sigma_p = planar(bp_re, bp_uni, 1) + j * bp * scalar(psi, 1);
        let den = scalar(phi, 1) - scalar(psi, 1);

        let s = self.rates(t)?.state;
        Self::check_pole(&s)?;

        let pole_a = (j * (sigma_p - sigma)).div_real(den);
        let moving = (b + pole_a) * scalar(phi, 0).exp_j();
        let fixed = (bp + pole_a) * scalar(psi, 0).exp_j();
        Ok((moving, fixed))
    }

    /// Velocities of `(P)` in `H` and `(P′)` in `H′`.
    pub fn pole_velocities(
        &self,
        t: f64,
    ) -> Result<(HyperbolicNumber, HyperbolicNumber), MotionError> {
        let (m, f) = self.pole_jets(t)?;
        Ok((m.d1, f.d1))
    }

    /// Accelerations of `(P)` in `H` and `(P′)` in `H′`.
    pub fn pole_accelerations(
        &self,
        t: f64,
    ) -> Result<(HyperbolicNumber, HyperbolicNumber), MotionError> {
        let (m, f) = self.pole_jets(t)?;
        Ok((m.d2, f.d2))
    }
}

/// `n` evenly spaced times covering `[t0, t1]` inclusive.
pub fn sample_times(t0: f64, t1: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![t0],
        _ => {
            let step = (t1 - t0) / (n - 1) as f64;
            (0..n)
                .map(|k| if k == n - 1 { t1 } else { t0 + step * k as f64 })
                .collect()
        }
    }
}
