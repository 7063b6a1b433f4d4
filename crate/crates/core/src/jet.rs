//! Second-order Taylor jets of hyperbolic-number valued functions of `t`.
//!
//! A jet carries `(f, f', f'')` at one instant; arithmetic propagates the
//! derivatives exactly, so the pole curve's velocity and acceleration can be
//! assembled from the symbolic derivatives of the motion functions.

use std::ops::{Add, Mul, Neg, Sub};

use crate::hypnum::{exp_j, HyperbolicNumber, J};

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Jet {
    pub v: HyperbolicNumber,
    pub d1: HyperbolicNumber,
    pub d2: HyperbolicNumber,
}

impl Jet {
    pub fn new(v: HyperbolicNumber, d1: HyperbolicNumber, d2: HyperbolicNumber) -> Self {
        Self { v, d1, d2 }
    }

    pub fn real(v: f64, d1: f64, d2: f64) -> Self {
        Self::new(
            HyperbolicNumber::real(v),
            HyperbolicNumber::real(d1),
            HyperbolicNumber::real(d2),
        )
    }

    pub fn constant(v: HyperbolicNumber) -> Self {
        Self::new(v, HyperbolicNumber::default(), HyperbolicNumber::default())
    }

    /// Quotient by a real-valued jet with nonzero value.
    pub fn div_real(self, d: Jet) -> Jet {
        let (b0, b1, b2) = (d.v.re, d.d1.re, d.d2.re);
        let q0 = self.v / b0;
        let q1 = (self.d1 - q0 * b1) / b0;
        let q2 = (self.d2 - q1 * (2.0 * b1) - q0 * b2) / b0;
        Jet::new(q0, q1, q2)
    }

    /// `e^{jφ}` where `self` is a real-valued jet of `φ`.
    pub fn exp_j(self) -> Jet {
        let (p1, p2) = (self.d1.re, self.d2.re);
        let e = exp_j(self.v.re);
        let d1 = J * e * p1;
        let d2 = (HyperbolicNumber::new(p1 * p1, p2)) * e;
        Jet::new(e, d1, d2)
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        Jet::new(self.v + o.v, self.d1 + o.d1, self.d2 + o.d2)
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        Jet::new(self.v - o.v, self.d1 - o.d1, self.d2 - o.d2)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        Jet::new(-self.v, -self.d1, -self.d2)
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        Jet::new(
            self.v * o.v,
            self.d1 * o.v + self.v * o.d1,
            self.d2 * o.v + (self.d1 * o.d1) * 2.0 + self.v * o.d2,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_j_jet_matches_finite_differences() {
        // φ(t) = t² + 0.3 t at t = 0.4
        let t: f64 = 0.4;
        let phi = |t: f64| t * t + 0.3 * t;
        let jet = Jet::real(phi(t), 2.0 * t + 0.3, 2.0).exp_j();
        let h = 1e-4;
        let f = |t: f64| exp_j(phi(t));
        let d1 = (f(t + h) - f(t - h)) / (2.0 * h);
        let d2 = (f(t + h) - f(t) * 2.0 + f(t - h)) / (h * h);
        assert!((jet.d1 - d1).abs_euclid() < 1e-7);
        assert!((jet.d2 - d2).abs_euclid() < 1e-5);
    }

    #[test]
    fn quotient_rule() {
        // (t + j t²) / (1 + t) at t = 2
        let t = 2.0;
        let num = Jet::new(
            HyperbolicNumber::new(t, t * t),
            HyperbolicNumber::new(1.0, 2.0 * t),
            HyperbolicNumber::new(0.0, 2.0),
        );
        let den = Jet::real(1.0 + t, 1.0, 0.0);
        let q = num.div_real(den);
        // re: t/(1+t) → 1/(1+t)², −2/(1+t)³ ; uni: t²/(1+t) → (t²+2t)/(1+t)², 2/(1+t)³
        assert!((q.d1.re - 1.0 / 9.0).abs() < 1e-15);
        assert!((q.d2.re + 2.0 / 27.0).abs() < 1e-15);
        assert!((q.d1.uni - 8.0 / 9.0).abs() < 1e-15);
        assert!((q.d2.uni - 2.0 / 27.0).abs() < 1e-15);
    }
}
