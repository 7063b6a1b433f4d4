//! Planar kinematics in the Lorentzian plane.
//!
//! A plane `A` moves against a moving plane `H` and a fixed plane `H′`,
//! all coordinatised by split-complex numbers. The crate computes the
//! velocity decomposition of that motion, the instantaneous pole and its
//! centrodes, the canonical frame at the pole, and the Euler-Savary map
//! between a moving point and the curvature center of its trajectory.
//! The [`oracle`] module checks the kinematic results with plain Lorentzian
//! curve geometry on sampled curves.
//!
//! ```
//! use hyperkin::{canonical, fixtures, HyperbolicNumber, Motion};
//!
//! let motion = Motion::new(fixtures::s1());
//! let frame = canonical::canonical_data(&motion, 0.0).unwrap();
//! assert!((frame.r - 1.8).abs() < 1e-12);
//!
//! let pair = canonical::conjugate_point(&frame, HyperbolicNumber::new(0.0, 1.0)).unwrap();
//! assert!((pair.a_p - 0.75).abs() < 1e-12);
//! ```

pub mod canonical;
pub mod fixtures;
pub mod hypnum;
mod jet;
pub mod motion;
pub mod oracle;
pub mod timefun;

pub use canonical::{CanonicalData, CanonicalError, ConjugatePair};
pub use hypnum::{exp_j, HyperbolicNumber, HyperbolicPolar, SectorClass};
pub use motion::{Motion, MotionError, MotionSpec, PfaffianState, PolePoint};
pub use oracle::{OracleError, SampledCurve};
pub use timefun::TimeExpr;
