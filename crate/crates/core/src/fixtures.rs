//! Built-in motions with closed-form ground truth.

use crate::motion::MotionSpec;

fn build(b_re: &str, b_uni: &str, bp_re: &str, bp_uni: &str, phi: &str, psi: &str) -> MotionSpec {
    MotionSpec::parse(b_re, b_uni, bp_re, bp_uni, phi, psi).expect("fixture expressions parse")
}

/// `b ≡ 0`, `φ = t`, `b′ = t`, `ψ = 2t`.
///
/// The pole starts at `−j` and the common centrode tangent at `t = 0` is
/// `−1`, an H-I/H-III type direction.
pub fn s1() -> MotionSpec {
    build("0", "0", "t", "0", "t", "2*t")
}

/// `b ≡ 0`, `φ = t`, `b′ = jt`, `ψ = 2t`.
///
/// The pole starts at `−1` and the centrode tangent at `t = 0` is `−j`,
/// an H-II/H-IV type direction.
pub fn s2() -> MotionSpec {
    build("0", "0", "0", "t", "t", "2*t")
}

/// `b = b′ ≡ 0`, `φ = ψ = t`: every rate agrees, so there is no pole.
pub fn identity() -> MotionSpec {
    build("0", "0", "0", "0", "t", "t")
}
