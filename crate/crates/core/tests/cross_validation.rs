//! Kinematic quantities on generated motions against the curve oracle.

use hyperkin::canonical::{canonical_data, conjugate_point, CanonicalError};
use hyperkin::{exp_j, HyperbolicNumber, Motion, MotionSpec, SampledCurve};
use proptest::prelude::*;

const H: f64 = 2e-3;

fn hn(re: f64, uni: f64) -> HyperbolicNumber {
    HyperbolicNumber::new(re, uni)
}

/// `b`, `b′` quadratic, `φ` with a hyperbolic term, `ψ` polynomial.
/// On `|t| ≤ 0.5` the rotation rates stay at least 0.7 apart.
fn motion() -> impl Strategy<Value = Motion> {
    (
        prop::array::uniform4(-1.0..1.0f64),
        prop::array::uniform4(-1.0..1.0f64),
        0.5..1.0f64,
        -0.3..0.3f64,
        2.4..3.0f64,
        -0.3..0.3f64,
    )
        .prop_map(|(b, c, w, k, wp, kp)| {
            let spec = MotionSpec::parse(
                &format!("{} + {} * t^2", b[0], b[1]),
                &format!("{} * t", b[2]),
                &format!("{} * t + {} * sinh(t)", c[0], c[1]),
                &format!("{} + {} * t^2", c[2], c[3]),
                &format!("{w} * t + {k} * sinh(t)"),
                &format!("{wp} * t + {kp} * t^2"),
            )
            .unwrap();
            Motion::new(spec)
        })
}

fn stencil(
    f: impl Fn(f64) -> HyperbolicNumber,
    t: f64,
    half_width: usize,
) -> SampledCurve<'static> {
    stencil_with(f, t, H, half_width)
}

fn stencil_with(
    f: impl Fn(f64) -> HyperbolicNumber,
    t: f64,
    h: f64,
    half_width: usize,
) -> SampledCurve<'static> {
    SampledCurve::around(f, t, h, half_width).unwrap()
}

/// Away from the null cone and from cusps of the centrode.
fn well_conditioned(v: HyperbolicNumber) -> bool {
    v.quadrance().abs() > 0.05 * v.norm_sqr_euclid() && v.norm_h() > 0.25
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, max_global_rejects: 1 << 16, ..ProptestConfig::default() })]

    #[test]
    fn centrodes_roll_at_equal_speed(m in motion(), t in -0.5..0.5f64) {
        let (vm, vf) = m.pole_velocities(t).unwrap();
        let scale = 1.0 + vm.abs_euclid();
        prop_assert!((vm.norm_h() - vf.norm_h()).abs() <= 1e-9 * scale);
        let moving = stencil(|s| m.pole_point(s).unwrap().in_h, t, 2);
        let fixed = stencil(|s| m.pole_point(s).unwrap().in_hp, t, 2);
        prop_assert!((moving.velocity_at(t).unwrap() - vm).abs_euclid() <= 1e-6 * scale);
        prop_assert!((fixed.velocity_at(t).unwrap() - vf).abs_euclid() <= 1e-6 * scale);
    }

    #[test]
    fn tangent_angle_rates_match_oracle(m in motion(), t in -0.5..0.5f64) {
        let (vm, vf) = m.pole_velocities(t).unwrap();
        prop_assume!(well_conditioned(vm) && well_conditioned(vf));
        let cd = canonical_data(&m, t).unwrap();
        let rate = |fixed: bool, h: f64| {
            let chart = |s: f64| {
                let p = m.pole_point(s).unwrap();
                if fixed { p.in_hp } else { p.in_h }
            };
            stencil_with(chart, t, h, 4).tangent_angle_rate(t).unwrap()
        };
        for (fixed, exact) in [(false, cd.theta_dot_moving), (true, cd.theta_dot_fixed)] {
            let (coarse, fine) = (rate(fixed, H / 4.0), rate(fixed, H / 8.0));
            // Fourth-order stencils: the step halving exposes the oracle's own error.
            prop_assume!((coarse - fine).abs() / 15.0 <= 1e-6 * (1.0 + fine.abs()));
            prop_assert!((fine - exact).abs() <= 1e-5 * (1.0 + fine.abs()), "{} vs {}", fine, exact);
        }
        prop_assert!((1.0 / cd.r_p - 1.0 / cd.r - cd.nu_per_arc()).abs() <= 1e-9 * (1.0 + cd.nu_per_arc().abs()));
    }

    #[test]
    fn conjugate_points_match_oracle(
        m in motion(),
        t in -0.5..0.5f64,
        side in 0..4usize,
        alpha in -1.2..1.2f64,
        a in 0.2..1.0f64,
    ) {
        let cd = match canonical_data(&m, t) {
            Ok(cd) => cd,
            Err(CanonicalError::IsotropicTangent { .. }) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        let turn = [hn(1.0, 0.0), hn(0.0, 1.0), hn(-1.0, 0.0), hn(0.0, -1.0)][side];
        let x_rel = turn * cd.tangent_unit * exp_j(alpha) * a;
        let pair = match conjugate_point(&cd, x_rel) {
            Ok(p) => p,
            Err(CanonicalError::NoConjugate) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        // Near-null directions and far centers are ill-conditioned for the oracle.
        prop_assume!(x_rel.quadrance().abs() > 0.05 * x_rel.norm_sqr_euclid());
        prop_assume!(pair.a_p.abs() < 20.0 * a);
        let x_h = cd.moving_point(x_rel);
        let center = |h: f64| {
            stencil_with(|s| m.trajectory_in_fixed(x_h, s).unwrap(), t, h, 2).osculating_center(t).unwrap() - cd.pole_hp
        };
        let (coarse, fine) = (center(H), center(H / 2.0));
        let scale = pair.x_rel_p.abs_euclid().max(x_rel.abs_euclid());
        prop_assume!((coarse - fine).abs_euclid() / 15.0 <= 1e-6 * scale);
        prop_assert!((fine - pair.x_rel_p).abs_euclid() <= 1e-5 * scale, "center {} vs {}", fine, pair.x_rel_p);
        prop_assert!(pair.x_rel.cross(pair.x_rel_p).abs() <= 1e-12 * scale * scale);
    }

    #[test]
    fn swapped_motion_undoes_conjugation(m in motion(), t in -0.5..0.5f64, re in -1.0..1.0f64, uni in -1.0..1.0f64) {
        let x = hn(re, uni);
        prop_assume!(x.quadrance().abs() > 0.05 * x.norm_sqr_euclid());
        let cd = match canonical_data(&m, t) {
            Ok(cd) => cd,
            Err(_) => return Ok(()),
        };
        let Ok(there) = conjugate_point(&cd, x) else { return Ok(()) };
        prop_assume!(there.a_p.abs() > 1e-3 * there.a && there.a_p.abs() < 1e3 * there.a);
        let inv = canonical_data(&m.swapped(), t).unwrap();
        let back = conjugate_point(&inv, cd.to_moving_chart(there.x_rel_p)).unwrap();
        let expected = cd.to_moving_chart(x);
        prop_assert!((back.x_rel_p - expected).abs_euclid() <= 1e-8 * expected.abs_euclid());
    }
}
