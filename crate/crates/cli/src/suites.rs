//! Verification suites run by `verify`.
//!
//! Every check is recorded as an error/tolerance ratio; a suite passes when
//! all of its ratios are at most one.

use hyperkin::canonical::{canonical_data, conjugate_point, CanonicalData, CanonicalError};
use hyperkin::motion::sample_times;
use hyperkin::{exp_j, hypnum, HyperbolicNumber, Motion, MotionError, OracleError, SampledCurve};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::document::LoadedDocument;
use crate::format::general;

pub const SEED: u64 = 0x4879_4b69_6e00;
pub const ALGEBRA_TRIPLES: usize = 10_000;
pub const COMPOSITION_TIMES: usize = 100;
pub const ORACLE_STEP: f64 = 2e-3;
pub const CONJUGATE_TIMES: usize = 5;
pub const CONJUGATE_DISTANCE: f64 = 0.5;
pub const CONJUGATE_ANGLES: [f64; 5] = [-1.1, -0.45, 0.3, 0.8, 1.3];
const MAX_NOTES: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Nothing could be checked.
    Empty,
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checks: usize,
    pub failures: usize,
    pub skipped: usize,
    /// Largest error/tolerance ratio seen.
    pub worst: f64,
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            checks: 0,
            failures: 0,
            skipped: 0,
            worst: 0.0,
            notes: Vec::new(),
        }
    }

    fn note(&mut self, text: String) {
        if self.notes.len() < MAX_NOTES {
            self.notes.push(text);
        }
    }

    fn check(&mut self, what: &str, t: f64, err: f64, tol: f64) {
        self.checks += 1;
        let ratio = err / tol;
        if ratio.is_nan() || ratio > self.worst {
            self.worst = ratio;
        }
        if ratio.is_nan() || ratio > 1.0 {
            self.failures += 1;
            self.note(format!(
                "{what} at t={}: error {} > {}",
                general(t, 6),
                general(err, 3),
                general(tol, 3)
            ));
        }
    }

    fn fail(&mut self, text: String) {
        self.failures += 1;
        self.note(text);
    }

    fn skip(&mut self, text: String) {
        self.skipped += 1;
        self.note(text);
    }

    pub fn status(&self) -> Status {
        if self.failures > 0 {
            Status::Fail
        } else if self.checks == 0 {
            Status::Empty
        } else {
            Status::Pass
        }
    }

    pub fn passed(&self) -> bool {
        self.status() != Status::Fail
    }
}

fn norm(z: HyperbolicNumber) -> f64 {
    z.abs_euclid()
}

/// Samples `f` at `t + k·h`, or `None` if any evaluation fails.
fn stencil<E>(
    f: impl Fn(f64) -> Result<HyperbolicNumber, E>,
    t: f64,
    half_width: usize,
) -> Option<SampledCurve<'static>> {
    stencil_with(f, t, ORACLE_STEP, half_width)
}

fn stencil_with<E>(
    f: impl Fn(f64) -> Result<HyperbolicNumber, E>,
    t: f64,
    h: f64,
    half_width: usize,
) -> Option<SampledCurve<'static>> {
    let m = half_width as i64;
    let samples: Result<Vec<_>, E> = (-m..=m)
        .map(|k| {
            let s = t + k as f64 * h;
            f(s).map(|p| (s, p))
        })
        .collect();
    SampledCurve::from_samples(samples.ok()?).ok()
}

/// Ring-arithmetic laws on seeded random triples, and invariance of the
/// inner product under hyperbolic rotation.
pub fn algebra(seed: u64, triples: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("algebra");
    let mut rng = StdRng::seed_from_u64(seed);
    let draw = |rng: &mut StdRng| {
        HyperbolicNumber::new(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0))
    };
    for k in 0..triples {
        let (z, w, v) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
        let phi: f64 = rng.gen_range(-3.0..3.0);
        let i = k as f64;
        let zw = norm(z) * norm(w);
        rep.check(
            "commutativity",
            i,
            norm(z * w - w * z),
            1e-12 * zw.max(f64::MIN_POSITIVE),
        );
        rep.check(
            "associativity",
            i,
            norm((z * w) * v - z * (w * v)),
            1e-12 * (zw * norm(v)).max(f64::MIN_POSITIVE),
        );
        rep.check(
            "distributivity",
            i,
            norm(z * (w + v) - (z * w + z * v)),
            1e-12 * (norm(z) * (norm(w) + norm(v))).max(f64::MIN_POSITIVE),
        );
        let e = exp_j(phi);
        let rotated = hypnum::inner(z * e, w * e);
        rep.check(
            "rotation invariance",
            i,
            (rotated - hypnum::inner(z, w)).abs(),
            1e-9 * (1.0 + zw),
        );
    }
    rep
}

/// `Va = Vf + Vr` at random points and rates, and `Va` against a
/// finite-difference derivative of the absolute path.
pub fn composition(motion: &Motion, range: (f64, f64), seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("composition");
    let mut rng = StdRng::seed_from_u64(seed);
    let spec = motion.spec().clone();
    for t in sample_times(range.0, range.1, COMPOSITION_TIMES) {
        let x = HyperbolicNumber::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let dx = HyperbolicNumber::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let parts = (|| -> Result<_, MotionError> {
            let (phi, psi) = motion.angles(t)?;
            Ok((
                motion.absolute_velocity(x, dx, t)?,
                motion.sliding_velocity(x, t)?,
                motion.relative_velocity(x, dx, t)?,
                psi - phi,
            ))
        })();
        let (va, vf, vr, turn) = match parts {
            Ok(p) => p,
            Err(e) => {
                rep.skip(format!("t={}: {e}", general(t, 6)));
                continue;
            }
        };
        let tol = 1e-9 * (1.0 + norm(va));
        rep.check("Va - (Vf + Vr)", t, norm(va - (vf + vr * exp_j(turn))), tol);

        let path = |s: f64| -> Result<HyperbolicNumber, MotionError> {
            let bp = spec.b_prime.eval(s)?;
            let psi = spec.psi.eval(s)?;
            Ok((bp + x + dx * (s - t)) * exp_j(psi))
        };
        match stencil(path, t, 2).map(|c| c.velocity_at(t)) {
            Some(Ok(v)) => rep.check(
                "Va vs path derivative",
                t,
                norm(va - v),
                1e-6 * (1.0 + norm(va)),
            ),
            _ => rep.skip(format!("t={}: path not sampleable", general(t, 6))),
        }
    }
    rep
}

/// Pole formulas agree, the pole has zero sliding velocity, and its charts
/// are related by the motion.
pub fn pole(motion: &Motion, times: &[f64]) -> SuiteReport {
    let mut rep = SuiteReport::new("pole/sliding");
    for &t in times {
        let p = match motion.pole_point(t) {
            Ok(p) => p,
            Err(e @ MotionError::NoPole { .. }) => {
                rep.fail(e.to_string());
                continue;
            }
            Err(e) => {
                rep.skip(format!("t={}: {e}", general(t, 6)));
                continue;
            }
        };
        let scale = 1.0 + norm(p.in_a);
        if let Ok(c) = motion.pole_components(t) {
            rep.check("componentwise pole", t, norm(c - p.in_a), 1e-12 * scale);
        }
        if let (Ok(vs), Ok(s)) = (motion.sliding_velocity(p.in_a, t), motion.pfaffians(t)) {
            rep.check(
                "sliding at pole",
                t,
                norm(vs),
                1e-8 * (1.0 + norm(s.sigma_p - s.sigma)),
            );
        }
        if let Ok(q) = motion.trajectory_in_fixed(p.in_h, t) {
            rep.check(
                "pole chart H to H'",
                t,
                norm(q - p.in_hp),
                1e-10 * (1.0 + norm(p.in_hp)),
            );
        }
    }
    rep
}

enum Frame {
    Ready(Box<CanonicalData>),
    Skipped,
}

fn frame(rep: &mut SuiteReport, motion: &Motion, t: f64) -> Frame {
    match canonical_data(motion, t) {
        Ok(cd) => Frame::Ready(Box::new(cd)),
        Err(e) => {
            let text = match e {
                CanonicalError::Motion(MotionError::NoPole { .. }) => {
                    format!("t={}: no pole", general(t, 6))
                }
                other => format!("t={}: {other}", general(t, 6)),
            };
            rep.skip(text);
            Frame::Skipped
        }
    }
}

type Chart<'a> = Box<dyn Fn(f64) -> Result<HyperbolicNumber, MotionError> + 'a>;

fn centrodes(motion: &Motion) -> [(&'static str, Chart<'_>); 2] {
    [
        (
            "moving",
            Box::new(move |s| motion.pole_point(s).map(|p| p.in_h)),
        ),
        (
            "fixed",
            Box::new(move |s| motion.pole_point(s).map(|p| p.in_hp)),
        ),
    ]
}

/// Equal centrode speeds, checked from the exact derivatives and from
/// sampled centrodes, and equal arc lengths over the range.
pub fn rolling(motion: &Motion, range: (f64, f64), times: &[f64]) -> SuiteReport {
    let mut rep = SuiteReport::new("rolling");
    for &t in times {
        let Frame::Ready(cd) = frame(&mut rep, motion, t) else {
            continue;
        };
        let Ok((vm, vf)) = motion.pole_velocities(t) else {
            continue;
        };
        rep.check(
            "centrode speeds",
            t,
            (vm.norm_h() - vf.norm_h()).abs(),
            1e-7 * (1.0 + cd.s_dot),
        );
        for (name, curve) in centrodes(motion) {
            match stencil(curve, t, 2).map(|c| c.velocity_at(t)) {
                Some(Ok(v)) => rep.check(
                    if name == "moving" {
                        "oracle speed (P)"
                    } else {
                        "oracle speed (P')"
                    },
                    t,
                    (v.norm_h() - cd.s_dot).abs(),
                    1e-6 * (1.0 + cd.s_dot),
                ),
                _ => rep.skip(format!(
                    "t={}: {name} centrode not sampleable",
                    general(t, 6)
                )),
            }
        }
    }
    arc_lengths(&mut rep, motion, range);
    rep
}

fn arc_lengths(rep: &mut SuiteReport, motion: &Motion, range: (f64, f64)) {
    const DENSE: usize = 1001;
    let (t0, t1) = range;
    let traced = match motion.trace_pole_curves(t0, t1, DENSE) {
        Ok(tr) => tr,
        Err(e) => {
            rep.skip(format!("arc length: {e}"));
            return;
        }
    };
    let nan = HyperbolicNumber::new(f64::NAN, f64::NAN);
    let mut lengths = Vec::new();
    for (k, points) in [&traced.moving, &traced.fixed].into_iter().enumerate() {
        let samples: Vec<_> = traced
            .times
            .iter()
            .copied()
            .zip(points.iter().copied())
            .collect();
        let (Ok(sampled), Ok(exact)) = (
            SampledCurve::from_samples(samples.clone()),
            SampledCurve::from_samples(samples),
        ) else {
            return;
        };
        let pick =
            move |pair: (HyperbolicNumber, HyperbolicNumber)| if k == 0 { pair.0 } else { pair.1 };
        let exact = exact.with_exact(
            move |s| motion.pole_velocities(s).map(pick).unwrap_or(nan),
            move |s| motion.pole_accelerations(s).map(pick).unwrap_or(nan),
        );
        match (
            exact.lorentz_arc_length(t0, t1),
            sampled.lorentz_arc_length(t0, t1),
        ) {
            (Ok(le), Ok(ls)) => {
                rep.check(
                    "sampled vs exact arc length",
                    t1,
                    (le - ls).abs(),
                    1e-6 * (1.0 + le),
                );
                lengths.push(le);
            }
            (Err(e), _) | (_, Err(e)) => {
                let reason = match e {
                    OracleError::IsotropicSegment { .. } => {
                        "centrode meets a null direction".to_string()
                    }
                    other => other.to_string(),
                };
                rep.skip(format!("arc length: {reason}"));
                return;
            }
        }
    }
    if let [lm, lf] = lengths[..] {
        rep.check(
            "centrode arc lengths",
            t1,
            (lm - lf).abs(),
            1e-8 * (1.0 + lm),
        );
    }
}

/// `1/r′ − 1/r = ν̇/ṡ`, and the tangent-angle rates against finite
/// differences of the sampled centrodes.
pub fn frame_identity(motion: &Motion, times: &[f64]) -> SuiteReport {
    let mut rep = SuiteReport::new("frame identity");
    for &t in times {
        let Frame::Ready(cd) = frame(&mut rep, motion, t) else {
            continue;
        };
        let kappa = cd.nu_per_arc();
        rep.check(
            "1/r' - 1/r = nu/s",
            t,
            (1.0 / cd.r_p - 1.0 / cd.r - kappa).abs(),
            1e-8 * (1.0 + kappa.abs()),
        );

        let mut rates = [f64::NAN; 2];
        for (k, (name, curve)) in centrodes(motion).into_iter().enumerate() {
            let rate =
                |h: f64| stencil_with(&curve, t, h, 4).and_then(|c| c.tangent_angle_rate(t).ok());
            match (rate(ORACLE_STEP), rate(0.5 * ORACLE_STEP)) {
                (Some(coarse), Some(fine)) => {
                    // Fourth-order stencils: halving the step cuts the error 16-fold.
                    let estimate = (coarse - fine).abs() / 15.0;
                    if estimate <= 0.1 * 1e-6 * (1.0 + fine.abs()) {
                        rates[k] = fine;
                    } else {
                        rep.skip(format!(
                            "t={}: {name} angle rate unresolved by the oracle",
                            general(t, 6)
                        ));
                    }
                }
                _ => rep.skip(format!(
                    "t={}: {name} centrode not sampleable",
                    general(t, 6)
                )),
            }
        }
        if rates.iter().any(|r| r.is_nan()) {
            continue;
        }
        let [fd_m, fd_f] = rates;
        rep.check(
            "oracle angle rate (P)",
            t,
            (fd_m - cd.theta_dot_moving).abs(),
            1e-6 * (1.0 + cd.theta_dot_moving.abs()),
        );
        rep.check(
            "oracle angle rate (P')",
            t,
            (fd_f - cd.theta_dot_fixed).abs(),
            1e-6 * (1.0 + cd.theta_dot_fixed.abs()),
        );
        rep.check(
            "oracle relative rotation",
            t,
            (fd_f - fd_m - cd.nu_dot).abs(),
            1e-6 * (1.0 + cd.nu_dot.abs()),
        );
    }
    rep
}

/// The 20 pole-relative test points `±a·T·e^{jα}`, `±a·jT·e^{jα}`.
pub fn conjugate_directions(cd: &CanonicalData) -> Vec<HyperbolicNumber> {
    let sides = [
        HyperbolicNumber::new(1.0, 0.0),
        HyperbolicNumber::new(0.0, 1.0),
        HyperbolicNumber::new(-1.0, 0.0),
        HyperbolicNumber::new(0.0, -1.0),
    ];
    sides
        .iter()
        .flat_map(|&s| {
            CONJUGATE_ANGLES
                .iter()
                .map(move |&alpha| s * exp_j(alpha) * CONJUGATE_DISTANCE)
        })
        .map(|w| w * cd.tangent_unit)
        .collect()
}

/// Oracle curvature center of the trajectory of the moving-plane point at
/// `x_rel`, relative to the pole, from samples spaced `h` apart.
pub fn oracle_conjugate(
    motion: &Motion,
    cd: &CanonicalData,
    x_rel: HyperbolicNumber,
    h: f64,
) -> Result<HyperbolicNumber, OracleError> {
    let x_h = cd.moving_point(x_rel);
    let path = |s: f64| motion.trajectory_in_fixed(x_h, s);
    let curve =
        stencil_with(path, cd.t, h, 2).ok_or(OracleError::InsufficientSamples { t: cd.t })?;
    Ok(curve.osculating_center(cd.t)? - cd.pole_hp)
}

/// Up to `count` evenly spread entries of `times`.
pub fn spread(times: &[f64], count: usize) -> Vec<f64> {
    if times.len() <= count {
        return times.to_vec();
    }
    let last = times.len() - 1;
    let mut picked: Vec<f64> = (0..count)
        .map(|i| times[(i * last + (count - 1) / 2) / (count - 1)])
        .collect();
    picked.dedup();
    picked
}

/// Conjugate points against the oracle, and involutivity under the
/// swapped motion.
pub fn euler_savary(motion: &Motion, times: &[f64]) -> SuiteReport {
    let mut rep = SuiteReport::new("euler-savary");
    let swapped = motion.swapped();
    for t in spread(times, CONJUGATE_TIMES) {
        let Frame::Ready(cd) = frame(&mut rep, motion, t) else {
            continue;
        };
        let Ok(back_frame) = canonical_data(&swapped, t) else {
            rep.fail(format!("t={}: swapped motion has no frame", general(t, 6)));
            continue;
        };
        for x_rel in conjugate_directions(&cd) {
            let pair = match conjugate_point(&cd, x_rel) {
                Ok(p) => p,
                Err(CanonicalError::NoConjugate) => {
                    match oracle_conjugate(motion, &cd, x_rel, ORACLE_STEP) {
                        Err(OracleError::StraightCurve { .. }) => rep.checks += 1,
                        _ => rep.skip(format!(
                            "t={}: point near the inflection locus",
                            general(t, 6)
                        )),
                    }
                    continue;
                }
                Err(e) => {
                    rep.fail(format!("t={}: {e}", general(t, 6)));
                    continue;
                }
            };
            let tol = 1e-5 * norm(pair.x_rel_p).max(norm(x_rel));
            match (
                oracle_conjugate(motion, &cd, x_rel, ORACLE_STEP),
                oracle_conjugate(motion, &cd, x_rel, 0.5 * ORACLE_STEP),
            ) {
                (Ok(coarse), Ok(fine)) if norm(coarse - fine) / 15.0 > 0.1 * tol => rep.skip(
                    format!("t={}: center unresolved by the oracle", general(t, 6)),
                ),
                (Ok(_), Ok(fine)) => {
                    rep.check("conjugate vs oracle", t, norm(fine - pair.x_rel_p), tol)
                }
                (Err(e), _) | (_, Err(e)) => rep.fail(format!("t={}: oracle: {e}", general(t, 6))),
            }

            let expected = cd.to_moving_chart(x_rel);
            match conjugate_point(&back_frame, cd.to_moving_chart(pair.x_rel_p)) {
                Ok(back) => rep.check(
                    "involutivity",
                    t,
                    norm(back.x_rel_p - expected),
                    1e-6 * norm(expected),
                ),
                Err(CanonicalError::NoConjugate) if pair.a_p == 0.0 => rep.checks += 1,
                Err(e) => rep.fail(format!("t={}: inverse conjugate: {e}", general(t, 6))),
            }
        }
    }
    rep
}

pub fn run_all(doc: &LoadedDocument) -> Vec<SuiteReport> {
    let motion = doc.motion();
    let times = doc.times();
    vec![
        algebra(SEED, ALGEBRA_TRIPLES),
        composition(&motion, doc.range, SEED ^ 1),
        pole(&motion, &times),
        rolling(&motion, doc.range, &times),
        frame_identity(&motion, &times),
        euler_savary(&motion, &times),
    ]
}

pub fn render(reports: &[SuiteReport]) -> String {
    let mut out = format!(
        "{:<16} {:<6} {:>7} {:>7} {:>12}\n",
        "suite", "status", "checks", "skipped", "worst/tol"
    );
    for r in reports {
        let status = match r.status() {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Empty => "EMPTY",
        };
        out.push_str(&format!(
            "{:<16} {:<6} {:>7} {:>7} {:>12}\n",
            r.name,
            status,
            r.checks,
            r.skipped,
            general(r.worst, 3)
        ));
        for n in &r.notes {
            out.push_str(&format!("    {n}\n"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use hyperkin::fixtures;

    fn grid() -> Vec<f64> {
        sample_times(0.0, 1.2, 13)
    }

    #[test]
    fn spread_picks_ends_and_middle() {
        let times = grid();
        assert_eq!(
            spread(&times, 5),
            vec![times[0], times[3], times[6], times[9], times[12]]
        );
        assert_eq!(spread(&times[..3], 5), times[..3].to_vec());
    }

    #[test]
    fn fixtures_pass_every_suite() {
        for spec in [fixtures::s1(), fixtures::s2()] {
            let m = Motion::new(spec);
            let reports = [
                composition(&m, (0.0, 1.2), 7),
                pole(&m, &grid()),
                rolling(&m, (0.0, 1.2), &grid()),
                frame_identity(&m, &grid()),
                euler_savary(&m, &grid()),
            ];
            for r in &reports {
                assert_eq!(
                    r.status(),
                    Status::Pass,
                    "{}",
                    render(std::slice::from_ref(r))
                );
            }
        }
    }

    #[test]
    fn algebra_is_seeded() {
        let a = algebra(3, 200);
        let b = algebra(3, 200);
        assert_eq!(a.status(), Status::Pass);
        assert_eq!(a.worst, b.worst);
        assert_eq!(a.checks, 800);
    }

    #[test]
    fn poleless_motion_fails_only_the_pole_suite() {
        let m = Motion::new(fixtures::identity());
        assert_eq!(composition(&m, (0.0, 1.0), 1).status(), Status::Pass);
        assert_eq!(pole(&m, &grid()).status(), Status::Fail);
        for r in [rolling(&m, (0.0, 1.0), &grid()), euler_savary(&m, &grid())] {
            assert_ne!(r.status(), Status::Fail);
        }
    }

    #[test]
    fn directions_cover_all_sectors() {
        let cd = canonical_data(&Motion::new(fixtures::s1()), 0.0).unwrap();
        let dirs = conjugate_directions(&cd);
        assert_eq!(dirs.len(), 20);
        for d in dirs {
            assert!((d.norm_h() - CONJUGATE_DISTANCE).abs() < 1e-12);
        }
    }
}
