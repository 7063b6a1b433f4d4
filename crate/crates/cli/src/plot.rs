//! Deterministic SVG drawing of centrodes and point trajectories.

use std::fmt::Write;

use hyperkin::{HyperbolicNumber, Motion};

use crate::document::LoadedDocument;

pub const SIZE: f64 = 640.0;
const MARGIN: f64 = 0.08;
const BACKDROP_SAMPLES: usize = 121;
const TRAJECTORY_COLORS: [&str; 4] = ["#2ca02c", "#9467bd", "#8c564b", "#e377c2"];

type Polyline = Vec<HyperbolicNumber>;

/// Splits a sampled curve into runs of successfully evaluated points.
fn runs<E>(times: &[f64], f: impl Fn(f64) -> Result<HyperbolicNumber, E>) -> Vec<Polyline> {
    let mut out = vec![Vec::new()];
    for &t in times {
        match f(t) {
            Ok(p) if p.re.is_finite() && p.uni.is_finite() => out.last_mut().unwrap().push(p),
            _ => {
                if !out.last().unwrap().is_empty() {
                    out.push(Vec::new());
                }
            }
        }
    }
    out.retain(|r| !r.is_empty());
    out
}

struct View {
    x0: f64,
    y1: f64,
    span: f64,
}

impl View {
    fn fit(curves: &[&Vec<Polyline>]) -> Self {
        let mut lo = (-1.0f64, -1.0f64);
        let mut hi = (1.0f64, 1.0f64);
        for p in curves.iter().flat_map(|c| c.iter().flatten()) {
            lo = (lo.0.min(p.re), lo.1.min(p.uni));
            hi = (hi.0.max(p.re), hi.1.max(p.uni));
        }
        let span = (hi.0 - lo.0).max(hi.1 - lo.1) * (1.0 + 2.0 * MARGIN);
        let cx = 0.5 * (lo.0 + hi.0);
        let cy = 0.5 * (lo.1 + hi.1);
        View {
            x0: cx - 0.5 * span,
            y1: cy + 0.5 * span,
            span,
        }
    }

    fn px(&self, p: HyperbolicNumber) -> (f64, f64) {
        (
            (p.re - self.x0) / self.span * SIZE,
            (self.y1 - p.uni) / self.span * SIZE,
        )
    }

    /// Largest coordinate magnitude visible in the view.
    fn reach(&self) -> f64 {
        let y0 = self.y1 - self.span;
        [self.x0, self.x0 + self.span, y0, self.y1]
            .iter()
            .fold(0.0, |m: f64, v| m.max(v.abs()))
    }
}

fn coord(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

fn polyline(out: &mut String, view: &View, pts: &[HyperbolicNumber]) {
    let coords: Vec<String> = pts
        .iter()
        .map(|&p| {
            let (x, y) = view.px(p);
            format!("{},{}", coord(x), coord(y))
        })
        .collect();
    let _ = writeln!(
        out,
        r#"  <polyline fill="none" points="{}"/>"#,
        coords.join(" ")
    );
}

pub fn render(doc: &LoadedDocument, points: &[HyperbolicNumber]) -> String {
    let motion: Motion = doc.motion();
    let times = doc.times();
    let moving = runs(&times, |t| motion.pole_point(t).map(|p| p.in_h));
    let fixed = runs(&times, |t| motion.pole_point(t).map(|p| p.in_hp));
    let paths: Vec<Vec<Polyline>> = points
        .iter()
        .map(|&x| runs(&times, |t| motion.trajectory_in_fixed(x, t)))
        .collect();

    let mut all = vec![&moving, &fixed];
    all.extend(paths.iter());
    let view = View::fit(&all);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{s}" height="{s}" viewBox="0 0 {s} {s}">"#,
        s = SIZE
    );
    let _ = writeln!(
        out,
        r##"  <rect width="100%" height="100%" fill="#ffffff"/>"##
    );

    let reach = view.reach() * 1.5;
    let u_max = reach.asinh();
    let branch: Vec<(f64, f64)> = (0..BACKDROP_SAMPLES)
        .map(|k| -u_max + 2.0 * u_max * k as f64 / (BACKDROP_SAMPLES - 1) as f64)
        .map(|u| (u.cosh(), u.sinh()))
        .collect();
    let _ = writeln!(
        out,
        r##"  <g id="backdrop" stroke="#cccccc" stroke-width="1">"##
    );
    for (sx, sy, swap) in [
        (1.0, 1.0, false),
        (-1.0, 1.0, false),
        (1.0, 1.0, true),
        (1.0, -1.0, true),
    ] {
        let pts: Vec<HyperbolicNumber> = branch
            .iter()
            .map(|&(c, s)| {
                if swap {
                    HyperbolicNumber::new(s * sx, c * sy)
                } else {
                    HyperbolicNumber::new(c * sx, s * sy)
                }
            })
            .collect();
        polyline(&mut out, &view, &pts);
    }
    let _ = writeln!(out, "  </g>");

    let _ = writeln!(
        out,
        r##"  <g id="isotropic" stroke="#999999" stroke-width="1" stroke-dasharray="6 4">"##
    );
    for slope in [1.0, -1.0] {
        let ends = [
            HyperbolicNumber::new(-reach, -reach * slope),
            HyperbolicNumber::new(reach, reach * slope),
        ];
        polyline(&mut out, &view, &ends);
    }
    let _ = writeln!(out, "  </g>");

    for (id, curve, color) in [
        ("centrode-moving", &moving, "#1f77b4"),
        ("centrode-fixed", &fixed, "#d62728"),
    ] {
        let _ = writeln!(out, r#"  <g id="{id}" stroke="{color}" stroke-width="2">"#);
        for run in curve {
            polyline(&mut out, &view, run);
        }
        let _ = writeln!(out, "  </g>");
    }
    for (k, (path, x)) in paths.iter().zip(points).enumerate() {
        let color = TRAJECTORY_COLORS[k % TRAJECTORY_COLORS.len()];
        let _ = writeln!(
            out,
            r#"  <g id="trajectory-{k}" stroke="{color}" stroke-width="1.5"><title>{}, {}</title>"#,
            crate::format::number(x.re),
            crate::format::number(x.uni)
        );
        for run in path {
            polyline(&mut out, &view, run);
        }
        let _ = writeln!(out, "  </g>");
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use hyperkin::fixtures;

    fn s1() -> LoadedDocument {
        LoadedDocument {
            spec: fixtures::s1(),
            range: (0.0, 1.2),
            samples: 13,
        }
    }

    #[test]
    fn centrodes_share_their_first_point() {
        let svg = render(&s1(), &[]);
        let first = |id: &str| {
            let g = &svg[svg.find(id).unwrap()..];
            let pts = &g[g.find("points=\"").unwrap() + 8..];
            pts.split(' ').next().unwrap().to_string()
        };
        assert_eq!(first("centrode-moving"), first("centrode-fixed"));
        assert!(!svg.contains("trajectory-0"));
    }

    #[test]
    fn points_add_trajectories() {
        let svg = render(
            &s1(),
            &[
                HyperbolicNumber::new(0.0, 1.0),
                HyperbolicNumber::new(-0.5, -1.0),
            ],
        );
        assert!(svg.contains("trajectory-0") && svg.contains("trajectory-1"));
        assert_eq!(
            svg,
            render(
                &s1(),
                &[
                    HyperbolicNumber::new(0.0, 1.0),
                    HyperbolicNumber::new(-0.5, -1.0)
                ]
            )
        );
    }

    #[test]
    fn poleless_motion_draws_no_centrode_segments() {
        let doc = LoadedDocument {
            spec: fixtures::identity(),
            range: (0.0, 1.0),
            samples: 5,
        };
        let svg = render(&doc, &[]);
        let g = &svg[svg.find("centrode-moving").unwrap()..];
        assert!(g[..g.find("</g>").unwrap()].find("polyline").is_none());
    }

    #[test]
    fn coordinates_never_print_negative_zero() {
        assert_eq!(coord(-0.0001), "0.000");
        assert_eq!(coord(-1.5), "-1.500");
    }
}
