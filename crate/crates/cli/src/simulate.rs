//! Pole and canonical-frame traces as CSV.

use hyperkin::canonical::{canonical_data, CanonicalError};
use hyperkin::{HyperbolicNumber, Motion, MotionError};

use crate::document::LoadedDocument;
use crate::format::number;

pub const HEADER: &str =
    "t,pole_A_re,pole_A_uni,pole_H_re,pole_H_uni,pole_Hp_re,pole_Hp_uni,s_dot,r,r_prime,nu_ds";

/// Short token written into the cells an error affects.
pub fn motion_token(e: &MotionError) -> &'static str {
    match e {
        MotionError::NoPole { .. } => "no_pole",
        MotionError::DegenerateMotion { .. } => "degenerate_motion",
        MotionError::Eval(_) => "eval_error",
    }
}

pub fn canonical_token(e: &CanonicalError) -> &'static str {
    match e {
        CanonicalError::Motion(m) => motion_token(m),
        CanonicalError::IsotropicTangent { .. } => "isotropic_tangent",
        CanonicalError::IsotropicDirection { .. } => "isotropic_direction",
        CanonicalError::NoConjugate => "no_conjugate",
    }
}

pub struct Trace {
    pub csv: String,
    pub rows: usize,
    pub degenerate_rows: usize,
}

impl Trace {
    pub fn all_degenerate(&self) -> bool {
        self.rows > 0 && self.degenerate_rows == self.rows
    }
}

fn push_point(cells: &mut Vec<String>, p: HyperbolicNumber) {
    cells.push(number(p.re));
    cells.push(number(p.uni));
}

fn row(motion: &Motion, t: f64) -> (String, bool) {
    let mut cells = vec![number(t)];
    let mut degenerate = false;
    match motion.pole_point(t) {
        Ok(p) => {
            push_point(&mut cells, p.in_a);
            push_point(&mut cells, p.in_h);
            push_point(&mut cells, p.in_hp);
        }
        Err(e) => {
            cells.extend(std::iter::repeat_n(motion_token(&e).to_string(), 6));
            degenerate = true;
        }
    }
    match canonical_data(motion, t) {
        Ok(cd) => {
            cells.push(number(cd.s_dot));
            cells.push(number(cd.r));
            cells.push(number(cd.r_p));
            cells.push(number(cd.nu_per_arc()));
        }
        Err(e) => {
            cells.extend(std::iter::repeat_n(canonical_token(&e).to_string(), 4));
            degenerate = true;
        }
    }
    (cells.join(","), degenerate)
}

pub fn trace(doc: &LoadedDocument) -> Trace {
    let motion = doc.motion();
    let mut csv = format!("{HEADER}\n");
    let times = doc.times();
    let mut degenerate_rows = 0;
    for &t in &times {
        let (line, degenerate) = row(&motion, t);
        csv.push_str(&line);
        csv.push('\n');
        degenerate_rows += degenerate as usize;
    }
    Trace {
        csv,
        rows: times.len(),
        degenerate_rows,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use hyperkin::fixtures;

    fn doc(spec: hyperkin::MotionSpec, range: (f64, f64), samples: usize) -> LoadedDocument {
        LoadedDocument {
            spec,
            range,
            samples,
        }
    }

    #[test]
    fn s1_first_row() {
        let tr = trace(&doc(fixtures::s1(), (0.0, 1.0), 11));
        let mut lines = tr.csv.lines();
        assert_eq!(lines.next(), Some(HEADER));
        assert_eq!(
            lines.next(),
            Some("0,0,-1,0,-1,0,-1,3,1.8,1.125,0.333333333333")
        );
        assert_eq!(tr.rows, 11);
        assert_eq!(tr.degenerate_rows, 0);
    }

    #[test]
    fn isotropic_instant_is_tokenised() {
        let tr = trace(&doc(fixtures::s1(), (1.0, 2.0), 3));
        let mid = tr.csv.lines().nth(2).unwrap();
        assert!(mid.starts_with("1.5,"));
        assert!(mid
            .ends_with("isotropic_tangent,isotropic_tangent,isotropic_tangent,isotropic_tangent"));
        assert_eq!(tr.degenerate_rows, 1);
        assert!(!tr.all_degenerate());
    }

    #[test]
    fn poleless_motion_is_all_degenerate() {
        let tr = trace(&doc(fixtures::identity(), (0.0, 1.0), 4));
        assert!(tr.all_degenerate());
        assert!(tr.csv.lines().nth(1).unwrap().contains("no_pole"));
    }
}
