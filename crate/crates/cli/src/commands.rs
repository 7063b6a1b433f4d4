//! Command bodies. Each writes its report to `out` and returns the failure
//! that decides the exit code.

use std::io::Write;
use std::path::Path;

use hyperkin::canonical::{canonical_data, conjugate_point, CanonicalError};
use hyperkin::{HyperbolicNumber, MotionError};

use crate::document::LoadedDocument;
use crate::error::CliError;
use crate::format::number;
use crate::{plot, simulate, suites};

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents)
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, target: Option<&Path>, contents: &str) -> Result<(), CliError> {
    match target {
        Some(path) => write_file(path, contents),
        None => out
            .write_all(contents.as_bytes())
            .map_err(|e| CliError::Input(format!("cannot write output: {e}"))),
    }
}

pub fn simulate(
    doc: &LoadedDocument,
    target: Option<&Path>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let trace = simulate::trace(doc);
    emit(out, target, &trace.csv)?;
    if trace.all_degenerate() {
        return Err(CliError::AllDegenerate);
    }
    Ok(())
}

/// Parses `"re,uni"`.
pub fn parse_point(text: &str) -> Result<HyperbolicNumber, CliError> {
    let bad = || CliError::Input(format!("expected a point as \"re,uni\", got \"{text}\""));
    let (re, uni) = text.split_once(',').ok_or_else(bad)?;
    let re: f64 = re.trim().parse().map_err(|_| bad())?;
    let uni: f64 = uni.trim().parse().map_err(|_| bad())?;
    HyperbolicNumber::try_new(re, uni).map_err(|_| bad())
}

/// Parses `"t0:t1"`.
pub fn parse_range(text: &str) -> Result<(f64, f64), CliError> {
    let bad = || CliError::Input(format!("expected a range as \"t0:t1\", got \"{text}\""));
    let (a, b) = text.split_once(':').ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

fn geometric(e: CanonicalError) -> CliError {
    match e {
        CanonicalError::Motion(MotionError::Eval(_)) => CliError::Input(e.to_string()),
        other => CliError::Geometric(other.to_string()),
    }
}

pub fn euler_savary(
    doc: &LoadedDocument,
    t: f64,
    x_rel: HyperbolicNumber,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let motion = doc.motion();
    let cd = canonical_data(&motion, t).map_err(geometric)?;
    let pair = conjugate_point(&cd, x_rel).map_err(geometric)?;
    let line = format!(
        "a={} alpha={} a_prime={} x_prime_re={} x_prime_uni={}\n",
        number(pair.a),
        number(pair.alpha),
        number(pair.a_p),
        number(pair.x_rel_p.re),
        number(pair.x_rel_p.uni)
    );
    emit(out, None, &line)
}

pub fn verify(doc: &LoadedDocument, out: &mut dyn Write) -> Result<(), CliError> {
    let reports = suites::run_all(doc);
    emit(out, None, &suites::render(&reports))?;
    if reports.iter().all(|r| r.passed()) {
        Ok(())
    } else {
        Err(CliError::VerifyFailed)
    }
}

pub fn plot(
    doc: &LoadedDocument,
    points: &[HyperbolicNumber],
    target: Option<&Path>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    emit(out, target, &plot::render(doc, points))
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

    fn es(x: &str) -> Result<String, CliError> {
        let mut buf = Vec::new();
        euler_savary(&s1(), 0.0, parse_point(x)?, &mut buf)?;
        Ok(String::from_utf8(buf).unwrap())
    }

    #[test]
    fn euler_savary_examples() {
        assert_eq!(
            es("0,1").unwrap(),
            "a=1 alpha=0 a_prime=0.75 x_prime_re=0 x_prime_uni=0.75\n"
        );
        assert!(es("-0.5,0")
            .unwrap()
            .contains("a_prime=0 x_prime_re=0 x_prime_uni=0"));
        assert_eq!(es("1,1").unwrap_err().exit_code(), 4);
        assert_eq!(es("1;1").unwrap_err().exit_code(), 2);
    }

    #[test]
    fn point_and_range_parsing() {
        assert_eq!(
            parse_point(" -0.5, 2").unwrap(),
            HyperbolicNumber::new(-0.5, 2.0)
        );
        assert!(parse_point("nan,1").is_err());
        assert_eq!(parse_range("-1:2.5").unwrap(), (-1.0, 2.5));
        assert!(parse_range("1").is_err());
    }

    #[test]
    fn poleless_euler_savary_is_geometric() {
        let doc = LoadedDocument {
            spec: fixtures::identity(),
            range: (0.0, 1.0),
            samples: 3,
        };
        let err =
            euler_savary(&doc, 0.0, HyperbolicNumber::new(0.0, 1.0), &mut Vec::new()).unwrap_err();
        assert_eq!(err.exit_code(), 4);
    }
}
