//! Named end-to-end runs with their expected outcomes.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::json;

use dualcover::curvegeom::{Plane, PlaneCurve};
use dualcover::hurwitz::{classify_classes_over, count_classes};
use dualcover::monorep::{rep_search, Outcome};
use dualcover::pipeline::{Analysis, PipelineError};

use super::{Ctx, Done, EXIT_FAILURE, EXIT_OK};

pub const FERMAT_CUBIC: &str = "x^3 + y^3 + z^3";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScenarioName {
    /// Four-sheeted cover of the dual of a smooth cubic with every cusp good.
    VeroneseCubic,
    /// Three-sheeted cover of the dual of a smooth cubic with a bad cusp.
    BadCuspCubic,
    /// Verdict on every three- and four-sheeted class over a smooth cubic.
    CubicCensus,
    /// Number of four-sheeted covers of the line with twelve branch points.
    QuarticCount,
}

#[derive(Serialize)]
struct Check {
    what: String,
    expected: String,
    actual: String,
    ok: bool,
}

fn check(what: &str, expected: impl ToString, actual: impl ToString, ok: bool) -> Check {
    Check {
        what: what.to_string(),
        expected: expected.to_string(),
        actual: actual.to_string(),
        ok,
    }
}

fn cubic(ctx: &Ctx) -> Result<Analysis, PipelineError> {
    let c = PlaneCurve::parse(FERMAT_CUBIC, Plane::Source)?.with_name("Fermat cubic");
    Analysis::run(&c, &ctx.tol, ctx.seed)
}

/// `(outcome, bad points)` of every class found by the search.
fn search(a: &Analysis, k: usize) -> Result<Vec<(Outcome, usize)>, PipelineError> {
    rep_search(&a.factorization, k)?
        .iter()
        .map(|r| {
            let v = a.verdict(r)?;
            Ok((v.outcome, v.bad_points().count()))
        })
        .collect()
}

pub(super) fn run(ctx: &Ctx, name: ScenarioName) -> Result<Done, PipelineError> {
    let checks = match name {
        ScenarioName::VeroneseCubic => {
            let found = search(&cubic(ctx)?, 4)?;
            let good = found
                .iter()
                .filter(|&&(o, bad)| o == Outcome::ExcludedCase && bad == 0)
                .count();
            vec![check(
                "4-sheeted extending classes with all cusps good, verdict ExcludedCase",
                ">= 1",
                good,
                good >= 1,
            )]
        }
        ScenarioName::BadCuspCubic => {
            let found = search(&cubic(ctx)?, 3)?;
            let bad = found
                .iter()
                .filter(|&&(o, b)| o == Outcome::ExtendsSingularTotalSpace && b > 0)
                .count();
            let good = found.iter().filter(|&&(o, _)| o == Outcome::EquivalentToProjection).count();
            vec![
                check("3-sheeted extending classes with a bad cusp", ">= 1", bad, bad >= 1),
                check("3-sheeted classes equivalent to the projection", 1, good, good == 1),
            ]
        }
        ScenarioName::CubicCensus => {
            let a = cubic(ctx)?;
            let t3 = classify_classes_over(&a.factorization, 3, &a.meta())?;
            let t4 = classify_classes_over(&a.factorization, 4, &a.meta())?;
            let eq = t3.count(Outcome::EquivalentToProjection);
            let sing = t3.count(Outcome::ExtendsSingularTotalSpace);
            let excl = t4.count(Outcome::ExcludedCase);
            vec![
                check("3-sheeted classes", 40, t3.rows.len(), t3.rows.len() == 40),
                check("3-sheeted classes equivalent to the projection", 1, eq, eq == 1),
                check("3-sheeted classes with a singular total space", ">= 1", sing, sing >= 1),
                check("4-sheeted classes", 120, t4.rows.len(), t4.rows.len() == 120),
                check("4-sheeted extending classes (excluded case)", ">= 1", excl, excl >= 1),
            ]
        }
        ScenarioName::QuarticCount => {
            let n = count_classes(4, 12)?;
            vec![check("count_classes(4, 12)", 255, n, n == 255)]
        }
    };
    let passed = checks.iter().all(|c| c.ok);
    let mut text = String::new();
    for c in &checks {
        let mark = if c.ok { "ok  " } else { "FAIL" };
        writeln!(text, "{mark} {}: expected {}, got {}", c.what, c.expected, c.actual).unwrap();
    }
    writeln!(text, "{}", if passed { "scenario passed" } else { "scenario failed" }).unwrap();
    Ok(Done {
        result: json!({ "scenario": name, "passed": passed, "checks": checks }),
        text,
        code: if passed { EXIT_OK } else { EXIT_FAILURE },
    })
}
