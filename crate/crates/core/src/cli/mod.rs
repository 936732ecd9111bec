//! Command implementations: each produces a JSON value, a plain-text
//! rendering and an exit code.

mod scenario;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};

use dualcover::braidmono::{BraidMonodromyFactorization, LocalKind};
use dualcover::curvegeom::{Plane, PlaneCurve, SingKind, SingularPoint, Tolerances};
use dualcover::hurwitz::{class_count, classify_classes_over, enumerate_classes};
use dualcover::monorep::{rep_search, ExtendabilityVerdict, MonodromyRep, Outcome};
use dualcover::pipeline::{AllTolerances, Analysis, DualData, PipelineError};

use crate::{Args, Command, Format};

pub use scenario::ScenarioName;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_REFUSED: u8 = 2;

pub struct RunOutcome {
    pub json: Value,
    pub text: String,
    pub code: u8,
    pub error: Option<String>,
}

#[derive(Serialize)]
struct RunConfig<'a> {
    #[serde(flatten)]
    command: &'a Command,
    seed: u64,
    sheets: Option<usize>,
    format: Format,
    out: Option<&'a PathBuf>,
    tolerance: Option<f64>,
}

/// What a command hands back before it is wrapped into a report.
pub(crate) struct Done {
    result: Value,
    text: String,
    code: u8,
}

impl Done {
    fn ok(result: Value, text: String) -> Self {
        Done {
            result,
            text,
            code: EXIT_OK,
        }
    }
}

pub(crate) struct Ctx {
    seed: u64,
    sheets: Option<usize>,
    tol: Tolerances,
}

pub fn run(args: &Args) -> RunOutcome {
    let mut tol = Tolerances::default();
    if let Some(t) = args.tolerance {
        tol.residual = t;
    }
    let ctx = Ctx {
        seed: args.seed,
        sheets: args.sheets,
        tol,
    };
    let config = RunConfig {
        command: &args.command,
        seed: args.seed,
        sheets: args.sheets,
        format: args.format,
        out: args.out.as_ref(),
        tolerance: args.tolerance,
    };
    let mut json = json!({
        "tool": "dualcover",
        "version": env!("CARGO_PKG_VERSION"),
        "config": config,
        "tolerances": AllTolerances::new(tol),
    });
    match dispatch(&ctx, &args.command) {
        Ok(done) => {
            json["result"] = done.result;
            RunOutcome {
                json,
                text: done.text,
                code: done.code,
                error: None,
            }
        }
        Err(e) => {
            let code = if e.is_refusal() { EXIT_REFUSED } else { EXIT_FAILURE };
            json["error"] = json!({ "message": e.to_string(), "refused": e.is_refusal() });
            RunOutcome {
                json,
                text: String::new(),
                code,
                error: Some(e.to_string()),
            }
        }
    }
}

fn dispatch(ctx: &Ctx, cmd: &Command) -> Result<Done, PipelineError> {
    match cmd {
        Command::Dual { curve } => cmd_dual(ctx, &load_curve(curve)?),
        Command::Singular { curve, dual } => cmd_singular(ctx, &load_curve(curve)?, *dual),
        Command::Genericity { curve } => cmd_genericity(ctx, &load_curve(curve)?),
        Command::Monodromy { curve } => cmd_monodromy(ctx, &load_curve(curve)?),
        Command::Projection { curve, factorization } => {
            cmd_projection(&analysis(ctx, curve, factorization.as_deref())?)
        }
        Command::Verdict {
            curve,
            rep,
            factorization,
        } => {
            let rep = MonodromyRep::from_json(&read(rep)?)?;
            cmd_verdict(&analysis(ctx, curve, factorization.as_deref())?, &rep)
        }
        Command::Search { curve, factorization } => {
            cmd_search(&analysis(ctx, curve, factorization.as_deref())?, sheets(ctx)?)
        }
        Command::Census { length, curve, list } => cmd_census(ctx, *length, curve.as_deref(), *list),
        Command::Scenario { name } => scenario::run(ctx, *name),
    }
}

fn read(path: &Path) -> Result<String, PipelineError> {
    std::fs::read_to_string(path).map_err(|e| PipelineError::Precondition(format!("cannot read {}: {e}", path.display())))
}

fn load_curve(path: &Path) -> Result<PlaneCurve, PipelineError> {
    Ok(PlaneCurve::from_file_text(&read(path)?)?)
}

fn sheets(ctx: &Ctx) -> Result<usize, PipelineError> {
    ctx.sheets
        .ok_or_else(|| PipelineError::Precondition("--sheets is required".into()))
}

fn analysis(ctx: &Ctx, curve: &Path, factorization: Option<&Path>) -> Result<Analysis, PipelineError> {
    let c = load_curve(curve)?;
    match factorization {
        Some(f) => {
            let fact = BraidMonodromyFactorization::from_json(&read(f)?)
                .map_err(|e| PipelineError::Precondition(format!("bad factorization file: {e}")))?;
            Analysis::with_factorization(&c, &ctx.tol, ctx.seed, fact)
        }
        None => Analysis::run(&c, &ctx.tol, ctx.seed),
    }
}

fn counts(points: &[SingularPoint]) -> Value {
    let n = |k| points.iter().filter(|p| p.kind == k).count();
    json!({ "nodes": n(SingKind::Node), "cusps": n(SingKind::Cusp), "other": n(SingKind::Other) })
}

fn cmd_dual(ctx: &Ctx, c: &PlaneCurve) -> Result<Done, PipelineError> {
    let d = DualData::compute(c, &ctx.tol, ctx.seed)?;
    let self_dual = d.dual.degree() == c.degree()
        && d.dual.relabel(Plane::Source).defining().same_up_to_scalar(c.defining());
    let result = json!({
        "curve": c.to_string(),
        "name": c.name(),
        "degree": c.degree(),
        "source_singularities": counts(&d.source_points),
        "dual": d.dual.to_string(),
        "dual_degree": d.dual.degree(),
        "dual_singularities": counts(&d.dual_points),
        "plucker_expected": d.plucker(),
        "plucker_ok": d.plucker_ok(),
        "self_dual": self_dual,
    });
    let mut text = String::new();
    writeln!(text, "curve      {c}").unwrap();
    writeln!(text, "dual       {}", d.dual).unwrap();
    writeln!(text, "degree     {} -> {}", c.degree(), d.dual.degree()).unwrap();
    writeln!(text, "dual       {} cusps, {} nodes", d.dual_cusps(), d.dual_nodes()).unwrap();
    let status = match d.plucker_ok() {
        Some(true) => "OK",
        Some(false) => "MISMATCH",
        None => "n/a (non-nodal source)",
    };
    writeln!(text, "plucker    {status}").unwrap();
    if self_dual {
        writeln!(text, "self-dual  yes").unwrap();
    }
    Ok(Done::ok(result, text))
}

fn cmd_singular(ctx: &Ctx, c: &PlaneCurve, of_dual: bool) -> Result<Done, PipelineError> {
    let d = DualData::compute(c, &ctx.tol, ctx.seed)?;
    let (curve, points) = if of_dual {
        (&d.dual, &d.dual_points)
    } else {
        (&d.curve, &d.source_points)
    };
    let reports: Vec<_> = points.iter().map(SingularPoint::report).collect();
    let result = json!({ "curve": curve.to_string(), "counts": counts(points), "points": reports });
    let mut text = format!("{} singular points of {curve}\n", points.len());
    for p in points {
        writeln!(text, "  {:?} ({}) radius {:.1e}", p.kind, p.coordinate_strings().join(" : "), p.radius).unwrap();
    }
    Ok(Done::ok(result, text))
}

fn cmd_genericity(ctx: &Ctx, c: &PlaneCurve) -> Result<Done, PipelineError> {
    let d = DualData::compute(c, &ctx.tol, ctx.seed)?;
    let r = d.genericity();
    let mut text = String::new();
    for (k, v) in [
        ("degree_admissible", r.degree_admissible),
        ("all_singularities_nodal", r.all_singularities_nodal),
        ("inflexions_simple", r.inflexions_simple),
        ("no_tritangent", r.no_tritangent),
        ("no_flex_bitangent", r.no_flex_bitangent),
        ("verdict", r.verdict),
    ] {
        writeln!(text, "{k:<24} {v}").unwrap();
    }
    for w in &r.witnesses {
        writeln!(text, "  witness {:?} at ({})", w.kind, w.location.join(" : ")).unwrap();
    }
    Ok(Done::ok(serde_json::to_value(&r).expect("report serializes"), text))
}

fn fact_summary(f: &BraidMonodromyFactorization) -> Value {
    json!({
        "strands": f.strands,
        "factors": f.factors.len(),
        "tangencies": f.count(LocalKind::Tangency),
        "node_lines": f.count(LocalKind::NodeLine),
        "cusp_lines": f.count(LocalKind::CuspLine),
        "exponent_sum": f.product().exponent_sum(),
        "full_twist": f.check_full_twist().is_ok(),
    })
}

fn cmd_monodromy(ctx: &Ctx, c: &PlaneCurve) -> Result<Done, PipelineError> {
    let a = Analysis::run(c, &ctx.tol, ctx.seed)?;
    let f = &a.factorization;
    let result = json!({
        "summary": fact_summary(f),
        "factorization": serde_json::to_value(f).expect("factorization serializes"),
    });
    let mut text = format!(
        "{} factors on {} strands; exponent sum {}\n",
        f.factors.len(),
        f.strands,
        f.product().exponent_sum()
    );
    for (i, (b, k)) in f.factors.iter().zip(&f.local_kinds).enumerate() {
        writeln!(text, "  {:>3} {:<9} {b}", i + 1, format!("{k:?}")).unwrap();
    }
    Ok(Done::ok(result, text))
}

fn cmd_projection(a: &Analysis) -> Result<Done, PipelineError> {
    let rep = a.projection()?;
    let v = a.verdict(&rep)?;
    let mut text = rep_line(&rep);
    writeln!(text, "verdict {:?}", v.outcome).unwrap();
    let result = json!({ "rep": rep, "verdict": v });
    Ok(Done::ok(result, text))
}

fn rep_line(rep: &MonodromyRep) -> String {
    let gens: Vec<String> = rep.images().iter().map(|p| p.to_string()).collect();
    format!("{} sheets: {}\n", rep.sheets(), gens.join(" "))
}

pub fn outcome_code(o: Outcome) -> u8 {
    match o {
        Outcome::EquivalentToProjection => 0,
        Outcome::ExtendsSingularTotalSpace => 3,
        Outcome::NotExtendable => 4,
        Outcome::ExcludedCase => 5,
    }
}

fn verdict_text(v: &ExtendabilityVerdict) -> String {
    let mut text = format!("{:?}\n", v.outcome);
    for p in &v.points {
        writeln!(
            text,
            "  factor {:>3} {:<9} {:?} {} {}",
            p.factor,
            format!("{:?}", p.kind),
            p.class,
            p.meridian_images.0,
            p.meridian_images.1
        )
        .unwrap();
    }
    for n in &v.notes {
        writeln!(text, "  note {n}").unwrap();
    }
    text
}

fn cmd_verdict(a: &Analysis, rep: &MonodromyRep) -> Result<Done, PipelineError> {
    let v = a.verdict(rep)?;
    Ok(Done {
        text: verdict_text(&v),
        code: outcome_code(v.outcome),
        result: serde_json::to_value(&v).expect("verdict serializes"),
    })
}

fn cmd_search(a: &Analysis, k: usize) -> Result<Done, PipelineError> {
    let reps = rep_search(&a.factorization, k)?;
    let mut rows = Vec::new();
    let mut text = format!("{} classes of {k}-sheeted covers satisfy the relations\n", reps.len());
    for r in &reps {
        let v = a.verdict(r)?;
        let bad = v.bad_points().count();
        write!(text, "  {:?} bad {bad}: {}", v.outcome, rep_line(r)).unwrap();
        rows.push(json!({ "rep": r, "outcome": v.outcome, "bad": bad, "good": v.points.len() - bad }));
    }
    Ok(Done::ok(json!({ "sheets": k, "classes": rows }), text))
}

fn cmd_census(ctx: &Ctx, length: Option<usize>, curve: Option<&Path>, list: bool) -> Result<Done, PipelineError> {
    let k = sheets(ctx)?;
    if let Some(curve) = curve {
        let a = analysis(ctx, curve, None)?;
        let table = classify_classes_over(&a.factorization, k, &a.meta())?;
        let text = table.summary();
        return Ok(Done::ok(serde_json::to_value(&table).expect("table serializes"), text));
    }
    let m = length.ok_or_else(|| PipelineError::Precondition("census needs --length or --curve".into()))?;
    let count = class_count(k, m)?;
    let mut text = format!(
        "{} classes ({} transitive tuples, {} with product one) for {k} sheets, {m} branch points\n",
        count.classes, count.transitive, count.identity_product
    );
    let mut result = serde_json::to_value(&count).expect("count serializes");
    if list {
        let classes = enumerate_classes(k, m)?;
        for c in &classes {
            text += &rep_line(&c.representative);
        }
        result["representatives"] = serde_json::to_value(&classes).expect("classes serialize");
    }
    Ok(Done::ok(result, text))
}
