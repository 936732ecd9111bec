use serde::Serialize;

use super::singular::{node_branch_contacts, CurveJets, SingularPoint};
use super::{dual_curve, singular_points_with, CurveError, PlaneCurve, SingKind, Tolerances};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    /// A singular point of the curve itself that is not a node.
    NonNodalSource,
    /// A dual singularity with a single tangent line (a flex of higher order).
    NonSimpleInflexion,
    /// A dual point of multiplicity at least three with distinct tangents.
    Tritangent,
    /// A dual cusp met by another branch (tangent at a flex and elsewhere).
    FlexBitangent,
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub kind: WitnessKind,
    /// Point of the dual plane (a line of the source plane) or, for
    /// `NonNodalSource`, a point of the curve.
    pub location: Vec<String>,
    pub multiplicity: u32,
    pub tangents: u32,
}

/// Contact orders of the two branch tangents at a node of the curve.
#[derive(Clone, Debug, Serialize)]
pub struct NodeBranches {
    pub location: Vec<String>,
    pub contact_orders: Vec<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GenericityReport {
    pub is_irreducible_assumed: bool,
    pub degree_admissible: bool,
    pub all_singularities_nodal: bool,
    pub inflexions_simple: bool,
    pub no_tritangent: bool,
    pub no_flex_bitangent: bool,
    pub verdict: bool,
    pub witnesses: Vec<Witness>,
    pub node_branches: Vec<NodeBranches>,
    pub notes: Vec<String>,
}

fn witness(kind: WitnessKind, p: &SingularPoint) -> Witness {
    Witness {
        kind,
        location: p.coordinate_strings(),
        multiplicity: p.multiplicity,
        tangents: p.tangents,
    }
}

/// Check the curve against the general-enough conditions through the
/// singularities of its dual: a non-simple flex gives a dual point with one
/// tangent line, a tritangent a dual point of multiplicity three or more, a
/// flex bitangent a dual cusp crossed by another branch.
pub fn genericity_check(c: &PlaneCurve, seed: u64) -> Result<GenericityReport, CurveError> {
    genericity_check_with(c, &Tolerances::default(), seed)
}

pub fn genericity_check_with(c: &PlaneCurve, tol: &Tolerances, seed: u64) -> Result<GenericityReport, CurveError> {
    let source = singular_points_with(c, tol, seed)?;
    let dual_points = if c.degree() >= 2 {
        singular_points_with(&dual_curve(c)?, tol, seed)?
    } else {
        Vec::new()
    };
    Ok(assess(c, &source, &dual_points))
}

/// The report from already computed singular points of the curve and of its
/// dual.
pub fn assess(c: &PlaneCurve, source: &[SingularPoint], dual_points: &[SingularPoint]) -> GenericityReport {
    let mut notes = vec!["irreducibility is assumed, not verified".to_string()];
    let mut witnesses = Vec::new();
    let degree_admissible = c.degree() > 2;
    if !degree_admissible {
        notes.push(format!("degree {} <= 2: the criterion needs degree > 2", c.degree()));
    }

    let jets = CurveJets::new(c);
    let mut node_branches = Vec::new();
    for p in source {
        if p.kind == SingKind::Node {
            node_branches.push(NodeBranches {
                location: p.coordinate_strings(),
                contact_orders: node_branch_contacts(c, &jets, &p.location),
            });
        } else {
            witnesses.push(witness(WitnessKind::NonNodalSource, p));
        }
    }
    let all_singularities_nodal = source.iter().all(|p| p.kind == SingKind::Node);

    let (mut inflexions_simple, mut no_tritangent, mut no_flex_bitangent) = (true, true, true);
    for p in dual_points {
        if p.kind != SingKind::Other {
            continue;
        }
        let kind = if p.tangents <= 1 {
            inflexions_simple = false;
            WitnessKind::NonSimpleInflexion
        } else if p.multiplicity >= 3 && p.tangents >= p.multiplicity {
            no_tritangent = false;
            WitnessKind::Tritangent
        } else {
            no_flex_bitangent = false;
            WitnessKind::FlexBitangent
        };
        witnesses.push(witness(kind, p));
    }
    if !all_singularities_nodal {
        notes.push("the curve has non-nodal singularities".to_string());
    }
    let verdict = degree_admissible
        && all_singularities_nodal
        && inflexions_simple
        && no_tritangent
        && no_flex_bitangent;
    GenericityReport {
        is_irreducible_assumed: true,
        degree_admissible,
        all_singularities_nodal,
        inflexions_simple,
        no_tritangent,
        no_flex_bitangent,
        verdict,
        witnesses,
        node_branches,
        notes,
    }
}
