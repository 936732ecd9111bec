//! The end-to-end computation shared by the command line, the C interface
//! and the tests: from a plane curve to its dual, a generic pencil and the
//! braid monodromy factorization of the dual.

use serde::Serialize;
use thiserror::Error;

use crate::braidmono::{braid_monodromy_with, BraidError, BraidMonodromyFactorization};
use crate::curvegeom::{
    assess, dual_curve, plucker_expect, singular_points_with, CurveError, GenericityReport, Plane, PlaneCurve,
    PluckerCounts, SingKind, SingularPoint, Tolerances,
};
use crate::hurwitz::HurwitzError;
use crate::monorep::{projection_monodromy, verdict, ExtendabilityVerdict, MonodromyRep, RepError, VerdictMeta};
use crate::numtrack::{generic_frame, TrackError, TrackTolerances, TRACK_TOLERANCES};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Track(#[from] TrackError),
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Hurwitz(#[from] HurwitzError),
    #[error("{0}")]
    Precondition(String),
}

impl PipelineError {
    /// Whether the input was rejected rather than the computation failing.
    pub fn is_refusal(&self) -> bool {
        matches!(
            self,
            PipelineError::Precondition(_)
                | PipelineError::Rep(RepError::Refused(_) | RepError::Format(_) | RepError::Mismatch { .. })
                | PipelineError::Curve(
                    CurveError::Poly(_)
                        | CurveError::NotHomogeneous
                        | CurveError::NotSquarefree
                        | CurveError::DegreeTooLow(..)
                        | CurveError::ContainsLine
                )
        )
    }
}

/// Every numeric threshold a result depends on.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AllTolerances {
    pub singular: Tolerances,
    pub tracking: TrackTolerances,
}

impl AllTolerances {
    pub fn new(singular: Tolerances) -> Self {
        AllTolerances {
            singular,
            tracking: TRACK_TOLERANCES,
        }
    }
}

impl Default for AllTolerances {
    fn default() -> Self {
        Self::new(Tolerances::default())
    }
}

/// Singular points of a curve and of its dual.
#[derive(Clone, Debug)]
pub struct DualData {
    pub curve: PlaneCurve,
    pub dual: PlaneCurve,
    pub source_points: Vec<SingularPoint>,
    pub dual_points: Vec<SingularPoint>,
}

impl DualData {
    pub fn compute(curve: &PlaneCurve, tol: &Tolerances, seed: u64) -> Result<Self, PipelineError> {
        if curve.plane() != Plane::Source {
            return Err(PipelineError::Precondition("expected a curve in x, y, z".into()));
        }
        let dual = dual_curve(curve)?;
        Ok(DualData {
            source_points: singular_points_with(curve, tol, seed)?,
            dual_points: singular_points_with(&dual, tol, seed)?,
            curve: curve.clone(),
            dual,
        })
    }

    pub fn source_nodes(&self) -> usize {
        count(&self.source_points, SingKind::Node)
    }

    pub fn dual_nodes(&self) -> usize {
        count(&self.dual_points, SingKind::Node)
    }

    pub fn dual_cusps(&self) -> usize {
        count(&self.dual_points, SingKind::Cusp)
    }

    pub fn genericity(&self) -> GenericityReport {
        assess(&self.curve, &self.source_points, &self.dual_points)
    }

    /// Plücker prediction for the dual, when the source is nodal.
    pub fn plucker(&self) -> Option<PluckerCounts> {
        if self.source_points.iter().any(|p| p.kind != SingKind::Node) {
            return None;
        }
        plucker_expect(self.curve.degree(), self.source_nodes() as u32).ok()
    }

    /// Whether the computed dual matches the Plücker prediction exactly.
    pub fn plucker_ok(&self) -> Option<bool> {
        self.plucker().map(|p| {
            p.dual_degree == self.dual.degree()
                && p.dual_cusps as usize == self.dual_cusps()
                && p.dual_nodes as usize == self.dual_nodes()
                && self.dual_points.iter().all(|q| q.kind != SingKind::Other)
        })
    }
}

fn count(points: &[SingularPoint], kind: SingKind) -> usize {
    points.iter().filter(|p| p.kind == kind).count()
}

/// A curve together with the braid monodromy of its dual.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub data: DualData,
    pub genericity: GenericityReport,
    pub factorization: BraidMonodromyFactorization,
}

impl Analysis {
    pub fn run(curve: &PlaneCurve, tol: &Tolerances, seed: u64) -> Result<Self, PipelineError> {
        let data = DualData::compute(curve, tol, seed)?;
        let genericity = data.genericity();
        let (frame, bv) = generic_frame(&data.dual, seed, data.dual_nodes(), data.dual_cusps())?;
        let factorization = braid_monodromy_with(&data.dual, &frame, &bv)?;
        Ok(Analysis {
            data,
            genericity,
            factorization,
        })
    }

    /// Reuse a factorization computed earlier for the same curve.
    pub fn with_factorization(
        curve: &PlaneCurve,
        tol: &Tolerances,
        seed: u64,
        factorization: BraidMonodromyFactorization,
    ) -> Result<Self, PipelineError> {
        let data = DualData::compute(curve, tol, seed)?;
        if factorization.strands != data.dual.degree() as usize || factorization.frame.plane != data.dual.plane() {
            return Err(PipelineError::Precondition(format!(
                "factorization has {} strands, the dual has degree {}",
                factorization.strands,
                data.dual.degree()
            )));
        }
        let genericity = data.genericity();
        Ok(Analysis {
            data,
            genericity,
            factorization,
        })
    }

    pub fn meta(&self) -> VerdictMeta {
        VerdictMeta {
            degree: self.data.curve.degree(),
            nodes: self.data.source_nodes(),
            generic: self.genericity.verdict,
        }
    }

    /// The cover of the line by projection from a generic point.
    pub fn projection(&self) -> Result<MonodromyRep, PipelineError> {
        Ok(projection_monodromy(&self.data.curve, &self.factorization.frame)?)
    }

    pub fn verdict(&self, rep: &MonodromyRep) -> Result<ExtendabilityVerdict, PipelineError> {
        Ok(verdict(rep, &self.factorization, &self.meta())?)
    }
}
