//! Plane curves, their duals, singular points and genericity.

mod generic;
mod singular;

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactpoly::{
    discriminant, gcd, parse_poly, squarefree_decomposition, PolyError, Polynomial,
};

pub use generic::{assess, genericity_check, genericity_check_with, GenericityReport, NodeBranches, Witness, WitnessKind};
pub use singular::{
    classify_singularity, singular_points, singular_points_with, CurveJets, SingKind,
    SingularPoint, Tolerances,
};
pub(crate) use singular::random_transform;

pub const SOURCE_VARS: [&str; 3] = ["x", "y", "z"];
pub const DUAL_VARS: [&str; 3] = ["u", "v", "w"];

#[derive(Debug, Error)]
pub enum CurveError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("polynomial is not homogeneous in three variables")]
    NotHomogeneous,
    #[error("defining polynomial has a repeated factor")]
    NotSquarefree,
    #[error("curve has degree {0}, need at least {1}")]
    DegreeTooLow(u32, u32),
    #[error("elimination left no reduced component; input is not a reduced curve")]
    DegenerateElimination,
    #[error("point is not singular within tolerance (residual {0:e})")]
    NotSingular(f64),
    #[error("certification failed: {0}")]
    Certification(String),
    #[error("line has a zero linear form")]
    ZeroLine,
    #[error("node count {delta} out of range for degree {degree}")]
    DeltaOutOfRange { degree: u32, delta: u32 },
    #[error("curve contains the line")]
    ContainsLine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Plane {
    Source,
    Dual,
}

impl Plane {
    pub fn vars(self) -> [&'static str; 3] {
        match self {
            Plane::Source => SOURCE_VARS,
            Plane::Dual => DUAL_VARS,
        }
    }

    pub fn opposite(self) -> Plane {
        match self {
            Plane::Source => Plane::Dual,
            Plane::Dual => Plane::Source,
        }
    }
}

/// A reduced plane curve given by a homogeneous form in three variables.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaneCurve {
    defining: Polynomial,
    degree: u32,
    plane: Plane,
    name: Option<String>,
}

impl PlaneCurve {
    /// Wrap a homogeneous polynomial in three variables. The variables are
    /// renamed positionally to those of `plane`.
    pub fn new(poly: &Polynomial, plane: Plane) -> Result<Self, CurveError> {
        let c = Self::new_unchecked(poly, plane)?;
        let sf = squarefree_decomposition(&c.defining);
        if sf.iter().any(|(_, k)| *k > 1) {
            return Err(CurveError::NotSquarefree);
        }
        Ok(c)
    }

    /// As [`PlaneCurve::new`] but without the squarefree test, for
    /// polynomials that are reduced by construction.
    pub(crate) fn new_unchecked(poly: &Polynomial, plane: Plane) -> Result<Self, CurveError> {
        if poly.nvars() != 3 {
            return Err(CurveError::NotHomogeneous);
        }
        let degree = poly.homogeneous_degree().ok_or(CurveError::NotHomogeneous)?;
        if degree == 0 {
            return Err(CurveError::DegreeTooLow(0, 1));
        }
        let defining = Polynomial::from_terms(
            &plane.vars(),
            poly.terms().map(|(m, c)| (m.0.clone(), c.clone())),
        )
        .primitive();
        Ok(PlaneCurve {
            defining,
            degree,
            plane,
            name: None,
        })
    }

    pub fn parse(text: &str, plane: Plane) -> Result<Self, CurveError> {
        Self::new(&parse_poly(text, &plane.vars())?, plane)
    }

    /// Read the curve file format: `#` comment lines (an optional
    /// `# name: ...` header) followed by one polynomial in `x,y,z` or `u,v,w`.
    pub fn from_file_text(text: &str) -> Result<Self, CurveError> {
        let mut name = None;
        let mut body = String::new();
        for line in text.lines() {
            let t = line.trim();
            if let Some(rest) = t.strip_prefix('#') {
                if let Some(n) = rest.trim().strip_prefix("name:") {
                    name = Some(n.trim().to_string());
                }
                continue;
            }
            body.push_str(t);
            body.push(' ');
        }
        let plane = if body.contains(['u', 'v', 'w']) && !body.contains(['x', 'y', 'z']) {
            Plane::Dual
        } else {
            Plane::Source
        };
        let mut c = Self::parse(&body, plane)?;
        c.name = name;
        Ok(c)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn defining(&self) -> &Polynomial {
        &self.defining
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn plane(&self) -> Plane {
        self.plane
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Same polynomial in the other plane's variable names.
    pub fn relabel(&self, plane: Plane) -> PlaneCurve {
        PlaneCurve::new_unchecked(&self.defining, plane).unwrap()
    }
}

impl fmt::Display for PlaneCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.defining)
    }
}

/// The dual curve, in the variables of the opposite plane.
///
/// The points `(s, 1, -(u s + v))` sweep the line `u x + v y + z = 0`. The
/// discriminant in `s` of `F` along that line vanishes on the dual curve to
/// order one and on every pencil of lines through a singular point to order
/// at least two, so the dual is the reduced multiplicity-one part.
pub fn dual_curve(c: &PlaneCurve) -> Result<PlaneCurve, CurveError> {
    if c.degree < 2 {
        return Err(CurveError::DegreeTooLow(c.degree, 2));
    }
    let ring = ["s", "u", "v"];
    let s = Polynomial::var(&ring, 0);
    let u = Polynomial::var(&ring, 1);
    let v = Polynomial::var(&ring, 2);
    let one = Polynomial::constant(&ring, BigRational::one());
    let z = -(&(&u * &s) + &v);
    let restricted = c.defining.substitute_all(&[s.clone(), one, z]);
    if restricted.degree_in(0) < c.degree {
        return Err(CurveError::ContainsLine);
    }
    let disc = discriminant(&restricted, "s")?;
    let dual_ring = c.plane.opposite().vars();
    let wide = [dual_ring[0], dual_ring[1], dual_ring[2]];
    let disc = Polynomial::from_terms(
        &wide,
        disc.terms()
            .map(|(m, q)| (vec![m.0[1], m.0[2], 0], q.clone())),
    );
    let reduced: Vec<Polynomial> = squarefree_decomposition(&disc)
        .into_iter()
        .filter(|(_, k)| *k == 1)
        .map(|(a, _)| a)
        .collect();
    let base = match reduced.as_slice() {
        [a] => a.clone(),
        _ => return Err(CurveError::DegenerateElimination),
    };
    let deg = base.total_degree().unwrap();
    let hom = base.homogenize(2, deg);
    PlaneCurve::new_unchecked(&hom, c.plane.opposite())
}

/// True iff the dual of the dual is the curve itself up to a scalar.
pub fn bidual_check(c: &PlaneCurve) -> Result<bool, CurveError> {
    let dd = dual_curve(&dual_curve(c)?)?;
    Ok(dd.plane == c.plane && dd.defining.same_up_to_scalar(&c.defining))
}

/// Expected invariants of the dual of a nodal curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PluckerCounts {
    pub dual_degree: u32,
    pub dual_cusps: u32,
    pub dual_nodes: u32,
}

/// Plücker relations for a curve of degree `d` whose only singularities are
/// `delta` nodes: the dual has degree `d(d-1) - 2 delta`, one cusp per flex,
/// and one node per bitangent.
pub fn plucker_expect(d: u32, delta: u32) -> Result<PluckerCounts, CurveError> {
    if d < 2 || delta > (d - 1) * (d - 2) / 2 {
        return Err(CurveError::DeltaOutOfRange { degree: d, delta });
    }
    let dual_degree = d * (d - 1) - 2 * delta;
    let dual_cusps = 3 * d * (d - 2) - 6 * delta;
    // class of the dual equals d, so d = d*(d*-1) - 2 nodes* - 3 cusps*
    let dual_nodes = (dual_degree * (dual_degree - 1) - d - 3 * dual_cusps) / 2;
    Ok(PluckerCounts {
        dual_degree,
        dual_cusps,
        dual_nodes,
    })
}

/// Two points spanning the line `l . p = 0`.
pub(crate) fn line_basis(line: &[BigRational; 3]) -> Result<[[BigRational; 3]; 2], CurveError> {
    let k = (0..3)
        .find(|&i| !line[i].is_zero())
        .ok_or(CurveError::ZeroLine)?;
    let (a, b) = ((k + 1) % 3, (k + 2) % 3);
    let mut p = [BigRational::zero(), BigRational::zero(), BigRational::zero()];
    let mut q = p.clone();
    p[a] = BigRational::one();
    p[k] = -&line[a] / &line[k];
    q[b] = BigRational::one();
    q[k] = -&line[b] / &line[k];
    Ok([p, q])
}

/// True iff the line `l0 x + l1 y + l2 z = 0` meets the curve in `deg C`
/// distinct points (hence misses the singular points and is nowhere tangent).
pub fn is_transversal(c: &PlaneCurve, line: &[BigRational; 3]) -> Result<bool, CurveError> {
    let [p, q] = line_basis(line)?;
    let ring = ["s"];
    let s = Polynomial::var(&ring, 0);
    let images: Vec<Polynomial> = (0..3)
        .map(|i| &s.scale(&p[i]) + &Polynomial::constant(&ring, q[i].clone()))
        .collect();
    let r = c.defining.substitute_all(&images);
    if r.is_zero() {
        return Err(CurveError::ContainsLine);
    }
    // the parameter point at infinity is p itself
    let at_infinity = c.degree - r.degree_in(0);
    if at_infinity > 1 {
        return Ok(false);
    }
    if r.degree_in(0) <= 1 {
        return Ok(true);
    }
    Ok(gcd(&r, &r.derivative(0)).is_constant())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::rat;

    fn src(s: &str) -> PlaneCurve {
        PlaneCurve::parse(s, Plane::Source).unwrap()
    }

    #[test]
    fn conic_is_self_dual() {
        let c = src("x^2 + y^2 - z^2");
        let d = dual_curve(&c).unwrap();
        assert_eq!(d.plane(), Plane::Dual);
        let expect = PlaneCurve::parse("u^2 + v^2 - w^2", Plane::Dual).unwrap();
        assert!(d.defining().same_up_to_scalar(expect.defining()));
    }

    #[test]
    fn dual_degrees() {
        assert_eq!(dual_curve(&src("x^3 + y^3 + z^3")).unwrap().degree(), 6);
        assert_eq!(dual_curve(&src("z*y^2 - x^2*(x+z)")).unwrap().degree(), 4);
    }

    #[test]
    fn linear_curve_has_no_dual_curve() {
        assert!(matches!(
            dual_curve(&src("x + 2*y")),
            Err(CurveError::DegreeTooLow(1, 2))
        ));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            PlaneCurve::parse("x^2 + y", Plane::Source),
            Err(CurveError::NotHomogeneous)
        ));
        assert!(matches!(
            PlaneCurve::parse("(x + y)^2*z", Plane::Source),
            Err(CurveError::NotSquarefree)
        ));
    }

    #[test]
    fn file_format() {
        let c = PlaneCurve::from_file_text("# name: fermat\n# a comment\nx^3 + y^3\n + z^3\n").unwrap();
        assert_eq!(c.name(), Some("fermat"));
        assert_eq!(c.degree(), 3);
        let d = PlaneCurve::from_file_text("u^2 + v^2 - w^2").unwrap();
        assert_eq!(d.plane(), Plane::Dual);
    }

    #[test]
    fn plucker_table() {
        let t = |d, e| plucker_expect(d, e).unwrap();
        assert_eq!(t(3, 0), PluckerCounts { dual_degree: 6, dual_cusps: 9, dual_nodes: 0 });
        assert_eq!(t(3, 1), PluckerCounts { dual_degree: 4, dual_cusps: 3, dual_nodes: 0 });
        assert_eq!(t(4, 0), PluckerCounts { dual_degree: 12, dual_cusps: 24, dual_nodes: 28 });
        assert!(plucker_expect(3, 2).is_err());
    }

    #[test]
    fn transversality() {
        let conic = src("x^2 + y^2 - z^2");
        assert!(is_transversal(&conic, &[rat(1), rat(2), rat(-1)]).unwrap());
        // tangent at (1:0:1)
        assert!(!is_transversal(&conic, &[rat(1), rat(0), rat(-1)]).unwrap());
        let cusp = src("y^2*z - x^3");
        assert!(!is_transversal(&cusp, &[rat(1), rat(3), rat(0)]).unwrap());
        // flex tangent of the Fermat cubic at (1:-1:0) is x + y = 0
        let fermat = src("x^3 + y^3 + z^3");
        assert!(!is_transversal(&fermat, &[rat(1), rat(1), rat(0)]).unwrap());
        assert!(is_transversal(&fermat, &[rat(1), rat(2), rat(5)]).unwrap());
        assert!(matches!(
            is_transversal(&fermat, &[rat(0), rat(0), rat(0)]),
            Err(CurveError::ZeroLine)
        ));
    }
}
