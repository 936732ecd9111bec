use num_rational::BigRational;
use num_traits::Zero;

use super::{MonodromyRep, Perm, RepError};
use crate::curvegeom::{dual_curve, Plane, PlaneCurve};
use crate::exactpoly::{f64_to_ratio, rat, Polynomial};
use crate::numtrack::{fiber_generators, fiber_roots, track, PencilFrame, PolyFamily, TrackError};

type Q2 = (BigRational, BigRational);

fn cross(a: &[Q2; 3], b: &[Q2; 3]) -> [Q2; 3] {
    let mul = |x: &Q2, y: &Q2| (&x.0 * &y.0 - &x.1 * &y.1, &x.0 * &y.1 + &x.1 * &y.0);
    let sub = |x: Q2, y: Q2| (x.0 - y.0, x.1 - y.1);
    std::array::from_fn(|i| {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        sub(mul(&a[j], &b[k]), mul(&a[k], &b[j]))
    })
}

fn real(v: [i64; 3]) -> [Q2; 3] {
    v.map(|x| (rat(x), BigRational::zero()))
}

fn dot(a: &[Q2; 3], b: &[Q2; 3]) -> Q2 {
    let mut acc = (BigRational::zero(), BigRational::zero());
    for (x, y) in a.iter().zip(b) {
        acc.0 += &x.0 * &y.0 - &x.1 * &y.1;
        acc.1 += &x.0 * &y.1 + &x.1 * &y.0;
    }
    acc
}

/// `F(q(y) + s p)` where `p` is the point whose dual is the base fiber `L`
/// of the frame and `q(y)` runs along the line of `L` with coordinate `y`;
/// returned as real and imaginary parts in the variables `y, s`.
fn projection_family(c: &PlaneCurve, frame: &PencilFrame) -> Result<(Polynomial, Polynomial), RepError> {
    let m = &frame.matrix;
    let (tr, ti) = (f64_to_ratio(frame.basepoint.0), f64_to_ratio(frame.basepoint.1));
    let a: [Q2; 3] = std::array::from_fn(|i| (rat(m[i][0]) * &tr + rat(m[i][2]), rat(m[i][0]) * &ti));
    let b = real([m[0][1], m[1][1], m[2][1]]);
    let p = cross(&a, &b);
    let e = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 2, 3], [3, -1, 2]]
        .into_iter()
        .map(real)
        .find(|e| {
            let d = dot(&cross(&a, &b), e);
            !(d.0.is_zero() && d.1.is_zero())
        })
        .expect("a vector off the plane of a and b");
    let qa = cross(&a, &e);
    let qb = cross(&b, &e);
    let vars = ["y", "s", "i"];
    let lin = |c: &Q2, v: usize| {
        let mut out = Polynomial::zero(&vars);
        if !c.0.is_zero() {
            out = &out + &Polynomial::var(&vars, v).scale(&c.0);
        }
        if !c.1.is_zero() {
            out = &out + &(&Polynomial::var(&vars, v) * &Polynomial::var(&vars, 2)).scale(&c.1);
        }
        out
    };
    let constant = |c: &Q2| {
        &Polynomial::constant(&vars, c.0.clone()) + &Polynomial::var(&vars, 2).scale(&c.1)
    };
    let images: Vec<Polynomial> = (0..3)
        .map(|i| &(&constant(&qa[i]) + &lin(&qb[i], 0)) + &lin(&p[i], 1))
        .collect();
    let g = c.defining().substitute_all(&images);
    // reduce with i^2 = -1
    let mut re = Vec::new();
    let mut im = Vec::new();
    for (mono, coef) in g.terms() {
        let k = mono.0[2];
        let ex = vec![mono.0[0], mono.0[1]];
        let sgn = if k % 4 >= 2 { -coef.clone() } else { coef.clone() };
        if k % 2 == 0 {
            re.push((ex, sgn));
        } else {
            im.push((ex, sgn));
        }
    }
    let re = Polynomial::from_terms(&["y", "s"], re);
    let im = Polynomial::from_terms(&["y", "s"], im);
    Ok((re, im))
}

/// Monodromy of the projection of `c` from the point dual to the base
/// fiber of `frame`, a pencil in the dual plane: the image of generator `j`
/// permutes the points of `c` on the lines through the center as the line
/// moves once around the `j`-th branch point.
pub fn projection_monodromy(c: &PlaneCurve, frame: &PencilFrame) -> Result<MonodromyRep, RepError> {
    if c.plane() != Plane::Source || frame.plane != Plane::Dual {
        return Err(RepError::Format("need a source curve and a frame in the dual plane".into()));
    }
    let dual = dual_curve(c)?;
    let branch = fiber_roots(&dual, frame, frame.base())?;
    let (re, im) = projection_family(c, frame)?;
    let d = c.degree() as usize;
    if re.degree_in(1).max(im.degree_in(1)) as usize != d {
        return Err(TrackError::Degenerate("projection center lies on the curve".into()).into());
    }
    let fam = PolyFamily::new_complex(&re, &im, 0, 1)?;
    let (base, arcs) = fiber_generators(&branch, frame.direction);
    let start = fam.roots_at(base, 0.0)?;
    let mut images = Vec::with_capacity(arcs.len());
    for arc in &arcs {
        let tr = track(&fam, arc, &start, 0.0)?;
        images.push(Perm::from_images(tr.permutation)?);
    }
    let rep = MonodromyRep::new(d, images)?;
    if !rep.is_simply_ramified() {
        return Err(RepError::Integrity("projection is not simply ramified".into()));
    }
    if !rep.is_transitive() {
        return Err(RepError::Integrity("projection monodromy is not transitive".into()));
    }
    Ok(rep)
}
