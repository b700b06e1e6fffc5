//! Transporters: group elements carrying a basepoint configuration to a given one.
//!
//! Each transporter is unique only up to right multiplication by the stabilizer
//! of the basepoint configuration. Downstream code must only use them through
//! functions that are invariant under that freedom.

use crate::error::{CocycleError, Result};
use crate::field::Scalar;
use crate::sl2::matrix::{Mat2, Vec2};
use crate::sl2::projective::{bracket_rep, check_distinct, Orientation, ProjPoint};
use crate::tolerance::{DISTINCT_MARGIN, INDEP_MARGIN, NONZERO_MARGIN};

/// `d_{u,v} = u1 v2 - u2 v1`, the determinant of the matrix with columns `u`, `v`.
pub fn det_pair(u: &Vec2, v: &Vec2) -> Scalar {
    u.v1() * v.v2() - u.v2() * v.v1()
}

/// `[[0, -1/l], [l, 0]]`, which sends `e1` to `l e2`.
pub fn delta(lambda: Scalar) -> Result<Mat2> {
    if lambda.abs() < NONZERO_MARGIN {
        return Err(CocycleError::NearZeroParameter(lambda.abs()));
    }
    Mat2::new(Scalar::ZERO, -lambda.recip(), lambda, Scalar::ZERO)
}

/// The unique `g` with `g (e1, d e2) = (u, v)` where `d = d_{u,v}`:
/// `[[u1, v1/d], [u2, v2/d]]`.
pub fn transporter_vectors(u: &Vec2, v: &Vec2) -> Result<Mat2> {
    transporter_vectors_with_margin(u, v, INDEP_MARGIN)
}

pub fn transporter_vectors_with_margin(u: &Vec2, v: &Vec2, margin: f64) -> Result<Mat2> {
    let d = det_pair(u, v);
    if d.abs() < margin {
        return Err(CocycleError::DependentPair { det: d.abs(), margin });
    }
    let field = u.field().join(v.field());
    Mat2::with_field([u.v1(), v.v1() / d, u.v2(), v.v2() / d], field)
}

/// A matrix sending `(inf, 0)` to `(x, y)`.
///
/// For finite `x`, `y` this is `[[x, -y/(y-x)], [1, -1/(y-x)]]`. In general the
/// columns are the chart representatives of `x` and `y`, the second divided by
/// the bracket of the two, which covers points at infinity without a special case.
pub fn transporter_pair(x: &ProjPoint, y: &ProjPoint) -> Result<Mat2> {
    check_distinct(&[*x, *y], DISTINCT_MARGIN)?;
    let rx = x.chart_rep();
    let ry = y.chart_rep();
    let d = bracket_rep(rx, ry);
    Mat2::real(rx.0, ry.0 / d, rx.1, ry.1 / d)
}

/// A matrix sending `(inf, 0, s)` to `(x1, x2, y1)`, where `s = +1` for a
/// positively oriented triple and `s = -1` otherwise.
///
/// The image of `s` must be `y1`, so write `y1 = al x1 + be x2` in the chart
/// representatives and take columns `mu al x1` and `s mu be x2` with `mu` fixed
/// by the determinant. The orientation is exactly the sign that makes `mu` real.
/// On finite points this reproduces `[[c x1, -x2/(c(x2-x1))], [c, -1/(c(x2-x1))]]`
/// with `c^2 = (y1-x2)/((x2-x1)(y1-x1))` (resp. its negative).
pub fn transporter_triple(x1: &ProjPoint, x2: &ProjPoint, y1: &ProjPoint) -> Result<(Mat2, Orientation)> {
    check_distinct(&[*x1, *x2, *y1], DISTINCT_MARGIN).map_err(|e| match e {
        CocycleError::CoincidentPoints { distance, .. } => CocycleError::DegenerateTriple(distance),
        other => other,
    })?;
    let r1 = x1.chart_rep();
    let r2 = x2.chart_rep();
    let r3 = y1.chart_rep();
    let d12 = bracket_rep(r1, r2);
    let al = bracket_rep(r3, r2) / d12;
    let be = bracket_rep(r1, r3) / d12;
    let q = al * be * d12;
    let orientation = Orientation::from_sign(q).ok_or(CocycleError::DegenerateTriple(0.0))?;
    let mu = 1.0 / q.abs().sqrt();
    let s = mu * al;
    let t = orientation.sign() * mu * be;
    let mut cols = [s * r1.0, t * r2.0, s * r1.1, t * r2.1];
    // Fix the overall sign: positive (2,1) entry, or positive (1,1) entry at infinity.
    let lead = if cols[2] != 0.0 { cols[2] } else { cols[0] };
    if lead < 0.0 {
        cols = cols.map(|x| -x);
    }
    let g = Mat2::real(cols[0], cols[1], cols[2], cols[3])?;
    Ok((g, orientation))
}

/// `c` of the finite-chart formula for the given branch, `None` if its `c^2` is not positive.
pub fn branch_scale(x1: f64, x2: f64, y1: f64, orientation: Orientation) -> Option<f64> {
    let c2 = orientation.sign() * (y1 - x2) / ((x2 - x1) * (y1 - x1));
    (c2 > 0.0).then(|| c2.sqrt())
}
